//! Trajectories of the relative-frame field `W(z) = i z U(z)`, their periods and
//! the orbit-average operator `S f(z) = f(z) − (1/T_z) ∫₀^{T_z} f(ψ(τ, z)) dτ`.

use crate::dispersion::QuadraticProfile;
use crate::error::{Error, Result};
use crate::potentials::{cauchy_modal, ModalDensity};
use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;
use std::sync::Arc;

/// Default absolute and relative tolerance of the integrator.
pub const DEFAULT_TOL: f64 = 1e-10;

/// `U₀(r) = −Ω + B/2 + A r²/4`.
pub fn radial_angular_velocity(profile: &QuadraticProfile, omega: f64, r: f64) -> f64 {
    -omega + profile.b / 2.0 + profile.a * r * r / 4.0
}

/// Radial coefficient of a modal perturbation.
pub type RadialFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// The field `W = izU`.
#[derive(Clone)]
pub enum AngularField {
    /// `U = U₀(|z|)` for the quadratic profile.
    Radial {
        profile: QuadraticProfile,
        omega: f64,
    },
    /// `W = izU₀ + ε (i/2π) conj(∫ h(y)/(z−y) dA)` for `h = h_n(r) cos(nθ)`.
    Composite {
        profile: QuadraticProfile,
        omega: f64,
        n: u32,
        h: RadialFn,
        amplitude: f64,
    },
}

impl std::fmt::Debug for AngularField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AngularField::Radial { profile, omega } => f
                .debug_struct("Radial")
                .field("profile", profile)
                .field("omega", omega)
                .finish(),
            AngularField::Composite {
                profile,
                omega,
                n,
                amplitude,
                ..
            } => f
                .debug_struct("Composite")
                .field("profile", profile)
                .field("omega", omega)
                .field("n", n)
                .field("amplitude", amplitude)
                .finish(),
        }
    }
}

impl AngularField {
    pub fn radial(profile: QuadraticProfile, omega: f64) -> Self {
        AngularField::Radial { profile, omega }
    }

    pub fn composite(
        profile: QuadraticProfile,
        omega: f64,
        n: u32,
        h: RadialFn,
        amplitude: f64,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::Parameter("modal perturbation needs n >= 1".into()));
        }
        Ok(AngularField::Composite {
            profile,
            omega,
            n,
            h,
            amplitude,
        })
    }

    fn base(&self) -> (QuadraticProfile, f64) {
        match self {
            AngularField::Radial { profile, omega }
            | AngularField::Composite { profile, omega, .. } => (*profile, *omega),
        }
    }

    /// `W(z)`.
    pub fn velocity(&self, z: Complex64) -> Result<Complex64> {
        let (profile, omega) = self.base();
        let u0 = radial_angular_velocity(&profile, omega, z.norm());
        let w0 = Complex64::i() * z * u0;
        match self {
            AngularField::Radial { .. } => Ok(w0),
            AngularField::Composite {
                n, h, amplitude, ..
            } => {
                let hh: &dyn Fn(f64) -> f64 = h.as_ref();
                let density = ModalDensity::new(*n, hh)?;
                let zc = if z.norm() > 1.0 { z / z.norm() } else { z };
                let c = cauchy_modal(&density, zc)?;
                Ok(w0 + amplitude * Complex64::i() / (2.0 * PI) * c.conj())
            }
        }
    }

    /// `U(z) = W(z)/(iz)`, with the radial limit at the origin.
    pub fn angular(&self, z: Complex64) -> Result<Complex64> {
        if z.norm() == 0.0 {
            let (profile, omega) = self.base();
            let h = 1e-7;
            return match self {
                AngularField::Radial { .. } => Ok(Complex64::new(
                    radial_angular_velocity(&profile, omega, 0.0),
                    0.0,
                )),
                _ => self.angular(Complex64::new(h, 0.0)),
            };
        }
        Ok(self.velocity(z)? / (Complex64::i() * z))
    }

    /// `inf |Re U|` over the closed disc; exact for radial fields, sampled on a
    /// 48 × 96 polar grid otherwise.
    pub fn inf_re_u(&self) -> Result<f64> {
        let (profile, omega) = self.base();
        match self {
            AngularField::Radial { .. } => {
                let u_in = radial_angular_velocity(&profile, omega, 0.0);
                let u_out = radial_angular_velocity(&profile, omega, 1.0);
                if u_in.signum() != u_out.signum() || u_in == 0.0 || u_out == 0.0 {
                    Ok(0.0)
                } else {
                    Ok(u_in.abs().min(u_out.abs()))
                }
            }
            AngularField::Composite { .. } => {
                let mut inf = f64::INFINITY;
                let mut sign = 0.0;
                for i in 0..48 {
                    let r = (i as f64 + 0.5) / 48.0;
                    for j in 0..96 {
                        let u = self
                            .angular(Complex64::from_polar(r, 2.0 * PI * j as f64 / 96.0))?
                            .re;
                        if sign == 0.0 {
                            sign = u.signum();
                        } else if u.signum() != sign {
                            return Ok(0.0);
                        }
                        inf = inf.min(u.abs());
                    }
                }
                Ok(inf)
            }
        }
    }

    fn require_nondegenerate(&self) -> Result<f64> {
        let inf = self.inf_re_u()?;
        if !(inf > 1e-12) {
            return Err(Error::DegenerateField(format!(
                "Re U vanishes in the disc for {self:?}"
            )));
        }
        Ok(inf)
    }

    fn is_radial(&self) -> bool {
        matches!(self, AngularField::Radial { .. })
    }
}

// Dormand–Prince 5(4) tableau.
const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
const B5: [f64; 7] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
    0.0,
];
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

/// Adaptive Dormand–Prince integrator on `ℝ^N`.
pub struct Dopri5<F, const N: usize> {
    rhs: F,
    atol: f64,
    rtol: f64,
    /// Largest step magnitude.
    pub h_max: f64,
}

impl<F, const N: usize> Dopri5<F, N>
where
    F: FnMut(f64, &[f64; N]) -> Result<[f64; N]>,
{
    pub fn new(rhs: F, atol: f64, rtol: f64) -> Self {
        Dopri5 {
            rhs,
            atol,
            rtol,
            h_max: f64::INFINITY,
        }
    }

    /// One trial step; returns the new state and the scaled error norm.
    pub fn trial(&mut self, t: f64, y: &[f64; N], h: f64) -> Result<([f64; N], f64)> {
        let mut k = [[0.0; N]; 7];
        k[0] = (self.rhs)(t, y)?;
        for s in 1..7 {
            let mut ys = *y;
            for (i, v) in ys.iter_mut().enumerate() {
                for j in 0..s {
                    *v += h * A[s][j] * k[j][i];
                }
            }
            k[s] = (self.rhs)(t + C[s] * h, &ys)?;
        }
        let mut y5 = *y;
        let mut err = 0.0f64;
        for i in 0..N {
            let mut d5 = 0.0;
            let mut d4 = 0.0;
            for s in 0..7 {
                d5 += B5[s] * k[s][i];
                d4 += B4[s] * k[s][i];
            }
            y5[i] += h * d5;
            let scale = self.atol + self.rtol * y[i].abs().max(y5[i].abs());
            err = err.max((h * (d5 - d4)).abs() / scale);
        }
        Ok((y5, err))
    }

    /// Integrates from `t0` to exactly `t1` (either direction), calling `observe`
    /// after every accepted step with `(t, y)`.
    pub fn integrate<O: FnMut(f64, &[f64; N]) -> bool>(
        &mut self,
        t0: f64,
        y0: [f64; N],
        t1: f64,
        h0: f64,
        mut observe: O,
    ) -> Result<[f64; N]> {
        let dir = if t1 >= t0 { 1.0 } else { -1.0 };
        let mut t = t0;
        let mut y = y0;
        let mut h = h0.abs().min(self.h_max).max(1e-12) * dir;
        let mut rejects = 0usize;
        while (t1 - t) * dir > 0.0 {
            if (t + h - t1) * dir > 0.0 {
                h = t1 - t;
            }
            let (yn, err) = self.trial(t, &y, h)?;
            if err <= 1.0 {
                t = if (t + h - t1) * dir >= 0.0 { t1 } else { t + h };
                y = yn;
                if !observe(t, &y) {
                    return Ok(y);
                }
                rejects = 0;
            } else {
                rejects += 1;
                if rejects > 60 {
                    return Err(Error::Precondition(format!(
                        "step size underflow at t = {t}"
                    )));
                }
            }
            let factor = if err == 0.0 {
                5.0
            } else {
                (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
            };
            h = (h.abs() * factor).min(self.h_max) * dir;
        }
        Ok(y)
    }
}

fn to_state(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

fn to_z(s: &[f64]) -> Complex64 {
    Complex64::new(s[0], s[1])
}

/// One trajectory with its first return.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrbitRecord {
    pub start: (f64, f64),
    /// `(t, Re ψ, Im ψ)` at accepted steps.
    pub samples: Vec<(f64, f64, f64)>,
    /// `T_z`.
    pub period: f64,
    /// `|ψ(T_z, z) − z|`.
    pub closure_gap: f64,
    /// `2π / inf |Re U|`.
    pub bound: f64,
    pub bound_ok: bool,
}

/// `ψ(t, z0)` for any real `t`.
pub fn flow_map(field: &AngularField, z0: Complex64, t: f64, tol: f64) -> Result<Complex64> {
    if t == 0.0 || z0.norm() == 0.0 {
        return Ok(z0);
    }
    let mut rk = Dopri5::new(
        |_, s: &[f64; 2]| Ok(to_state(field.velocity(to_z(s))?)),
        tol,
        tol,
    );
    let y = rk.integrate(0.0, to_state(z0), t, 1e-2 * t.abs(), |_, _| true)?;
    Ok(to_z(&y))
}

/// Integrates until the trajectory has turned by `2π` around the origin, then
/// locates the return time by secant iteration on the unwrapped angle.
pub fn integrate_orbit(field: &AngularField, z0: Complex64, tol: f64) -> Result<OrbitRecord> {
    let inf = field.require_nondegenerate()?;
    let bound = 2.0 * PI / inf;
    let start = (z0.re, z0.im);
    if z0.norm() == 0.0 {
        let u0 = field.angular(z0)?.re.abs();
        let period = 2.0 * PI / u0;
        return Ok(OrbitRecord {
            start,
            samples: vec![(0.0, 0.0, 0.0)],
            period,
            closure_gap: 0.0,
            bound,
            bound_ok: period <= bound * (1.0 + 1e-9),
        });
    }
    let mut rk = Dopri5::new(
        |_, s: &[f64; 2]| Ok(to_state(field.velocity(to_z(s))?)),
        tol,
        tol,
    );
    // Keep every step well under a quarter turn so the angle unwraps unambiguously.
    rk.h_max = bound / 64.0;
    let mut samples = vec![(0.0, z0.re, z0.im)];
    let mut angle = 0.0f64;
    let mut prev = z0;
    let mut crossing: Option<(f64, [f64; 2], f64)> = None;
    let t_max = 2.0 * bound;
    rk.integrate(0.0, to_state(z0), t_max, bound / 256.0, |t, y| {
        let z = to_z(y);
        let step = (z / prev).arg();
        let before = angle;
        angle += step;
        samples.push((t, z.re, z.im));
        if angle.abs() >= 2.0 * PI {
            let (tp, _, _) = samples[samples.len() - 2];
            crossing = Some((tp, to_state(prev), before));
            return false;
        }
        prev = z;
        true
    })?;
    let Some((t_lo, y_lo, angle_lo)) = crossing else {
        return Err(Error::NoReturn {
            z0: start,
            bound: t_max,
        });
    };
    let sign = if angle > 0.0 { 1.0 } else { -1.0 };
    let z_lo = to_z(&y_lo);
    // g(s) = unwrapped angle at t_lo + s minus ±2π.
    let mut g = |s: f64| -> Result<(f64, Complex64)> {
        let z = to_z(&rk.integrate(0.0, y_lo, s, s.abs().max(1e-12), |_, _| true)?);
        Ok((angle_lo + (z / z_lo).arg() - sign * 2.0 * PI, z))
    };
    let t_hi_rel = samples.last().map_or(0.0, |s| s.0) - t_lo;
    let (mut s0, mut g0) = (0.0, angle_lo - sign * 2.0 * PI);
    let (mut s1, (mut g1, mut z1)) = (t_hi_rel, g(t_hi_rel)?);
    for _ in 0..60 {
        if g1 == 0.0 || (s1 - s0).abs() < 1e-15 * (t_lo + s1).abs().max(1.0) {
            break;
        }
        let s2 = s1 - g1 * (s1 - s0) / (g1 - g0);
        let (g2, z2) = g(s2)?;
        s0 = s1;
        g0 = g1;
        s1 = s2;
        g1 = g2;
        z1 = z2;
    }
    let period = t_lo + s1;
    Ok(OrbitRecord {
        start,
        samples,
        period,
        closure_gap: (z1 - z0).norm(),
        bound,
        bound_ok: period <= bound * (1.0 + 1e-9),
    })
}

/// `T_z`; closed form `2π/|U₀(|z|)|` for radial fields.
pub fn period_map(field: &AngularField, z: Complex64, tol: f64) -> Result<f64> {
    field.require_nondegenerate()?;
    if field.is_radial() {
        let (profile, omega) = field.base();
        return Ok(2.0 * PI / radial_angular_velocity(&profile, omega, z.norm()).abs());
    }
    Ok(integrate_orbit(field, z, tol)?.period)
}

/// `S f(z) = f(z) − (1/T_z) ∫₀^{T_z} f(ψ(τ, z)) dτ`.
pub fn orbit_average<D: Fn(Complex64) -> f64>(
    field: &AngularField,
    f: D,
    z: Complex64,
    tol: f64,
) -> Result<f64> {
    let period = period_map(field, z, tol)?;
    if z.norm() == 0.0 {
        return Ok(0.0);
    }
    let mut rk = Dopri5::new(
        |_, s: &[f64; 3]| {
            let zz = Complex64::new(s[0], s[1]);
            let w = field.velocity(zz)?;
            Ok([w.re, w.im, f(zz)])
        },
        tol,
        tol,
    );
    rk.h_max = period / 32.0;
    let y = rk.integrate(0.0, [z.re, z.im, 0.0], period, period / 256.0, |_, _| true)?;
    Ok(f(z) - y[2] / period)
}
