//! Closed forms of the Cauchy and logarithmic disc integrals for radial and
//! single-mode densities, and a brute-force area quadrature to check them.
//!
//! A modal density is `h(re^{iθ}) = h_n(r) cos(nθ)`; a conformal perturbation is
//! `k(z) = z Σ A_n zⁿ` with real `A_n`.

use crate::error::{Error, Result};
use crate::quad;
use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;

const ABS_TOL: f64 = 1e-12;
const REL_TOL: f64 = 1e-12;

/// `h(re^{iθ}) = h_n(r) cos(nθ)`.
#[derive(Clone, Copy)]
pub struct ModalDensity<'a> {
    pub n: u32,
    pub h: &'a dyn Fn(f64) -> f64,
}

impl<'a> ModalDensity<'a> {
    pub fn new(n: u32, h: &'a dyn Fn(f64) -> f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Parameter("modal density needs n >= 1".into()));
        }
        Ok(ModalDensity { n, h })
    }

    /// `h(y)` at a point of the disc.
    pub fn at(&self, y: Complex64) -> f64 {
        (self.h)(y.norm()) * (self.n as f64 * y.arg()).cos()
    }
}

/// Finitely supported coefficients of `k(z) = z Σ A_n zⁿ`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConformalModeCoeffs {
    /// Pairs `(n, A_n)` with `n ≥ 1`.
    pub modes: Vec<(u32, f64)>,
}

impl ConformalModeCoeffs {
    pub fn new(modes: Vec<(u32, f64)>) -> Result<Self> {
        if modes.iter().any(|&(n, a)| n == 0 || !a.is_finite()) {
            return Err(Error::Parameter(
                "conformal modes need n >= 1 and finite A_n".into(),
            ));
        }
        Ok(ConformalModeCoeffs { modes })
    }

    pub fn k(&self, z: Complex64) -> Complex64 {
        self.modes.iter().map(|&(n, a)| a * z.powu(n + 1)).sum()
    }

    pub fn k_prime(&self, z: Complex64) -> Complex64 {
        self.modes
            .iter()
            .map(|&(n, a)| a * (n as f64 + 1.0) * z.powu(n))
            .sum()
    }
}

/// The four integrals involving `k`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConformalPairValues {
    /// `∫ (k(z)−k(y))/(z−y)² f₀(y) dA(y)`.
    pub quotient_squared: Complex64,
    /// `∫ f₀(y) Re[k′(y)]/(z−y) dA(y)`.
    pub cauchy_k_prime: Complex64,
    /// `∫ (k(z)−k(y))/(z−y) f₀(y) dA(y)`.
    pub quotient: Complex64,
    /// `∫ log|z−y| f₀(y) Re[k′(y)] dA(y)`.
    pub log_k_prime: f64,
}

fn check_point(z: Complex64) -> Result<()> {
    if !(z.norm() <= 1.0 + 1e-12) {
        return Err(Error::Domain(format!(
            "point {z} lies outside the closed unit disc"
        )));
    }
    Ok(())
}

fn integrate(f: impl FnMut(f64) -> f64, a: f64, b: f64) -> Result<f64> {
    if a >= b {
        return Ok(0.0);
    }
    Ok(quad::integrate(f, a, b, ABS_TOL, REL_TOL)?.value)
}

/// `∫₀^ρ r f₀(r) dr`.
fn mass<F: Fn(f64) -> f64>(f0: &F, rho: f64) -> Result<f64> {
    integrate(|r| r * f0(r), 0.0, rho)
}

/// `∫_𝔻 f₀(y)/(z−y) dA = 2π (z̄/|z|²) ∫₀^{|z|} r f₀(r) dr`.
pub fn cauchy_radial<F: Fn(f64) -> f64>(f0: &F, z: Complex64) -> Result<Complex64> {
    check_point(z)?;
    let rho = z.norm();
    if rho == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    Ok(2.0 * PI * z.conj() / (rho * rho) * mass(f0, rho)?)
}

/// `∫_𝔻 log|z−y| f₀(y) dA = −2π ∫_{|z|}¹ (1/τ) ∫₀^τ r f₀(r) dr dτ`.
pub fn log_potential_radial<F: Fn(f64) -> f64>(f0: &F, z: Complex64) -> Result<f64> {
    check_point(z)?;
    let rho = z.norm().min(1.0);
    if rho >= 1.0 {
        return Ok(0.0);
    }
    let v = quad::integrate_with(|tau| Ok(mass(f0, tau)? / tau), rho, 1.0, ABS_TOL, REL_TOL)?.value;
    Ok(-2.0 * PI * v)
}

/// `∫_{|z|}¹ (|z|/r)^{p} r^{q} h_n(r) dr` and `∫₀^{|z|} (r/|z|)^{p'} r^{q'} h_n(r) dr`,
/// the scaled forms of the two radial moments.
fn modal_moments(
    h: &ModalDensity<'_>,
    rho: f64,
    outer: (i32, i32),
    inner: (i32, i32),
) -> Result<(f64, f64)> {
    let hh = h.h;
    let out = integrate(
        |r| (rho / r).powi(outer.0) * r.powi(outer.1) * hh(r),
        rho,
        1.0,
    )?;
    let inn = if rho > 0.0 {
        integrate(
            |r| (r / rho).powi(inner.0) * r.powi(inner.1) * hh(r),
            0.0,
            rho,
        )?
    } else {
        0.0
    };
    Ok((out, inn))
}

/// `∫_𝔻 h(y)/(z−y) dA = π[−z^{n−1} ∫_{|z|}¹ h_n r^{1−n} dr + (z̄^{n+1}/|z|^{2n+2}) ∫₀^{|z|} r^{n+1} h_n dr]`.
pub fn cauchy_modal(h: &ModalDensity<'_>, z: Complex64) -> Result<Complex64> {
    check_point(z)?;
    let n = h.n as i32;
    let rho = z.norm();
    if rho == 0.0 {
        if n == 1 {
            return Ok(Complex64::new(-PI * integrate(h.h, 0.0, 1.0)?, 0.0));
        }
        return Ok(Complex64::new(0.0, 0.0));
    }
    // z^{n−1} r^{1−n} = e^{i(n−1)θ}(ρ/r)^{n−1} and z̄^{n+1} r^{n+1}/ρ^{2n+2} = e^{−i(n+1)θ}(r/ρ)^{n+1}.
    let (out, inn) = modal_moments(h, rho, (n - 1, 0), (n + 1, 0))?;
    let theta = z.arg();
    let e_out = Complex64::from_polar(1.0, (n - 1) as f64 * theta);
    let e_in = Complex64::from_polar(1.0, -((n + 1) as f64) * theta);
    Ok(PI * (-e_out * out + e_in * inn))
}

/// `∫_𝔻 log|z−y| h(y) dA = −(π/n) cos(nθ)[|z|ⁿ ∫_{|z|}¹ h_n r^{1−n} dr + |z|^{−n} ∫₀^{|z|} r^{n+1} h_n dr]`.
pub fn log_potential_modal(h: &ModalDensity<'_>, z: Complex64) -> Result<f64> {
    check_point(z)?;
    let n = h.n as i32;
    let rho = z.norm();
    if rho == 0.0 {
        return Ok(0.0);
    }
    let (out, inn) = modal_moments(h, rho, (n, 1), (n, 1))?;
    Ok(-PI / n as f64 * (n as f64 * z.arg()).cos() * (out + inn))
}

/// The four `k`-weighted integrals, each through its closed form.
pub fn conformal_pair_integrals<F: Fn(f64) -> f64>(
    k: &ConformalModeCoeffs,
    f0: &F,
    z: Complex64,
) -> Result<ConformalPairValues> {
    check_point(z)?;
    let rho = z.norm();
    let m_in = mass(f0, rho)?;
    let m_all = mass(f0, 1.0)?;
    let mut vals = ConformalPairValues {
        quotient_squared: Complex64::new(0.0, 0.0),
        cauchy_k_prime: Complex64::new(0.0, 0.0),
        quotient: Complex64::new(0.0, 0.0),
        log_k_prime: 0.0,
    };
    for &(n, a) in &k.modes {
        let nf = n as f64;
        vals.quotient_squared += 2.0 * PI * a * z.powu(n - 1) * (m_in - nf * (m_all - m_in));
        vals.quotient += 2.0 * PI * a * z.powu(n) * m_all;
        // Re k′ contributes the modal density A_n (n+1) rⁿ f₀(r) cos(nθ).
        let hn = |r: f64| a * (nf + 1.0) * r.powi(n as i32) * f0(r);
        let modal = ModalDensity::new(n, &hn)?;
        vals.cauchy_k_prime += cauchy_modal(&modal, z)?;
        vals.log_k_prime += log_potential_modal(&modal, z)?;
    }
    Ok(vals)
}

/// A polynomial test configuration for the eight identities: the radial profile
/// `f₀(r) = c₀ + c₁r² + c₂r⁴`, the modal density `h_n(r) = rⁿ(d₀ + d₁r²)` and
/// `k(z) = z(d₀zⁿ + d₁z^{n+1})`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IdentityCase {
    pub f0: [f64; 3],
    pub n: u32,
    pub h: [f64; 2],
    pub z: Complex64,
}

impl IdentityCase {
    pub fn f0_at(&self, r: f64) -> f64 {
        let r2 = r * r;
        self.f0[0] + self.f0[1] * r2 + self.f0[2] * r2 * r2
    }

    pub fn h_at(&self, r: f64) -> f64 {
        r.powi(self.n as i32) * (self.h[0] + self.h[1] * r * r)
    }

    pub fn conformal(&self) -> Result<ConformalModeCoeffs> {
        ConformalModeCoeffs::new(vec![(self.n, self.h[0]), (self.n + 1, self.h[1])])
    }
}

/// Closed form and oracle value of identity `k ∈ 1..=8`:
/// 1 `∫(k(z)−k(y))/(z−y)² f₀`, 2 `∫f₀ Re k′/(z−y)`, 3 `∫f₀/(z−y)`, 4 `∫h/(z−y)`,
/// 5 `∫log|z−y| h`, 6 `∫(k(z)−k(y))/(z−y) f₀`, 7 `∫log|z−y| f₀ Re k′`, 8 `∫log|z−y| f₀`.
pub fn identity_values(
    k: u8,
    case: &IdentityCase,
    grid: OracleGrid,
) -> Result<(Complex64, Complex64)> {
    if case.n == 0 {
        return Err(Error::Parameter("identity cases need n >= 1".into()));
    }
    let z = case.z;
    let f0 = |r: f64| case.f0_at(r);
    let hn = |r: f64| case.h_at(r);
    let h = ModalDensity::new(case.n, &hn)?;
    let radial = |y: Complex64| f0(y.norm());
    let modal = |y: Complex64| h.at(y);
    let re = |v: f64| Complex64::new(v, 0.0);
    Ok(match k {
        3 => (cauchy_radial(&f0, z)?, oracle_cauchy(&radial, z, grid)?),
        4 => (cauchy_modal(&h, z)?, oracle_cauchy(&modal, z, grid)?),
        5 => (
            re(log_potential_modal(&h, z)?),
            re(oracle_log(&modal, z, grid)?),
        ),
        8 => (
            re(log_potential_radial(&f0, z)?),
            re(oracle_log(&radial, z, grid)?),
        ),
        1 | 2 | 6 | 7 => {
            let kc = case.conformal()?;
            let c = conformal_pair_integrals(&kc, &f0, z)?;
            let o = oracle_conformal_pair(&kc, &f0, z, grid)?;
            match k {
                1 => (c.quotient_squared, o.quotient_squared),
                2 => (c.cauchy_k_prime, o.cauchy_k_prime),
                6 => (c.quotient, o.quotient),
                _ => (re(c.log_k_prime), re(o.log_k_prime)),
            }
        }
        _ => {
            return Err(Error::Parameter(format!(
                "identity index must be in 1..=8, got {k}"
            )))
        }
    })
}

/// Node counts of the brute-force area quadrature.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct OracleGrid {
    /// Gauss–Legendre nodes along each ray.
    pub radial: usize,
    /// Equispaced ray directions.
    pub angular: usize,
}

impl Default for OracleGrid {
    fn default() -> Self {
        OracleGrid {
            radial: 160,
            angular: 256,
        }
    }
}

/// `∫_𝔻 g(y) dA(y)` in polar coordinates centred at `z`: `y = z + ρe^{iφ}`,
/// `ρ ∈ [0, ρ_max(φ)]`. The area element `ρ dρ dφ` cancels the `1/|z−y|`
/// singularity of the Cauchy kernels, so no exclusion disc is needed.
/// Gauss–Legendre in `ρ`; midpoint rule in `φ`, or Gauss–Legendre over the
/// inward half-circle when `|z| = 1`.
///
/// `g` receives `(y, ρ, φ)` and must return the integrand times `ρ`.
pub fn area_oracle<G>(z: Complex64, grid: OracleGrid, mut g: G) -> Result<Complex64>
where
    G: FnMut(Complex64, f64, f64) -> Complex64,
{
    check_point(z)?;
    let (xs, ws) = quad::gauss_legendre(grid.radial);
    let r2 = z.norm_sqr().min(1.0);
    // Inside the disc every ray has positive length and the φ-integrand is smooth
    // and periodic, so the midpoint rule converges fast. On the boundary only the
    // inward half-circle of directions contributes and the ray length has kinks at
    // its ends; Gauss–Legendre on that arc avoids them.
    let angles: Vec<(f64, f64)> = if r2 >= 1.0 - 1e-14 {
        let (ts, tw) = quad::gauss_legendre(grid.angular);
        let mid = z.arg() + PI;
        ts.iter()
            .zip(&tw)
            .map(|(t, w)| (mid + 0.5 * PI * t, 0.5 * PI * w))
            .collect()
    } else {
        let dphi = 2.0 * PI / grid.angular as f64;
        (0..grid.angular)
            .map(|k| ((k as f64 + 0.5) * dphi, dphi))
            .collect()
    };
    let mut total = Complex64::new(0.0, 0.0);
    for (phi, dphi) in angles {
        let dir = Complex64::from_polar(1.0, phi);
        let p = (z.conj() * dir).re;
        let rmax = -p + (p * p + 1.0 - r2).max(0.0).sqrt();
        if rmax <= 0.0 {
            continue;
        }
        let mut ray = Complex64::new(0.0, 0.0);
        for (x, w) in xs.iter().zip(&ws) {
            let rho = 0.5 * rmax * (x + 1.0);
            ray += w * g(z + rho * dir, rho, phi);
        }
        total += 0.5 * rmax * dphi * ray;
    }
    Ok(total)
}

/// Oracle for `∫ f(y)/(z−y) dA`.
pub fn oracle_cauchy<D: Fn(Complex64) -> f64>(
    density: &D,
    z: Complex64,
    grid: OracleGrid,
) -> Result<Complex64> {
    // 1/(z−y) · ρ = −e^{−iφ}.
    area_oracle(z, grid, |y, _rho, phi| {
        -Complex64::from_polar(1.0, -phi) * density(y)
    })
}

/// Oracle for `∫ log|z−y| f(y) dA`.
pub fn oracle_log<D: Fn(Complex64) -> f64>(
    density: &D,
    z: Complex64,
    grid: OracleGrid,
) -> Result<f64> {
    Ok(area_oracle(z, grid, |y, rho, _| {
        let v = if rho > 0.0 { rho * rho.ln() } else { 0.0 };
        Complex64::new(v * density(y), 0.0)
    })?
    .re)
}

/// Oracle for `∫ w(z, y) f(y) dA` with a bounded (after multiplying by `ρ`) complex kernel.
pub fn oracle_kernel<K: Fn(Complex64, Complex64) -> Complex64, D: Fn(Complex64) -> f64>(
    kernel: &K,
    density: &D,
    z: Complex64,
    grid: OracleGrid,
) -> Result<Complex64> {
    area_oracle(z, grid, |y, rho, _| kernel(z, y) * rho * density(y))
}

/// All four `k`-weighted integrals by the area oracle.
pub fn oracle_conformal_pair<F: Fn(f64) -> f64>(
    k: &ConformalModeCoeffs,
    f0: &F,
    z: Complex64,
    grid: OracleGrid,
) -> Result<ConformalPairValues> {
    let radial = |y: Complex64| f0(y.norm());
    let weighted = |y: Complex64| f0(y.norm()) * k.k_prime(y).re;
    let kz = k.k(z);
    // Gauss–Legendre nodes never reach ρ = 0, and ρ times either quotient stays bounded.
    let q2 = area_oracle(z, grid, |y, rho, _| {
        let d = z - y;
        (kz - k.k(y)) / (d * d) * rho * radial(y)
    })?;
    let q1 = area_oracle(z, grid, |y, rho, _| {
        (kz - k.k(y)) / (z - y) * rho * radial(y)
    })?;
    Ok(ConformalPairValues {
        quotient_squared: q2,
        cauchy_k_prime: oracle_cauchy(&weighted, z, grid)?,
        quotient: q1,
        log_k_prime: oracle_log(&weighted, z, grid)?,
    })
}
