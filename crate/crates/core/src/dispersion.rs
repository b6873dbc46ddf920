//! The spectral function `ζ_n`, the singular set, eigenvalue search and the
//! large-`n` asymptotics of the eigenvalues.
//!
//! `ζ_n` depends on the profile only through `B/A`, so every search is done in
//! the spectral variable `x`, with `1/x = (4/A)(Ω − B/2)`.

use crate::error::{Error, Result};
use crate::hypergeom::{self, gauss_2f1, HyperParams, QuadraticFamilyIndex, DEFAULT_TOL};
use crate::quad;
use crate::regimes::Regime;
use crate::roots;
use serde::Serialize;

/// Number of samples used when scanning `ζ_n` for sign changes.
pub const SCAN_POINTS: usize = 256;

/// Minimum distance from the singular set for an eigenvalue to count as separated.
pub const SEPARATION_GAP: f64 = 1e-8;

/// Vorticity profile `f₀(r) = A r² + B` on the unit disc.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadraticProfile {
    /// Curvature `A`.
    pub a: f64,
    /// Offset `B`.
    pub b: f64,
}

impl QuadraticProfile {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if a == 0.0 || !a.is_finite() || !b.is_finite() {
            return Err(Error::Parameter(format!(
                "profile needs finite A != 0 and finite B, got ({a}, {b})"
            )));
        }
        Ok(QuadraticProfile { a, b })
    }

    /// `B/A`; every spectral quantity depends on the profile through it.
    pub fn ratio(&self) -> f64 {
        self.b / self.a
    }

    /// The profile with `A > 0` in the same class: `(A, B) → (−A, −B)` flips `Ω`.
    pub fn normalized(&self) -> (QuadraticProfile, f64) {
        if self.a > 0.0 {
            (*self, 1.0)
        } else {
            (
                QuadraticProfile {
                    a: -self.a,
                    b: -self.b,
                },
                -1.0,
            )
        }
    }

    pub fn f0(&self, r: f64) -> f64 {
        self.a * r * r + self.b
    }

    /// `κ = −2(A+B)/A`, defined when it is positive (`A + B < 0` for `A > 0`).
    pub fn kappa(&self) -> Option<f64> {
        let k = -2.0 * (1.0 + self.ratio());
        (k > 0.0).then_some(k)
    }

    /// `(A+2B) / (A(n+1))`.
    pub fn q(&self, n: f64) -> f64 {
        (1.0 + 2.0 * self.ratio()) / (n + 1.0)
    }
}

/// `Ω = A/(4x) + B/2`.
pub fn omega_from_x(x: f64, p: &QuadraticProfile) -> Result<f64> {
    if x == 0.0 {
        return Err(Error::Domain("x = 0 has no angular velocity".into()));
    }
    Ok(p.a / (4.0 * x) + p.b / 2.0)
}

/// `x = A / (4(Ω − B/2))`.
pub fn x_from_omega(omega: f64, p: &QuadraticProfile) -> Result<f64> {
    let d = omega - p.b / 2.0;
    if d == 0.0 {
        return Err(Error::Domain("Ω = B/2 has no spectral variable".into()));
    }
    Ok(p.a / (4.0 * d))
}

/// Order of a singular point: a positive integer or the accumulation point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Order {
    Finite(u32),
    Infinity,
}

/// A point `Ω̂_n` of the singular set and its spectral image `x̂_n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SingularPoint {
    pub n: Order,
    pub omega_hat: f64,
    /// `x̂_n`; infinite when `Ω̂_n = B/2`.
    pub x_hat: f64,
}

/// `Ω̂_n = A/4 + B/2 − A(n+1)/(2n(n+2)) − B/(2n)`; `Ω̂_∞ = A/4 + B/2`.
pub fn singular_point(n: Order, p: &QuadraticProfile) -> SingularPoint {
    let omega_hat = match n {
        Order::Finite(k) => {
            let k = k as f64;
            p.a / 4.0 + p.b / 2.0 - p.a * (k + 1.0) / (2.0 * k * (k + 2.0)) - p.b / (2.0 * k)
        }
        Order::Infinity => p.a / 4.0 + p.b / 2.0,
    };
    SingularPoint {
        n,
        omega_hat,
        x_hat: 1.0 / inv_x_hat(n, p),
    }
}

/// `1/x̂_n = 1 − 2(n+1)/(n(n+2)) − 2B/(An)`, computed directly.
pub fn inv_x_hat(n: Order, p: &QuadraticProfile) -> f64 {
    match n {
        Order::Finite(k) => {
            let k = k as f64;
            1.0 - 2.0 * (k + 1.0) / (k * (k + 2.0)) - 2.0 * p.ratio() / k
        }
        Order::Infinity => 1.0,
    }
}

/// Which of the equivalent representations of `ζ_n` to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ZetaForm {
    /// `F_n(x)[1 − x + qx] + ∫₀¹ F_n(τx) τⁿ(2xτ − 1) dτ`.
    Integral,
    /// Three-term combination of `F(a_n, b_n; n+1+k; x)`, `k = 0, 1, 2`.
    Contiguous,
    /// The alternative three-term combination.
    Alt,
}

impl ZetaForm {
    pub const ALL: [ZetaForm; 3] = [ZetaForm::Integral, ZetaForm::Contiguous, ZetaForm::Alt];

    pub fn as_str(&self) -> &'static str {
        match self {
            ZetaForm::Integral => "integral",
            ZetaForm::Contiguous => "contiguous",
            ZetaForm::Alt => "alt",
        }
    }
}

fn family(n: u32) -> Result<QuadraticFamilyIndex> {
    if n == 0 {
        return Err(Error::Parameter("mode n must be a positive integer".into()));
    }
    QuadraticFamilyIndex::new(n as f64)
}

/// `ζ_n(x)` for `x ≤ 1`. At `x = 1` the closed forms of `F(a_n, b_n; c; 1)` are used.
pub fn zeta(n: u32, x: f64, p: &QuadraticProfile, form: ZetaForm) -> Result<f64> {
    if x > 1.0 {
        return Err(Error::Domain(format!("ζ_n needs x <= 1, got {x}")));
    }
    let idx = family(n)?;
    let nf = n as f64;
    let q = p.q(nf);
    let fc =
        |shift: f64| -> Result<f64> { Ok(gauss_2f1(idx.shifted_c(shift), x, DEFAULT_TOL)?.value) };
    match form {
        ZetaForm::Contiguous => Ok((1.0 + x * (q - 1.0)) * fc(0.0)?
            + (2.0 * x - 1.0) / (nf + 1.0) * fc(1.0)?
            - 2.0 * x / ((nf + 1.0) * (nf + 2.0)) * fc(2.0)?),
        ZetaForm::Alt => Ok(q * x * fc(0.0)?
            + (nf - (nf + 1.0) * x) / (nf + 1.0) * fc(1.0)?
            + 2.0 * nf * x / ((nf + 1.0) * (nf + 2.0)) * fc(2.0)?),
        ZetaForm::Integral => {
            let params = idx.params();
            let integral = quad::integrate_with(
                |t| {
                    Ok(gauss_2f1(params, t * x, DEFAULT_TOL)?.value
                        * t.powi(n as i32)
                        * (2.0 * x * t - 1.0))
                },
                0.0,
                1.0,
                1e-13,
                1e-11,
            )?;
            Ok(fc(0.0)? * (1.0 - x + q * x) + integral.value)
        }
    }
}

/// `𝒫_n(x) = n/(n+1) + x[−n/(n+2) + (A+2B)/(A(n+1))]`, a lower bound for `ζ_n` on `x < 0`.
pub fn lower_polynomial(n: u32, x: f64, p: &QuadraticProfile) -> f64 {
    let nf = n as f64;
    nf / (nf + 1.0) + x * (-nf / (nf + 2.0) + p.q(nf))
}

/// What the existence theory predicts for `ζ_n` in the searched window.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Prediction {
    Root,
    NoRoot,
    Open,
}

/// One root of `ζ_n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EigenvalueRecord {
    pub n: u32,
    pub x_n: f64,
    pub omega_n: f64,
    /// `|ζ_n(x_n)|` from the contiguous form.
    pub residual: f64,
    /// The search window the root was bracketed in.
    pub bracket: (f64, f64),
    pub regime: Regime,
    pub separation_ok: bool,
}

/// Outcome of a per-`n` root search.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EigenSearch {
    pub n: u32,
    pub regime: Regime,
    pub prediction: Prediction,
    /// Windows that were scanned.
    pub windows: Vec<(f64, f64)>,
    pub roots: Vec<EigenvalueRecord>,
}

impl EigenSearch {
    /// The root when exactly one was found.
    pub fn root(&self) -> Option<&EigenvalueRecord> {
        (self.roots.len() == 1).then(|| &self.roots[0])
    }

    /// Several sign changes where the theory allows at most one.
    pub fn multiple(&self) -> bool {
        self.roots.len() > 1
    }

    /// Roots found where none were predicted, or vice versa.
    pub fn contradicts_prediction(&self) -> bool {
        match self.prediction {
            Prediction::Root => self.roots.is_empty(),
            Prediction::NoRoot => !self.roots.is_empty(),
            Prediction::Open => false,
        }
    }
}

#[derive(Debug, Clone, Copy)]
enum Window {
    /// Finite interval `[lo, hi]`.
    Finite(f64, f64),
    /// `(−∞, 0)`, sampled through `x = −(s/(1−s))²`.
    NegativeHalfLine,
}

impl Window {
    fn bounds(&self) -> (f64, f64) {
        match *self {
            Window::Finite(lo, hi) => (lo, hi),
            Window::NegativeHalfLine => (f64::NEG_INFINITY, 0.0),
        }
    }

    fn samples(&self, count: usize) -> Vec<f64> {
        match *self {
            Window::Finite(lo, hi) => (0..=count + 1)
                .map(|k| lo + (hi - lo) * k as f64 / (count + 1) as f64)
                .collect(),
            Window::NegativeHalfLine => (1..=count)
                .rev()
                .map(|k| {
                    let s = k as f64 / (count + 1) as f64;
                    -(s / (1.0 - s)).powi(2)
                })
                .collect(),
        }
    }
}

/// Scan windows and prediction for mode `n ≥ 2`.
fn plan(n: u32, p: &QuadraticProfile) -> Result<(Regime, Prediction, Vec<Window>)> {
    let beta = p.ratio();
    let nf = n as f64;
    let regime = Regime::of(p);
    Ok(match regime {
        Regime::RInfty => {
            let hi = 1.0 + (1.0 + beta) / nf;
            if hi <= 0.0 {
                (regime, Prediction::Open, vec![])
            } else {
                (regime, Prediction::Open, vec![Window::Finite(0.0, hi)])
            }
        }
        Regime::RFinite => {
            let q = p.q(nf);
            if nf <= 2.0 * beta {
                let w = if q > 1.0 {
                    Window::Finite(1.0 / (1.0 - q), 0.0)
                } else {
                    Window::NegativeHalfLine
                };
                (regime, Prediction::Root, vec![w])
            } else if nf >= 2.0 * beta + 2.0 {
                (regime, Prediction::NoRoot, vec![Window::NegativeHalfLine])
            } else {
                (regime, Prediction::Open, vec![Window::NegativeHalfLine])
            }
        }
        Regime::R0 => (
            regime,
            Prediction::NoRoot,
            vec![Window::NegativeHalfLine, Window::Finite(0.0, 1.0)],
        ),
        Regime::TransientUnknown if beta > 0.0 => (
            regime,
            Prediction::Open,
            vec![Window::NegativeHalfLine, Window::Finite(0.0, 1.0)],
        ),
        Regime::TransientUnknown | Regime::OneFoldOnly => {
            return Err(Error::RegimeUnsupported(format!(
                "B/A = {beta} lies in (-1, -1/2); modes n >= 2 are not analyzed there"
            )))
        }
    })
}

fn record(
    n: u32,
    x: f64,
    p: &QuadraticProfile,
    bracket: (f64, f64),
    regime: Regime,
) -> Result<EigenvalueRecord> {
    let residual = zeta(n, x, p, ZetaForm::Contiguous)?.abs();
    let mut rec = EigenvalueRecord {
        n,
        x_n: x,
        omega_n: omega_from_x(x, p)?,
        residual,
        bracket,
        regime,
        separation_ok: false,
    };
    rec.separation_ok = separation_check(&rec, p, 64);
    Ok(rec)
}

/// Searches for the roots of `ζ_n` in the window the existence theory assigns to
/// the profile's regime: a sign scan followed by Brent on each sign change.
pub fn find_eigenvalue(n: u32, p: &QuadraticProfile, tol: f64) -> Result<EigenSearch> {
    if n == 0 {
        return Err(Error::Parameter("mode n must be a positive integer".into()));
    }
    let regime = Regime::of(p);
    if n == 1 {
        // ζ₁(x) = (1−x)(Bx/A + 1/2): the only admissible root is x = −A/(2B).
        let beta = p.ratio();
        let mut roots = Vec::new();
        if beta != 0.0 {
            let x1 = -1.0 / (2.0 * beta);
            if x1 < 1.0 {
                roots.push(record(1, x1, p, (x1, x1), regime)?);
            }
        }
        let prediction = if roots.is_empty() {
            Prediction::NoRoot
        } else {
            Prediction::Root
        };
        return Ok(EigenSearch {
            n,
            regime,
            prediction,
            windows: vec![],
            roots,
        });
    }
    let (regime, prediction, windows) = plan(n, p)?;
    let f = |x: f64| zeta(n, x, p, ZetaForm::Contiguous);
    let mut roots = Vec::new();
    for w in &windows {
        let xs = w.samples(SCAN_POINTS);
        let vals = xs.iter().map(|&x| f(x)).collect::<Result<Vec<_>>>()?;
        for k in 0..xs.len() - 1 {
            let (x0, x1, f0, f1) = (xs[k], xs[k + 1], vals[k], vals[k + 1]);
            let root = if f0 == 0.0 {
                Some(x0)
            } else if f0.signum() != f1.signum() && f1 != 0.0 {
                Some(roots::brent(
                    f,
                    x0,
                    x1,
                    1e-15 * x0.abs().max(x1.abs()).max(1e-300),
                )?)
            } else {
                None
            };
            if let Some(x) = root {
                let rec = record(n, x, p, w.bounds(), regime)?;
                if rec.residual > tol {
                    return Err(Error::Bracketing {
                        n,
                        lo: x0,
                        hi: x1,
                        detail: format!("residual {:e} above tolerance {tol:e}", rec.residual),
                    });
                }
                roots.push(rec);
            }
        }
        if let Some(&last) = vals.last() {
            if last == 0.0 {
                roots.push(record(n, *xs.last().unwrap(), p, w.bounds(), regime)?);
            }
        }
    }
    let search = EigenSearch {
        n,
        regime,
        prediction,
        windows: windows.iter().map(|w| w.bounds()).collect(),
        roots,
    };
    if prediction == Prediction::Root && search.roots.is_empty() {
        let (lo, hi) = search.windows.first().copied().unwrap_or((0.0, 0.0));
        return Err(Error::Bracketing {
            n,
            lo,
            hi,
            detail: "no sign change of ζ_n in the predicted window".into(),
        });
    }
    Ok(search)
}

/// `η(κ) = ∫₀^∞ e^{−κτ}/(1+τ)² dτ`.
pub fn eta(kappa: f64) -> Result<f64> {
    if !(kappa >= 0.0) {
        return Err(Error::Domain(format!("η needs κ >= 0, got {kappa}")));
    }
    Ok(quad::integrate_half_line(
        |t| (-kappa * t).exp() / ((1.0 + t) * (1.0 + t)),
        1e-15,
        1e-14,
    )?
    .value)
}

/// `c_κ = κ² − 2 + 2η(κ)`.
pub fn c_kappa(kappa: f64) -> Result<f64> {
    Ok(kappa * kappa - 2.0 + 2.0 * eta(kappa)?)
}

/// Second-order prediction `1 − κ/n + c_κ/n²` of the eigenvalue `x_n` when `A + B < 0`.
pub fn asymptotic_eigenvalue(n: u32, p: &QuadraticProfile) -> Result<f64> {
    let kappa = p.kappa().ok_or_else(|| {
        Error::RegimeUnsupported(format!("asymptotics need A + B < 0 (B/A = {})", p.ratio()))
    })?;
    let nf = n as f64;
    Ok(1.0 - kappa / nf + c_kappa(kappa)? / (nf * nf))
}

/// `g(κ) = κ − 2η(κ)`.
pub fn g_kappa(kappa: f64) -> Result<f64> {
    Ok(kappa - 2.0 * eta(kappa)?)
}

/// The root of `g` in `(0, 2)`.
pub fn kappa_critical() -> Result<f64> {
    let g0 = g_kappa(0.0)?;
    let g2 = g_kappa(2.0)?;
    if !(g0 < 0.0 && g2 > 0.0) {
        return Err(Error::Domain(format!(
            "g does not change sign on (0, 2): g(0) = {g0}, g(2) = {g2}"
        )));
    }
    roots::bisect(g_kappa, 0.0, 2.0, 80)
}

/// True when the eigenvalue stays away from `x̂_{np}` for `p ≤ p_max`, and, for
/// `B > A`, when `1/x̂_n < 1/x_n < 1/x̂_{2n}`.
pub fn separation_check(rec: &EigenvalueRecord, p: &QuadraticProfile, p_max: u32) -> bool {
    if p_max == 0 {
        return true;
    }
    let far = (1..=p_max).all(|k| {
        let xh = 1.0 / inv_x_hat(Order::Finite(rec.n * k), p);
        (rec.x_n - xh).abs() > SEPARATION_GAP
    });
    if !far {
        return false;
    }
    if p.ratio() > 1.0 {
        let inv = 1.0 / rec.x_n;
        let lo = inv_x_hat(Order::Finite(rec.n), p);
        let hi = inv_x_hat(Order::Finite(2 * rec.n), p);
        return lo < inv && inv < hi;
    }
    true
}

/// `P_n(1/x) = −(1/(n+1))(1/x² + ((A+2B)/A)(n+2)/n)` for `x > 1`.
pub fn singular_case_obstruction(n: u32, x: f64, p: &QuadraticProfile) -> Result<f64> {
    if n < 2 {
        return Err(Error::Parameter("obstruction is defined for n >= 2".into()));
    }
    if !(x > 1.0) {
        return Err(Error::Domain(format!("obstruction needs x > 1, got {x}")));
    }
    let nf = n as f64;
    Ok(-(1.0 / (nf + 1.0)) * (1.0 / (x * x) + (1.0 + 2.0 * p.ratio()) * (nf + 2.0) / nf))
}

/// The zero of `F(1−√2, 1+√2; 1; ·)` in `(0, 1)`.
pub fn x0_root() -> Result<f64> {
    let s = std::f64::consts::SQRT_2;
    let p = HyperParams::new(1.0 - s, 1.0 + s, 1.0)?;
    roots::bisect(|x| Ok(gauss_2f1(p, x, 1e-13)?.value), 0.0, 0.95, 100)
}

/// `(2/3)(1−x)^√3 + (x/2)(1−x)^{√3−1} − 1/3`.
pub fn auxiliary_polynomial(x: f64) -> f64 {
    let r3 = 3f64.sqrt();
    2.0 / 3.0 * (1.0 - x).powf(r3) + x / 2.0 * (1.0 - x).powf(r3 - 1.0) - 1.0 / 3.0
}

/// The root of [`auxiliary_polynomial`] in `(0, 1)`.
pub fn auxiliary_root() -> Result<f64> {
    roots::bisect(|x| Ok(auxiliary_polynomial(x)), 0.0, 1.0, 100)
}

/// `ζ_n(−A/(2B))`: positive when the mode-`n` dispersion set misses the one-fold eigenvalue.
pub fn one_fold_margin(n: u32, p: &QuadraticProfile) -> Result<f64> {
    if p.b == 0.0 {
        return Err(Error::Domain("B = 0 has no one-fold eigenvalue".into()));
    }
    zeta(n, -p.a / (2.0 * p.b), p, ZetaForm::Contiguous)
}

/// `F_n(1)` through the Gamma closed form, for use in bounds.
pub fn family_at_one(n: u32) -> Result<f64> {
    hypergeom::fn_family(family(n)?, 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn prof(a: f64, b: f64) -> QuadraticProfile {
        QuadraticProfile::new(a, b).unwrap()
    }

    #[test]
    fn omega_x_conversions() {
        assert_abs_diff_eq!(
            omega_from_x(1.0, &prof(1.0, 0.0)).unwrap(),
            0.25,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            x_from_omega(-0.75, &prof(1.0, -2.0)).unwrap(),
            1.0,
            epsilon = 1e-15
        );
        assert!(omega_from_x(0.0, &prof(1.0, 0.0)).is_err());
        assert!(x_from_omega(0.5, &prof(1.0, 1.0)).is_err());
    }

    #[test]
    fn singular_points() {
        let s = singular_point(Order::Finite(1), &prof(1.7, -0.3));
        assert_abs_diff_eq!(s.omega_hat, -1.7 / 12.0, epsilon = 1e-15);
        let s = singular_point(Order::Finite(1), &prof(1.0, 0.0));
        assert_abs_diff_eq!(s.x_hat, -3.0, epsilon = 1e-13);
        let s = singular_point(Order::Infinity, &prof(1.0, 0.0));
        assert_abs_diff_eq!(s.omega_hat, 0.25, epsilon = 1e-15);
        assert_abs_diff_eq!(s.x_hat, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn zeta_at_origin() {
        for n in [1, 2, 7, 30] {
            for form in ZetaForm::ALL {
                let v = zeta(n, 0.0, &prof(1.0, -2.0), form).unwrap();
                assert_abs_diff_eq!(v, n as f64 / (n as f64 + 1.0), epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn zeta_first_mode_closed_form() {
        let p = prof(2.0, 3.0);
        for &x in &[-4.0, -0.5, 0.3, 0.9] {
            let exact = (1.0 - x) * (1.5 * x + 0.5);
            for form in ZetaForm::ALL {
                assert_abs_diff_eq!(zeta(1, x, &p, form).unwrap(), exact, epsilon = 1e-10);
            }
        }
    }

    #[test]
    fn first_mode_root() {
        let s = find_eigenvalue(1, &prof(1.0, 1.0), 1e-10).unwrap();
        let r = s.root().unwrap();
        assert_abs_diff_eq!(r.x_n, -0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(r.omega_n, 0.0, epsilon = 1e-15);
        assert!(r.separation_ok);
    }

    #[test]
    fn obstruction_value() {
        let v = singular_case_obstruction(2, 2.0, &prof(1.0, 0.0)).unwrap();
        assert_abs_diff_eq!(v, -0.75, epsilon = 1e-15);
    }

    #[test]
    fn transient_regime_is_refused() {
        assert!(matches!(
            find_eigenvalue(3, &prof(1.0, -0.7), 1e-10),
            Err(Error::RegimeUnsupported(_))
        ));
    }

    #[test]
    fn g_at_zero() {
        assert_abs_diff_eq!(g_kappa(0.0).unwrap(), -2.0, epsilon = 1e-13);
    }
}
