//! Gamma function and the Gauss hypergeometric function `₂F₁(a, b; c; x)` on
//! `(−∞, 1]`, together with the quadratic-profile families `F_n` and `F̂_n`.
//!
//! Evaluation paths:
//! - power series on `[0, 0.75]` (and for terminating parameters anywhere),
//! - Pfaff transformation for `x < 0`,
//! - the Euler integral on `(0.75, 1)` when `c > b > 0` (or `c > a > 0`),
//! - Gauss's closed form at `x = 1` when `c − a − b > 0`.
//!
//! Tolerances are absolute for `|F| ≤ 1` and relative above, i.e. a result is
//! accepted when its error bound is below `tol·max(1, |F|)`.

use crate::error::{Error, Result};
use crate::quad;
use serde::Serialize;

/// Default accuracy target for hypergeometric evaluations.
pub const DEFAULT_TOL: f64 = 1e-10;

const MAX_TERMS: usize = 100_000;
const SERIES_LIMIT: f64 = 0.75;
const LOG_GUARD: f64 = 1e-8;

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_606_512_090_082;

/// Parameters `(a, b; c)` of a Gauss hypergeometric function.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HyperParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl HyperParams {
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        let p = HyperParams { a, b, c };
        p.validate()?;
        Ok(p)
    }

    fn validate(&self) -> Result<()> {
        if !(self.a.is_finite() && self.b.is_finite() && self.c.is_finite()) {
            return Err(Error::Parameter(format!("non-finite parameters {self:?}")));
        }
        if is_nonpositive_integer(self.c) {
            return Err(Error::Parameter(format!(
                "c = {} is a non-positive integer",
                self.c
            )));
        }
        Ok(())
    }
}

/// Which evaluation path produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Series,
    Pfaff,
    Integral,
    GammaAtOne,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Series => "series",
            Method::Pfaff => "pfaff",
            Method::Integral => "integral",
            Method::GammaAtOne => "gamma-at-one",
        }
    }
}

/// A completed evaluation of `₂F₁`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HyperEval {
    pub params: HyperParams,
    pub x: f64,
    pub value: f64,
    pub abs_err: f64,
    pub method: Method,
}

fn is_nonpositive_integer(v: f64) -> bool {
    v <= 0.0 && v == v.round()
}

/// `Γ(x)`; errors at the poles `0, −1, −2, …`.
pub fn gamma(x: f64) -> Result<f64> {
    if is_nonpositive_integer(x) {
        return Err(Error::Pole(x));
    }
    Ok(statrs::function::gamma::gamma(x))
}

/// `(ln|Γ(x)|, sign Γ(x))`.
pub fn ln_gamma_signed(x: f64) -> Result<(f64, f64)> {
    if is_nonpositive_integer(x) {
        return Err(Error::Pole(x));
    }
    if x > 0.0 {
        return Ok((statrs::function::gamma::ln_gamma(x), 1.0));
    }
    let s = (std::f64::consts::PI * x).sin();
    let lg = std::f64::consts::PI.ln() - s.abs().ln() - statrs::function::gamma::ln_gamma(1.0 - x);
    Ok((lg, s.signum()))
}

/// `B(p, q) = Γ(p)Γ(q)/Γ(p+q)` for `p, q > 0`.
pub fn beta(p: f64, q: f64) -> Result<f64> {
    if p <= 0.0 || q <= 0.0 {
        return Err(Error::Domain(format!(
            "beta({p}, {q}) needs positive arguments"
        )));
    }
    let ln = statrs::function::gamma::ln_gamma(p) + statrs::function::gamma::ln_gamma(q)
        - statrs::function::gamma::ln_gamma(p + q);
    Ok(ln.exp())
}

/// Rising factorial `(a)_k`.
pub fn pochhammer(a: f64, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, j| acc * (a + j as f64))
}

/// `Γ(c)Γ(c−a−b) / (Γ(c−a)Γ(c−b))`, returning value and an error bound.
fn gauss_at_one(a: f64, b: f64, c: f64) -> Result<(f64, f64)> {
    if is_nonpositive_integer(c - a) || is_nonpositive_integer(c - b) {
        return Ok((0.0, 0.0));
    }
    let (l1, s1) = ln_gamma_signed(c)?;
    let (l2, s2) = ln_gamma_signed(c - a - b)?;
    let (l3, s3) = ln_gamma_signed(c - a)?;
    let (l4, s4) = ln_gamma_signed(c - b)?;
    let ln = l1 + l2 - l3 - l4;
    let value = s1 * s2 * s3 * s4 * ln.exp();
    let scale = l1.abs() + l2.abs() + l3.abs() + l4.abs() + 1.0;
    Ok((value, 8.0 * f64::EPSILON * scale * value.abs()))
}

/// Power series with a geometric tail bound.
fn series(a: f64, b: f64, c: f64, x: f64, tol: f64) -> Result<(f64, f64)> {
    let mut term = 1.0f64;
    let mut sum = 1.0f64;
    let mut abs_sum = 1.0f64;
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        let ratio = (a + kf) * (b + kf) / ((c + kf) * (kf + 1.0)) * x;
        let next = term * ratio;
        if next == 0.0 {
            return Ok((sum, 4.0 * f64::EPSILON * abs_sum));
        }
        sum += next;
        abs_sum += next.abs();
        let decreasing = next.abs() < term.abs();
        term = next;
        if decreasing && x.abs() < 1.0 {
            let rho = ratio.abs().max(x.abs());
            if rho < 1.0 {
                let tail = term.abs() * rho / (1.0 - rho);
                if tail < 0.1 * tol * sum.abs().max(1.0) {
                    return Ok((sum, tail + 4.0 * f64::EPSILON * abs_sum));
                }
            }
        }
    }
    Err(Error::SeriesNotConverged { terms: MAX_TERMS })
}

/// Euler integral `Γ(c)/(Γ(p)Γ(c−p)) ∫₀¹ t^{p−1}(1−t)^{c−p−1}(1−xt)^{−q} dt`.
///
/// The endpoint singularities are removed by `t = v^{1/p}` near 0 and
/// `1 − t = u^{1/(c−p)}` near 1, applied only when the exponent is negative.
fn euler_integral(p: f64, q: f64, c: f64, x: f64, tol: f64) -> Result<(f64, f64)> {
    let cp = c - p;
    let ln_pref = statrs::function::gamma::ln_gamma(c)
        - statrs::function::gamma::ln_gamma(p)
        - statrs::function::gamma::ln_gamma(cp);
    let pref = ln_pref.exp();
    // Below ~100 ulp the adaptive rule only burns subdivisions on round-off.
    let rel_tol = (0.05 * tol).max(2e-14);
    let abs_tol = rel_tol / pref;
    let kernel = move |t: f64| (1.0 - x * t).powf(-q);

    let left = if p < 1.0 {
        let vmax = 0.5f64.powf(p);
        quad::integrate(
            |v| {
                let t = v.powf(1.0 / p);
                (1.0 - t).powf(cp - 1.0) * kernel(t) / p
            },
            0.0,
            vmax,
            abs_tol,
            rel_tol,
        )?
    } else {
        quad::integrate(
            |t| t.powf(p - 1.0) * (1.0 - t).powf(cp - 1.0) * kernel(t),
            0.0,
            0.5,
            abs_tol,
            rel_tol,
        )?
    };
    let right = if cp < 1.0 {
        let umax = 0.5f64.powf(cp);
        quad::integrate(
            |u| {
                let t = 1.0 - u.powf(1.0 / cp);
                t.powf(p - 1.0) * kernel(t) / cp
            },
            0.0,
            umax,
            abs_tol,
            rel_tol,
        )?
    } else {
        quad::integrate(
            |t| t.powf(p - 1.0) * (1.0 - t).powf(cp - 1.0) * kernel(t),
            0.5,
            1.0,
            abs_tol,
            rel_tol,
        )?
    };
    let value = pref * (left.value + right.value);
    let err = pref * (left.abs_err + right.abs_err) + 8.0 * f64::EPSILON * value.abs();
    Ok((value, err))
}

fn eval_raw(a: f64, b: f64, c: f64, x: f64, tol: f64) -> Result<(f64, f64, Method)> {
    if x > 1.0 || x.is_nan() {
        return Err(Error::Domain(format!(
            "2F1 argument x = {x} must satisfy x <= 1"
        )));
    }
    if x == 0.0 {
        return Ok((1.0, 0.0, Method::Series));
    }
    if is_nonpositive_integer(a) || is_nonpositive_integer(b) {
        let (v, e) = series(a, b, c, x, tol)?;
        return Ok((v, e, Method::Series));
    }
    let margin = c - a - b;
    if x == 1.0 {
        if margin == 0.0 {
            return Err(Error::LogSingular { x });
        }
        if margin < 0.0 {
            return Err(Error::Divergent { a, b, c, margin });
        }
        let (v, e) = gauss_at_one(a, b, c)?;
        return Ok((v, e, Method::GammaAtOne));
    }
    if margin == 0.0 && 1.0 - x < LOG_GUARD {
        return Err(Error::LogSingular { x });
    }
    if x < 0.0 {
        let w = x / (x - 1.0);
        // (1−x)^{−a} F(a, c−b; c; w)  or  (1−x)^{−b} F(c−a, b; c; w):
        // pick the one with the smaller numerator parameters.
        let cost_a = (a * (c - b)).abs();
        let cost_b = ((c - a) * b).abs();
        let use_a = if is_nonpositive_integer(a) || is_nonpositive_integer(c - b) {
            true
        } else if is_nonpositive_integer(b) || is_nonpositive_integer(c - a) {
            false
        } else {
            cost_a <= cost_b
        };
        let (pa, pb, expo) = if use_a { (a, c - b, a) } else { (c - a, b, b) };
        let pref = (1.0 - x).powf(-expo);
        // The target is tol·max(1, pref·|v|); a coarse pass sizes v so a
        // large prefactor does not push the inner tolerance below round-off.
        let inner_tol = if pref > 1.0 {
            let coarse = eval_raw(pa, pb, c, w, 1e-6)?.0.abs();
            tol * (1.0 / pref).max(0.5 * coarse).min(1.0)
        } else {
            tol
        };
        let (v, e, _) = eval_raw(pa, pb, c, w, inner_tol)?;
        return Ok((pref * v, pref * e, Method::Pfaff));
    }
    if x <= SERIES_LIMIT {
        let (v, e) = series(a, b, c, x, tol)?;
        return Ok((v, e, Method::Series));
    }
    if c > b && b > 0.0 {
        let (v, e) = euler_integral(b, a, c, x, tol)?;
        return Ok((v, e, Method::Integral));
    }
    if c > a && a > 0.0 {
        let (v, e) = euler_integral(a, b, c, x, tol)?;
        return Ok((v, e, Method::Integral));
    }
    let (v, e) = series(a, b, c, x, tol)?;
    Ok((v, e, Method::Series))
}

/// Evaluates `F(a, b; c; x)` for `x ≤ 1` to within `tol·max(1, |F|)`.
pub fn gauss_2f1(p: HyperParams, x: f64, tol: f64) -> Result<HyperEval> {
    p.validate()?;
    if !(tol > 0.0) {
        return Err(Error::Parameter(format!(
            "tolerance {tol} must be positive"
        )));
    }
    let (value, abs_err, method) = eval_raw(p.a, p.b, p.c, x, tol)?;
    if !value.is_finite() {
        return Err(Error::Domain(format!(
            "2F1{:?} at x = {x} is not finite",
            p
        )));
    }
    Ok(HyperEval {
        params: p,
        x,
        value,
        abs_err,
        method,
    })
}

/// Shorthand for `gauss_2f1(..).value` at the default tolerance.
pub fn hyp2f1(a: f64, b: f64, c: f64, x: f64) -> Result<f64> {
    Ok(gauss_2f1(HyperParams::new(a, b, c)?, x, DEFAULT_TOL)?.value)
}

/// `d^k/dx^k F(a, b; c; x) = (a)_k (b)_k / (c)_k · F(a+k, b+k; c+k; x)`.
pub fn gauss_2f1_dx(p: HyperParams, x: f64, k: u32, tol: f64) -> Result<f64> {
    p.validate()?;
    if x >= 1.0 {
        return Err(Error::Domain(format!("derivative needs x < 1, got {x}")));
    }
    if k == 0 {
        return Ok(gauss_2f1(p, x, tol)?.value);
    }
    let coef = pochhammer(p.a, k) * pochhammer(p.b, k) / pochhammer(p.c, k);
    if coef == 0.0 {
        return Ok(0.0);
    }
    let shifted = HyperParams::new(p.a + k as f64, p.b + k as f64, p.c + k as f64)?;
    Ok(coef * gauss_2f1(shifted, x, tol / coef.abs().max(1.0))?.value)
}

/// Index of the family `F_n = F(a_n, b_n; n+1; ·)` with `a_n b_n = −2`, `a_n + b_n = n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadraticFamilyIndex {
    pub n: f64,
}

impl QuadraticFamilyIndex {
    pub fn new(n: f64) -> Result<Self> {
        if !(n >= 1.0) || !n.is_finite() {
            return Err(Error::Parameter(format!(
                "family index n = {n} must be >= 1"
            )));
        }
        Ok(QuadraticFamilyIndex { n })
    }

    fn root(&self) -> f64 {
        (self.n * self.n + 8.0).sqrt()
    }

    /// `a_n = (n − √(n²+8))/2`, computed without cancellation.
    pub fn a(&self) -> f64 {
        -4.0 / (self.n + self.root())
    }

    pub fn b(&self) -> f64 {
        0.5 * (self.n + self.root())
    }

    pub fn c(&self) -> f64 {
        self.n + 1.0
    }

    pub fn params(&self) -> HyperParams {
        HyperParams {
            a: self.a(),
            b: self.b(),
            c: self.c(),
        }
    }

    /// Parameters of `F(a_n, b_n; n+1+shift; ·)`.
    pub fn shifted_c(&self, shift: f64) -> HyperParams {
        HyperParams {
            a: self.a(),
            b: self.b(),
            c: self.c() + shift,
        }
    }
}

/// `F_n(x)`.
pub fn fn_family(idx: QuadraticFamilyIndex, x: f64) -> Result<f64> {
    Ok(gauss_2f1(idx.params(), x, DEFAULT_TOL)?.value)
}

/// `F_n′(x) = −(2/(n+1)) F(a_n+1, b_n+1; n+2; x)`.
pub fn fn_family_dx(idx: QuadraticFamilyIndex, x: f64) -> Result<f64> {
    gauss_2f1_dx(idx.params(), x, 1, DEFAULT_TOL)
}

/// `F̂_n(x) = F(−a_n, b_n; b_n − a_n + 1; x)` on `[0, 1]`; the returned record
/// names the path used (the closed form at `x = 1`).
pub fn fhat_family(idx: QuadraticFamilyIndex, x: f64) -> Result<HyperEval> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::Domain(format!("F̂_n needs x in [0, 1], got {x}")));
    }
    let (a, b) = (idx.a(), idx.b());
    gauss_2f1(HyperParams::new(-a, b, b - a + 1.0)?, x, DEFAULT_TOL)
}

/// `ℱ(t) = Γ(t+1) / (Γ(t+1−a_t) Γ(1+a_t))`, the smooth extension of `t ↦ F_t(1)`.
pub fn f_at_one_continuation(t: f64) -> Result<f64> {
    if !(t > 1.0) {
        return Err(Error::Domain(format!("continuation needs t > 1, got {t}")));
    }
    let a = -4.0 / (t + (t * t + 8.0).sqrt());
    Ok(ln_gamma_ratio(t + 1.0, a).exp() / gamma(1.0 + a)?)
}

/// `ln Γ(x) − ln Γ(x − d)` for small `d`, without the cancellation of two large
/// logarithms once `x` is large.
fn ln_gamma_ratio(x: f64, d: f64) -> f64 {
    let y = x - d;
    if x.min(y) < 10.0 {
        return statrs::function::gamma::ln_gamma(x) - statrs::function::gamma::ln_gamma(y);
    }
    // Stirling series; the x and y tails are differenced term by term.
    const B: [f64; 4] = [1.0 / 12.0, -1.0 / 360.0, 1.0 / 1260.0, -1.0 / 1680.0];
    let tail: f64 = B
        .iter()
        .enumerate()
        .map(|(k, b)| b * (x.powi(-(2 * k as i32 + 1)) - y.powi(-(2 * k as i32 + 1))))
        .sum();
    (y - 0.5) * (d / y).ln_1p() + d * x.ln() - d + tail
}

/// Large-`t` expansion `1 − 2 ln t / t − 2γ/t` of [`f_at_one_continuation`].
pub fn f_at_one_asymptotic(t: f64) -> f64 {
    1.0 - 2.0 * t.ln() / t - 2.0 * EULER_GAMMA / t
}

fn f(a: f64, b: f64, c: f64, x: f64) -> Result<f64> {
    hyp2f1(a, b, c, x)
}

/// `c F(a,b;c) − (c−a) F(a,b;c+1) − a F(a+1,b;c+1)`.
pub fn residual_contiguous_c(p: HyperParams, x: f64) -> Result<f64> {
    let HyperParams { a, b, c } = p;
    Ok(c * f(a, b, c, x)? - (c - a) * f(a, b, c + 1.0, x)? - a * f(a + 1.0, b, c + 1.0, x)?)
}

/// `(b−c) F(a,b−1;c) + (c−a−b) F(a,b;c) − a(x−1) F(a+1,b;c)`.
pub fn residual_contiguous_b(p: HyperParams, x: f64) -> Result<f64> {
    let HyperParams { a, b, c } = p;
    Ok(
        (b - c) * f(a, b - 1.0, c, x)? + (c - a - b) * f(a, b, c, x)?
            - a * (x - 1.0) * f(a + 1.0, b, c, x)?,
    )
}

/// Three-term relation linking `F(a,b;c)`, `F(a,b;c+1)` and `F(a,b;c+2)`.
pub fn residual_three_term_c(p: HyperParams, x: f64) -> Result<f64> {
    let HyperParams { a, b, c } = p;
    let c1 = ((2.0 * c - a - b + 1.0) * x - c) / c;
    let c2 = (a - c - 1.0) * (c - b + 1.0) * x / (c * (c + 1.0));
    Ok(c1 * f(a, b, c + 1.0, x)? + c2 * f(a, b, c + 2.0, x)? - f(a, b, c, x)? * (x - 1.0))
}

/// `∫₀¹ F(a,b;c;τx) τ^{c−1} dτ − F(a,b;c+1;x)/c` and the `(1−τ)`-weighted
/// companion `∫₀¹ F(a,b;c;τx) τ^{c−1}(1−τ) dτ − F(a,b;c+2;x)/(c(c+1))`.
pub fn residual_integral_shift(p: HyperParams, x: f64) -> Result<(f64, f64)> {
    let HyperParams { a, b, c } = p;
    let one = quad::integrate_with(
        |t| Ok(f(a, b, c, t * x)? * t.powf(c - 1.0)),
        0.0,
        1.0,
        1e-12,
        1e-12,
    )?;
    let two = quad::integrate_with(
        |t| Ok(f(a, b, c, t * x)? * t.powf(c - 1.0) * (1.0 - t)),
        0.0,
        1.0,
        1e-12,
        1e-12,
    )?;
    Ok((
        one.value - f(a, b, c + 1.0, x)? / c,
        two.value - f(a, b, c + 2.0, x)? / (c * (c + 1.0)),
    ))
}

/// `x(1−x)F″ + (c − (a+b+1)x)F′ − abF` with derivatives from the shift formula.
pub fn residual_ode(p: HyperParams, x: f64) -> Result<f64> {
    let HyperParams { a, b, c } = p;
    let f0 = gauss_2f1(p, x, DEFAULT_TOL)?.value;
    let f1 = gauss_2f1_dx(p, x, 1, DEFAULT_TOL)?;
    let f2 = gauss_2f1_dx(p, x, 2, DEFAULT_TOL)?;
    Ok(x * (1.0 - x) * f2 + (c - (a + b + 1.0) * x) * f1 - a * b * f0)
}

/// `F(1−√2, 1+√2; 1; x)·(1−x) − F(−√2, √2; 1; x)`.
pub fn residual_radial_pair(x: f64) -> Result<f64> {
    let s = std::f64::consts::SQRT_2;
    Ok(f(1.0 - s, 1.0 + s, 1.0, x)? * (1.0 - x) - f(-s, s, 1.0, x)?)
}

/// `F_n′(x) + (2/(n+1)) F(a_n+1, b_n+1; n+2; x)`, with `F_n′` from a central
/// difference so the two sides are computed independently.
pub fn residual_family_derivative(idx: QuadraticFamilyIndex, x: f64) -> Result<f64> {
    let h = 1e-5 * (1.0 - x).min(1.0);
    let fd = (fn_family(idx, x + h)? - fn_family(idx, x - h)?) / (2.0 * h);
    let closed = -2.0 / (idx.n + 1.0) * f(idx.a() + 1.0, idx.b() + 1.0, idx.c() + 1.0, x)?;
    Ok(fd - closed)
}

/// `∫₀¹ τ^{n−a_n}(1−τ)^{a_n} dτ − 1/((n+1) F_n(1))`.
pub fn residual_family_beta(idx: QuadraticFamilyIndex) -> Result<f64> {
    let a = idx.a();
    let lhs = beta(idx.n - a + 1.0, a + 1.0)?;
    let rhs = 1.0 / ((idx.n + 1.0) * fn_family(idx, 1.0)?);
    Ok(lhs - rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn gamma_small_integers() {
        assert_abs_diff_eq!(gamma(5.0).unwrap(), 24.0, epsilon = 1e-12);
        assert_abs_diff_eq!(gamma(1.0).unwrap(), 1.0, epsilon = 1e-15);
        assert!(matches!(gamma(-2.0), Err(Error::Pole(_))));
        assert!(matches!(gamma(0.0), Err(Error::Pole(_))));
    }

    #[test]
    fn gamma_negative_argument_matches_reflection() {
        let x = -2.5;
        let (lg, s) = ln_gamma_signed(x).unwrap();
        assert_abs_diff_eq!(s * lg.exp(), gamma(x).unwrap(), epsilon = 1e-13);
    }

    #[test]
    fn linear_polynomial_case() {
        for &x in &[-7.0, -1.0, 0.0, 0.3, 0.9, 1.0] {
            let v = gauss_2f1(HyperParams::new(-1.0, 2.0, 2.0).unwrap(), x, DEFAULT_TOL).unwrap();
            assert_abs_diff_eq!(v.value, 1.0 - x, epsilon = 1e-12);
        }
    }

    #[test]
    fn closed_form_at_one() {
        let v = gauss_2f1(HyperParams::new(1.0, 2.0, 4.0).unwrap(), 1.0, DEFAULT_TOL).unwrap();
        assert_eq!(v.method, Method::GammaAtOne);
        assert_abs_diff_eq!(v.value, 3.0, epsilon = 1e-12);
    }

    #[test]
    fn divergence_and_log_errors() {
        let p = HyperParams::new(1.0, 2.0, 2.5).unwrap();
        assert!(matches!(
            gauss_2f1(p, 1.0, 1e-10),
            Err(Error::Divergent { .. })
        ));
        let q = HyperParams::new(0.5, 0.5, 1.0).unwrap();
        assert!(matches!(
            gauss_2f1(q, 1.0 - 1e-9, 1e-10),
            Err(Error::LogSingular { .. })
        ));
        assert!(gauss_2f1(q, 0.99, 1e-10).is_ok());
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(HyperParams::new(1.0, 1.0, -3.0).is_err());
        let p = HyperParams::new(1.0, 1.0, 2.0).unwrap();
        assert!(gauss_2f1(p, 1.5, 1e-10).is_err());
    }

    #[test]
    fn elementary_closed_forms() {
        // F(1,1;2;x) = −ln(1−x)/x
        for &x in &[-30.0, -2.0, -0.5, 0.2, 0.7, 0.8, 0.95, 0.999] {
            let v = hyp2f1(1.0, 1.0, 2.0, x).unwrap();
            let exact = -(-x).ln_1p() / x;
            assert!(
                (v - exact).abs() < 1e-10 * exact.abs().max(1.0),
                "x={x}: {v} vs {exact}"
            );
        }
        // F(a,b;b;x) = (1−x)^{−a}
        for &x in &[-10.0, -0.3, 0.5, 0.9] {
            let v = hyp2f1(0.3, 1.7, 1.7, x).unwrap();
            assert_abs_diff_eq!(v, (1.0 - x).powf(-0.3), epsilon = 1e-11);
        }
    }

    #[test]
    fn method_selection() {
        let idx = QuadraticFamilyIndex::new(4.0).unwrap();
        let p = idx.params();
        assert_eq!(gauss_2f1(p, 0.5, 1e-10).unwrap().method, Method::Series);
        assert_eq!(gauss_2f1(p, -2.0, 1e-10).unwrap().method, Method::Pfaff);
        assert_eq!(gauss_2f1(p, 0.9, 1e-10).unwrap().method, Method::Integral);
        assert_eq!(gauss_2f1(p, 1.0, 1e-10).unwrap().method, Method::GammaAtOne);
    }

    #[test]
    fn family_first_member_is_linear() {
        let idx = QuadraticFamilyIndex::new(1.0).unwrap();
        assert_eq!(idx.a(), -1.0);
        assert_eq!(idx.b(), 2.0);
        for &x in &[-4.0, 0.0, 0.6, 1.0] {
            assert_abs_diff_eq!(fn_family(idx, x).unwrap(), 1.0 - x, epsilon = 1e-13);
        }
    }

    #[test]
    fn fhat_first_member_at_one() {
        let idx = QuadraticFamilyIndex::new(1.0).unwrap();
        let v = fhat_family(idx, 1.0).unwrap();
        assert_eq!(v.method, Method::GammaAtOne);
        assert_abs_diff_eq!(v.value, 3.0, epsilon = 1e-10);
    }

    #[test]
    fn derivative_of_terminating_case() {
        let p = HyperParams::new(-1.0, 2.0, 2.0).unwrap();
        assert_abs_diff_eq!(
            gauss_2f1_dx(p, 0.5, 1, 1e-10).unwrap(),
            -1.0,
            epsilon = 1e-14
        );
        let z = HyperParams::new(0.0, 2.0, 3.0).unwrap();
        assert_eq!(gauss_2f1_dx(z, 0.5, 3, 1e-10).unwrap(), 0.0);
    }
}
