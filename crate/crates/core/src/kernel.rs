//! Kernel of the linearized density operator at a mode `n`: the polynomials
//! `P_n`, `G_n`, the generator `𝒢_n` and profile `h*_n`, the boundary function
//! `H_n`, the radial kernel, the range pairing and the transversality integral.

use crate::dispersion::{self, QuadraticProfile, ZetaForm};
use crate::error::{Error, Result};
use crate::hypergeom::{gauss_2f1, gauss_2f1_dx, HyperParams, QuadraticFamilyIndex};
use crate::quad::{self, Chebyshev};
use serde::Serialize;
use std::sync::Arc;

/// Tolerance used for every `F_n` evaluation inside this module.
const F_TOL: f64 = 1e-13;

/// Default number of Chebyshev–Lobatto nodes in `t = r²`.
pub const DEFAULT_NODES: usize = 129;

/// Largest `|ζ_n(x)|` accepted by [`kernel_generator`].
pub const EIGEN_GATE: f64 = 1e-8;

/// A mode `n` at spectral value `x` for a given profile.
#[derive(Debug, Clone, Serialize)]
pub struct SpectralContext {
    pub n: u32,
    pub x: f64,
    pub profile: QuadraticProfile,
    /// `P_n(1)`.
    pub p1: f64,
    /// `G_n(1)`.
    pub g1: f64,
    #[serde(skip)]
    family: QuadraticFamilyIndex,
    /// `t ↦ F_n(xt)` on `[0, 1]`.
    #[serde(skip)]
    table: Arc<Chebyshev>,
}

/// Chebyshev interpolant of `t ↦ F_n(xt)`, refined until the trailing
/// coefficients drop below `1e-13` of the largest one, the noise level of the evaluations.
fn family_table(family: QuadraticFamilyIndex, x: f64) -> Result<Chebyshev> {
    let mut m = 65;
    loop {
        let cheb = Chebyshev::from_fn(0.0, 1.0, m, |t| {
            Ok(gauss_2f1(family.params(), x * t, F_TOL)?.value)
        })?;
        let c = cheb.coefficients();
        let top = c.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
        let tail = c[c.len() - 8..]
            .iter()
            .fold(0.0f64, |acc, v| acc.max(v.abs()));
        if tail <= 1e-13 * top || m >= 1025 {
            return Ok(cheb);
        }
        m = 2 * m - 1;
    }
}

impl SpectralContext {
    pub fn new(n: u32, x: f64, profile: QuadraticProfile) -> Result<Self> {
        if n == 0 {
            return Err(Error::Parameter("mode n must be a positive integer".into()));
        }
        if !(x < 1.0) || x == 0.0 {
            return Err(Error::Domain(format!(
                "spectral context needs x < 1 and x != 0, got {x}"
            )));
        }
        let family = QuadraticFamilyIndex::new(n as f64)?;
        let table = Arc::new(family_table(family, x)?);
        let mut ctx = SpectralContext {
            n,
            x,
            profile,
            p1: 0.0,
            g1: 0.0,
            family,
            table,
        };
        ctx.p1 = ctx.p(1.0);
        ctx.g1 = ctx.g(1.0);
        if ctx.g1.abs() < 1e-14 * profile.a.abs() {
            return Err(Error::Precondition(format!(
                "x = {x} lies on the singular set for n = {n}"
            )));
        }
        Ok(ctx)
    }

    fn nf(&self) -> f64 {
        self.n as f64
    }

    /// `P_n(t) = t² − ((n+2)/((n+1)x)) t − ((A+2B)/A)(n+2)/(n(n+1))`.
    pub fn p(&self, t: f64) -> f64 {
        let n = self.nf();
        t * t
            - (n + 2.0) / ((n + 1.0) * self.x) * t
            - (1.0 + 2.0 * self.profile.ratio()) * (n + 2.0) / (n * (n + 1.0))
    }

    /// `G_n(r) = −(An(n+1)/(4(n+2))) r^{n−1} P_n(r²)`.
    pub fn g(&self, r: f64) -> f64 {
        let n = self.nf();
        -(self.profile.a * n * (n + 1.0) / (4.0 * (n + 2.0)))
            * r.powi(self.n as i32 - 1)
            * self.p(r * r)
    }

    /// `F_n(y)`, from the cached interpolant when `y` lies between `0` and `x`.
    pub fn f(&self, y: f64) -> Result<f64> {
        let t = y / self.x;
        if (0.0..=1.0).contains(&t) {
            Ok(self.table.eval(t))
        } else {
            Ok(gauss_2f1(self.family.params(), y, F_TOL)?.value)
        }
    }

    /// `F_n′(y)`.
    pub fn f_dx(&self, y: f64) -> Result<f64> {
        gauss_2f1_dx(self.family.params(), y, 1, F_TOL)
    }

    /// `F_n″(y)`.
    pub fn f_dxx(&self, y: f64) -> Result<f64> {
        gauss_2f1_dx(self.family.params(), y, 2, F_TOL)
    }

    /// `|ζ_n(x)|`.
    pub fn zeta_residual(&self) -> Result<f64> {
        Ok(dispersion::zeta(self.n, self.x, &self.profile, ZetaForm::Contiguous)?.abs())
    }

    /// `K(τ) = ∫₀¹ θⁿ F_n(xτθ) P_n(τθ)/(1 − xτθ) dθ`, so that
    /// `∫₀^τ sⁿF_n(xs)P_n(s)/(1−xs) ds = τ^{n+1} K(τ)`.
    pub fn inner(&self, tau: f64) -> Result<f64> {
        let n = self.n as i32;
        Ok(quad::integrate_with(
            |th| {
                let s = tau * th;
                Ok(th.powi(n) * self.f(self.x * s)? * self.p(s) / (1.0 - self.x * s))
            },
            0.0,
            1.0,
            1e-15,
            1e-13,
        )?
        .value)
    }
}

/// `(P_n(r²), G_n(r))`.
pub fn pn_gn(ctx: &SpectralContext, r: f64) -> (f64, f64) {
    (ctx.p(r * r), ctx.g(r))
}

/// `n[(A/4)(1/x − 1) + A(n+1)/(2n(n+2)) + B/(2n)]`, the factored form of `G_n(1)`.
pub fn g1_factored(ctx: &SpectralContext) -> f64 {
    let n = ctx.nf();
    let (a, b) = (ctx.profile.a, ctx.profile.b);
    n * (a / 4.0 * (1.0 / ctx.x - 1.0) + a * (n + 1.0) / (2.0 * n * (n + 2.0)) + b / (2.0 * n))
}

/// `φ_n(x) = nF_n(x) + xF_n′(x)`.
pub fn phi_n(n: u32, x: f64) -> Result<f64> {
    let idx = QuadraticFamilyIndex::new(n as f64)?;
    let p = idx.params();
    Ok(n as f64 * gauss_2f1(p, x, F_TOL)?.value + x * gauss_2f1_dx(p, x, 1, F_TOL)?)
}

/// `φ_n′(x) = (n+1)F_n′(x) + xF_n″(x)`.
pub fn phi_n_dx(n: u32, x: f64) -> Result<f64> {
    let idx = QuadraticFamilyIndex::new(n as f64)?;
    let p = idx.params();
    Ok((n as f64 + 1.0) * gauss_2f1_dx(p, x, 1, F_TOL)? + x * gauss_2f1_dx(p, x, 2, F_TOL)?)
}

/// `Ψ_n(x) = φ_n(x)·G_n(1)/n − (A(n+1)x/(n+2)) ∫₀¹ s^{2n+1}F_n(xs²)P_n(s²)/(1−xs²) ds`.
pub fn psi_n(ctx: &SpectralContext) -> Result<f64> {
    let n = ctx.nf();
    let (a, b, x) = (ctx.profile.a, ctx.profile.b, ctx.x);
    let bracket =
        a / 4.0 * (1.0 / x - 1.0) + a / 2.0 * (n + 1.0) / (n * n + 2.0 * n) + b / (2.0 * n);
    let integral = quad::integrate_with(
        |s| {
            let t = s * s;
            Ok(s.powi(2 * ctx.n as i32 + 1) * ctx.f(x * t)? * ctx.p(t) / (1.0 - x * t))
        },
        0.0,
        1.0,
        1e-15,
        1e-13,
    )?
    .value;
    Ok(phi_n(ctx.n, x)? * bracket - a * (n + 1.0) * x / (n + 2.0) * integral)
}

/// Continuous solution with `F(0) = 0` of
/// `(1−xr²) r F″ − (1−xr²)(2n−1) F′ + 8rx F = g(r)` and prescribed `F(1)`.
pub struct HyperOdeSolution<G> {
    ctx_n: u32,
    x: f64,
    family: QuadraticFamilyIndex,
    g: G,
    f1: f64,
    fx: f64,
}

/// Builds the solution `F(r) = r^{2n}F_n(xr²)[F(1)/F_n(x) − ∫_r¹ σ^{−2n−1}F_n(xσ²)^{−2} I(σ) dσ]`
/// with `I(σ) = ∫₀^σ F_n(xv²) g(v)/(1 − xv²) dv`.
pub fn solve_hyper_ode<G: Fn(f64) -> f64>(
    n: u32,
    x: f64,
    g: G,
    f1: f64,
) -> Result<HyperOdeSolution<G>> {
    if n == 0 {
        return Err(Error::Parameter("mode n must be a positive integer".into()));
    }
    if !(x < 1.0) {
        return Err(Error::Domain(format!("ODE solver needs x < 1, got {x}")));
    }
    let family = QuadraticFamilyIndex::new(n as f64)?;
    let fx = gauss_2f1(family.params(), x, F_TOL)?.value;
    Ok(HyperOdeSolution {
        ctx_n: n,
        x,
        family,
        g,
        f1,
        fx,
    })
}

impl<G: Fn(f64) -> f64> HyperOdeSolution<G> {
    fn params(&self) -> HyperParams {
        self.family.params()
    }

    fn fam(&self, y: f64, k: u32) -> Result<f64> {
        gauss_2f1_dx(self.params(), y, k, F_TOL)
    }

    fn source_integral(&self, sigma: f64) -> Result<f64> {
        let x = self.x;
        Ok(quad::integrate_with(
            |v| Ok(self.fam(x * v * v, 0)? * (self.g)(v) / (1.0 - x * v * v)),
            0.0,
            sigma,
            1e-15,
            1e-13,
        )?
        .value)
    }

    fn weight(&self, sigma: f64) -> Result<f64> {
        let fs = self.fam(self.x * sigma * sigma, 0)?;
        Ok(sigma.powi(-(2 * self.ctx_n as i32) - 1) / (fs * fs) * self.source_integral(sigma)?)
    }

    /// `F(1)/F_n(x) − ∫_r¹ w(σ) dσ`.
    fn bracket(&self, r: f64) -> Result<f64> {
        let tail = quad::integrate_with(|s| self.weight(s), r, 1.0, 1e-15, 1e-12)?.value;
        Ok(self.f1 / self.fx - tail)
    }

    pub fn eval(&self, r: f64) -> Result<f64> {
        if r == 0.0 {
            return Ok(0.0);
        }
        let n = self.ctx_n as i32;
        Ok(r.powi(2 * n) * self.fam(self.x * r * r, 0)? * self.bracket(r)?)
    }

    /// `(F, F′, F″)` at `r > 0`, differentiating the solution formula analytically.
    pub fn jet(&self, r: f64) -> Result<(f64, f64, f64)> {
        let n = self.ctx_n as f64;
        let x = self.x;
        let y = x * r * r;
        let (f0, f1, f2) = (self.fam(y, 0)?, self.fam(y, 1)?, self.fam(y, 2)?);
        // u = r^{2n} F_n(xr²)
        let u = r.powf(2.0 * n) * f0;
        let du = 2.0 * n * r.powf(2.0 * n - 1.0) * f0 + r.powf(2.0 * n) * 2.0 * x * r * f1;
        let ddu = 2.0 * n * (2.0 * n - 1.0) * r.powf(2.0 * n - 2.0) * f0
            + 2.0 * (2.0 * n) * r.powf(2.0 * n - 1.0) * 2.0 * x * r * f1
            + r.powf(2.0 * n) * (2.0 * x * f1 + 4.0 * x * x * r * r * f2);
        let m = self.bracket(r)?;
        let i = self.source_integral(r)?;
        let p = r.powf(-2.0 * n - 1.0) / (f0 * f0);
        let dp = -(2.0 * n + 1.0) * r.powf(-2.0 * n - 2.0) / (f0 * f0)
            - r.powf(-2.0 * n - 1.0) * 2.0 * f1 * 2.0 * x * r / (f0 * f0 * f0);
        let w = p * i;
        let dw = dp * i + p * f0 * (self.g)(r) / (1.0 - y);
        Ok((u * m, du * m + u * w, ddu * m + 2.0 * du * w + u * dw))
    }

    /// `|(1−xr²) r F″ − (1−xr²)(2n−1) F′ + 8rx F − g(r)|`.
    pub fn residual(&self, r: f64) -> Result<f64> {
        let (f, df, ddf) = self.jet(r)?;
        let n = self.ctx_n as f64;
        let s = 1.0 - self.x * r * r;
        Ok((s * r * ddf - s * (2.0 * n - 1.0) * df + 8.0 * r * self.x * f - (self.g)(r)).abs())
    }
}

/// Sampled kernel element at a mode `n`.
#[derive(Debug, Clone, Serialize)]
pub struct KernelProfile {
    pub context: SpectralContext,
    /// Radial nodes `r_j = √t_j` for Chebyshev–Lobatto nodes `t_j` in `[0, 1]`.
    pub grid: Vec<f64>,
    /// `h*_n(r_j)`.
    pub hstar: Vec<f64>,
    /// `H_n(r_j)` for the boundary value [`KernelProfile::h1`].
    pub big_h: Vec<f64>,
    /// `A_n = −H_n(1)/(2G_n(1))`.
    pub a_n: f64,
    /// `H_n(1)`; the kernel element is `h_n = (4x/n) H_n(1) h*_n`.
    pub h1: f64,
    /// `|ζ_n(x)|` at construction.
    pub zeta_residual: f64,
    #[serde(skip)]
    j: Chebyshev,
    #[serde(skip)]
    inner_at_one: f64,
    #[serde(skip)]
    fx: f64,
}

/// Builds `𝒢_n`, `h*_n` and `H_n` with `H_n(1) = n/(4x)` after checking that `x` is an eigenvalue.
pub fn kernel_generator(ctx: &SpectralContext, nodes: usize) -> Result<KernelProfile> {
    let zr = ctx.zeta_residual()?;
    if zr > EIGEN_GATE {
        return Err(Error::Precondition(format!(
            "|ζ_{}({})| = {zr:e} exceeds {EIGEN_GATE:e}; x is not an eigenvalue",
            ctx.n, ctx.x
        )));
    }
    let h1 = ctx.nf() / (4.0 * ctx.x);
    kernel_solution(ctx, nodes, h1)
}

/// The same construction without the eigenvalue gate and with prescribed `H_n(1)`.
pub fn kernel_solution(ctx: &SpectralContext, nodes: usize, h1: f64) -> Result<KernelProfile> {
    if nodes < 3 {
        return Err(Error::Parameter("need at least 3 nodes".into()));
    }
    let x = ctx.x;
    // q(τ) = K(τ)/F_n(xτ)², integrated from t to 1 spectrally.
    let q = Chebyshev::from_fn(0.0, 1.0, nodes, |tau| {
        let f = ctx.f(x * tau)?;
        Ok(ctx.inner(tau)? / (f * f))
    })?;
    let j = Chebyshev::new(0.0, 1.0, q.tail_integrals());
    let inner_at_one = ctx.inner(1.0)?;
    let fx = ctx.f(x)?;
    let mut prof = KernelProfile {
        context: ctx.clone(),
        grid: Vec::new(),
        hstar: Vec::new(),
        big_h: Vec::new(),
        a_n: -h1 / (2.0 * ctx.g1),
        h1,
        zeta_residual: ctx.zeta_residual()?,
        j,
        inner_at_one,
        fx,
    };
    let ts = Chebyshev::nodes(0.0, 1.0, nodes);
    for &t in &ts {
        let r = t.sqrt();
        prof.grid.push(r);
        prof.hstar.push(prof.hstar_at(r)?);
        prof.big_h.push(prof.big_h_at(r)?);
    }
    Ok(prof)
}

impl KernelProfile {
    /// `J(t) = ∫_t¹ K(τ)/F_n(xτ)² dτ`.
    pub fn j_at(&self, t: f64) -> f64 {
        self.j.eval(t)
    }

    /// `𝒢_n(t)`.
    pub fn generator(&self, t: f64) -> Result<f64> {
        let c = &self.context;
        let fxt = c.f(c.x * t)?;
        Ok(
            (-c.p(t) / c.p1 + fxt / self.fx - 2.0 * c.x * fxt * self.j_at(t) / c.p1)
                / (1.0 - c.x * t),
        )
    }

    /// `h*_n(r) = rⁿ 𝒢_n(r²)`.
    pub fn hstar_at(&self, r: f64) -> Result<f64> {
        Ok(r.powi(self.context.n as i32) * self.generator(r * r)?)
    }

    /// `H_n(r) = H_n(1) r^{2n} F_n(xr²)[1/F_n(x) − 2x J(r²)/P_n(1)]`.
    pub fn big_h_at(&self, r: f64) -> Result<f64> {
        let c = &self.context;
        let t = r * r;
        Ok(self.h1
            * t.powi(c.n as i32)
            * c.f(c.x * t)?
            * (1.0 / self.fx - 2.0 * c.x * self.j_at(t) / c.p1))
    }

    /// `H_n′(1)` from the closed form `(2H_n(1)/F_n(x))[φ_n(x) + 2x K(1)/P_n(1)]`.
    pub fn big_h_prime_one(&self) -> Result<f64> {
        let c = &self.context;
        Ok(2.0 * self.h1 / self.fx * (phi_n(c.n, c.x)? + 2.0 * c.x * self.inner_at_one / c.p1))
    }

    /// `H_n′(1)` by spectral differentiation of the sampled `H_n` in `t = r²`.
    pub fn big_h_prime_one_spectral(&self) -> f64 {
        let m = self.big_h.len();
        let interp = Chebyshev::new(0.0, 1.0, self.big_h.clone());
        2.0 * interp.derivative_at_node(m - 1)
    }

    /// `∫₀¹ s^{n+1} h*_n(s) ds`, which should equal `n/(4x)`.
    pub fn normalization(&self) -> Result<f64> {
        let n = self.context.n as i32;
        Ok(quad::integrate_with(
            |s| Ok(s.powi(n + 1) * self.hstar_at(s)?),
            0.0,
            1.0,
            1e-14,
            1e-12,
        )?
        .value)
    }

    /// `𝓛h*(r) = r^{2n} ∫_r¹ s^{1−n} h*(s) ds + ∫₀^r s^{n+1} h*(s) ds`.
    pub fn apply_operator(&self, r: f64) -> Result<f64> {
        let n = self.context.n as i32;
        let outer =
            quad::integrate_with(|s| Ok(s * self.generator(s * s)?), r, 1.0, 1e-15, 1e-12)?.value;
        let inner = quad::integrate_with(
            |s| Ok(s.powi(n + 1) * self.hstar_at(s)?),
            0.0,
            r,
            1e-15,
            1e-12,
        )?
        .value;
        Ok(r.powi(2 * n) * outer + inner)
    }

    /// `ℋ = ℋ₁ + ℋ₂ + ℋ₃` at `t`, returned as the three parts.
    pub fn transversality_parts(&self, t: f64) -> Result<(f64, f64, f64)> {
        let c = &self.context;
        let scale = 4.0 * c.x * c.g1 / (c.profile.a * c.nf() * (1.0 - c.x * t));
        let fxt = c.f(c.x * t)?;
        let h1 = scale * (c.p(t) / c.p1 - fxt / self.fx);
        let h2 = scale * 2.0 * c.x * fxt * self.j_at(t) / c.p1;
        let h3 = -t + c.p(t) / c.p1;
        Ok((h1, h2, h3))
    }

    /// `d*_n(r) = h*_n(r)/(2A) − A_n r^{n+2} + A_n rG_n(r)/G_n(1)` with `A_n = −n/(8xG_n(1))`.
    pub fn range_defect(&self, r: f64) -> Result<f64> {
        let c = &self.context;
        let an = -c.nf() / (8.0 * c.x * c.g1);
        Ok(
            self.hstar_at(r)? / (2.0 * c.profile.a) - an * r.powi(c.n as i32 + 2)
                + an * r * c.g(r) / c.g1,
        )
    }
}

/// `F(1+√2, 1−√2; 1; x r²)`, the bounded radial kernel.
pub fn radial_kernel(x: f64, r: f64) -> Result<f64> {
    let s = std::f64::consts::SQRT_2;
    Ok(gauss_2f1(HyperParams::new(1.0 + s, 1.0 - s, 1.0)?, x * r * r, F_TOL)?.value)
}

/// `∫₀¹ s 𝓗₀(s) d(s)/(1 − x₀s²) ds` with `𝓗₀(r) = F(−√2, √2; 1; x₀r²)`.
pub fn radial_range_condition<D: Fn(f64) -> f64>(x0: f64, d: D) -> Result<f64> {
    let s2 = std::f64::consts::SQRT_2;
    let p = HyperParams::new(-s2, s2, 1.0)?;
    Ok(quad::integrate_with(
        |s| Ok(s * gauss_2f1(p, x0 * s * s, F_TOL)?.value * d(s) / (1.0 - x0 * s * s)),
        0.0,
        1.0,
        1e-14,
        1e-12,
    )?
    .value)
}

/// `𝒦_n(z) = Re[F_n(x|z|²) zⁿ/(1 − x|z|²)]`.
pub fn range_kernel(ctx: &SpectralContext, z: (f64, f64)) -> Result<f64> {
    let rho2 = z.0 * z.0 + z.1 * z.1;
    if rho2 > 1.0 + 1e-12 {
        return Err(Error::Domain(format!(
            "range kernel needs |z| <= 1, got {}",
            rho2.sqrt()
        )));
    }
    let theta = z.1.atan2(z.0);
    let zn = rho2.sqrt().powi(ctx.n as i32) * (ctx.n as f64 * theta).cos();
    Ok(ctx.f(ctx.x * rho2)? * zn / (1.0 - ctx.x * rho2))
}

/// `∫₀¹ r^{n+1} F_n(xr²) d(r)/(1 − xr²) dr`; it vanishes exactly on the range at mode `n`.
pub fn range_pairing<D: FnMut(f64) -> Result<f64>>(ctx: &SpectralContext, mut d: D) -> Result<f64> {
    let n = ctx.n as i32;
    let x = ctx.x;
    Ok(quad::integrate_with(
        |r| Ok(r.powi(n + 1) * ctx.f(x * r * r)? * d(r)? / (1.0 - x * r * r)),
        0.0,
        1.0,
        1e-15,
        1e-12,
    )?
    .value)
}

/// Transversality pairing and its split.
#[derive(Debug, Clone, Serialize)]
pub struct TransversalityResult {
    pub context: SpectralContext,
    /// `∫₀¹ sⁿF_n(xs)ℋ(s)/(1 − xs) ds`.
    pub value: f64,
    /// Contributions of `ℋ₁`, `ℋ₂`, `ℋ₃`.
    pub parts: [f64; 3],
    pub nonzero: bool,
}

/// `∫₀¹ sⁿF_n(xs)ℋ(s)/(1 − xs) ds` at an eigenvalue.
pub fn transversality_integral(
    ctx: &SpectralContext,
    nodes: usize,
) -> Result<TransversalityResult> {
    let prof = kernel_generator(ctx, nodes)?;
    transversality_from_profile(&prof)
}

pub fn transversality_from_profile(prof: &KernelProfile) -> Result<TransversalityResult> {
    let c = &prof.context;
    let n = c.n as i32;
    let mut parts = [0.0; 3];
    for (k, part) in parts.iter_mut().enumerate() {
        *part = quad::integrate_with(
            |s| {
                let h = prof.transversality_parts(s)?;
                let v = [h.0, h.1, h.2][k];
                Ok(s.powi(n) * c.f(c.x * s)? * v / (1.0 - c.x * s))
            },
            0.0,
            1.0,
            1e-14,
            1e-12,
        )?
        .value;
    }
    let value = parts.iter().sum::<f64>();
    Ok(TransversalityResult {
        context: c.clone(),
        value,
        parts,
        nonzero: value.abs() > 1e-6 * c.nf(),
    })
}

/// `(x − 1)/(2x)`, the transversality pairing of the one-fold mode at `x₁ = −A/(2B)`.
pub fn one_fold_transversality(x: f64) -> f64 {
    (x - 1.0) / (2.0 * x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn ctx(n: u32, x: f64, a: f64, b: f64) -> SpectralContext {
        SpectralContext::new(n, x, QuadraticProfile::new(a, b).unwrap()).unwrap()
    }

    #[test]
    fn g1_matches_factored_form() {
        for &(n, x, a, b) in &[
            (1, -0.5, 1.0, 1.0),
            (4, 0.3, 2.0, -1.0),
            (9, -7.0, 1.0, 6.0),
        ] {
            let c = ctx(n, x, a, b);
            assert_abs_diff_eq!(c.g1, g1_factored(&c), epsilon = 1e-12 * c.g1.abs().max(1.0));
        }
    }

    #[test]
    fn one_fold_constants() {
        let c = ctx(1, -0.5, 1.0, 1.0);
        assert_abs_diff_eq!(c.p1, -0.5, epsilon = 1e-14);
        assert_abs_diff_eq!(c.g1, 1.0 / 12.0, epsilon = 1e-14);
    }

    #[test]
    fn first_mode_p_for_b_zero() {
        let x = 0.4;
        let c = ctx(1, x, 1.0, 0.0);
        for &t in &[0.0, 0.3, 1.0] {
            let paper = t * t - 3.0 / (2.0 * x) * t - 1.5;
            assert_abs_diff_eq!(c.p(t), paper, epsilon = 1e-14);
        }
    }

    #[test]
    fn radial_kernel_at_origin_is_one() {
        assert_abs_diff_eq!(radial_kernel(0.7, 0.0).unwrap(), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn range_kernel_vanishes_on_nodal_ray() {
        let c = ctx(3, 0.4, 1.0, -2.0);
        let th = std::f64::consts::PI / 6.0;
        assert_abs_diff_eq!(
            range_kernel(&c, (0.8 * th.cos(), 0.8 * th.sin())).unwrap(),
            0.0,
            epsilon = 1e-15
        );
    }

    #[test]
    fn homogeneous_ode_solution() {
        let sol = solve_hyper_ode(2, -0.5, |_| 0.0, 0.0).unwrap();
        assert_abs_diff_eq!(sol.eval(0.6).unwrap(), 0.0, epsilon = 1e-15);
    }
}
