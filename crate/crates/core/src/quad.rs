//! One-dimensional quadrature: adaptive Gauss–Kronrod (21-point rule with its
//! embedded 10-point Gauss rule), Gauss–Legendre node generation, and
//! Chebyshev–Lobatto interpolation.

use crate::error::{Error, Result};
use std::collections::BinaryHeap;

const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

// Gauss weights for the odd-indexed Kronrod nodes.
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

const MAX_INTERVALS: usize = 4000;

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quad {
    pub value: f64,
    pub abs_err: f64,
    pub evals: usize,
}

struct Segment {
    a: f64,
    b: f64,
    value: f64,
    err: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.err.total_cmp(&other.err)
    }
}

fn gk21<F>(f: &mut F, a: f64, b: f64) -> Result<Segment>
where
    F: FnMut(f64) -> Result<f64>,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center)?;
    let mut resk = fc * WGK[10];
    let mut resg = 0.0;
    let mut resabs = resk.abs();
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];
    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = f(center - dx)?;
        let f2 = f(center + dx)?;
        fv1[j] = f1;
        fv2[j] = f2;
        resk += WGK[j] * (f1 + f2);
        resabs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            resg += WG[j / 2] * (f1 + f2);
        }
    }
    let reskh = 0.5 * resk;
    let mut resasc = WGK[10] * (fc - reskh).abs();
    for j in 0..10 {
        resasc += WGK[j] * ((fv1[j] - reskh).abs() + (fv2[j] - reskh).abs());
    }
    let value = resk * half;
    resabs *= half.abs();
    resasc *= half.abs();
    let mut err = ((resk - resg) * half).abs();
    if resasc != 0.0 && err != 0.0 {
        err = resasc * (200.0 * err / resasc).powf(1.5).min(1.0);
    }
    let round = 50.0 * f64::EPSILON * resabs;
    if round > err {
        err = round;
    }
    if !value.is_finite() {
        return Err(Error::Domain(format!("non-finite integrand on [{a}, {b}]")));
    }
    Ok(Segment { a, b, value, err })
}

/// Adaptive integration of a fallible integrand over `[a, b]`.
///
/// Stops when the summed error estimate is below `max(abs_tol, rel_tol·|I|)`.
pub fn integrate_with<F>(mut f: F, a: f64, b: f64, abs_tol: f64, rel_tol: f64) -> Result<Quad>
where
    F: FnMut(f64) -> Result<f64>,
{
    if a == b {
        return Ok(Quad {
            value: 0.0,
            abs_err: 0.0,
            evals: 0,
        });
    }
    let first = gk21(&mut f, a, b)?;
    let mut evals = 21;
    let mut total = first.value;
    let mut err = first.err;
    let mut heap = BinaryHeap::new();
    heap.push(first);
    // Segments too narrow to split keep their contribution here.
    let mut frozen: Vec<Segment> = Vec::new();
    loop {
        let target = abs_tol.max(rel_tol * total.abs());
        if err <= target {
            break;
        }
        if heap.len() >= MAX_INTERVALS {
            if err <= 10.0 * target {
                break;
            }
            return Err(Error::Quadrature {
                estimate: err,
                target,
            });
        }
        let Some(worst) = heap.pop() else {
            if err <= 10.0 * target {
                break;
            }
            return Err(Error::Quadrature {
                estimate: err,
                target,
            });
        };
        let mid = 0.5 * (worst.a + worst.b);
        if (mid - worst.a).abs() <= 4.0 * f64::EPSILON * mid.abs().max(f64::MIN_POSITIVE) {
            frozen.push(worst);
            continue;
        }
        let left = gk21(&mut f, worst.a, mid)?;
        let right = gk21(&mut f, mid, worst.b)?;
        evals += 42;
        total += left.value + right.value - worst.value;
        err += left.err + right.err - worst.err;
        heap.push(left);
        heap.push(right);
    }
    // Re-sum to shed the cancellation accumulated in the running totals.
    let mut value = 0.0;
    let mut abs_err = 0.0;
    for s in heap.iter().chain(frozen.iter()) {
        value += s.value;
        abs_err += s.err;
    }
    Ok(Quad {
        value,
        abs_err,
        evals,
    })
}

/// Adaptive integration of a plain integrand.
pub fn integrate<F>(mut f: F, a: f64, b: f64, abs_tol: f64, rel_tol: f64) -> Result<Quad>
where
    F: FnMut(f64) -> f64,
{
    integrate_with(|t| Ok(f(t)), a, b, abs_tol, rel_tol)
}

/// `∫₀^∞ f(t) dt` through the map `t = u/(1−u)`.
pub fn integrate_half_line<F>(mut f: F, abs_tol: f64, rel_tol: f64) -> Result<Quad>
where
    F: FnMut(f64) -> f64,
{
    integrate_with(
        |u| {
            if u >= 1.0 {
                return Ok(0.0);
            }
            let w = 1.0 - u;
            let v = f(u / w) / (w * w);
            Ok(if v.is_finite() { v } else { 0.0 })
        },
        0.0,
        1.0,
        abs_tol,
        rel_tol,
    )
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`, by Newton iteration on `P_n`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let mut p0 = 1.0;
            let mut p1 = 0.0;
            for j in 0..n {
                let p2 = p1;
                p1 = p0;
                p0 = ((2 * j + 1) as f64 * z * p1 - j as f64 * p2) / (j + 1) as f64;
            }
            dp = n as f64 * (z * p0 - p1) / (z * z - 1.0);
            let dz = p0 / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        let wi = 2.0 / ((1.0 - z * z) * dp * dp);
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    (x, w)
}

/// Polynomial interpolant through Chebyshev–Lobatto nodes on `[a, b]`,
/// evaluated with the barycentric formula.
#[derive(Debug, Clone)]
pub struct Chebyshev {
    a: f64,
    b: f64,
    nodes: Vec<f64>,
    values: Vec<f64>,
}

impl Chebyshev {
    /// The `m` Lobatto nodes on `[a, b]`, in increasing order.
    pub fn nodes(a: f64, b: f64, m: usize) -> Vec<f64> {
        assert!(m >= 2, "need at least two nodes");
        (0..m)
            .map(|j| {
                let c = -(std::f64::consts::PI * j as f64 / (m - 1) as f64).cos();
                0.5 * (a + b) + 0.5 * (b - a) * c
            })
            .collect()
    }

    pub fn new(a: f64, b: f64, values: Vec<f64>) -> Self {
        let nodes = Self::nodes(a, b, values.len());
        Chebyshev {
            a,
            b,
            nodes,
            values,
        }
    }

    pub fn from_fn<F: FnMut(f64) -> Result<f64>>(
        a: f64,
        b: f64,
        m: usize,
        mut f: F,
    ) -> Result<Self> {
        let nodes = Self::nodes(a, b, m);
        let values = nodes.iter().map(|&t| f(t)).collect::<Result<Vec<_>>>()?;
        Ok(Chebyshev {
            a,
            b,
            nodes,
            values,
        })
    }

    pub fn node_values(&self) -> (&[f64], &[f64]) {
        (&self.nodes, &self.values)
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.a, self.b)
    }

    fn weight(&self, j: usize) -> f64 {
        let w = if j % 2 == 0 { 1.0 } else { -1.0 };
        if j == 0 || j == self.nodes.len() - 1 {
            0.5 * w
        } else {
            w
        }
    }

    /// Derivative of the interpolant at node `i`.
    pub fn derivative_at_node(&self, i: usize) -> f64 {
        let wi = self.weight(i);
        let mut sum = 0.0;
        for j in 0..self.nodes.len() {
            if j != i {
                sum += self.weight(j) / wi * (self.values[j] - self.values[i])
                    / (self.nodes[i] - self.nodes[j]);
            }
        }
        sum
    }

    /// Chebyshev coefficients `c_k` of the interpolant in the variable mapped to `[-1, 1]`.
    pub fn coefficients(&self) -> Vec<f64> {
        let m = self.nodes.len();
        let big_n = (m - 1) as f64;
        // Our node j sits at cos((m-1-j)π/N).
        (0..m)
            .map(|k| {
                let mut sum = 0.0;
                for j in 0..m {
                    let std = m - 1 - j;
                    let half = if std == 0 || std == m - 1 { 0.5 } else { 1.0 };
                    sum += half
                        * self.values[j]
                        * (std::f64::consts::PI * (k * std) as f64 / big_n).cos();
                }
                let c = 2.0 / big_n * sum;
                if k == 0 || k == m - 1 {
                    0.5 * c
                } else {
                    c
                }
            })
            .collect()
    }

    /// `∫_{t_j}^b p(τ) dτ` at every node `t_j`, integrating the interpolant exactly.
    pub fn tail_integrals(&self) -> Vec<f64> {
        let c = self.coefficients();
        let m = c.len();
        // Antiderivative coefficients in the standard variable.
        let mut big_c = vec![0.0; m + 1];
        for k in 0..m {
            match k {
                0 => big_c[1] += c[0],
                1 => big_c[2] += c[1] / 4.0,
                _ => {
                    big_c[k + 1] += c[k] / (2.0 * (k + 1) as f64);
                    big_c[k - 1] -= c[k] / (2.0 * (k - 1) as f64);
                }
            }
        }
        let at = |u: f64| -> f64 {
            let theta = u.clamp(-1.0, 1.0).acos();
            big_c
                .iter()
                .enumerate()
                .map(|(k, ck)| ck * (k as f64 * theta).cos())
                .sum()
        };
        let top = at(1.0);
        let scale = 0.5 * (self.b - self.a);
        self.nodes
            .iter()
            .enumerate()
            .map(|(j, _)| {
                let u = -(std::f64::consts::PI * j as f64 / (m - 1) as f64).cos();
                scale * (top - at(u))
            })
            .collect()
    }

    pub fn eval(&self, t: f64) -> f64 {
        let m = self.nodes.len();
        let mut num = 0.0;
        let mut den = 0.0;
        for j in 0..m {
            let d = t - self.nodes[j];
            if d == 0.0 {
                return self.values[j];
            }
            let mut w = if j % 2 == 0 { 1.0 } else { -1.0 };
            if j == 0 || j == m - 1 {
                w *= 0.5;
            }
            let q = w / d;
            num += q * self.values[j];
            den += q;
        }
        num / den
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_is_exact() {
        let q = integrate(|x| x.powi(5) - 3.0 * x * x, -1.0, 2.0, 1e-14, 0.0).unwrap();
        assert!((q.value - (64.0 / 6.0 - 1.0 / 6.0 - 9.0)).abs() < 1e-13);
    }

    #[test]
    fn endpoint_singularity_converges() {
        let q = integrate(|x| 1.0 / x.sqrt(), 0.0, 1.0, 1e-12, 1e-12).unwrap();
        assert!((q.value - 2.0).abs() < 1e-10, "{q:?}");
    }

    #[test]
    fn half_line_gaussian() {
        let q = integrate_half_line(|t| (-t * t).exp(), 1e-13, 1e-13).unwrap();
        assert!((q.value - std::f64::consts::PI.sqrt() / 2.0).abs() < 1e-12);
    }

    #[test]
    fn legendre_rule_integrates_degree_2n_minus_1() {
        let (x, w) = gauss_legendre(12);
        let s: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(22)).sum();
        assert!((s - 2.0 / 23.0).abs() < 1e-14);
        let total: f64 = w.iter().sum();
        assert!((total - 2.0).abs() < 1e-14);
    }

    #[test]
    fn chebyshev_derivative_and_tail_integral() {
        let c = Chebyshev::from_fn(0.0, 2.0, 33, |t| Ok((t * 1.3).sin())).unwrap();
        let last = c.node_values().0.len() - 1;
        assert!((c.derivative_at_node(last) - 1.3 * 2.6f64.cos()).abs() < 1e-11);
        let tails = c.tail_integrals();
        for (t, v) in c.node_values().0.iter().zip(&tails) {
            let exact = ((1.3 * t).cos() - 2.6f64.cos()) / 1.3;
            assert!((v - exact).abs() < 1e-13, "{t} {v} {exact}");
        }
    }

    #[test]
    fn chebyshev_interpolates_smooth_function() {
        let c = Chebyshev::from_fn(0.0, 1.0, 33, |t| Ok((3.0 * t).sin())).unwrap();
        for k in 0..50 {
            let t = k as f64 / 49.0;
            assert!((c.eval(t) - (3.0 * t).sin()).abs() < 1e-13);
        }
    }
}
