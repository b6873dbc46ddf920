//! Classification of quadratic profiles by which `m`-fold symmetries bifurcate.

use crate::dispersion::{find_eigenvalue, zeta, EigenvalueRecord, QuadraticProfile, ZetaForm};
use crate::error::{Error, Result};
use crate::kernel::{
    one_fold_transversality, transversality_integral, SpectralContext, DEFAULT_NODES, EIGEN_GATE,
};
use rayon::prelude::*;
use serde::Serialize;

/// Threshold `1 + ε` below which `B ≤ −A/(1+ε)` rules out the one-fold crossing.
pub const ONE_FOLD_EPS: f64 = 0.0581;

/// Regime of a profile, after reducing to `A > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    /// `A + B < 0`: eigenvalues for all large `m`.
    #[serde(rename = "R_infty")]
    RInfty,
    /// `B > A`: eigenvalues for finitely many `m`.
    #[serde(rename = "R_finite")]
    RFinite,
    /// `−A/2 ≤ B ≤ A/4`: no `m ≥ 2` bifurcation.
    #[serde(rename = "R_0")]
    R0,
    /// `−A ≤ B ≤ −A/(1+ε)`: only the one-fold statement is available.
    OneFoldOnly,
    /// Everything else.
    TransientUnknown,
}

impl Regime {
    pub fn of(p: &QuadraticProfile) -> Regime {
        let beta = p.ratio();
        if beta < -1.0 {
            Regime::RInfty
        } else if beta <= -1.0 / (1.0 + ONE_FOLD_EPS) {
            Regime::OneFoldOnly
        } else if beta < -0.5 {
            Regime::TransientUnknown
        } else if beta <= 0.25 {
            Regime::R0
        } else if beta <= 1.0 {
            Regime::TransientUnknown
        } else {
            Regime::RFinite
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Regime::RInfty => "R_infty",
            Regime::RFinite => "R_finite",
            Regime::R0 => "R_0",
            Regime::OneFoldOnly => "one_fold_only",
            Regime::TransientUnknown => "transient_unknown",
        }
    }
}

/// Largest mode tried when searching for the empirical `m₀`.
pub const M0_SEARCH_LIMIT: u32 = 400;

/// Number of consecutive modes whose roots must continue monotonically for `m₀`.
pub const M0_LOOKAHEAD: u32 = 5;

/// Sample count of the exclusion sign scan.
pub const EXCLUSION_SCAN_POINTS: usize = 512;

/// Modes `lo..=hi` (`hi = None` for unbounded) for which an eigenvalue is known to exist.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ModeRange {
    pub lo: u32,
    pub hi: Option<u32>,
}

impl ModeRange {
    pub fn contains(&self, m: u32) -> bool {
        m >= self.lo && self.hi.is_none_or(|h| m <= h)
    }

    /// Number of modes in the range, `None` when unbounded.
    pub fn count(&self) -> Option<u32> {
        self.hi.map(|h| (h + 1).saturating_sub(self.lo))
    }
}

/// Classification of a profile.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegimeReport {
    pub profile: QuadraticProfile,
    /// The `A > 0` representative the analysis runs on.
    pub reduced: QuadraticProfile,
    /// `−1` when `A < 0`: angular velocities of `profile` are those of `reduced` negated.
    pub omega_sign: f64,
    pub regime: Regime,
    pub kappa: Option<f64>,
    /// Modes with a guaranteed eigenvalue.
    pub allowed: Option<ModeRange>,
    /// Every `m ≥ excluded_from` has no eigenvalue.
    pub excluded_from: Option<u32>,
    /// Interval of `Ω` over which `U₀` changes sign, for the original profile.
    pub singular_interval: (f64, f64),
    /// For `R_infty`: smallest `m ≥ 2` from which roots are found and increase.
    pub empirical_m0: Option<u32>,
}

impl RegimeReport {
    /// The allowed range and the excluded set never overlap.
    pub fn consistent(&self) -> bool {
        match (self.allowed, self.excluded_from) {
            (Some(r), Some(e)) => r.hi.is_some_and(|h| h < e),
            _ => true,
        }
    }

    pub fn is_excluded(&self, m: u32) -> bool {
        self.excluded_from.is_some_and(|e| m >= e)
    }
}

/// Floor of the real bound `max(B/A + 1/8, 2B/A − 9/2)` on the allowed modes.
pub fn finite_allowed_max(beta: f64) -> u32 {
    (beta + 0.125).max(2.0 * beta - 4.5).floor().max(0.0) as u32
}

/// Smallest integer `m ≥ 2B/A + 2`.
pub fn finite_excluded_from(beta: f64) -> u32 {
    (2.0 * beta + 2.0).ceil().max(1.0) as u32
}

fn single_root(m: u32, p: &QuadraticProfile) -> Option<EigenvalueRecord> {
    let search = find_eigenvalue(m, p, EIGEN_GATE).ok()?;
    search
        .root()
        .copied()
        .filter(|r| r.residual <= EIGEN_GATE && r.separation_ok)
}

/// Smallest `m ≥ 2` whose root exists and for which the roots of
/// `m+1, …, m+M0_LOOKAHEAD` also exist and increase strictly.
pub fn empirical_m0(p: &QuadraticProfile) -> Option<u32> {
    let (p, _) = p.normalized();
    let mut chain: Vec<(u32, f64)> = Vec::new();
    for m in 2..=M0_SEARCH_LIMIT + M0_LOOKAHEAD {
        match single_root(m, &p) {
            Some(r) if chain.last().is_none_or(|&(_, x)| r.x_n > x) => chain.push((m, r.x_n)),
            Some(r) => chain = vec![(m, r.x_n)],
            None => chain.clear(),
        }
        if chain.len() as u32 > M0_LOOKAHEAD {
            return Some(chain[0].0);
        }
        if chain.first().is_some_and(|&(m0, _)| m0 > M0_SEARCH_LIMIT) {
            return None;
        }
    }
    None
}

/// Classifies `(A, B)`, reducing `A < 0` through `(A, B, Ω) → (−A, −B, −Ω)`.
pub fn classify(profile: &QuadraticProfile) -> RegimeReport {
    let (reduced, omega_sign) = profile.normalized();
    let regime = Regime::of(&reduced);
    let beta = reduced.ratio();
    let x1_exists = beta != 0.0 && -1.0 / (2.0 * beta) < 1.0;
    let (allowed, excluded_from, empirical) = match regime {
        Regime::RFinite => {
            let hi = finite_allowed_max(beta);
            (
                Some(ModeRange {
                    lo: 1,
                    hi: Some(hi),
                }),
                Some(finite_excluded_from(beta)),
                None,
            )
        }
        Regime::RInfty => {
            let m0 = empirical_m0(&reduced);
            (m0.map(|lo| ModeRange { lo, hi: None }), None, m0)
        }
        Regime::R0 => {
            let allowed = x1_exists.then_some(ModeRange { lo: 1, hi: Some(1) });
            (allowed, Some(2), None)
        }
        Regime::OneFoldOnly => (Some(ModeRange { lo: 1, hi: Some(1) }), None, None),
        Regime::TransientUnknown => (None, None, None),
    };
    let ends = [profile.b / 2.0, profile.b / 2.0 + profile.a / 4.0];
    RegimeReport {
        profile: *profile,
        reduced,
        omega_sign,
        regime,
        kappa: reduced.kappa(),
        allowed,
        excluded_from,
        singular_interval: (ends[0].min(ends[1]), ends[0].max(ends[1])),
        empirical_m0: empirical,
    }
}

/// `true` when a sign scan of `ζ_m` over `(−∞, 0)` and `[0, 1)` finds no sign change.
pub fn exclusion_scan(profile: &QuadraticProfile, m: u32, points: usize) -> Result<bool> {
    let (p, _) = profile.normalized();
    let half = points / 2;
    let mut xs: Vec<f64> = (1..=half)
        .rev()
        .map(|k| {
            let s = k as f64 / (half + 1) as f64;
            -(s / (1.0 - s)).powi(2)
        })
        .collect();
    let rest = points - half;
    xs.extend((0..rest).map(|k| 0.999 * k as f64 / rest as f64));
    let mut sign = 0.0;
    for x in xs {
        let v = zeta(m, x, &p, ZetaForm::Contiguous)?;
        if v == 0.0 {
            return Ok(false);
        }
        if sign != 0.0 && v.signum() != sign {
            return Ok(false);
        }
        sign = v.signum();
    }
    Ok(true)
}

/// An eigenvalue with its transversality pairing.
#[derive(Debug, Clone, Serialize)]
pub struct TableEntry {
    pub record: EigenvalueRecord,
    /// The pairing, when it was computed.
    pub transversality: Option<f64>,
    pub transversality_nonzero: Option<bool>,
}

fn transversality_of(rec: &EigenvalueRecord, p: &QuadraticProfile) -> Result<(f64, bool)> {
    if rec.n == 1 {
        let t = one_fold_transversality(rec.x_n);
        return Ok((t, t.abs() > 1e-6));
    }
    let ctx = SpectralContext::new(rec.n, rec.x_n, *p)?;
    let t = transversality_integral(&ctx, DEFAULT_NODES)?;
    Ok((t.value, t.nonzero))
}

/// Every root of `ζ_m`, `1 ≤ m ≤ m_max`, with its transversality pairing.
pub fn eigenvalue_table(profile: &QuadraticProfile, m_max: u32) -> Result<Vec<TableEntry>> {
    eigenvalue_table_with(profile, m_max, true)
}

/// [`eigenvalue_table`] with the pairing optional; modes run in parallel and the
/// result is ordered by `m`.
pub fn eigenvalue_table_with(
    profile: &QuadraticProfile,
    m_max: u32,
    transversality: bool,
) -> Result<Vec<TableEntry>> {
    let (p, sign) = profile.normalized();
    let rows: Vec<Result<Vec<TableEntry>>> = (1..=m_max)
        .into_par_iter()
        .map(|m| {
            let search = match find_eigenvalue(m, &p, EIGEN_GATE) {
                Ok(s) => s,
                Err(Error::RegimeUnsupported(_)) => return Ok(Vec::new()),
                Err(e) => return Err(e),
            };
            search
                .roots
                .iter()
                .map(|r| {
                    let (t, nz) = if transversality {
                        let (t, nz) = transversality_of(r, &p)?;
                        (Some(t), Some(nz))
                    } else {
                        (None, None)
                    };
                    let mut record = *r;
                    record.omega_n *= sign;
                    Ok(TableEntry {
                        record,
                        transversality: t,
                        transversality_nonzero: nz,
                    })
                })
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    for r in rows {
        out.extend(r?);
    }
    Ok(out)
}

/// One row of the `B`-sweep at fixed `A`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MapRow {
    pub a: f64,
    pub b: f64,
    pub regime: Regime,
    /// Size of the guaranteed range; `None` when unbounded or unknown.
    pub allowed_count: Option<u32>,
    pub excluded_from: Option<u32>,
    /// Modes `m ≤ m_max` where a root was found, when a search bound was given.
    pub found_count: Option<u32>,
}

/// Classification over a grid of `B` values; root counts are searched up to
/// `m_max` when given.
pub fn regime_map(a: f64, bs: &[f64], m_max: Option<u32>) -> Result<Vec<MapRow>> {
    bs.par_iter()
        .map(|&b| {
            let profile = QuadraticProfile::new(a, b)?;
            let (p, _) = profile.normalized();
            let regime = Regime::of(&p);
            let beta = p.ratio();
            let (allowed_count, excluded_from) = match regime {
                Regime::RFinite => (
                    Some(finite_allowed_max(beta)),
                    Some(finite_excluded_from(beta)),
                ),
                Regime::R0 => (Some(u32::from(beta > 0.0)), Some(2)),
                Regime::OneFoldOnly => (Some(1), None),
                _ => (None, None),
            };
            let found_count = match m_max {
                Some(mm) => {
                    let mut c = 0;
                    for m in 1..=mm {
                        match find_eigenvalue(m, &p, EIGEN_GATE) {
                            Ok(s) if !s.roots.is_empty() => c += 1,
                            Ok(_) | Err(Error::RegimeUnsupported(_)) => {}
                            Err(e) => return Err(e),
                        }
                    }
                    Some(c)
                }
                None => None,
            };
            Ok(MapRow {
                a,
                b,
                regime,
                allowed_count,
                excluded_from,
                found_count,
            })
        })
        .collect()
}
