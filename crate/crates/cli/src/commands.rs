//! One function per subcommand, each returning its artifacts.

use crate::error::CliError;
use crate::output::{num, opt_num, Artifacts, Table};
use num_complex::Complex64;
use quadvort::dispersion::{find_eigenvalue, zeta, EigenvalueRecord, ZetaForm};
use quadvort::flow::{integrate_orbit, period_map, AngularField, RadialFn};
use quadvort::kernel::{kernel_generator, one_fold_transversality, transversality_from_profile};
use quadvort::potentials::{identity_values, IdentityCase, OracleGrid};
use quadvort::regimes::{classify, eigenvalue_table_with, regime_map};
use quadvort::{QuadraticProfile, SpectralContext};
use rayon::prelude::*;
use serde_json::{json, Map, Value};
use std::sync::Arc;

pub const EIGENVALUE_HEADER: [&str; 7] = [
    "n",
    "x_n",
    "omega_n",
    "residual",
    "bracket_lo",
    "bracket_hi",
    "separation_ok",
];

fn profile(a: f64, b: f64) -> Result<QuadraticProfile, CliError> {
    Ok(QuadraticProfile::new(a, b)?)
}

fn parse_f64(s: &str, what: &str) -> Result<f64, CliError> {
    s.trim()
        .parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| CliError::Validation(format!("{what}: '{s}' is not a finite number")))
}

/// `n`, `lo:hi:step` or `a,b,c`.
pub fn parse_modes(spec: &str) -> Result<Vec<u32>, CliError> {
    let bad = || {
        CliError::Validation(format!(
            "mode list '{spec}' must be n, lo:hi:step or a comma list of positive integers"
        ))
    };
    let parse = |s: &str| {
        s.trim()
            .parse::<u32>()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(bad)
    };
    let modes: Vec<u32> = if spec.contains(':') {
        let parts: Vec<&str> = spec.split(':').collect();
        if parts.len() != 3 {
            return Err(bad());
        }
        let (lo, hi, step) = (parse(parts[0])?, parse(parts[1])?, parse(parts[2])?);
        (lo..=hi).step_by(step as usize).collect()
    } else {
        spec.split(',').map(parse).collect::<Result<_, _>>()?
    };
    if modes.is_empty() {
        return Err(bad());
    }
    Ok(modes)
}

/// `lo:hi:count` with `count ≥ 1` points, endpoints included.
pub fn parse_grid(spec: &str) -> Result<Vec<f64>, CliError> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return Err(CliError::Validation(format!(
            "grid '{spec}' must be lo:hi:count"
        )));
    }
    let lo = parse_f64(parts[0], "grid start")?;
    let hi = parse_f64(parts[1], "grid end")?;
    let count: usize = parts[2]
        .trim()
        .parse()
        .ok()
        .filter(|&c| c > 0)
        .ok_or_else(|| {
            CliError::Validation(format!(
                "grid count '{}' must be a positive integer",
                parts[2]
            ))
        })?;
    if count == 1 {
        return Ok(vec![lo]);
    }
    Ok((0..count)
        .map(|k| lo + (hi - lo) * k as f64 / (count - 1) as f64)
        .collect())
}

pub fn parse_point(spec: &str) -> Result<Complex64, CliError> {
    let parts: Vec<&str> = spec.split(',').collect();
    if parts.len() != 2 {
        return Err(CliError::Validation(format!("point '{spec}' must be x,y")));
    }
    Ok(Complex64::new(
        parse_f64(parts[0], "point")?,
        parse_f64(parts[1], "point")?,
    ))
}

fn record_row(r: &EigenvalueRecord) -> Vec<String> {
    vec![
        r.n.to_string(),
        num(r.x_n),
        num(r.omega_n),
        num(r.residual),
        num(r.bracket.0),
        num(r.bracket.1),
        r.separation_ok.to_string(),
    ]
}

fn profile_meta(a: f64, b: f64) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("A".into(), json!(a));
    m.insert("B".into(), json!(b));
    m
}

pub fn dispersion(a: f64, b: f64, modes: &str, x_grid: &str) -> Result<Artifacts, CliError> {
    let p = profile(a, b)?;
    let modes = parse_modes(modes)?;
    let xs = parse_grid(x_grid)?;
    if let Some(&x) = xs.iter().find(|&&x| x > 1.0) {
        return Err(CliError::Validation(format!(
            "ζ_n is defined for x <= 1, grid contains {x}"
        )));
    }
    let work: Vec<(u32, f64)> = modes
        .iter()
        .flat_map(|&n| xs.iter().map(move |&x| (n, x)))
        .collect();
    let rows: Vec<Result<Vec<String>, CliError>> = work
        .par_iter()
        .map(|&(n, x)| {
            let v = ZetaForm::ALL
                .iter()
                .map(|&f| zeta(n, x, &p, f))
                .collect::<Result<Vec<_>, _>>()?;
            let (i, c, al) = (v[0], v[1], v[2]);
            let spread = (i - c).abs().max((i - al).abs()).max((c - al).abs());
            Ok(vec![
                n.to_string(),
                num(x),
                num(i),
                num(c),
                num(al),
                num(spread),
            ])
        })
        .collect();
    let mut t = Table::new(&[
        "n",
        "x",
        "zeta_integral",
        "zeta_contiguous",
        "zeta_alt",
        "spread",
    ]);
    for r in rows {
        t.push(r?);
    }
    Ok(Artifacts::new("dispersion", t).with_meta("dispersion", profile_meta(a, b)))
}

pub fn eigenvalues(a: f64, b: f64, modes: &str, tol: f64) -> Result<Artifacts, CliError> {
    if !(tol > 0.0) {
        return Err(CliError::Validation("tolerance must be positive".into()));
    }
    let p = profile(a, b)?;
    let (reduced, sign) = p.normalized();
    let modes = parse_modes(modes)?;
    let searches: Vec<_> = modes
        .par_iter()
        .map(|&n| find_eigenvalue(n, &reduced, tol))
        .collect();
    let mut t = Table::new(&EIGENVALUE_HEADER);
    let mut missing = Vec::new();
    for (n, s) in modes.iter().zip(searches) {
        let s = s?;
        if s.roots.is_empty() {
            missing.push(*n);
        }
        for r in &s.roots {
            let mut r = *r;
            r.omega_n *= sign;
            t.push(record_row(&r));
        }
    }
    let mut meta = profile_meta(a, b);
    meta.insert("modes_without_root".into(), json!(missing));
    let mut art = Artifacts::new("eigenvalues", t).with_meta("eigenvalues", meta);
    art.summary = format!(
        "{} roots, {} modes without a root\n",
        art.table.rows.len(),
        missing.len()
    );
    Ok(art)
}

fn single_root(n: u32, p: &QuadraticProfile) -> Result<EigenvalueRecord, CliError> {
    let s = find_eigenvalue(n, p, quadvort::kernel::EIGEN_GATE)?;
    s.roots
        .first()
        .copied()
        .ok_or_else(|| CliError::Validation(format!("ζ_{n} has no root for B/A = {}", p.ratio())))
}

pub fn kernel(a: f64, b: f64, n: u32, nodes: usize, points: usize) -> Result<Artifacts, CliError> {
    if points < 2 {
        return Err(CliError::Validation("need at least 2 output points".into()));
    }
    let (p, _) = profile(a, b)?.normalized();
    let rec = single_root(n, &p)?;
    let ctx = SpectralContext::new(n, rec.x_n, p)?;
    let prof = kernel_generator(&ctx, nodes)?;
    let rs: Vec<f64> = (0..points)
        .map(|k| k as f64 / (points - 1) as f64)
        .collect();
    let rows: Vec<Result<Vec<String>, CliError>> = rs
        .par_iter()
        .map(|&r| Ok(vec![num(r), num(prof.hstar_at(r)?), num(prof.big_h_at(r)?)]))
        .collect();
    let mut t = Table::new(&["r", "hstar", "Hn"]);
    for r in rows {
        t.push(r?);
    }
    let norm = prof.normalization()?;
    let mut meta = profile_meta(a, b);
    meta.insert("n".into(), json!(n));
    meta.insert("x_n".into(), json!(rec.x_n));
    meta.insert("A_n".into(), json!(prof.a_n));
    meta.insert("H_n(1)".into(), json!(prof.h1));
    meta.insert("zeta_residual".into(), json!(prof.zeta_residual));
    meta.insert(
        "normalization_residual".into(),
        json!((norm - prof.h1).abs()),
    );
    meta.insert("H_n_prime_at_1".into(), json!(prof.big_h_prime_one()?));
    meta.insert("H_n_at_0".into(), json!(prof.big_h_at(0.0)?));
    meta.insert("nodes".into(), json!(nodes));
    Ok(Artifacts::new("kernel", t).with_meta("kernel", meta))
}

pub fn transversality(a: f64, b: f64, n: u32, nodes: usize) -> Result<Artifacts, CliError> {
    let (p, _) = profile(a, b)?.normalized();
    let rec = single_root(n, &p)?;
    let mut t = Table::new(&["n", "x_n", "total", "part_1", "part_2", "part_3", "nonzero"]);
    let (total, parts, nonzero) = if n == 1 {
        let v = one_fold_transversality(rec.x_n);
        (v, [None; 3], v.abs() > 1e-6)
    } else {
        let ctx = SpectralContext::new(n, rec.x_n, p)?;
        let res = transversality_from_profile(&kernel_generator(&ctx, nodes)?)?;
        (res.value, res.parts.map(Some), res.nonzero)
    };
    t.push(vec![
        n.to_string(),
        num(rec.x_n),
        num(total),
        opt_num(parts[0]),
        opt_num(parts[1]),
        opt_num(parts[2]),
        nonzero.to_string(),
    ]);
    let mut art =
        Artifacts::new("transversality", t).with_meta("transversality", profile_meta(a, b));
    art.summary = format!("{}\n", num(total));
    Ok(art)
}

fn parse_oracle_grid(spec: &str) -> Result<OracleGrid, CliError> {
    let parts: Vec<&str> = spec.split(',').collect();
    let bad = || {
        CliError::Validation(format!(
            "oracle grid '{spec}' must be radial,angular with positive counts"
        ))
    };
    if parts.len() != 2 {
        return Err(bad());
    }
    let radial: usize = parts[0]
        .trim()
        .parse()
        .ok()
        .filter(|&v| v > 0)
        .ok_or_else(bad)?;
    let angular: usize = parts[1]
        .trim()
        .parse()
        .ok()
        .filter(|&v| v > 0)
        .ok_or_else(bad)?;
    Ok(OracleGrid { radial, angular })
}

pub fn potentials(
    identity: u8,
    mode: u32,
    at: &str,
    a: f64,
    b: f64,
    grid: &str,
) -> Result<Artifacts, CliError> {
    let z = parse_point(at)?;
    let grid = parse_oracle_grid(grid)?;
    let case = IdentityCase {
        f0: [b, a, 0.0],
        n: mode,
        h: [1.0, 0.0],
        z,
    };
    let (closed, oracle) = identity_values(identity, &case, grid)?;
    let mut t = Table::new(&[
        "identity",
        "mode",
        "x",
        "y",
        "closed_re",
        "closed_im",
        "oracle_re",
        "oracle_im",
        "abs_diff",
    ]);
    t.push(vec![
        identity.to_string(),
        mode.to_string(),
        num(z.re),
        num(z.im),
        num(closed.re),
        num(closed.im),
        num(oracle.re),
        num(oracle.im),
        num((closed - oracle).norm()),
    ]);
    let mut meta = profile_meta(a, b);
    meta.insert(
        "density".into(),
        json!(format!(
            "f0 = A r^2 + B, h = r^{mode} cos({mode} theta), k(z) = z^{}",
            mode + 1
        )),
    );
    meta.insert("oracle_grid".into(), json!([grid.radial, grid.angular]));
    Ok(Artifacts::new("potentials", t).with_meta("potentials", meta))
}

#[allow(clippy::too_many_arguments)]
pub fn orbit(
    a: f64,
    b: f64,
    omega: f64,
    z: &str,
    mode: Option<u32>,
    amp: Option<f64>,
    tol: f64,
) -> Result<Artifacts, CliError> {
    if !(tol > 0.0) {
        return Err(CliError::Validation("tolerance must be positive".into()));
    }
    let p = profile(a, b)?;
    let z0 = parse_point(z)?;
    if z0.norm() > 1.0 {
        return Err(CliError::Validation(format!(
            "start point {z} lies outside the unit disc"
        )));
    }
    let field = match (mode, amp) {
        (Some(n), Some(eps)) => {
            let h: RadialFn = Arc::new(move |r: f64| r.powi(n as i32));
            AngularField::composite(p, omega, n, h, eps)?
        }
        _ => AngularField::radial(p, omega),
    };
    let rec = integrate_orbit(&field, z0, tol)?;
    let mut t = Table::new(&["t", "re_psi", "im_psi"]);
    for &(tt, x, y) in &rec.samples {
        t.push(vec![num(tt), num(x), num(y)]);
    }
    let mut meta = profile_meta(a, b);
    meta.insert("omega".into(), json!(omega));
    meta.insert("z".into(), json!([z0.re, z0.im]));
    meta.insert("mode".into(), json!(mode));
    meta.insert("amp".into(), json!(amp));
    meta.insert("period".into(), json!(rec.period));
    meta.insert("closure_gap".into(), json!(rec.closure_gap));
    meta.insert("bound".into(), json!(rec.bound));
    meta.insert("bound_ok".into(), json!(rec.bound_ok));
    if mode.is_none() {
        meta.insert(
            "period_closed_form".into(),
            json!(period_map(&field, z0, tol)?),
        );
    }
    let mut art = Artifacts::new("orbit", t).with_meta("orbit", meta);
    art.summary = format!(
        "period {}\nclosure_gap {}\n",
        num(rec.period),
        num(rec.closure_gap)
    );
    Ok(art)
}

pub fn regime(a: f64, b: f64, m_max: u32, with_t: bool) -> Result<Artifacts, CliError> {
    let p = profile(a, b)?;
    let report = classify(&p);
    let table = eigenvalue_table_with(&p, m_max, with_t)?;
    let mut header: Vec<&str> = EIGENVALUE_HEADER.to_vec();
    header.extend(["transversality", "transversality_nonzero"]);
    let mut t = Table::new(&header);
    for e in &table {
        let mut row = record_row(&e.record);
        row.push(opt_num(e.transversality));
        row.push(
            e.transversality_nonzero
                .map(|b| b.to_string())
                .unwrap_or_default(),
        );
        t.push(row);
    }
    let mut meta = Map::new();
    meta.insert(
        "report".into(),
        serde_json::to_value(&report).map_err(CliError::io)?,
    );
    meta.insert("m_max".into(), json!(m_max));
    let allowed = match report.allowed {
        Some(r) => format!(
            "{}..{}",
            r.lo,
            r.hi.map(|h| h.to_string()).unwrap_or_else(|| "inf".into())
        ),
        None => "none".into(),
    };
    let mut art = Artifacts::new("eigenvalues", t).with_meta("regime", meta);
    art.summary = format!(
        "regime {}\nallowed_m {}\nexcluded_from {}\nsingular_interval {} {}\nempirical_m0 {}\nroots {}\n",
        report.regime.as_str(),
        allowed,
        report.excluded_from.map(|e| e.to_string()).unwrap_or_else(|| "none".into()),
        num(report.singular_interval.0),
        num(report.singular_interval.1),
        report.empirical_m0.map(|e| e.to_string()).unwrap_or_else(|| "none".into()),
        table.len(),
    );
    Ok(art)
}

pub fn regime_sweep(a: f64, b_grid: &str, search: Option<u32>) -> Result<Artifacts, CliError> {
    profile(a, 0.0)?;
    let bs = parse_grid(b_grid)?;
    let rows = regime_map(a, &bs, search)?;
    let mut t = Table::new(&[
        "A",
        "B",
        "regime",
        "allowed_count",
        "excluded_from",
        "found_count",
    ]);
    let opt = |v: Option<u32>| v.map(|v| v.to_string()).unwrap_or_default();
    for r in &rows {
        t.push(vec![
            num(r.a),
            num(r.b),
            r.regime.as_str().into(),
            opt(r.allowed_count),
            opt(r.excluded_from),
            opt(r.found_count),
        ]);
    }
    let mut meta = Map::new();
    meta.insert("A".into(), json!(a));
    meta.insert("B_grid".into(), json!(b_grid));
    Ok(Artifacts::new("regime_map", t).with_meta("regime_map", meta))
}
