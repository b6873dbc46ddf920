//! `--check FILE`: compare a stored CSV with a fresh run and recompute the
//! residual columns from the stored values alone.

use crate::commands::EIGENVALUE_HEADER;
use crate::error::CliError;
use crate::output::{num, Table};
use quadvort::dispersion::{zeta, ZetaForm};
use quadvort::QuadraticProfile;

/// Largest relative difference tolerated between stored and fresh numbers.
pub const CHECK_REL: f64 = 1e-12;

fn parse(c: &str) -> Option<f64> {
    c.parse::<f64>().ok()
}

/// Result of a check, rendered as a one-row table.
pub struct CheckReport {
    pub table: Table,
    pub ok: bool,
}

pub fn check(
    stored: &Table,
    fresh: &Table,
    profile: Option<QuadraticProfile>,
) -> Result<CheckReport, CliError> {
    let mut problems = Vec::new();
    if stored.header != fresh.header {
        problems.push(format!(
            "header {:?} differs from {:?}",
            stored.header, fresh.header
        ));
    }
    if stored.rows.len() != fresh.rows.len() {
        problems.push(format!(
            "{} rows stored, {} recomputed",
            stored.rows.len(),
            fresh.rows.len()
        ));
    }
    let mut max_dev = 0.0f64;
    for (i, (a, b)) in stored.rows.iter().zip(&fresh.rows).enumerate() {
        for (j, (ca, cb)) in a.iter().zip(b).enumerate() {
            match (parse(ca), parse(cb)) {
                (Some(x), Some(y)) => {
                    let dev = (x - y).abs() / x.abs().max(y.abs()).max(1.0);
                    max_dev = max_dev.max(dev);
                    if dev > CHECK_REL {
                        problems.push(format!(
                            "row {i} column {} differs: {ca} vs {cb}",
                            stored.header[j]
                        ));
                    }
                }
                _ if ca != cb => problems.push(format!(
                    "row {i} column {} differs: {ca} vs {cb}",
                    stored.header[j]
                )),
                _ => {}
            }
        }
    }
    let residual_dev = recompute_residuals(stored, profile, &mut problems)?;
    let ok = problems.is_empty();
    for p in problems.iter().take(20) {
        eprintln!("check: {p}");
    }
    let mut table = Table::new(&["rows", "max_deviation", "max_residual_deviation", "ok"]);
    table.push(vec![
        stored.rows.len().to_string(),
        num(max_dev),
        residual_dev.map(num).unwrap_or_default(),
        ok.to_string(),
    ]);
    Ok(CheckReport { table, ok })
}

/// Re-derives residual columns from the stored primary columns.
fn recompute_residuals(
    stored: &Table,
    profile: Option<QuadraticProfile>,
    problems: &mut Vec<String>,
) -> Result<Option<f64>, CliError> {
    let col = |name: &str| stored.column(name);
    let value = |row: &[String], j: usize| {
        parse(&row[j])
            .ok_or_else(|| CliError::Validation(format!("cell '{}' is not a number", row[j])))
    };
    let is_eigen = stored.header.len() >= EIGENVALUE_HEADER.len()
        && stored
            .header
            .iter()
            .zip(EIGENVALUE_HEADER)
            .all(|(h, e)| h == e);
    if is_eigen {
        let Some(p) = profile else { return Ok(None) };
        let (p, _) = p.normalized();
        let mut worst = 0.0f64;
        for row in &stored.rows {
            let n: u32 = row[0].parse().map_err(CliError::validation)?;
            let x = value(row, 1)?;
            let r = zeta(n, x, &p, ZetaForm::Contiguous)?.abs();
            let dev = (r - value(row, 3)?).abs();
            worst = worst.max(dev);
            if dev > 1e-14 {
                problems.push(format!("residual of n = {n} recomputes to {}", num(r)));
            }
        }
        return Ok(Some(worst));
    }
    if let (Some(i), Some(c), Some(a), Some(s)) = (
        col("zeta_integral"),
        col("zeta_contiguous"),
        col("zeta_alt"),
        col("spread"),
    ) {
        let mut worst = 0.0f64;
        for row in &stored.rows {
            let (vi, vc, va) = (value(row, i)?, value(row, c)?, value(row, a)?);
            let spread = (vi - vc).abs().max((vi - va).abs()).max((vc - va).abs());
            let dev = (spread - value(row, s)?).abs();
            worst = worst.max(dev);
            if dev > 0.0 {
                problems.push(format!(
                    "spread at x = {} recomputes to {}",
                    row[1],
                    num(spread)
                ));
            }
        }
        return Ok(Some(worst));
    }
    if let (Some(cr), Some(ci), Some(or), Some(oi), Some(d)) = (
        col("closed_re"),
        col("closed_im"),
        col("oracle_re"),
        col("oracle_im"),
        col("abs_diff"),
    ) {
        let mut worst = 0.0f64;
        for row in &stored.rows {
            let dre = value(row, cr)? - value(row, or)?;
            let dim = value(row, ci)? - value(row, oi)?;
            let dev = (dre.hypot(dim) - value(row, d)?).abs();
            worst = worst.max(dev);
            if dev > 1e-15 {
                problems.push(format!("abs_diff recomputes to {}", num(dre.hypot(dim))));
            }
        }
        return Ok(Some(worst));
    }
    Ok(None)
}
