//! Quick built-in check suites with a pass table.

use crate::config::Suite;
use crate::error::CliError;
use crate::output::{num, Table};
use num_complex::Complex64;
use quadvort::dispersion::{self, zeta, ZetaForm};
use quadvort::flow::{integrate_orbit, orbit_average, period_map, AngularField};
use quadvort::hypergeom::{self, HyperParams};
use quadvort::kernel::{kernel_generator, one_fold_transversality};
use quadvort::potentials::{identity_values, IdentityCase, OracleGrid};
use quadvort::regimes::{classify, Regime};
use quadvort::{QuadraticFamilyIndex, QuadraticProfile, SpectralContext};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Check {
    suite: &'static str,
    name: String,
    value: f64,
    tol: f64,
}

type Checks = Vec<Check>;

fn push(out: &mut Checks, suite: &'static str, name: impl Into<String>, value: f64, tol: f64) {
    out.push(Check {
        suite,
        name: name.into(),
        value,
        tol,
    });
}

fn grid(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    (0..count)
        .map(|k| lo + (hi - lo) * k as f64 / (count - 1) as f64)
        .collect()
}

fn max_abs<I: IntoIterator<Item = quadvort::Result<f64>>>(it: I) -> quadvort::Result<f64> {
    it.into_iter()
        .try_fold(0.0f64, |acc, v| Ok(acc.max(v?.abs())))
}

fn hypergeom_suite(out: &mut Checks) -> quadvort::Result<()> {
    const S: &str = "hypergeom";
    let xs = grid(-5.0, 0.95, 12);
    let fams: Vec<HyperParams> = [1.0, 2.0, 5.0, 12.0, 30.0]
        .iter()
        .map(|&n| QuadraticFamilyIndex::new(n).map(|i| i.params()))
        .collect::<quadvort::Result<_>>()?;
    let pairs = || fams.iter().flat_map(|&p| xs.iter().map(move |&x| (p, x)));
    push(
        out,
        S,
        "contiguous_c",
        max_abs(pairs().map(|(p, x)| hypergeom::residual_contiguous_c(p, x)))?,
        1e-9,
    );
    push(
        out,
        S,
        "contiguous_b",
        max_abs(pairs().map(|(p, x)| hypergeom::residual_contiguous_b(p, x)))?,
        1e-9,
    );
    push(
        out,
        S,
        "three_term_c",
        max_abs(pairs().map(|(p, x)| hypergeom::residual_three_term_c(p, x)))?,
        1e-9,
    );
    let mut shift = 0.0f64;
    for x in [-2.0, 0.5, 0.9] {
        let (one, two) = hypergeom::residual_integral_shift(fams[1], x)?;
        shift = shift.max(one.abs()).max(two.abs());
    }
    push(out, S, "integral_shift", shift, 1e-8);
    push(
        out,
        S,
        "radial_pair",
        max_abs(
            grid(-3.0, 0.9, 12)
                .into_iter()
                .map(hypergeom::residual_radial_pair),
        )?,
        1e-9,
    );
    push(
        out,
        S,
        "ode",
        max_abs(pairs().map(|(p, x)| hypergeom::residual_ode(p, x)))?,
        1e-6,
    );
    push(
        out,
        S,
        "F(-1,2;2;0.3)",
        hypergeom::hyp2f1(-1.0, 2.0, 2.0, 0.3)? - 0.7,
        1e-12,
    );
    push(
        out,
        S,
        "F(1,2;4;1)",
        hypergeom::hyp2f1(1.0, 2.0, 4.0, 1.0)? - 3.0,
        1e-10,
    );
    Ok(())
}

fn dispersion_suite(out: &mut Checks) -> quadvort::Result<()> {
    const S: &str = "dispersion";
    let p = QuadraticProfile::new(1.0, -2.0)?;
    let mut spread = 0.0f64;
    for n in [2u32, 5, 10] {
        for x in grid(-3.0, 0.95, 8) {
            let v: Vec<f64> = ZetaForm::ALL
                .iter()
                .map(|&f| zeta(n, x, &p, f))
                .collect::<quadvort::Result<_>>()?;
            spread = spread.max((v[0] - v[1]).abs()).max((v[0] - v[2]).abs());
        }
    }
    push(out, S, "zeta_forms_agree", spread, 1e-8);
    let anchor = max_abs(
        (1..=10u32)
            .map(|n| Ok(zeta(n, 0.0, &p, ZetaForm::Contiguous)? - n as f64 / (n as f64 + 1.0))),
    )?;
    push(out, S, "zeta_n(0)", anchor, 1e-12);
    push(
        out,
        S,
        "x_bar",
        dispersion::auxiliary_root()? - 0.52907,
        1e-4,
    );
    let kc = dispersion::kappa_critical()?;
    push(out, S, "g(kappa_c)", dispersion::g_kappa(kc)?, 1e-10);
    push(out, S, "g(0)+2", dispersion::g_kappa(0.0)? + 2.0, 1e-10);
    Ok(())
}

fn kernel_suite(out: &mut Checks) -> quadvort::Result<()> {
    const S: &str = "kernel";
    let p = QuadraticProfile::new(1.0, 2.0)?;
    let rec = dispersion::find_eigenvalue(2, &p, 1e-8)?;
    let x = rec
        .roots
        .first()
        .map(|r| r.x_n)
        .ok_or_else(|| quadvort::Error::Precondition("no root for n = 2".into()))?;
    let ctx = SpectralContext::new(2, x, p)?;
    let prof = kernel_generator(&ctx, 129)?;
    push(
        out,
        S,
        "normalization",
        prof.normalization()? - prof.h1,
        1e-6,
    );
    push(out, S, "H(0)", prof.big_h_at(0.0)?, 1e-12);
    push(out, S, "H'(1)", prof.big_h_prime_one()?, 1e-6);
    let op = max_abs(
        [0.25, 0.5, 0.75]
            .iter()
            .map(|&r| Ok(prof.apply_operator(r)? - prof.big_h_at(r)?)),
    )?;
    push(out, S, "operator", op, 1e-5);
    push(
        out,
        S,
        "one_fold(-1/2)",
        one_fold_transversality(-0.5) - 1.5,
        1e-12,
    );
    Ok(())
}

fn potentials_suite(out: &mut Checks, seed: u64) -> quadvort::Result<()> {
    const S: &str = "potentials";
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = [0.0f64; 8];
    for _ in 0..3 {
        let case = IdentityCase {
            f0: [
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
            ],
            n: rng.random_range(1..=4),
            h: [rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)],
            z: Complex64::from_polar(
                rng.random_range(0.05..0.95),
                rng.random_range(0.0..std::f64::consts::TAU),
            ),
        };
        for (k, w) in worst.iter_mut().enumerate() {
            let (c, o) = identity_values(k as u8 + 1, &case, OracleGrid::default())?;
            *w = w.max((c - o).norm());
        }
    }
    for (k, w) in worst.iter().enumerate() {
        push(out, S, format!("identity_{}", k + 1), *w, 1e-5);
    }
    Ok(())
}

fn flow_suite(out: &mut Checks, seed: u64) -> quadvort::Result<()> {
    const S: &str = "flow";
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let field = AngularField::radial(QuadraticProfile::new(4.0, 0.0)?, 2.0);
    let (mut dt, mut gap, mut avg) = (0.0f64, 0.0f64, 0.0f64);
    for _ in 0..4 {
        let z = Complex64::from_polar(
            rng.random_range(0.05..0.95),
            rng.random_range(0.0..std::f64::consts::TAU),
        );
        let rec = integrate_orbit(&field, z, 1e-11)?;
        dt = dt.max((rec.period - period_map(&field, z, 1e-11)?).abs());
        gap = gap.max(rec.closure_gap);
        avg = avg.max(orbit_average(&field, |w| 4.0 * w.norm_sqr(), z, 1e-11)?.abs());
    }
    push(out, S, "period", dt, 1e-7);
    push(out, S, "closure", gap, 1e-8);
    push(out, S, "S f0", avg, 1e-8);
    Ok(())
}

fn regimes_suite(out: &mut Checks) -> quadvort::Result<()> {
    const S: &str = "regimes";
    let panel = [
        (1.0, -2.0, Regime::RInfty),
        (1.0, 6.0, Regime::RFinite),
        (1.0, 0.2, Regime::R0),
        (1.0, -0.97, Regime::OneFoldOnly),
        (1.0, -0.7, Regime::TransientUnknown),
    ];
    for (a, b, want) in panel {
        let r = classify(&QuadraticProfile::new(a, b)?);
        push(
            out,
            S,
            format!("label({a},{b})"),
            f64::from(u8::from(r.regime != want)),
            0.5,
        );
    }
    Ok(())
}

pub fn run(suite: Suite, seed: u64) -> Result<(Table, bool), CliError> {
    let mut checks = Vec::new();
    let all = suite == Suite::All;
    if all || suite == Suite::Hypergeom {
        hypergeom_suite(&mut checks)?;
    }
    if all || suite == Suite::Dispersion {
        dispersion_suite(&mut checks)?;
    }
    if all || suite == Suite::Kernel {
        kernel_suite(&mut checks)?;
    }
    if all || suite == Suite::Potentials {
        potentials_suite(&mut checks, seed)?;
    }
    if all || suite == Suite::Flow {
        flow_suite(&mut checks, seed)?;
    }
    if all || suite == Suite::Regimes {
        regimes_suite(&mut checks)?;
    }
    let mut t = Table::new(&["suite", "check", "value", "tolerance", "pass"]);
    let mut ok = true;
    for c in &checks {
        let pass = c.value.abs() <= c.tol;
        ok &= pass;
        t.push(vec![
            c.suite.into(),
            c.name.clone(),
            num(c.value),
            num(c.tol),
            pass.to_string(),
        ]);
    }
    Ok((t, ok))
}
