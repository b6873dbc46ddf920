use approx::assert_abs_diff_eq;
use quadvort::dispersion::{zeta, ZetaForm};
use quadvort::regimes::*;
use quadvort::QuadraticProfile;

fn profile(a: f64, b: f64) -> QuadraticProfile {
    QuadraticProfile::new(a, b).unwrap()
}

#[test]
fn labels() {
    let r = classify(&profile(1.0, -2.0));
    assert_eq!(r.regime, Regime::RInfty);
    assert_abs_diff_eq!(r.kappa.unwrap(), 2.0, epsilon = 1e-15);
    assert_eq!(r.empirical_m0, Some(2));
    assert_eq!(classify(&profile(1.0, 0.2)).regime, Regime::R0);
    assert_eq!(classify(&profile(1.0, 6.0)).regime, Regime::RFinite);
    assert_eq!(classify(&profile(1.0, -0.97)).regime, Regime::OneFoldOnly);
    assert_eq!(
        classify(&profile(1.0, -0.7)).regime,
        Regime::TransientUnknown
    );
    assert_eq!(
        classify(&profile(1.0, 0.6)).regime,
        Regime::TransientUnknown
    );
    assert_eq!(Regime::RInfty.as_str(), "R_infty");
}

#[test]
fn region_boundaries() {
    assert_eq!(Regime::of(&profile(1.0, -0.5)), Regime::R0);
    assert_eq!(Regime::of(&profile(1.0, 0.25)), Regime::R0);
    assert_eq!(Regime::of(&profile(1.0, -1.0)), Regime::OneFoldOnly);
    assert_eq!(
        Regime::of(&profile(1.0, -1.0 / (1.0 + ONE_FOLD_EPS))),
        Regime::OneFoldOnly
    );
    assert_eq!(Regime::of(&profile(1.0, -1.0 - 1e-12)), Regime::RInfty);
    assert_eq!(Regime::of(&profile(1.0, 1.0 + 1e-12)), Regime::RFinite);
}

#[test]
fn finite_bounds() {
    let r = classify(&profile(1.0, 6.0));
    assert_eq!(r.allowed, Some(ModeRange { lo: 1, hi: Some(7) }));
    assert_eq!(r.excluded_from, Some(14));
    assert!(r.consistent());
    assert!(r.is_excluded(14) && !r.is_excluded(13));
    // Real bounds landing on integers.
    assert_eq!(finite_allowed_max(2.875), 3);
    assert_eq!(finite_allowed_max(7.0), 9);
    assert_eq!(finite_allowed_max(6.75), 9);
    assert_eq!(finite_excluded_from(6.0), 14);
    assert_eq!(finite_excluded_from(6.1), 15);
    assert_eq!(ModeRange { lo: 1, hi: Some(7) }.count(), Some(7));
    assert_eq!(ModeRange { lo: 2, hi: None }.count(), None);
}

#[test]
fn exclusions_hold_numerically() {
    for (a, b) in [(1.0, 2.0), (1.0, 6.0), (2.0, 5.0)] {
        let r = classify(&profile(a, b));
        let e = r.excluded_from.unwrap();
        for m in e..e + 6 {
            assert!(
                exclusion_scan(&profile(a, b), m, EXCLUSION_SCAN_POINTS).unwrap(),
                "A={a} B={b} m={m}"
            );
        }
    }
    let r0 = profile(1.0, 0.2);
    for m in 2..10 {
        assert!(
            exclusion_scan(&r0, m, EXCLUSION_SCAN_POINTS).unwrap(),
            "m={m}"
        );
    }
}

#[test]
fn mirrored_profiles() {
    for (a, b) in [(1.0, -2.0), (1.0, 6.0), (2.0, 0.3)] {
        let pos = classify(&profile(a, b));
        let neg = classify(&profile(-a, -b));
        assert_eq!(pos.regime, neg.regime);
        assert_eq!(pos.allowed, neg.allowed);
        assert_eq!(pos.excluded_from, neg.excluded_from);
        assert_eq!(neg.omega_sign, -1.0);
        assert_abs_diff_eq!(
            pos.singular_interval.0,
            -neg.singular_interval.1,
            epsilon = 1e-14
        );
        assert_abs_diff_eq!(
            pos.singular_interval.1,
            -neg.singular_interval.0,
            epsilon = 1e-14
        );
    }
    let pos = eigenvalue_table_with(&profile(1.0, 3.0), 6, false).unwrap();
    let neg = eigenvalue_table_with(&profile(-1.0, -3.0), 6, false).unwrap();
    assert_eq!(pos.len(), neg.len());
    for (p, n) in pos.iter().zip(&neg) {
        assert_eq!(p.record.x_n, n.record.x_n);
        assert_eq!(p.record.omega_n, -n.record.omega_n);
    }
}

#[test]
fn one_fold_entry() {
    let t = eigenvalue_table(&profile(1.0, 1.0), 1).unwrap();
    assert_eq!(t.len(), 1);
    assert_abs_diff_eq!(t[0].record.omega_n, 0.0, epsilon = 1e-10);
    assert_abs_diff_eq!(t[0].transversality.unwrap(), 1.5, epsilon = 1e-8);
}

#[test]
fn table_entries_are_sound() {
    let p = profile(1.0, 6.0);
    let t = eigenvalue_table(&p, 16).unwrap();
    let modes: Vec<u32> = t.iter().map(|e| e.record.n).collect();
    assert_eq!(modes, (1..=13).collect::<Vec<_>>());
    for e in &t {
        let r = &e.record;
        assert!(zeta(r.n, r.x_n, &p, ZetaForm::Contiguous).unwrap().abs() <= 1e-8);
        assert!(r.separation_ok);
        assert_eq!(e.transversality_nonzero, Some(true), "m = {}", r.n);
    }
    let r = classify(&p);
    assert!(t.iter().all(|e| !r.is_excluded(e.record.n)));
    assert!((1..=7).all(|m| modes.contains(&m)));
}

#[test]
fn r0_has_no_higher_modes() {
    let t = eigenvalue_table_with(&profile(1.0, 0.2), 8, false).unwrap();
    assert!(t.iter().all(|e| e.record.n == 1));
}

#[test]
fn large_mode_band() {
    let p = profile(1.0, -2.0);
    let t = eigenvalue_table_with(&p, 120, false).unwrap();
    let e = t.iter().find(|e| e.record.n == 120).unwrap();
    let m = 120.0;
    let centre = (1.0 + 2.0 * -2.0) / 4.0 + 2.0 / (4.0 * m);
    assert!(
        (e.record.omega_n - centre).abs() <= 1.0 / (m * m),
        "Ω = {}",
        e.record.omega_n
    );
}

#[test]
fn sweep() {
    let bs: Vec<f64> = (0..=12).map(|k| -3.0 + 0.75 * k as f64).collect();
    let rows = regime_map(1.0, &bs, Some(12)).unwrap();
    assert_eq!(rows.len(), bs.len());
    for row in &rows {
        assert_eq!(row.regime, Regime::of(&profile(1.0, row.b)));
        if row.regime == Regime::RFinite {
            let found = row.found_count.unwrap();
            assert!(found >= row.allowed_count.unwrap());
            assert!(found < row.excluded_from.unwrap());
        }
    }
    let finite: Vec<u32> = rows
        .iter()
        .filter(|r| r.regime == Regime::RFinite)
        .map(|r| r.allowed_count.unwrap())
        .collect();
    assert!(finite.windows(2).all(|w| w[1] >= w[0]));
}
