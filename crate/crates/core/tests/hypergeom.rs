use approx::assert_abs_diff_eq;
use proptest::prelude::*;
use quadvort::hypergeom::*;
use quadvort::{Error, QuadraticFamilyIndex};

fn fam(n: f64) -> QuadraticFamilyIndex {
    QuadraticFamilyIndex::new(n).unwrap()
}

#[test]
fn gamma_values() {
    assert_abs_diff_eq!(gamma(5.0).unwrap(), 24.0, epsilon = 1e-12);
    assert_abs_diff_eq!(gamma(1.0).unwrap(), 1.0, epsilon = 1e-14);
    // ∫₀^∞ t^{-1/2} e^{-t} dt at 40 digits.
    assert_abs_diff_eq!(
        gamma(0.5).unwrap(),
        1.772453850905516027298167,
        epsilon = 1e-13
    );
}

#[test]
fn closed_values() {
    assert_abs_diff_eq!(hyp2f1(-1.0, 2.0, 2.0, 0.3).unwrap(), 0.7, epsilon = 1e-13);
    assert_abs_diff_eq!(hyp2f1(0.3, -2.2, 1.7, 0.0).unwrap(), 1.0, epsilon = 0.0);
    assert_abs_diff_eq!(hyp2f1(1.0, 2.0, 4.0, 1.0).unwrap(), 3.0, epsilon = 1e-10);
    for n in [2.0, 7.0, 40.0] {
        let f = fam(n);
        let want = gamma(n + 1.0).unwrap()
            / (gamma(n + 1.0 - f.a()).unwrap() * gamma(1.0 + f.a()).unwrap());
        assert_abs_diff_eq!(fn_family(f, 1.0).unwrap(), want, epsilon = 1e-10);
    }
}

#[test]
fn log_singular_at_one() {
    let p = HyperParams::new(1.0, 1.0, 2.0).unwrap();
    assert!(matches!(
        gauss_2f1(p, 1.0, DEFAULT_TOL),
        Err(Error::LogSingular { .. })
    ));
    assert!(HyperParams::new(1.0, 1.0, -2.0).is_err());
}

#[test]
fn derivatives() {
    let p = HyperParams::new(-1.0, 2.0, 2.0).unwrap();
    assert_abs_diff_eq!(
        gauss_2f1_dx(p, 0.5, 1, DEFAULT_TOL).unwrap(),
        -1.0,
        epsilon = 1e-12
    );
    let z = HyperParams::new(0.0, 2.5, 1.5).unwrap();
    assert_eq!(gauss_2f1_dx(z, 0.4, 2, DEFAULT_TOL).unwrap(), 0.0);

    let s = 3f64.sqrt();
    let p = HyperParams::new(1.0 - s, 1.0 + s, 3.0).unwrap();
    let h = 1e-6;
    let fd = (hyp2f1(p.a, p.b, p.c, 0.4 + h).unwrap() - hyp2f1(p.a, p.b, p.c, 0.4 - h).unwrap())
        / (2.0 * h);
    assert_abs_diff_eq!(
        gauss_2f1_dx(p, 0.4, 1, DEFAULT_TOL).unwrap(),
        fd,
        epsilon = 1e-6
    );
}

#[test]
fn family_golden_values() {
    for x in [-4.0, -1.0, 0.0, 0.5, 0.9, 1.0] {
        assert_abs_diff_eq!(fn_family(fam(1.0), x).unwrap(), 1.0 - x, epsilon = 1e-12);
    }
    assert_abs_diff_eq!(fn_family(fam(2.0), 0.0).unwrap(), 1.0, epsilon = 0.0);
    // Euler integral representation, 25 digits.
    assert_abs_diff_eq!(
        fn_family(fam(5.0), -3.0).unwrap(),
        1.623390083011650381833427,
        epsilon = 1e-9
    );
    assert_abs_diff_eq!(
        fhat_family(fam(1.0), 1.0).unwrap().value,
        3.0,
        epsilon = 1e-10
    );
    assert_abs_diff_eq!(
        fhat_family(fam(3.0), 0.0).unwrap().value,
        1.0,
        epsilon = 0.0
    );
    // Direct series in extended precision.
    assert_abs_diff_eq!(
        fhat_family(fam(2.0), 0.5).unwrap().value,
        1.325193041612860301,
        epsilon = 1e-10
    );
    assert!(fhat_family(fam(2.0), 1.5).is_err());
}

#[test]
fn continuation_at_one() {
    let f2 = hyp2f1(fam(2.0).a(), fam(2.0).b(), 3.0, 1.0).unwrap();
    assert_abs_diff_eq!(f2, 0.1370667642045830857, epsilon = 1e-12);
    assert_abs_diff_eq!(f_at_one_continuation(2.0).unwrap(), f2, epsilon = 1e-10);
    let golden = [
        (100.0, 0.901170413549141095824666),
        (1e3, 0.9851373490775747822585549),
        (1e4, 0.9980443606874092205587198),
    ];
    let mut prev = 0.0;
    for (t, want) in golden {
        let v = f_at_one_continuation(t).unwrap();
        assert_abs_diff_eq!(v, want, epsilon = 1e-12);
        assert!(v > prev && v < 1.0);
        prev = v;
    }
    let t: f64 = 1e4;
    let bound = 10.0 * t.ln().powi(2) / (t * t);
    assert!((f_at_one_continuation(t).unwrap() - f_at_one_asymptotic(t)).abs() <= bound);
    assert!(f_at_one_continuation(1.0).is_err());
}

#[test]
fn reference_grid() {
    let data = include_str!("data/hyp2f1_grid.csv");
    let mut worst = 0.0f64;
    for line in data.lines() {
        let v: Vec<f64> = line.split(',').map(|s| s.parse().unwrap()).collect();
        let p = HyperParams::new(v[0], v[1], v[2]).unwrap();
        let got = gauss_2f1(p, v[3], DEFAULT_TOL).unwrap().value;
        let rel = (got - v[4]).abs() / v[4].abs().max(1.0);
        assert!(
            rel < 1e-9,
            "F({}, {}; {}; {}) = {got}, reference {}",
            v[0],
            v[1],
            v[2],
            v[3],
            v[4]
        );
        worst = worst.max(rel);
    }
    assert!(worst > 0.0);
}

#[test]
fn identity_residuals() {
    let xs: Vec<f64> = (0..14).map(|k| -5.0 + 5.95 * k as f64 / 13.0).collect();
    for n in [2.0, 3.0, 8.0, 17.0, 30.0] {
        let p = fam(n).params();
        for &x in &xs {
            assert!(
                residual_contiguous_c(p, x).unwrap().abs() <= 1e-9,
                "n={n} x={x}"
            );
            assert!(
                residual_contiguous_b(p, x).unwrap().abs() <= 1e-9,
                "n={n} x={x}"
            );
            assert!(
                residual_three_term_c(p, x).unwrap().abs() <= 1e-9,
                "n={n} x={x}"
            );
            assert!(residual_ode(p, x).unwrap().abs() <= 1e-6, "n={n} x={x}");
            assert!(
                residual_family_derivative(fam(n), x).unwrap().abs() <= 1e-9,
                "n={n} x={x}"
            );
        }
        assert!(residual_family_beta(fam(n)).unwrap().abs() <= 1e-8);
        let (one, two) = residual_integral_shift(p, 0.6).unwrap();
        assert!(one.abs() <= 1e-8 && two.abs() <= 1e-8);
    }
    for k in 0..12 {
        let x = -3.0 + 3.9 * k as f64 / 11.0;
        assert!(residual_radial_pair(x).unwrap().abs() <= 1e-9);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn family_decreasing_and_positive(n in 1u32..40, x in -20.0f64..0.99, dx in 1e-3f64..0.5) {
        let f = fam(n as f64);
        let hi = (x + dx).min(0.999);
        let (a, b) = (fn_family(f, x).unwrap(), fn_family(f, hi).unwrap());
        prop_assert!(a > b && b > 0.0);
    }

    #[test]
    fn family_monotone_in_n(n in 1u32..40, x in -20.0f64..1.0) {
        prop_assume!(x.abs() > 1e-3);
        let (lo, hi) = (fn_family(fam(n as f64), x).unwrap(), fn_family(fam(n as f64 + 1.0), x).unwrap());
        if x > 0.0 { prop_assert!(hi > lo); } else { prop_assert!(hi < lo); }
    }

    #[test]
    fn family_monotone_in_c(n in 1u32..30, x in 0.01f64..0.99, dc in 0.05f64..3.0) {
        let f = fam(n as f64);
        let lo = gauss_2f1(f.params(), x, DEFAULT_TOL).unwrap().value;
        let hi = gauss_2f1(f.shifted_c(dc), x, DEFAULT_TOL).unwrap().value;
        prop_assert!(hi > lo);
    }
}
