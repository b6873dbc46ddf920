use approx::assert_abs_diff_eq;
use num_complex::Complex64;
use quadvort::potentials::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::{FRAC_PI_4, PI, TAU};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

const GRID: OracleGrid = OracleGrid {
    radial: 160,
    angular: 256,
};

#[test]
fn cauchy_radial_values() {
    let one = |_: f64| 1.0;
    let v = cauchy_radial(&one, c(0.5, 0.0)).unwrap();
    assert!((v - c(PI * 0.5, 0.0)).norm() < 1e-12);
    assert!(cauchy_radial(&one, c(1e-9, 0.0)).unwrap().norm() < 1e-8);
    assert_eq!(cauchy_radial(&one, c(0.0, 0.0)).unwrap(), c(0.0, 0.0));

    let sq = |r: f64| r * r;
    let z = c(0.8 * 0.6, 0.8 * 0.8);
    let want = 2.0 * PI * z.conj() * z.norm_sqr() / 4.0;
    assert!((cauchy_radial(&sq, z).unwrap() - want).norm() < 1e-12);
    let oracle = oracle_cauchy(&|y: Complex64| y.norm_sqr(), z, GRID).unwrap();
    assert!((oracle - want).norm() < 1e-6);
    assert!(cauchy_radial(&one, c(1.1, 0.0)).is_err());
}

#[test]
fn log_radial_values() {
    let one = |_: f64| 1.0;
    for r in [0.0, 0.3, 0.77] {
        assert_abs_diff_eq!(
            log_potential_radial(&one, c(r, 0.0)).unwrap(),
            PI / 2.0 * (r * r - 1.0),
            epsilon = 1e-12
        );
    }
    let quad = |r: f64| 0.4 - r * r + 2.0 * r.powi(4);
    for f in [&one as &dyn Fn(f64) -> f64, &quad] {
        assert!(
            log_potential_radial(&f, Complex64::from_polar(1.0, 0.7))
                .unwrap()
                .abs()
                < 1e-12
        );
    }
    let z = c(0.3, 0.0);
    let closed = log_potential_radial(&quad, z).unwrap();
    let oracle = oracle_log(&|y: Complex64| quad(y.norm()), z, GRID).unwrap();
    assert!((closed - oracle).abs() < 1e-6, "{closed} vs {oracle}");
}

#[test]
fn log_gradient_is_conjugate_cauchy() {
    let f0 = |r: f64| 1.0 + r * r - 0.5 * r.powi(4);
    let h = 1e-5;
    for z in [c(0.3, 0.2), c(-0.5, 0.4), c(0.1, -0.8)] {
        let dx = (log_potential_radial(&f0, z + h).unwrap()
            - log_potential_radial(&f0, z - h).unwrap())
            / (2.0 * h);
        let dy = (log_potential_radial(&f0, z + c(0.0, h)).unwrap()
            - log_potential_radial(&f0, z - c(0.0, h)).unwrap())
            / (2.0 * h);
        let cz = cauchy_radial(&f0, z).unwrap();
        assert!(
            (dx - cz.re).abs() < 1e-5 && (dy + cz.im).abs() < 1e-5,
            "z={z}"
        );
    }
}

#[test]
fn cauchy_modal_values() {
    let one = |_: f64| 1.0;
    let m1 = ModalDensity::new(1, &one).unwrap();
    let v = cauchy_modal(&m1, c(0.5, 0.0)).unwrap();
    assert!((v - c(PI * (-0.5 + 1.0 / 6.0), 0.0)).norm() < 1e-10, "{v}");

    let zero = |_: f64| 0.0;
    let m3 = ModalDensity::new(3, &zero).unwrap();
    assert_eq!(cauchy_modal(&m3, c(0.2, 0.4)).unwrap().norm(), 0.0);

    let lin = |r: f64| r;
    let m2 = ModalDensity::new(2, &lin).unwrap();
    let z = Complex64::from_polar(0.7, FRAC_PI_4);
    let oracle = oracle_cauchy(&|y| m2.at(y), z, GRID).unwrap();
    assert!((cauchy_modal(&m2, z).unwrap() - oracle).norm() < 1e-6);
    assert!(ModalDensity::new(0, &lin).is_err());
}

#[test]
fn log_modal_values() {
    let sq = |r: f64| r * r;
    let m4 = ModalDensity::new(4, &sq).unwrap();
    assert!(
        log_potential_modal(&m4, Complex64::from_polar(0.6, PI / 8.0))
            .unwrap()
            .abs()
            < 1e-14
    );
    assert!(log_potential_modal(&m4, c(1e-8, 0.0)).unwrap().abs() < 1e-12);
    let z = c(0.9, 0.0);
    let oracle = oracle_log(&|y| m4.at(y), z, GRID).unwrap();
    assert!((log_potential_modal(&m4, z).unwrap() - oracle).abs() < 1e-6);

    let one = |_: f64| 1.0;
    let m1 = ModalDensity::new(1, &one).unwrap();
    let z = c(0.5, 0.0);
    // h₁(0) ≠ 0 makes the density jump at the origin, which the oracle only
    // resolves algebraically; a finer grid brings it under 1e-6.
    let fine = OracleGrid {
        radial: 1600,
        angular: 2048,
    };
    let oracle = oracle_log(&|y| m1.at(y), z, fine).unwrap();
    assert!((log_potential_modal(&m1, z).unwrap() - oracle).abs() < 1e-6);
    assert_abs_diff_eq!(
        log_potential_modal(&m1, z).unwrap(),
        -PI / 3.0,
        epsilon = 1e-12
    );
}

#[test]
fn conformal_pair_values() {
    let one = |_: f64| 1.0;
    let k = ConformalModeCoeffs::new(vec![(1, 1.0)]).unwrap();
    let z = c(0.5, 0.0);
    let v = conformal_pair_integrals(&k, &one, z).unwrap();
    assert!((v.quotient - PI * z).norm() < 1e-12);

    let zero = ConformalModeCoeffs::new(vec![(1, 0.0), (3, 0.0)]).unwrap();
    let v = conformal_pair_integrals(&zero, &one, c(0.2, -0.3)).unwrap();
    assert_eq!(
        v.quotient_squared.norm()
            + v.cauchy_k_prime.norm()
            + v.quotient.norm()
            + v.log_k_prime.abs(),
        0.0
    );

    let f0 = |r: f64| 1.0 - 0.5 * r * r;
    let k = ConformalModeCoeffs::new(vec![(2, 0.7), (3, -0.4)]).unwrap();
    let z = Complex64::from_polar(0.55, 2.0);
    let closed = conformal_pair_integrals(&k, &f0, z).unwrap();
    let oracle = oracle_conformal_pair(&k, &f0, z, GRID).unwrap();
    assert!((closed.quotient_squared - oracle.quotient_squared).norm() < 1e-6);
    assert!((closed.cauchy_k_prime - oracle.cauchy_k_prime).norm() < 1e-6);
    assert!((closed.quotient - oracle.quotient).norm() < 1e-6);
    assert!((closed.log_k_prime - oracle.log_k_prime).abs() < 1e-6);
}

#[test]
fn identities_match_oracle_on_random_cases() {
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    let mut worst = [0.0f64; 8];
    for case_no in 0..20 {
        // Every fifth point sits on the boundary circle.
        let rho = if case_no % 5 == 4 {
            1.0
        } else {
            rng.random_range(0.05..0.95)
        };
        let case = IdentityCase {
            f0: [
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
            ],
            n: rng.random_range(1..=5),
            h: [rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)],
            z: Complex64::from_polar(rho, rng.random_range(0.0..TAU)),
        };
        for (k, w) in worst.iter_mut().enumerate() {
            let (closed, oracle) = identity_values(k as u8 + 1, &case, GRID).unwrap();
            *w = w.max((closed - oracle).norm());
        }
    }
    for (k, w) in worst.iter().enumerate() {
        assert!(*w < 1e-5, "identity {}: {w:e}", k + 1);
    }
    let case = IdentityCase {
        f0: [1.0, 0.0, 0.0],
        n: 1,
        h: [1.0, 0.0],
        z: c(0.1, 0.1),
    };
    assert!(identity_values(9, &case, GRID).is_err());
}
