use approx::assert_abs_diff_eq;
use quadvort::dispersion::{find_eigenvalue, x0_root, zeta, ZetaForm};
use quadvort::hypergeom::{fn_family, hyp2f1};
use quadvort::kernel::*;
use quadvort::{QuadraticFamilyIndex, QuadraticProfile};

fn eigen_context(n: u32, a: f64, b: f64) -> SpectralContext {
    let p = QuadraticProfile::new(a, b).unwrap();
    let x = find_eigenvalue(n, &p, 1e-10).unwrap().root().unwrap().x_n;
    SpectralContext::new(n, x, p).unwrap()
}

#[test]
fn polynomial_at_one() {
    for (n, x, b) in [(1, -0.7, 0.0), (3, 0.4, -2.0), (8, -2.5, 3.0)] {
        let ctx = SpectralContext::new(n, x, QuadraticProfile::new(1.3, b).unwrap()).unwrap();
        assert_abs_diff_eq!(
            ctx.g1,
            g1_factored(&ctx),
            epsilon = 1e-12 * ctx.g1.abs().max(1.0)
        );
    }
    let x = -0.7;
    let ctx = SpectralContext::new(1, x, QuadraticProfile::new(1.0, 0.0).unwrap()).unwrap();
    for t in [0.0, 0.3, 1.0] {
        let want = t * t - 3.0 / (2.0 * x) * t - 1.5;
        assert_abs_diff_eq!(ctx.p(t), want, epsilon = 1e-14);
    }
    // The linear coefficient fades as x → −∞.
    let limit = 0.25 - 3.0 * 6.0 / 20.0;
    let gaps: Vec<f64> = [-10.0, -100.0, -1000.0]
        .iter()
        .map(|&x| {
            (SpectralContext::new(4, x, QuadraticProfile::new(1.0, 1.0).unwrap())
                .unwrap()
                .p(0.5)
                - limit)
                .abs()
        })
        .collect();
    assert!(
        gaps[1] < gaps[0] && gaps[2] < gaps[1] && gaps[2] < 1e-3,
        "{gaps:?}"
    );
}

#[test]
fn homogeneous_ode() {
    let zero = solve_hyper_ode(3, -0.5, |_| 0.0, 0.0).unwrap();
    for r in [0.0, 0.3, 0.8, 1.0] {
        assert_eq!(zero.eval(r).unwrap(), 0.0);
    }
    let fam = QuadraticFamilyIndex::new(3.0).unwrap();
    let fx = fn_family(fam, -0.5).unwrap();
    let smooth = solve_hyper_ode(3, -0.5, |_| 0.0, fx).unwrap();
    for r in [0.2f64, 0.6, 1.0] {
        let want = r.powi(6) * fn_family(fam, -0.5 * r * r).unwrap();
        assert_abs_diff_eq!(smooth.eval(r).unwrap(), want, epsilon = 1e-12);
    }
}

#[test]
fn forced_ode_residual() {
    let ctx = SpectralContext::new(3, -0.5, QuadraticProfile::new(1.0, 2.0).unwrap()).unwrap();
    let sol = solve_hyper_ode(3, -0.5, |r| ctx.g(r), 1.0).unwrap();
    for r in [0.1, 0.35, 0.6, 0.9, 1.0] {
        assert!(sol.residual(r).unwrap() <= 1e-6, "r = {r}");
    }
    assert_abs_diff_eq!(sol.eval(1.0).unwrap(), 1.0, epsilon = 1e-12);
}

#[test]
fn kernel_at_eigenvalues() {
    for (n, a, b) in [(2, 1.0, 2.0), (3, 1.0, 2.0), (5, 1.0, -2.0), (4, 1.0, 6.0)] {
        let ctx = eigen_context(n, a, b);
        let prof = kernel_generator(&ctx, DEFAULT_NODES).unwrap();
        let want = n as f64 / (4.0 * ctx.x);
        assert!(
            (prof.normalization().unwrap() - want).abs() <= 1e-6,
            "n={n} B={b}"
        );
        assert_eq!(prof.big_h_at(0.0).unwrap(), 0.0);
        assert!(prof.big_h_prime_one().unwrap().abs() <= 1e-6, "n={n} B={b}");
        assert!(prof.big_h_prime_one_spectral().abs() <= 1e-6, "n={n} B={b}");
        let h = 1e-5;
        let fd = (prof.big_h_at(1.0).unwrap() - prof.big_h_at(1.0 - h).unwrap()) / h;
        assert!(
            fd.abs() <= 1e-4 * want.abs().max(1.0),
            "n={n} B={b} fd={fd}"
        );
        for r in [0.2, 0.5, 0.8, 1.0] {
            let dev = (prof.apply_operator(r).unwrap() - prof.big_h_at(r).unwrap()).abs();
            assert!(dev <= 1e-5, "n={n} B={b} r={r} dev={dev}");
        }
    }
}

#[test]
fn kernel_needs_eigenvalue() {
    let ctx = SpectralContext::new(2, -0.3, QuadraticProfile::new(1.0, 2.0).unwrap()).unwrap();
    assert!(kernel_generator(&ctx, DEFAULT_NODES).is_err());
    // Off the dispersion set the boundary condition fails in proportion to ζ_n.
    let prof = kernel_solution(&ctx, DEFAULT_NODES, 1.0).unwrap();
    let z = ctx.zeta_residual().unwrap();
    assert!(z > 1e-3);
    assert!(prof.big_h_prime_one().unwrap().abs() > 1e-3 * z);
}

#[test]
fn kernel_linear_in_boundary_value() {
    let ctx = SpectralContext::new(3, -0.8, QuadraticProfile::new(1.0, 4.0).unwrap()).unwrap();
    let one = kernel_solution(&ctx, 65, 1.0).unwrap();
    let three = kernel_solution(&ctx, 65, 3.0).unwrap();
    for (a, b) in one.big_h.iter().zip(&three.big_h) {
        assert_abs_diff_eq!(3.0 * a, *b, epsilon = 1e-12);
    }
}

#[test]
fn kernel_divided_differences_bounded() {
    let prof = kernel_generator(&eigen_context(3, 1.0, 2.0), DEFAULT_NODES).unwrap();
    let m = 200;
    let h = 1.0 / m as f64;
    let v: Vec<f64> = (0..=m)
        .map(|k| prof.hstar_at(k as f64 * h).unwrap())
        .collect();
    let second = v
        .windows(3)
        .map(|w| ((w[2] - 2.0 * w[1] + w[0]) / (h * h)).abs())
        .fold(0.0f64, f64::max);
    assert!(
        second.is_finite() && second < 1e3,
        "second differences {second}"
    );
}

#[test]
fn psi_zeta_link() {
    let p = QuadraticProfile::new(1.0, 1.5).unwrap();
    for n in [1, 2, 4, 9] {
        for x in [-2.0, -0.6, 0.3, 0.8] {
            let ctx = SpectralContext::new(n, x, p).unwrap();
            let want =
                p.a * (n as f64 + 1.0) / (4.0 * x) * zeta(n, x, &p, ZetaForm::Contiguous).unwrap();
            assert_abs_diff_eq!(psi_n(&ctx).unwrap(), want, epsilon = 1e-7);
        }
    }
    for n in [1, 3, 10] {
        let fam = QuadraticFamilyIndex::new(n as f64).unwrap();
        for x in [-4.0, -0.5, 0.5, 0.9] {
            let want = -2.0 * fn_family(fam, x).unwrap() / (1.0 - x);
            assert_abs_diff_eq!(phi_n_dx(n, x).unwrap(), want, epsilon = 1e-8);
        }
    }
}

#[test]
fn radial_kernel_values() {
    let x0 = x0_root().unwrap();
    assert_eq!(radial_kernel(0.4, 0.0).unwrap(), 1.0);
    assert!(radial_kernel(x0, 1.0).unwrap().abs() < 1e-12);
    let s2 = std::f64::consts::SQRT_2;
    let cond = radial_range_condition(x0, |s| {
        hyp2f1(-s2, s2, 1.0, x0 * s * s).unwrap() / (1.0 - x0 * s * s)
    })
    .unwrap();
    assert!(cond > 0.0);
}

#[test]
fn range_kernel_values() {
    let ctx = SpectralContext::new(3, -0.4, QuadraticProfile::new(1.0, 1.0).unwrap()).unwrap();
    let th = std::f64::consts::PI / 6.0;
    assert!(
        range_kernel(&ctx, (0.7 * th.cos(), 0.7 * th.sin()))
            .unwrap()
            .abs()
            < 1e-14
    );
    let one = SpectralContext::new(1, -0.5, QuadraticProfile::new(1.0, 1.0).unwrap()).unwrap();
    assert_abs_diff_eq!(
        range_kernel(&one, (0.5, 0.0)).unwrap(),
        0.5,
        epsilon = 1e-14
    );
    assert!(range_kernel(&one, (1.2, 0.0)).is_err());
}

#[test]
fn transversality_values() {
    for b in [0.5, 1.0, 3.0] {
        assert_abs_diff_eq!(
            one_fold_transversality(-1.0 / (2.0 * b)),
            0.5 + b,
            epsilon = 1e-14
        );
    }
    assert_abs_diff_eq!(one_fold_transversality(-0.5), 1.5, epsilon = 1e-14);

    let ctx = eigen_context(2, 1.0, 2.0);
    let prof = kernel_generator(&ctx, DEFAULT_NODES).unwrap();
    let t = transversality_from_profile(&prof).unwrap();
    assert_abs_diff_eq!(t.value, t.parts.iter().sum::<f64>(), epsilon = 1e-14);
    assert!(t.nonzero);
    for k in 0..=40 {
        let s = k as f64 / 40.0;
        assert!(prof.transversality_parts(s).unwrap().1 >= 0.0, "s = {s}");
    }
    // Pairing of h*_n against the range kernel agrees in sign with the transversality value.
    let pairing = range_pairing(&ctx, |r| prof.hstar_at(r)).unwrap();
    assert!(pairing.abs() > 1e-8);
}

#[test]
fn transversality_large_mode_band() {
    let ctx = eigen_context(150, 1.0, -2.0);
    let t = transversality_integral(&ctx, DEFAULT_NODES).unwrap();
    let ratio = t.value / (-150.0 / 2.0);
    assert!((0.8..=1.2).contains(&ratio), "ratio {ratio}");
}
