//! Cross-family membership and sampling behavior of the group catalog.

mod common;

use num_complex::Complex64;
use proptest::prelude::*;
use ulog::cmatrix::CMatrix;
use ulog::expm::mat_exp_skew;
use ulog::group::{haar, Registry};
use ulog::rng::SplitMix64;
use ulog::svd::svd_decompose;

#[test]
fn catalog_samples_satisfy_membership() {
    for group in common::catalog() {
        let mut rng = SplitMix64::new(0x5EED);
        for _ in 0..25 {
            let m = group.haar_sample(&mut rng);
            let mem = group.contains(&m).unwrap();
            assert!(mem.ok, "{}: haar sample rejected ({:?})", group.label(), mem);

            let x = group.algebra_sample(&mut rng);
            let alg = group.algebra_contains(&x).unwrap();
            assert!(alg.ok, "{}: algebra sample rejected ({:?})", group.label(), alg);

            // The exponential of an algebra element lands in the group.
            let e = mat_exp_skew(&x).unwrap();
            assert!(group.contains(&e).unwrap().ok, "{}: exp left group", group.label());
        }
    }
}

#[test]
fn algebra_components_remain_inside() {
    for group in common::catalog() {
        let mut rng = SplitMix64::new(17);
        for _ in 0..25 {
            let x = group.algebra_sample(&mut rng);
            let sys = svd_decompose(&x).unwrap();
            for comp in &sys.components {
                let mem = group.algebra_contains(comp).unwrap();
                assert!(
                    mem.ok,
                    "{}: SVD component escaped the algebra (residual {:.3e})",
                    group.label(),
                    mem.residual
                );
            }
        }
    }
}

#[test]
fn centralizer_algebra_is_the_full_commutant() {
    let group = ulog::group::from_spec(
        &ulog::group::GroupSpec::Centralizer { v: common::v_matrix() },
        &ulog::tol::Tolerances::default(),
    )
    .unwrap();
    let v = common::v_matrix();

    // Samples commute with the parameter.
    let mut rng = SplitMix64::new(3);
    for _ in 0..10 {
        let x = group.algebra_sample(&mut rng);
        assert!(CMatrix::dist(&(&x * &v), &(&v * &x)) < 1e-12);
    }

    // A hand-built commuting skew-Hermitian matrix is accepted...
    let mut x = CMatrix::zeros(3);
    x.set(0, 1, Complex64::new(0.4, 0.7));
    x.set(1, 0, Complex64::new(-0.4, 0.7));
    x.set(0, 0, Complex64::new(0.0, -0.2));
    x.set(2, 2, Complex64::new(0.0, 1.3));
    assert!(group.algebra_contains(&x).unwrap().ok);

    // ...and an entry coupling the two eigenspaces is rejected.
    let mut y = x.clone();
    y.set(0, 2, Complex64::new(0.0, 0.5));
    y.set(2, 0, Complex64::new(0.0, 0.5));
    let mem = group.algebra_contains(&y).unwrap();
    assert!(!mem.ok);
    let failed: Vec<_> = mem
        .checks
        .iter()
        .filter(|c| c.residual > c.tolerance)
        .map(|c| c.name)
        .collect();
    assert_eq!(failed, ["commutes-with-parameter"]);
}

#[test]
fn twisted_membership_gates_are_independent() {
    let group = ulog::group::from_spec(
        &ulog::group::GroupSpec::Twisted { q: common::twisted_q() },
        &ulog::tol::Tolerances::default(),
    )
    .unwrap();

    // A generic unitary respects none of the twist structure.
    let mut rng = SplitMix64::new(9);
    let u = haar::haar_unitary(6, &mut rng);
    let mem = group.contains(&u).unwrap();
    assert!(!mem.ok);
    assert!(mem.checks.iter().any(|c| c.name == "twist" && c.residual > c.tolerance));

    // i·I is skew-Hermitian but violates both the twist relation and the
    // trace condition.
    let x = CMatrix::identity(6).scale_c(Complex64::new(0.0, 1.0));
    let alg = group.algebra_contains(&x).unwrap();
    assert!(!alg.ok);
    for name in ["twist-algebra", "traceless"] {
        assert!(
            alg.checks.iter().any(|c| c.name == name && c.residual > c.tolerance),
            "expected {name} to fail"
        );
    }

    // Haar members pass all three gates with slack.
    let m = group.haar_sample(&mut rng);
    let mem = group.contains(&m).unwrap();
    assert!(mem.ok, "{mem:?}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Selector parsing returns an error for malformed text instead of
    /// panicking, whatever the input.
    #[test]
    fn selector_parsing_never_panics(text in ".{0,40}") {
        let _ = Registry::standard().build(&text);
    }
}
