//! Matrix exponentials and the scalar principal angle.
//!
//! Two deliberately independent routes are kept side by side:
//! [`mat_exp_skew`] goes through the Hermitian eigensolver and is the
//! production path for group elements, while [`mat_exp_general`] is a plain
//! scaling-and-squaring Taylor evaluation that shares no code with the
//! eigensolver and serves as the cross-check.

use num_complex::Complex64;

use crate::cmatrix::CMatrix;
use crate::eig::herm_eig;
use crate::error::{Error, Result};
use crate::tol::{self, EXP_SERIES_REL_TOL};

/// Exponential of a skew-Hermitian matrix via eigendecomposition of `iX`.
///
/// The result is unitary up to round-off. Inputs failing the skew-Hermitian
/// check are rejected.
pub fn mat_exp_skew(x: &CMatrix) -> Result<CMatrix> {
    let scale = x.frob_norm().max(1.0);
    if x.skew_residual() > tol::SYMMETRY_REL_TOL * scale {
        return Err(Error::validation(format!(
            "matrix is not skew-Hermitian: ‖X + X*‖ = {:.3e}",
            x.skew_residual()
        )));
    }
    // iX is Hermitian; X = V diag(−i a_j) V* and exp(X) = V diag(e^{−i a_j}) V*.
    let h = x.scale_c(Complex64::new(0.0, 1.0));
    let e = herm_eig(&h)?;
    let values: Vec<Complex64> = e
        .values
        .iter()
        .map(|&a| Complex64::from_polar(1.0, -a))
        .collect();
    Ok(CMatrix::from_spectral(&values, &e.basis.columns()))
}

/// Reference exponential for an arbitrary square matrix: scale by a power of
/// two until the norm is at most 1/2, sum the Taylor series, square back up.
pub fn mat_exp_general(a: &CMatrix) -> Result<CMatrix> {
    if !a.is_finite() {
        return Err(Error::validation("exponential input has non-finite entries"));
    }
    let n = a.n();
    let norm = a.frob_norm();
    let squarings = if norm > 0.5 {
        (norm / 0.5).log2().ceil() as u32
    } else {
        0
    };
    let b = a.scale(0.5f64.powi(squarings as i32));

    let mut sum = CMatrix::identity(n);
    let mut term = CMatrix::identity(n);
    for k in 1..=60 {
        term = (&term * &b).scale(1.0 / k as f64);
        sum = &sum + &term;
        if term.frob_norm() <= EXP_SERIES_REL_TOL * sum.frob_norm() {
            break;
        }
    }
    let mut result = sum;
    for _ in 0..squarings {
        result = &result * &result;
    }
    Ok(result)
}

/// The unique `θ ∈ (−π, π]` with `e^{iθ} = z` for a unimodular complex
/// number. Exactly −1 (including a negative-zero imaginary part) maps to +π.
pub fn principal_log_angle(z: Complex64) -> Result<f64> {
    if (z.norm() - 1.0).abs() > tol::UNITARY_REL_TOL {
        return Err(Error::validation(format!(
            "principal angle requires |z| = 1, got |z| = {:.12}",
            z.norm()
        )));
    }
    let mut theta = z.im.atan2(z.re);
    if theta == -std::f64::consts::PI {
        theta = std::f64::consts::PI;
    }
    Ok(theta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn exp_of_zero_is_identity() {
        let z = CMatrix::zeros(3);
        assert_eq!(mat_exp_skew(&z).unwrap(), CMatrix::identity(3));
        assert!(CMatrix::dist(&mat_exp_general(&z).unwrap(), &CMatrix::identity(3)) == 0.0);
    }

    #[test]
    fn exp_of_quarter_turn_generator_is_omega() {
        // exp((π/2) Ω) = Ω.
        let omega = CMatrix::from_real_rows(&[&[0.0, -1.0], &[1.0, 0.0]]);
        let x = omega.scale(FRAC_PI_2);
        let e = mat_exp_skew(&x).unwrap();
        assert!(CMatrix::dist(&e, &omega) < 1e-12);
        let e2 = mat_exp_general(&x).unwrap();
        assert!(CMatrix::dist(&e2, &omega) < 1e-12);
    }

    #[test]
    fn exp_of_diag_pi_is_minus_identity() {
        let x = CMatrix::from_diag(&[c(0.0, PI), c(0.0, -PI)]);
        let e = mat_exp_skew(&x).unwrap();
        assert!(CMatrix::dist(&e, &CMatrix::identity(2).scale(-1.0)) < 1e-12);
    }

    #[test]
    fn skew_and_series_routes_agree() {
        let mut rng = crate::rng::SplitMix64::new(31);
        for _ in 0..10 {
            let g = CMatrix::from_fn(5, |_, _| rng.complex_normal());
            let x = (&g - &g.adjoint()).scale(0.5);
            let a = mat_exp_skew(&x).unwrap();
            let b = mat_exp_general(&x).unwrap();
            assert!(CMatrix::dist(&a, &b) < 1e-9, "routes differ by {}", CMatrix::dist(&a, &b));
            assert!(a.unitary_residual() < 1e-10);
        }
    }

    #[test]
    fn general_exp_inverts_under_negation() {
        let mut rng = crate::rng::SplitMix64::new(32);
        let a = CMatrix::from_fn(4, |_, _| rng.complex_normal()).scale(0.7);
        let e = mat_exp_general(&a).unwrap();
        let einv = mat_exp_general(&a.scale(-1.0)).unwrap();
        assert!(CMatrix::dist(&(&e * &einv), &CMatrix::identity(4)) < 1e-9);
    }

    #[test]
    fn mat_exp_skew_rejects_non_skew() {
        let m = CMatrix::identity(2);
        match mat_exp_skew(&m) {
            Err(Error::Validation(msg)) => assert!(msg.contains("skew")),
            other => panic!("expected validation error, got {other:?}"),
        }
    }

    #[test]
    fn principal_angle_frozen_values() {
        assert_eq!(principal_log_angle(c(1.0, 0.0)).unwrap(), 0.0);
        assert_eq!(principal_log_angle(c(-1.0, 0.0)).unwrap(), PI);
        assert_eq!(principal_log_angle(c(-1.0, -0.0)).unwrap(), PI);
        let z = Complex64::from_polar(1.0, -FRAC_PI_4);
        assert!((principal_log_angle(z).unwrap() + FRAC_PI_4).abs() < 1e-15);
    }

    #[test]
    fn principal_angle_rejects_non_unimodular() {
        assert!(principal_log_angle(c(2.0, 0.0)).is_err());
    }

    #[test]
    fn principal_angle_near_minus_one_keeps_sign() {
        // Slightly below the axis is a genuine angle near −π, not +π.
        let z = Complex64::from_polar(1.0, -PI + 1e-6);
        let t = principal_log_angle(z).unwrap();
        assert!((t + PI - 1e-6).abs() < 1e-12);
    }
}
