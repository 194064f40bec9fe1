//! Shared fixtures for the integration tests: one group per catalog family,
//! all with ambient order at most eight.
#![allow(dead_code)]

use std::f64::consts::PI;

use num_complex::Complex64;
use ulog::canonical::{j_pq, omega, rot_pq};
use ulog::cmatrix::CMatrix;
use ulog::group::{from_spec, GroupSpec, MatrixGroup};
use ulog::tol::Tolerances;

/// Centralizer parameter with eigenvalue multiplicities (2, 1).
pub fn v_matrix() -> CMatrix {
    CMatrix::from_diag(&[
        Complex64::new(1.0, 0.0),
        Complex64::new(1.0, 0.0),
        Complex64::new(0.0, 1.0),
    ])
}

/// Twist parameter mixing all three adapted block types: a signature
/// (1, 1) reflection, one rotation plane at π/3, and one Ω plane.
pub fn twisted_q() -> CMatrix {
    CMatrix::direct_sum(&[&j_pq(1, 1), &rot_pq(PI / 3.0, 1, 0), &omega()])
}

/// One representative group per selector family.
pub fn catalog() -> Vec<Box<dyn MatrixGroup>> {
    let tols = Tolerances::default();
    vec![
        from_spec(&GroupSpec::Unitary { n: 4 }, &tols).unwrap(),
        from_spec(&GroupSpec::Centralizer { v: v_matrix() }, &tols).unwrap(),
        from_spec(&GroupSpec::SpecialOrthogonal { n: 5 }, &tols).unwrap(),
        from_spec(&GroupSpec::CompactSymplectic { n: 2 }, &tols).unwrap(),
        from_spec(&GroupSpec::QuaternionUnitary { n: 2 }, &tols).unwrap(),
        from_spec(&GroupSpec::Twisted { q: twisted_q() }, &tols).unwrap(),
    ]
}
