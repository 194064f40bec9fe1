//! SVD-systems: families `A_1, …, A_p` with `A_h* A_j = A_h A_j* = 0` for
//! `h ≠ j` and `A_j A_j* A_j = A_j`, so that `M = Σ σ_j A_j` with strictly
//! decreasing `σ_j > 0` recovers each component as the partial isometry
//! carrying the singular vectors of one repeated singular value.
//!
//! For skew-Hermitian matrices the components satisfy `A³ + A = 0` and the
//! exponential collapses to the generalized Rodrigues form
//! `exp(Σ α_j A_j) = I + Σ [sin(α_j) A_j + (1 − cos(α_j)) A_j²]`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::cmatrix::{vnorm, CMatrix};
use crate::eig::herm_eig;
use crate::error::{Error, Result};
use crate::tol::{self, SVD_AXIOM_TOL, SV_CLUSTER_REL_TOL, SV_GAP_FACTOR};

/// A matrix written as `Σ sigmas[j] · components[j]`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SvdSystem {
    pub sigmas: Vec<f64>,
    pub components: Vec<CMatrix>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SvdReport {
    pub ok: bool,
    pub max_residual: f64,
}

impl SvdSystem {
    pub fn order(&self) -> usize {
        self.components.first().map_or(0, |c| c.n())
    }

    pub fn reconstruct(&self) -> CMatrix {
        let n = self.order();
        let mut m = CMatrix::zeros(n);
        for (s, a) in self.sigmas.iter().zip(&self.components) {
            m = &m + &a.scale(*s);
        }
        m
    }
}

/// Decompose a nonzero matrix into its SVD-system.
///
/// Singular values are the square roots of the eigenvalues of `M*M`; values
/// within `1e-9 · σ_max` of each other are grouped, and a grouping is only
/// accepted when consecutive groups (and the zero level) are separated by ten
/// times that width. Each component is `M P_j / σ_j` with `P_j` the right
/// singular projector of the group, which makes the output independent of
/// the arbitrary basis choice inside a degenerate cluster.
pub fn svd_decompose(m: &CMatrix) -> Result<SvdSystem> {
    if !m.is_finite() {
        return Err(Error::validation("decomposition input has non-finite entries"));
    }
    if m.frob_norm() == 0.0 {
        return Err(Error::validation("cannot decompose the zero matrix"));
    }
    let gram = &m.adjoint() * m;
    let e = herm_eig(&gram)?;
    // Refine each singular value as ‖M v_j‖ over the Gram eigenvectors: the
    // Gram eigenvalues lose half their significant digits near zero (an
    // exact kernel direction surfaces as √(noise) ≈ 1e-8), while the
    // matrix-vector norm keeps full precision there.
    let sigmas: Vec<f64> = e
        .basis
        .columns()
        .iter()
        .map(|v| vnorm(&m.matvec(v)))
        .collect();
    let sigma_max = sigmas.iter().copied().fold(0.0f64, f64::max);
    if sigma_max == 0.0 {
        return Err(Error::validation("cannot decompose the zero matrix"));
    }
    let width = SV_CLUSTER_REL_TOL * sigma_max;

    // Chain-cluster the descending singular values.
    let clusters = crate::eig::cluster_descending(&sigmas, width);

    // Split into kept clusters and the zero level, then enforce separation.
    let mut kept: Vec<(f64, std::ops::Range<usize>)> = Vec::new();
    let mut zero_top = 0.0f64;
    for (mean, range) in clusters {
        if mean > width {
            kept.push((mean, range));
        } else {
            zero_top = zero_top.max(sigmas[range.start]);
        }
    }
    if kept.is_empty() {
        return Err(Error::validation("cannot decompose the zero matrix"));
    }
    for w in kept.windows(2) {
        let upper_min = sigmas[w[0].1.end - 1];
        let lower_max = sigmas[w[1].1.start];
        if upper_min - lower_max < SV_GAP_FACTOR * width {
            return Err(Error::tolerance(format!(
                "ambiguous singular value clusters: gap {:.3e} below {:.3e}",
                upper_min - lower_max,
                SV_GAP_FACTOR * width
            )));
        }
    }
    let smallest_kept = sigmas[kept.last().unwrap().1.end - 1];
    if smallest_kept - zero_top < SV_GAP_FACTOR * width {
        return Err(Error::tolerance(format!(
            "ambiguous singular value clusters: smallest retained value {:.3e} too close to the zero level {:.3e}",
            smallest_kept, zero_top
        )));
    }

    let mut out_sigmas = Vec::with_capacity(kept.len());
    let mut components = Vec::with_capacity(kept.len());
    for (mean, range) in kept {
        // Right singular projector of the cluster.
        let cols: Vec<Vec<Complex64>> = range.map(|j| e.basis.col(j)).collect();
        let ones: Vec<Complex64> = vec![Complex64::new(1.0, 0.0); cols.len()];
        let proj = CMatrix::from_spectral(&ones, &cols);
        components.push((m * &proj).scale(1.0 / mean));
        out_sigmas.push(mean);
    }
    Ok(SvdSystem {
        sigmas: out_sigmas,
        components,
    })
}

/// Check the SVD-system axioms and the strict ordering of the weights.
pub fn verify_svd_system(sys: &SvdSystem) -> SvdReport {
    let p = sys.components.len();
    let mut ordered = sys.sigmas.len() == p && !sys.sigmas.is_empty();
    for w in sys.sigmas.windows(2) {
        if w[0] <= w[1] {
            ordered = false;
        }
    }
    if let Some(last) = sys.sigmas.last() {
        if *last <= 0.0 {
            ordered = false;
        }
    }

    let mut max_residual = 0.0f64;
    for j in 0..p {
        let a = &sys.components[j];
        let aaa = &(a * &a.adjoint()) * a;
        max_residual = max_residual.max(CMatrix::dist(&aaa, a));
        for h in 0..p {
            if h == j {
                continue;
            }
            let b = &sys.components[h];
            max_residual = max_residual.max((&b.adjoint() * a).frob_norm());
            max_residual = max_residual.max((b * &a.adjoint()).frob_norm());
        }
    }
    SvdReport {
        ok: ordered && max_residual <= SVD_AXIOM_TOL,
        max_residual,
    }
}

/// Generalized Rodrigues exponential of `Σ alphas[j] · components[j]` for a
/// skew-Hermitian SVD-system.
pub fn rodrigues_exp(sys: &SvdSystem, alphas: &[f64]) -> Result<CMatrix> {
    if alphas.len() != sys.components.len() {
        return Err(Error::validation(format!(
            "angle count {} does not match component count {}",
            alphas.len(),
            sys.components.len()
        )));
    }
    let report = verify_svd_system(sys);
    if !report.ok {
        return Err(Error::validation(format!(
            "not a valid SVD-system (max axiom residual {:.3e})",
            report.max_residual
        )));
    }
    for (j, a) in sys.components.iter().enumerate() {
        let scale = a.frob_norm().max(1.0);
        if a.skew_residual() > tol::SYMMETRY_REL_TOL * scale {
            return Err(Error::validation(format!(
                "component {j} is not skew-Hermitian (‖A + A*‖ = {:.3e})",
                a.skew_residual()
            )));
        }
    }
    let n = sys.order();
    let mut out = CMatrix::identity(n);
    for (&alpha, a) in alphas.iter().zip(&sys.components) {
        let a2 = a * a;
        out = &out + &a.scale(alpha.sin());
        out = &out + &a2.scale(1.0 - alpha.cos());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expm::mat_exp_general;
    use std::f64::consts::{FRAC_PI_2, TAU};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn exact_kernel_directions_resolve_to_zero() {
        // Odd-order real skew matrices always have a kernel; the zero
        // singular value must not surface as √(eigen-noise) ≈ 1e-8.
        let mut rng = crate::rng::SplitMix64::new(17);
        for _ in 0..20 {
            let x = crate::group::haar::skew_symmetric_sample(5, &mut rng);
            let sys = svd_decompose(&x).unwrap();
            assert!(sys.sigmas.iter().all(|&s| s > 1e-6));
            assert!(CMatrix::dist(&sys.reconstruct(), &x) < 1e-12);
        }
    }

    fn random_matrix(n: usize, seed: u64) -> CMatrix {
        let mut rng = crate::rng::SplitMix64::new(seed);
        CMatrix::from_fn(n, |_, _| rng.complex_normal())
    }

    fn random_skew(n: usize, seed: u64) -> CMatrix {
        let g = random_matrix(n, seed);
        (&g - &g.adjoint()).scale(0.5)
    }

    #[test]
    fn diagonal_example() {
        let m = CMatrix::from_diag(&[c(2.0, 0.0), c(1.0, 0.0)]);
        let sys = svd_decompose(&m).unwrap();
        assert_eq!(sys.sigmas.len(), 2);
        assert!((sys.sigmas[0] - 2.0).abs() < 1e-12);
        assert!((sys.sigmas[1] - 1.0).abs() < 1e-12);
        let e1 = CMatrix::from_diag(&[c(1.0, 0.0), c(0.0, 0.0)]);
        let e2 = CMatrix::from_diag(&[c(0.0, 0.0), c(1.0, 0.0)]);
        assert!(CMatrix::dist(&sys.components[0], &e1) < 1e-12);
        assert!(CMatrix::dist(&sys.components[1], &e2) < 1e-12);
    }

    #[test]
    fn scaled_rotation_recovers_omega() {
        let omega = CMatrix::from_real_rows(&[&[0.0, -1.0], &[1.0, 0.0]]);
        let sys = svd_decompose(&omega.scale(3.0)).unwrap();
        assert_eq!(sys.sigmas.len(), 1);
        assert!((sys.sigmas[0] - 3.0).abs() < 1e-12);
        assert!(CMatrix::dist(&sys.components[0], &omega) < 1e-12);
    }

    #[test]
    fn zero_matrix_is_rejected() {
        match svd_decompose(&CMatrix::zeros(3)) {
            Err(Error::Validation(msg)) => assert!(msg.contains("zero")),
            other => panic!("expected validation error, got {other:?}"),
        }
    }

    #[test]
    fn near_degenerate_values_are_ambiguous() {
        // Gap of 5e-9 relative: wider than the 1e-9 grouping width but inside
        // the required ten-fold separation.
        let m = CMatrix::from_diag(&[c(1.0, 0.0), c(1.0 - 5e-9, 0.0)]);
        match svd_decompose(&m) {
            Err(Error::Tolerance(msg)) => assert!(msg.contains("ambiguous")),
            other => panic!("expected tolerance error, got {other:?}"),
        }
    }

    #[test]
    fn random_decomposition_satisfies_axioms() {
        for seed in [21u64, 22, 23] {
            let m = random_matrix(5, seed);
            let sys = svd_decompose(&m).unwrap();
            let report = verify_svd_system(&sys);
            assert!(report.ok, "axioms violated: {report:?}");
            assert!(report.max_residual <= 1e-9);
            assert!(CMatrix::dist(&sys.reconstruct(), &m) < 1e-10 * m.frob_norm());
            for w in sys.sigmas.windows(2) {
                assert!(w[0] > w[1]);
            }
        }
    }

    #[test]
    fn rank_deficient_matrix_keeps_only_nonzero_values() {
        let mut m = CMatrix::zeros(3);
        m.set(0, 1, c(2.0, 0.0)); // rank one, σ = 2
        let sys = svd_decompose(&m).unwrap();
        assert_eq!(sys.sigmas.len(), 1);
        assert!((sys.sigmas[0] - 2.0).abs() < 1e-12);
        assert!(CMatrix::dist(&sys.reconstruct(), &m) < 1e-12);
    }

    #[test]
    fn verify_rejects_shared_support() {
        let a = CMatrix::from_diag(&[c(1.0, 0.0), c(0.0, 0.0)]);
        let sys = SvdSystem {
            sigmas: vec![2.0, 1.0],
            components: vec![a.clone(), a],
        };
        let report = verify_svd_system(&sys);
        assert!(!report.ok);
        assert!(report.max_residual > 0.5);
    }

    #[test]
    fn verify_rejects_scaled_component() {
        let a = CMatrix::from_diag(&[c(2.0, 0.0), c(0.0, 0.0)]);
        let sys = SvdSystem {
            sigmas: vec![1.0],
            components: vec![a],
        };
        let report = verify_svd_system(&sys);
        assert!(!report.ok, "2·diag(1,0) fails A A* A = A");
    }

    #[test]
    fn verify_rejects_unordered_sigmas() {
        let m = random_matrix(4, 31);
        let mut sys = svd_decompose(&m).unwrap();
        sys.sigmas.reverse();
        sys.components.reverse();
        assert!(!verify_svd_system(&sys).ok);
    }

    #[test]
    fn skew_components_cube_back_to_themselves() {
        // For skew-Hermitian input each component satisfies A³ + A = 0.
        let x = random_skew(6, 41);
        let sys = svd_decompose(&x).unwrap();
        for a in &sys.components {
            assert!(a.skew_residual() < 1e-10);
            let a3 = &(a * a) * a;
            assert!(CMatrix::dist(&a3, &a.scale(-1.0)) < 1e-9);
        }
    }

    #[test]
    fn rodrigues_matches_series_exponential() {
        for seed in [51u64, 52, 53] {
            let x = random_skew(5, seed);
            let sys = svd_decompose(&x).unwrap();
            let mut rng = crate::rng::SplitMix64::new(seed ^ 0xabcd);
            let alphas: Vec<f64> = sys.sigmas.iter().map(|_| rng.uniform_in(-3.0, 3.0)).collect();
            let direct = rodrigues_exp(&sys, &alphas).unwrap();
            let mut combo = CMatrix::zeros(5);
            for (&al, a) in alphas.iter().zip(&sys.components) {
                combo = &combo + &a.scale(al);
            }
            let reference = mat_exp_general(&combo).unwrap();
            assert!(
                CMatrix::dist(&direct, &reference) < 1e-9,
                "Rodrigues route differs from series route"
            );
        }
    }

    #[test]
    fn rodrigues_quarter_turn_and_full_turn() {
        let omega = CMatrix::from_real_rows(&[&[0.0, -1.0], &[1.0, 0.0]]);
        let sys = SvdSystem {
            sigmas: vec![1.0],
            components: vec![omega.clone()],
        };
        let quarter = rodrigues_exp(&sys, &[FRAC_PI_2]).unwrap();
        assert!(CMatrix::dist(&quarter, &omega) < 1e-15);
        let full = rodrigues_exp(&sys, &[TAU]).unwrap();
        assert!(CMatrix::dist(&full, &CMatrix::identity(2)) < 1e-15);
    }

    #[test]
    fn rodrigues_rejects_hermitian_component() {
        let sym = CMatrix::from_diag(&[c(1.0, 0.0), c(0.0, 0.0)]);
        let sys = SvdSystem {
            sigmas: vec![1.0],
            components: vec![sym],
        };
        assert!(rodrigues_exp(&sys, &[1.0]).is_err());
    }

    #[test]
    fn decomposition_is_scale_stable() {
        // Scaling the input scales the sigmas and keeps the components.
        let m = random_matrix(4, 61);
        let sys1 = svd_decompose(&m).unwrap();
        let sys2 = svd_decompose(&m.scale(10.0)).unwrap();
        assert_eq!(sys1.sigmas.len(), sys2.sigmas.len());
        for (a, b) in sys1.sigmas.iter().zip(&sys2.sigmas) {
            assert!((10.0 * a - b).abs() < 1e-9 * b);
        }
        for (a, b) in sys1.components.iter().zip(&sys2.components) {
            assert!(CMatrix::dist(a, b) < 1e-9);
        }
    }
}
