//! Hermitian and unitary eigendecompositions.
//!
//! The kernel is a cyclic two-sided Jacobi iteration on Hermitian matrices
//! with a fixed sweep order (row-major over the strict upper triangle), a
//! fixed rotation convention, and a deterministic eigenvector sign fix, so a
//! given input always produces the same basis. Unitary matrices are handled
//! by diagonalizing the Hermitian part first and then splitting each cluster
//! with the skew part, which recovers eigenvalue angles in `(−π, π]` with the
//! branch convention that −1 maps to +π.

use num_complex::Complex64;

use crate::cmatrix::{cdot, CMatrix};
use crate::error::{Error, Result};
use crate::tol::{
    self, Tolerances, ANGLE_CLUSTER_TOL, JACOBI_MAX_SWEEPS, JACOBI_REL_TOL, SIGN_PIVOT_TOL,
};

/// Eigendecomposition of a Hermitian matrix. `values` are sorted descending;
/// column `j` of `basis` is the eigenvector for `values[j]`.
#[derive(Debug, Clone)]
pub struct HermEigen {
    pub values: Vec<f64>,
    pub basis: CMatrix,
}

/// Eigendecomposition of a unitary matrix: `M = V diag(e^{iθ}) V*` with the
/// angles sorted descending in `(−π, π]`. An eigenvalue −1 is always reported
/// with angle +π, never −π.
#[derive(Debug, Clone)]
pub struct UnitaryEigen {
    pub angles: Vec<f64>,
    pub basis: CMatrix,
}

impl UnitaryEigen {
    /// Indices grouped into runs of equal angle (within `tol`), preserving
    /// the descending order. Returns `(mean angle, index range)` per cluster.
    pub fn angle_clusters(&self, tol: f64) -> Vec<(f64, std::ops::Range<usize>)> {
        cluster_descending(&self.angles, tol)
    }

    /// Multiplicity of the eigenvalue −1 (angles within `tol` of π).
    pub fn neg_one_multiplicity(&self, tol: f64) -> usize {
        self.angles
            .iter()
            .filter(|&&t| (t - std::f64::consts::PI).abs() <= tol)
            .count()
    }

    pub fn reconstruct(&self) -> CMatrix {
        let values: Vec<Complex64> = self
            .angles
            .iter()
            .map(|&t| Complex64::new(t.cos(), t.sin()))
            .collect();
        CMatrix::from_spectral(&values, &self.basis.columns())
    }
}

/// Group a descending sequence into clusters chained by `tol`.
pub fn cluster_descending(values: &[f64], tol: f64) -> Vec<(f64, std::ops::Range<usize>)> {
    let mut out = Vec::new();
    let mut start = 0;
    while start < values.len() {
        let mut end = start + 1;
        while end < values.len() && values[end - 1] - values[end] <= tol {
            end += 1;
        }
        let mean = values[start..end].iter().sum::<f64>() / (end - start) as f64;
        out.push((mean, start..end));
        start = end;
    }
    out
}

fn off_diagonal_norm(a: &CMatrix) -> f64 {
    let n = a.n();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a.at(i, j).norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Deterministic sign fix: scale each column by ±1 so its first component of
/// modulus above [`SIGN_PIVOT_TOL`] has nonnegative real part, with ties
/// broken toward nonnegative imaginary part.
fn normalize_column_signs(basis: &mut CMatrix) {
    let n = basis.n();
    for j in 0..n {
        let mut flip = false;
        for i in 0..n {
            let z = basis.at(i, j);
            if z.norm() > SIGN_PIVOT_TOL {
                if z.re < -SIGN_PIVOT_TOL {
                    flip = true;
                } else if z.re.abs() <= SIGN_PIVOT_TOL && z.im < 0.0 {
                    flip = true;
                }
                break;
            }
        }
        if flip {
            for i in 0..n {
                let z = basis.at(i, j);
                basis.set(i, j, -z);
            }
        }
    }
}

/// Eigendecomposition of a Hermitian matrix by cyclic two-sided Jacobi.
///
/// The input must be Hermitian within [`tol::SYMMETRY_REL_TOL`] relative to
/// `max(1, ‖H‖_F)`; the iteration itself runs on the exactly symmetrized
/// part. Convergence failure after [`JACOBI_MAX_SWEEPS`] sweeps is an error.
pub fn herm_eig(h: &CMatrix) -> Result<HermEigen> {
    let n = h.n();
    if !h.is_finite() {
        return Err(Error::validation("eigendecomposition input has non-finite entries"));
    }
    let scale = h.frob_norm().max(1.0);
    if h.hermitian_residual() > tol::SYMMETRY_REL_TOL * scale {
        return Err(Error::validation(format!(
            "matrix is not Hermitian: ‖H − H*‖ = {:.3e}",
            h.hermitian_residual()
        )));
    }

    // Work on the exactly Hermitian average.
    let mut a = (h + &h.adjoint()).scale(0.5);
    let mut v = CMatrix::identity(n);
    let norm = a.frob_norm();
    if n <= 1 || norm == 0.0 {
        let values = (0..n).map(|i| a.at(i, i).re).collect();
        return Ok(HermEigen { values, basis: v });
    }

    let conv = JACOBI_REL_TOL * norm;
    // Entries below this cannot affect convergence and are not worth a
    // rotation: if every |a_pq| ≤ conv/n the off-diagonal mass is below conv.
    let skip = conv / n as f64;
    let mut converged = false;

    for _sweep in 0..JACOBI_MAX_SWEEPS {
        if off_diagonal_norm(&a) <= conv {
            converged = true;
            break;
        }
        for p in 0..n - 1 {
            for q in (p + 1)..n {
                let beta = a.at(p, q);
                let b = beta.norm();
                if b <= skip {
                    continue;
                }
                let phi = beta.arg();
                let alpha = a.at(p, p).re;
                let gamma = a.at(q, q).re;
                // Real Jacobi angle for the phase-rotated 2×2 block
                // [[α, b], [b, γ]].
                let tau = (gamma - alpha) / (2.0 * b);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let sigma = Complex64::from_polar(s, phi);

                // A ← R* A R with R = [[c, σ], [−conj(σ), c]] at (p, q).
                for k in 0..n {
                    let ap = a.at(p, k);
                    let aq = a.at(q, k);
                    a.set(p, k, ap * c - sigma * aq);
                    a.set(q, k, sigma.conj() * ap + aq * c);
                }
                for k in 0..n {
                    let ap = a.at(k, p);
                    let aq = a.at(k, q);
                    a.set(k, p, ap * c - sigma.conj() * aq);
                    a.set(k, q, sigma * ap + aq * c);
                }
                for k in 0..n {
                    let vp = v.at(k, p);
                    let vq = v.at(k, q);
                    v.set(k, p, vp * c - sigma.conj() * vq);
                    v.set(k, q, sigma * vp + vq * c);
                }
                // Clean the rotated pivot so round-off cannot accumulate
                // asymmetry there.
                a.set(p, q, Complex64::new(0.0, 0.0));
                a.set(q, p, Complex64::new(0.0, 0.0));
            }
        }
    }
    if !converged && off_diagonal_norm(&a) > conv {
        return Err(Error::tolerance(format!(
            "Jacobi iteration did not converge in {JACOBI_MAX_SWEEPS} sweeps (off-diagonal {:.3e}, bound {:.3e})",
            off_diagonal_norm(&a),
            conv
        )));
    }

    // Sort eigenpairs by descending value. The sort is stable, so equal
    // values keep the deterministic order produced by the sweeps.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        a.at(j, j)
            .re
            .partial_cmp(&a.at(i, i).re)
            .expect("eigenvalues are finite")
    });
    let values: Vec<f64> = order.iter().map(|&i| a.at(i, i).re).collect();
    let cols: Vec<Vec<Complex64>> = order.iter().map(|&i| v.col(i)).collect();
    let mut basis = CMatrix::from_columns(&cols);
    normalize_column_signs(&mut basis);
    Ok(HermEigen { values, basis })
}

/// Eigendecomposition of a unitary matrix with the default tolerances.
pub fn unitary_eig(m: &CMatrix) -> Result<UnitaryEigen> {
    unitary_eig_with(m, &Tolerances::default())
}

/// Eigendecomposition of a unitary matrix.
///
/// Diagonalizes the Hermitian part `(M + M*)/2`, then splits each of its
/// eigenvalue clusters with the skew part `(M − M*)/(2i)` restricted to the
/// cluster. Angles are recovered per vector from both Rayleigh quotients via
/// `atan2`, so cosines compressed near ±1 lose no accuracy.
pub fn unitary_eig_with(m: &CMatrix, tols: &Tolerances) -> Result<UnitaryEigen> {
    let n = m.n();
    if !m.is_finite() {
        return Err(Error::validation("eigendecomposition input has non-finite entries"));
    }
    let ur = m.unitary_residual();
    if ur > tols.unitary_rel * (n as f64).sqrt() {
        return Err(Error::validation(format!(
            "matrix is not unitary: ‖MM* − I‖ = {:.3e} exceeds {:.3e}",
            ur,
            tols.unitary_rel * (n as f64).sqrt()
        )));
    }

    let c_part = (m + &m.adjoint()).scale(0.5);
    let s_part = (m - &m.adjoint()).scale_c(Complex64::new(0.0, -0.5));
    let ce = herm_eig(&c_part)?;

    // Clusters of the cosine spectrum. The chaining tolerance can over-merge
    // distinct angles whose cosines are close (near θ = 0 or π the cosine gap
    // is quadratic in the angle gap); the skew part separates them again.
    let clusters = cluster_descending(&ce.values, ANGLE_CLUSTER_TOL);

    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    for (_, range) in &clusters {
        let members: Vec<Vec<Complex64>> = range.clone().map(|j| ce.basis.col(j)).collect();
        if members.len() == 1 {
            cols.push(members.into_iter().next().unwrap());
            continue;
        }
        // Restriction of the skew part to the cluster's eigenspace.
        let r = members.len();
        let s_cols: Vec<Vec<Complex64>> = members.iter().map(|v| s_part.matvec(v)).collect();
        let restricted = CMatrix::from_fn(r, |i, j| cdot(&members[i], &s_cols[j]));
        let se = herm_eig(&restricted)?;
        for k in 0..r {
            let w = se.basis.col(k);
            let mut combined = vec![Complex64::new(0.0, 0.0); n];
            for (coef, member) in w.iter().zip(&members) {
                for (o, &mv) in combined.iter_mut().zip(member) {
                    *o += coef * mv;
                }
            }
            cols.push(combined);
        }
    }

    // Per-vector angle from both Rayleigh quotients.
    let mut pairs: Vec<(f64, Vec<Complex64>)> = cols
        .into_iter()
        .map(|v| {
            let cv = cdot(&v, &c_part.matvec(&v)).re;
            let sv = cdot(&v, &s_part.matvec(&v)).re;
            let mut theta = sv.atan2(cv);
            // Branch convention: −1 is reported as +π. Angles within the
            // clustering tolerance of −π belong to the −1 eigenvalue.
            if theta <= -std::f64::consts::PI + tols.angle {
                theta += std::f64::consts::TAU;
            }
            (theta, v)
        })
        .collect();
    pairs.sort_by(|a, b| b.0.partial_cmp(&a.0).expect("angles are finite"));

    let angles: Vec<f64> = pairs.iter().map(|p| p.0).collect();
    let cols: Vec<Vec<Complex64>> = pairs.into_iter().map(|p| p.1).collect();
    let mut basis = CMatrix::from_columns(&cols);
    normalize_column_signs(&mut basis);

    let eigen = UnitaryEigen { angles, basis };
    let recon_err = CMatrix::dist(&eigen.reconstruct(), m);
    if recon_err > tol::RECON_REL_TOL * (n as f64).sqrt() {
        return Err(Error::tolerance(format!(
            "unitary eigendecomposition residual {:.3e} exceeds tolerance",
            recon_err
        )));
    }
    Ok(eigen)
}
