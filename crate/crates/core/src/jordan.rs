//! Real Jordan auxiliary form of a real orthogonal matrix.
//!
//! Every `Q ∈ O_n` is `A 𝒥 Aᵀ` for a real orthogonal `A`, where
//!
//! ```text
//! 𝒥 = J^{(p,q)} ⊕ E_{φ_1}^{(μ_1,ν_1)} ⊕ … ⊕ E_{φ_h}^{(μ_h,ν_h)} ⊕ Ω^{⊕k}
//! ```
//!
//! with `0 < φ_1 < … < φ_h < π/2` and `p + q + 2Σ(μ_j + ν_j) + 2k = n`.
//! The columns of `A` are eigenvectors of the +1 and −1 eigenspaces followed
//! by oriented real 2-planes; inside each rotation class the planes on which
//! `Q` acts by `+E_φ` come first (the μ planes) and the planes acted on by
//! `−E_φ` (rotation by `φ − π`; eigenvalues `−e^{∓iφ}`) after them.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::canonical::{j_pq, omega_blocks, rot_pq};
use crate::cmatrix::{vnorm, CMatrix};
use crate::eig::{herm_eig, unitary_eig_with};
use crate::error::{Error, Result};
use crate::tol::{self, Tolerances, ANGLE_AMBIGUITY_FACTOR};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RotationBlock {
    pub phi: f64,
    pub mu: usize,
    pub nu: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RealJordanForm {
    pub p: usize,
    pub q: usize,
    pub k: usize,
    pub blocks: Vec<RotationBlock>,
    #[serde(rename = "A")]
    pub a: CMatrix,
}

impl RealJordanForm {
    pub fn order(&self) -> usize {
        self.a.n()
    }

    /// The block-diagonal matrix `𝒥` this form conjugates `Q` onto.
    pub fn canonical_matrix(&self) -> CMatrix {
        let mut blocks: Vec<CMatrix> = Vec::new();
        if self.p + self.q > 0 {
            blocks.push(j_pq(self.p, self.q));
        }
        for b in &self.blocks {
            blocks.push(rot_pq(b.phi, b.mu, b.nu));
        }
        if self.k > 0 {
            blocks.push(omega_blocks(self.k));
        }
        let refs: Vec<&CMatrix> = blocks.iter().collect();
        CMatrix::direct_sum(&refs)
    }

    pub fn reconstruct(&self) -> CMatrix {
        &(&self.a * &self.canonical_matrix()) * &self.a.transpose()
    }
}

/// Real orthonormal basis of a rotation-free eigenspace (eigenvalue ±1),
/// recovered from the spectral projector. The projector of a real eigenvalue
/// of a real matrix is real symmetric; diagonalizing its real part gives a
/// deterministic real basis.
fn real_eigenbasis(vectors: &[Vec<Complex64>], label: &str) -> Result<Vec<Vec<f64>>> {
    if vectors.is_empty() {
        return Ok(Vec::new());
    }
    let n = vectors[0].len();
    let ones = vec![Complex64::new(1.0, 0.0); vectors.len()];
    let proj = CMatrix::from_spectral(&ones, vectors);
    if proj.imag_residual() > tol::SYMMETRY_REL_TOL * (n as f64).sqrt() {
        return Err(Error::tolerance(format!(
            "eigenspace for {label} is not real (projector imaginary mass {:.3e})",
            proj.imag_residual()
        )));
    }
    let e = herm_eig(&proj.real_part())?;
    let mut basis = Vec::new();
    for (j, &val) in e.values.iter().enumerate() {
        if val > 0.5 {
            let col = e.basis.col(j);
            basis.push(col.iter().map(|z| z.re).collect());
        }
    }
    if basis.len() != vectors.len() {
        return Err(Error::tolerance(format!(
            "projector rank for {label} is {} but the eigenvalue multiplicity is {}",
            basis.len(),
            vectors.len()
        )));
    }
    Ok(basis)
}

/// Oriented real 2-plane of a complex eigenvector: the pair
/// `(√2 Re v, −√2 Im v)`, on which the matrix acts by rotation with the same
/// signed angle as the eigenvalue of `v`.
fn plane_of(v: &[Complex64]) -> (Vec<f64>, Vec<f64>) {
    let s = std::f64::consts::SQRT_2;
    let x = v.iter().map(|z| s * z.re).collect();
    let y = v.iter().map(|z| -s * z.im).collect();
    (x, y)
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum AngleClass {
    One,
    MinusOne,
    PlusI,
    MinusI,
    /// φ reduced to (0, π/2); `nu_side` when the eigenvalue is −e^{∓iφ}.
    Rotation {
        phi: f64,
        nu_side: bool,
        positive: bool,
    },
}

fn classify_angle(theta: f64, tol_angle: f64) -> Result<AngleClass> {
    use std::f64::consts::{FRAC_PI_2, PI};
    let snaps = [0.0, PI, -PI, FRAC_PI_2, -FRAC_PI_2];
    let nearest = snaps
        .iter()
        .map(|s| (theta - s).abs())
        .fold(f64::INFINITY, f64::min);
    if nearest > tol_angle && nearest <= ANGLE_AMBIGUITY_FACTOR * tol_angle {
        return Err(Error::tolerance(format!(
            "eigenvalue angle {theta:.9} is too close to a classification boundary to resolve"
        )));
    }
    if theta.abs() <= tol_angle {
        return Ok(AngleClass::One);
    }
    if (theta - PI).abs() <= tol_angle || (theta + PI).abs() <= tol_angle {
        return Ok(AngleClass::MinusOne);
    }
    if (theta - FRAC_PI_2).abs() <= tol_angle {
        return Ok(AngleClass::PlusI);
    }
    if (theta + FRAC_PI_2).abs() <= tol_angle {
        return Ok(AngleClass::MinusI);
    }
    let positive = theta > 0.0;
    let a = theta.abs();
    let (phi, nu_side) = if a < FRAC_PI_2 { (a, false) } else { (PI - a, true) };
    Ok(AngleClass::Rotation { phi, nu_side, positive })
}

/// Compute the real Jordan auxiliary form of a real orthogonal matrix.
pub fn real_jordan_form(q_in: &CMatrix) -> Result<RealJordanForm> {
    real_jordan_form_with(q_in, &Tolerances::default())
}

pub fn real_jordan_form_with(q_in: &CMatrix, tols: &Tolerances) -> Result<RealJordanForm> {
    let n = q_in.n();
    let sqrt_n = (n as f64).sqrt().max(1.0);
    if !q_in.is_finite() {
        return Err(Error::validation("matrix has non-finite entries"));
    }
    if q_in.imag_residual() > tol::SYMMETRY_REL_TOL * sqrt_n {
        return Err(Error::validation(format!(
            "matrix is not real (imaginary mass {:.3e})",
            q_in.imag_residual()
        )));
    }
    let q = q_in.real_part();
    if q.unitary_residual() > tols.unitary_rel * sqrt_n {
        return Err(Error::validation(format!(
            "matrix is not orthogonal: ‖QQᵀ − I‖ = {:.3e}",
            q.unitary_residual()
        )));
    }

    let ue = unitary_eig_with(&q, tols)?;

    let mut one_vectors: Vec<Vec<Complex64>> = Vec::new();
    let mut neg_vectors: Vec<Vec<Complex64>> = Vec::new();
    let mut plus_i: Vec<Vec<Complex64>> = Vec::new();
    let mut minus_i_count = 0usize;
    // (phi, nu_side, vector) for positive-angle rotation eigenvectors.
    let mut rot_pos: Vec<(f64, bool, Vec<Complex64>)> = Vec::new();
    let mut rot_neg: Vec<(f64, bool)> = Vec::new();

    for (j, &theta) in ue.angles.iter().enumerate() {
        match classify_angle(theta, tols.angle)? {
            AngleClass::One => one_vectors.push(ue.basis.col(j)),
            AngleClass::MinusOne => neg_vectors.push(ue.basis.col(j)),
            AngleClass::PlusI => plus_i.push(ue.basis.col(j)),
            AngleClass::MinusI => minus_i_count += 1,
            AngleClass::Rotation { phi, nu_side, positive } => {
                if positive {
                    rot_pos.push((phi, nu_side, ue.basis.col(j)));
                } else {
                    rot_neg.push((phi, nu_side));
                }
            }
        }
    }

    if plus_i.len() != minus_i_count {
        return Err(Error::tolerance(format!(
            "eigenvalues +i and −i have mismatched multiplicities {} vs {}",
            plus_i.len(),
            minus_i_count
        )));
    }

    // Cluster the reduced rotation angles (ascending).
    rot_pos.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("angles are finite"));
    rot_neg.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("angles are finite"));
    let mut classes: Vec<(f64, Vec<(bool, Vec<Complex64>)>)> = Vec::new();
    for (phi, nu_side, v) in rot_pos {
        match classes.last_mut() {
            Some((last_phi, members)) if phi - *last_phi <= tols.angle => {
                members.push((nu_side, v));
            }
            _ => classes.push((phi, vec![(nu_side, v)])),
        }
    }
    // The negative-angle partners must reproduce the same census.
    {
        let mut neg_classes: Vec<(f64, usize, usize)> = Vec::new();
        for (phi, nu_side) in rot_neg {
            match neg_classes.last_mut() {
                Some((last_phi, mu, nu)) if phi - *last_phi <= tols.angle => {
                    if nu_side {
                        *nu += 1;
                    } else {
                        *mu += 1;
                    }
                }
                _ => neg_classes.push((phi, usize::from(!nu_side), usize::from(nu_side))),
            }
        }
        let pos_counts: Vec<(usize, usize)> = classes
            .iter()
            .map(|(_, m)| {
                let nu = m.iter().filter(|(s, _)| *s).count();
                (m.len() - nu, nu)
            })
            .collect();
        let neg_counts: Vec<(usize, usize)> = neg_classes.iter().map(|&(_, mu, nu)| (mu, nu)).collect();
        if pos_counts != neg_counts {
            return Err(Error::tolerance(
                "conjugate eigenvalue pairs have mismatched rotation multiplicities".to_string(),
            ));
        }
    }

    // Assemble the column basis: +1 block, −1 block, rotation classes
    // (μ planes before ν planes), then the ±i planes.
    let p = one_vectors.len();
    let q_mult = neg_vectors.len();
    let k = plus_i.len();
    let mut columns: Vec<Vec<f64>> = Vec::with_capacity(n);
    columns.extend(real_eigenbasis(&one_vectors, "+1")?);
    columns.extend(real_eigenbasis(&neg_vectors, "-1")?);

    let mut blocks = Vec::with_capacity(classes.len());
    for (_, members) in &classes {
        let phi_mean = {
            // Every member vector sees the same reduced angle by clustering.
            let mut s = 0.0;
            for (nu_side, v) in members {
                // Recover the signed angle from the Rayleigh quotient to
                // average actual readings rather than pre-reduced labels.
                let qv = q.matvec(v);
                let lam = crate::cmatrix::cdot(v, &qv);
                let theta = lam.im.atan2(lam.re);
                s += if *nu_side { std::f64::consts::PI - theta } else { theta };
            }
            s / members.len() as f64
        };
        let mut mu = 0;
        let mut nu = 0;
        for (nu_side, v) in members {
            if !nu_side {
                mu += 1;
                let (x, y) = plane_of(v);
                columns.push(x);
                columns.push(y);
            }
        }
        for (nu_side, v) in members {
            if *nu_side {
                nu += 1;
                // Conjugate eigenvector: the plane of conj(v) is the pair
                // (√2 Re v, +√2 Im v), on which Q acts by rotation φ − π,
                // i.e. by −E_φ.
                let conj_v: Vec<Complex64> = v.iter().map(|z| z.conj()).collect();
                let (x, y) = plane_of(&conj_v);
                columns.push(x);
                columns.push(y);
            }
        }
        blocks.push(RotationBlock { phi: phi_mean, mu, nu });
    }

    for v in &plus_i {
        let (x, y) = plane_of(v);
        columns.push(x);
        columns.push(y);
    }

    if columns.len() != n {
        return Err(Error::tolerance(format!(
            "eigenvector planes cover {} of {} dimensions",
            columns.len(),
            n
        )));
    }

    // Deterministic Gram-Schmidt polish: removes the tiny cross-plane mixing
    // the eigensolver leaves between nearly equal conjugate eigenvalues.
    let mut ortho: Vec<Vec<f64>> = Vec::with_capacity(n);
    for mut col in columns {
        for _ in 0..2 {
            for b in &ortho {
                let dot: f64 = col.iter().zip(b).map(|(x, y)| x * y).sum();
                for (c, &bv) in col.iter_mut().zip(b) {
                    *c -= dot * bv;
                }
            }
        }
        let norm: f64 = col.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm < 0.5 {
            return Err(Error::tolerance(
                "eigenvector planes degenerated during orthonormalization".to_string(),
            ));
        }
        for c in col.iter_mut() {
            *c /= norm;
        }
        ortho.push(col);
    }
    let a = CMatrix::from_columns(
        &ortho
            .iter()
            .map(|col| col.iter().map(|&x| Complex64::new(x, 0.0)).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    );

    let form = RealJordanForm { p, q: q_mult, k, blocks, a };
    let recon_err = CMatrix::dist(&form.reconstruct(), &q);
    if recon_err > tol::RECON_REL_TOL * sqrt_n {
        return Err(Error::tolerance(format!(
            "real Jordan reconstruction residual {:.3e} exceeds tolerance",
            recon_err
        )));
    }
    debug_assert!(vnorm(&form.a.col(0).to_vec()) > 0.9);
    Ok(form)
}
