//! Adapted block structure of centralizer and twisted unitary groups.
//!
//! A centralizer group `⟨V⟩ = {X ∈ U_n : XV = VX}` is carried by a unitary
//! change of basis onto a direct sum of smaller unitary groups, one per
//! eigenvalue of `V`. A twisted group `≼Q≽ = {X ∈ SU_n : XQXᵀ = Q}`, for a
//! real orthogonal `Q`, is carried onto
//!
//! ```text
//! SO_{p+q} ⊕ ρ(U_{μ_1+ν_1}) ⊕ … ⊕ ρ(U_{μ_h+ν_h}) ⊕ Ψ(U_k(ℍ))
//! ```
//!
//! by `Z = A · (W_{(p,q)} ⊕ W_{(2μ_1,2ν_1)} ⊕ … ⊕ W_{(2μ_h,2ν_h)} ⊕ I_{2k})`
//! where `A 𝒥 Aᵀ = Q` is the real Jordan form of `Q`. These adapted frames
//! reduce every computation in the twisted world to the three primitive
//! block types.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::canonical::w_pq;
use crate::cmatrix::CMatrix;
use crate::embed::{complexify, decomplexify, quaternion_embed, quaternion_extract, QMatrix};
use crate::error::{Error, Result};
use crate::jordan::{real_jordan_form_with, RealJordanForm};
use crate::tol::Tolerances;

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct EigenBlock {
    /// Eigenvalue angle in (−π, π] (−1 reads +π).
    pub angle: f64,
    pub multiplicity: usize,
}

impl EigenBlock {
    pub fn eigenvalue(&self) -> Complex64 {
        Complex64::new(self.angle.cos(), self.angle.sin())
    }
}

/// Eigenspace frame of a normal parameter matrix `V`: the group of unitaries
/// commuting with `V` is `R (U_{n_1} ⊕ … ⊕ U_{n_m}) R*`.
#[derive(Debug, Clone)]
pub struct CentralizerStructure {
    pub v: CMatrix,
    pub r: CMatrix,
    pub blocks: Vec<EigenBlock>,
}

impl CentralizerStructure {
    pub fn new(v: &CMatrix) -> Result<Self> {
        Self::with_tolerances(v, &Tolerances::default())
    }

    pub fn with_tolerances(v: &CMatrix, tols: &Tolerances) -> Result<Self> {
        let ue = crate::eig::unitary_eig_with(v, tols)?;
        let clusters = ue.angle_clusters(tols.angle);
        let blocks = clusters
            .iter()
            .map(|(mean, range)| EigenBlock { angle: *mean, multiplicity: range.len() })
            .collect();
        Ok(CentralizerStructure { v: v.clone(), r: ue.basis, blocks })
    }

    pub fn order(&self) -> usize {
        self.v.n()
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.multiplicity).collect()
    }

    /// Assemble `R (X_1 ⊕ … ⊕ X_m) R*` from per-eigenvalue blocks. Linear in
    /// the blocks, so it serves group elements and algebra elements alike.
    pub fn assemble(&self, parts: &[CMatrix]) -> Result<CMatrix> {
        let sizes = self.block_sizes();
        if parts.len() != sizes.len() {
            return Err(Error::validation(format!(
                "expected {} blocks, got {}",
                sizes.len(),
                parts.len()
            )));
        }
        for (part, &s) in parts.iter().zip(&sizes) {
            if part.n() != s {
                return Err(Error::validation(format!(
                    "block of order {} where {} was expected",
                    part.n(),
                    s
                )));
            }
        }
        let refs: Vec<&CMatrix> = parts.iter().collect();
        let d = CMatrix::direct_sum(&refs);
        Ok(&(&self.r * &d) * &self.r.adjoint())
    }

    /// Split a matrix into its diagonal blocks in the adapted frame and
    /// report how much of it lives off those blocks.
    pub fn extract(&self, m: &CMatrix) -> Result<(Vec<CMatrix>, f64)> {
        if m.n() != self.order() {
            return Err(Error::validation("matrix order does not match the group"));
        }
        let y = &(&self.r.adjoint() * m) * &self.r;
        let sizes = self.block_sizes();
        let residual = y.off_block_residual(&sizes);
        let mut parts = Vec::with_capacity(sizes.len());
        let mut off = 0;
        for &s in &sizes {
            parts.push(y.block(off, off, s));
            off += s;
        }
        Ok((parts, residual))
    }
}

/// Adapted frame of a twisted group `≼Q≽_{SU_n}` for real orthogonal `Q`.
#[derive(Debug, Clone)]
pub struct TwistedStructure {
    pub q: CMatrix,
    pub jordan: RealJordanForm,
    /// Unitary frame carrying the group onto its block form.
    pub z: CMatrix,
    pub so_size: usize,
    /// Complex orders `μ_j + ν_j` of the unitary factors.
    pub u_sizes: Vec<usize>,
    /// Quaternionic order `k` of the symplectic factor.
    pub quat_size: usize,
}

impl TwistedStructure {
    pub fn new(q: &CMatrix) -> Result<Self> {
        Self::with_tolerances(q, &Tolerances::default())
    }

    pub fn with_tolerances(q: &CMatrix, tols: &Tolerances) -> Result<Self> {
        let jordan = real_jordan_form_with(q, tols)?;
        let mut w_blocks: Vec<CMatrix> = Vec::new();
        if jordan.p + jordan.q > 0 {
            w_blocks.push(w_pq(jordan.p, jordan.q));
        }
        for b in &jordan.blocks {
            w_blocks.push(w_pq(2 * b.mu, 2 * b.nu));
        }
        if jordan.k > 0 {
            w_blocks.push(CMatrix::identity(2 * jordan.k));
        }
        let refs: Vec<&CMatrix> = w_blocks.iter().collect();
        let w = CMatrix::direct_sum(&refs);
        let z = &jordan.a * &w;
        let u_sizes = jordan.blocks.iter().map(|b| b.mu + b.nu).collect();
        Ok(TwistedStructure {
            q: q.clone(),
            jordan: jordan.clone(),
            z,
            so_size: jordan.p + jordan.q,
            u_sizes,
            quat_size: jordan.k,
        })
    }

    pub fn order(&self) -> usize {
        self.q.n()
    }

    /// Complex orders of the diagonal blocks in the adapted frame.
    pub fn block_sizes(&self) -> Vec<usize> {
        let mut sizes = Vec::new();
        if self.so_size > 0 {
            sizes.push(self.so_size);
        }
        sizes.extend(self.u_sizes.iter().map(|&s| 2 * s));
        if self.quat_size > 0 {
            sizes.push(2 * self.quat_size);
        }
        sizes
    }

    /// Assemble `Z (S ⊕ ρ(U_1) ⊕ … ⊕ ρ(U_h) ⊕ Ψ(R)) Z*`. Linear in all
    /// parts; pass orthogonal/unitary/quaternion-unitary blocks for a group
    /// element or skew blocks for an algebra element.
    pub fn assemble(&self, so: &CMatrix, u: &[CMatrix], quat: &QMatrix) -> Result<CMatrix> {
        if so.n() != self.so_size {
            return Err(Error::validation(format!(
                "orthogonal block has order {}, expected {}",
                so.n(),
                self.so_size
            )));
        }
        if u.len() != self.u_sizes.len() {
            return Err(Error::validation(format!(
                "expected {} unitary blocks, got {}",
                self.u_sizes.len(),
                u.len()
            )));
        }
        for (x, &s) in u.iter().zip(&self.u_sizes) {
            if x.n() != s {
                return Err(Error::validation(format!(
                    "unitary block has order {}, expected {}",
                    x.n(),
                    s
                )));
            }
        }
        if quat.h() != self.quat_size {
            return Err(Error::validation(format!(
                "quaternion block has order {}, expected {}",
                quat.h(),
                self.quat_size
            )));
        }
        let mut blocks: Vec<CMatrix> = Vec::new();
        if self.so_size > 0 {
            blocks.push(so.clone());
        }
        for x in u {
            blocks.push(decomplexify(x));
        }
        if self.quat_size > 0 {
            blocks.push(quaternion_embed(quat));
        }
        let refs: Vec<&CMatrix> = blocks.iter().collect();
        let d = CMatrix::direct_sum(&refs);
        Ok(&(&self.z * &d) * &self.z.adjoint())
    }

    /// Assemble from already-embedded complex blocks (sizes per
    /// `block_sizes`), skipping the ρ/Ψ lifting. Used when a computation
    /// produces the embedded block images directly.
    pub fn assemble_raw(&self, blocks: &[CMatrix]) -> Result<CMatrix> {
        let sizes = self.block_sizes();
        if blocks.len() != sizes.len() {
            return Err(Error::validation(format!(
                "expected {} embedded blocks, got {}",
                sizes.len(),
                blocks.len()
            )));
        }
        for (b, &s) in blocks.iter().zip(&sizes) {
            if b.n() != s {
                return Err(Error::validation(format!(
                    "embedded block has order {}, expected {}",
                    b.n(),
                    s
                )));
            }
        }
        let refs: Vec<&CMatrix> = blocks.iter().collect();
        let d = CMatrix::direct_sum(&refs);
        Ok(&(&self.z * &d) * &self.z.adjoint())
    }

    /// Split a matrix into its adapted blocks. The returned residual gathers
    /// off-block mass plus every structural defect (imaginary parts on the
    /// orthogonal block, broken 2×2 cells, broken quaternion cells).
    pub fn extract(&self, m: &CMatrix) -> Result<TwistedParts> {
        if m.n() != self.order() {
            return Err(Error::validation("matrix order does not match the group"));
        }
        let y = &(&self.z.adjoint() * m) * &self.z;
        let sizes = self.block_sizes();
        let mut residual = y.off_block_residual(&sizes);
        let mut off = 0;
        let so = if self.so_size > 0 {
            let b = y.block(0, 0, self.so_size);
            residual = residual.hypot(b.imag_residual());
            off += self.so_size;
            b.real_part()
        } else {
            CMatrix::zeros(0)
        };
        let mut u = Vec::with_capacity(self.u_sizes.len());
        for &s in &self.u_sizes {
            let b = y.block(off, off, 2 * s);
            let (x, cell_residual) = complexify(&b)?;
            residual = residual.hypot(cell_residual);
            u.push(x);
            off += 2 * s;
        }
        let quat = if self.quat_size > 0 {
            let b = y.block(off, off, 2 * self.quat_size);
            let (r, cell_residual) = quaternion_extract(&b)?;
            residual = residual.hypot(cell_residual);
            r
        } else {
            QMatrix::zeros(0)
        };
        Ok(TwistedParts { so, u, quat, residual })
    }

    /// Residual of the defining relation `M Q Mᵀ = Q`.
    pub fn twist_residual(&self, m: &CMatrix) -> f64 {
        let lhs = &(m * &self.q) * &m.transpose();
        CMatrix::dist(&lhs, &self.q)
    }

    /// Residual of the algebra relation `X Q + Q Xᵀ = 0`.
    pub fn algebra_twist_residual(&self, x: &CMatrix) -> f64 {
        let s = &(x * &self.q) + &(&self.q * &x.transpose());
        s.frob_norm()
    }
}

#[derive(Debug, Clone)]
pub struct TwistedParts {
    pub so: CMatrix,
    pub u: Vec<CMatrix>,
    pub quat: QMatrix,
    pub residual: f64,
}

/// Validation guard shared by group constructors: a parameter matrix must be
/// unitary within tolerance.
pub fn require_unitary(m: &CMatrix, what: &str, tols: &Tolerances) -> Result<()> {
    if !m.is_finite() {
        return Err(Error::validation(format!("{what} has non-finite entries")));
    }
    let res = m.unitary_residual();
    if res > tols.unitary_rel * (m.n() as f64).sqrt().max(1.0) {
        return Err(Error::validation(format!(
            "{what} is not unitary: ‖MM* − I‖ = {res:.3e}"
        )));
    }
    Ok(())
}

/// Distance of `det M` from 1, the extra constraint twisted groups inherit
/// from the special unitary group.
pub fn special_det_residual(m: &CMatrix) -> f64 {
    (m.det() - Complex64::new(1.0, 0.0)).norm()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::{omega, rot, rot_pq};
    use crate::embed::Quaternion;
    use crate::rng::SplitMix64;
    use std::f64::consts::FRAC_PI_3;

    fn random_unitary(n: usize, rng: &mut SplitMix64) -> CMatrix {
        // Gram-Schmidt on a complex Gaussian matrix.
        let mut cols: Vec<Vec<Complex64>> = Vec::new();
        for _ in 0..n {
            let mut v: Vec<Complex64> = (0..n).map(|_| rng.complex_normal()).collect();
            for _ in 0..2 {
                let snapshot = cols.clone();
                for b in &snapshot {
                    let d = crate::cmatrix::cdot(b, &v);
                    for (x, y) in v.iter_mut().zip(b) {
                        *x -= d * y;
                    }
                }
            }
            let nv = crate::cmatrix::vnorm(&v);
            for x in v.iter_mut() {
                *x /= nv;
            }
            cols.push(v);
        }
        CMatrix::from_columns(&cols)
    }

    #[test]
    fn centralizer_of_identity_is_everything() {
        let s = CentralizerStructure::new(&CMatrix::identity(3)).unwrap();
        assert_eq!(s.blocks.len(), 1);
        assert_eq!(s.blocks[0].multiplicity, 3);
        let mut rng = SplitMix64::new(7);
        let u = random_unitary(3, &mut rng);
        let m = s.assemble(&[u.clone()]).unwrap();
        // One full block: assembling returns a unitary commuting with I.
        assert!(m.unitary_residual() < 1e-12);
    }

    #[test]
    fn centralizer_blocks_follow_eigenvalues() {
        let v = CMatrix::from_diag(&[
            Complex64::new(1.0, 0.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 1.0),
        ]);
        let s = CentralizerStructure::new(&v).unwrap();
        let sizes = s.block_sizes();
        assert_eq!(sizes, vec![1, 2]); // descending angle: i before 1
        assert!((s.blocks[0].eigenvalue() - Complex64::new(0.0, 1.0)).norm() < 1e-12);

        let mut rng = SplitMix64::new(11);
        let parts = vec![random_unitary(1, &mut rng), random_unitary(2, &mut rng)];
        let m = s.assemble(&parts).unwrap();
        let comm = &(&m * &v) - &(&v * &m);
        assert!(comm.frob_norm() < 1e-12);
        assert!(m.unitary_residual() < 1e-12);

        let (back, residual) = s.extract(&m).unwrap();
        assert!(residual < 1e-12);
        for (a, b) in back.iter().zip(&parts) {
            assert!(CMatrix::dist(a, b) < 1e-12);
        }
    }

    #[test]
    fn extract_flags_off_block_mass() {
        let v = CMatrix::from_diag(&[Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0)]);
        let s = CentralizerStructure::new(&v).unwrap();
        // Ω does not commute with diag(1,−1); its adapted form is off-block.
        let (_, residual) = s.extract(&omega()).unwrap();
        assert!(residual > 0.5);
    }

    #[test]
    fn twisted_identity_parameter_is_special_orthogonal() {
        let s = TwistedStructure::new(&CMatrix::identity(2)).unwrap();
        assert_eq!(s.so_size, 2);
        assert!(s.u_sizes.is_empty());
        assert_eq!(s.quat_size, 0);
        let m = s.assemble(&rot(0.8), &[], &QMatrix::zeros(0)).unwrap();
        assert!(s.twist_residual(&m) < 1e-12);
        assert!(m.unitary_residual() < 1e-12);
        assert!(special_det_residual(&m) < 1e-12);
    }

    #[test]
    fn twisted_omega_parameter_is_quaternionic() {
        let s = TwistedStructure::new(&omega()).unwrap();
        assert_eq!(s.so_size, 0);
        assert_eq!(s.quat_size, 1);
        // A unit quaternion acts as a 2×2 special unitary preserving Ω.
        let mut r = QMatrix::zeros(1);
        let q = Quaternion { z: Complex64::new(0.6, 0.0), w: Complex64::new(0.0, 0.8) };
        r.set(0, 0, q);
        let m = s.assemble(&CMatrix::zeros(0), &[], &r).unwrap();
        assert!(s.twist_residual(&m) < 1e-12);
        assert!(m.unitary_residual() < 1e-12);
        assert!(special_det_residual(&m) < 1e-12);
    }

    #[test]
    fn twisted_rotation_parameter_gets_unitary_factor() {
        let q = CMatrix::direct_sum(&[&rot(FRAC_PI_3), &CMatrix::identity(1)]);
        let s = TwistedStructure::new(&q).unwrap();
        assert_eq!(s.so_size, 1);
        assert_eq!(s.u_sizes, vec![1]);
        assert_eq!(s.quat_size, 0);

        let one = CMatrix::identity(1);
        let phase = CMatrix::from_diag(&[Complex64::from_polar(1.0, 0.9)]);
        let m = s.assemble(&one, &[phase.clone()], &QMatrix::zeros(0)).unwrap();
        assert!(s.twist_residual(&m) < 1e-12, "twist residual {}", s.twist_residual(&m));
        assert!(m.unitary_residual() < 1e-12);
        assert!(special_det_residual(&m) < 1e-12);

        let parts = s.extract(&m).unwrap();
        assert!(parts.residual < 1e-10);
        assert!(CMatrix::dist(&parts.u[0], &phase) < 1e-10);
        assert!(CMatrix::dist(&parts.so, &one) < 1e-10);
    }

    #[test]
    fn twisted_mixed_parameter_roundtrip() {
        // Q with all three block types: p=1, q=1, one rotation class, k=1.
        let q = CMatrix::direct_sum(&[
            &crate::canonical::j_pq(1, 1),
            &rot_pq(0.6, 1, 1),
            &omega(),
        ]);
        let s = TwistedStructure::new(&q).unwrap();
        assert_eq!(s.so_size, 2);
        assert_eq!(s.u_sizes, vec![2]);
        assert_eq!(s.quat_size, 1);

        let mut rng = SplitMix64::new(23);
        let so = rot(1.1);
        let u2 = random_unitary(2, &mut rng);
        let mut r = QMatrix::zeros(1);
        r.set(
            0,
            0,
            Quaternion { z: Complex64::new(0.0, 1.0), w: Complex64::new(0.0, 0.0) },
        );
        let m = s.assemble(&so, &[u2.clone()], &r).unwrap();
        assert!(s.twist_residual(&m) < 1e-9, "twist residual {}", s.twist_residual(&m));
        assert!(m.unitary_residual() < 1e-10);
        assert!(special_det_residual(&m) < 1e-10);

        let parts = s.extract(&m).unwrap();
        assert!(parts.residual < 1e-9);
        assert!(CMatrix::dist(&parts.so, &so) < 1e-9);
        assert!(CMatrix::dist(&parts.u[0], &u2) < 1e-9);
        let back = parts.quat.at(0, 0);
        assert!((back.z - Complex64::new(0.0, 1.0)).norm() < 1e-9);
        assert!(back.w.norm() < 1e-9);
    }

    #[test]
    fn twisted_algebra_relation_via_assemble() {
        let q = CMatrix::direct_sum(&[&CMatrix::identity(1), &rot(0.6)]);
        let s = TwistedStructure::new(&q).unwrap();
        // Skew blocks assemble to an algebra element of the twisted group.
        let so = CMatrix::zeros(1);
        let mut k = CMatrix::zeros(1);
        k.set(0, 0, Complex64::new(0.0, -1.3));
        let x = s.assemble(&so, &[k], &QMatrix::zeros(0)).unwrap();
        assert!(x.skew_residual() < 1e-12);
        assert!(s.algebra_twist_residual(&x) < 1e-12);
    }

    #[test]
    fn assemble_rejects_wrong_block_sizes() {
        let s = TwistedStructure::new(&CMatrix::identity(2)).unwrap();
        let bad = s.assemble(&CMatrix::identity(3), &[], &QMatrix::zeros(0));
        assert!(matches!(bad, Err(Error::Validation(_))));
    }
}
