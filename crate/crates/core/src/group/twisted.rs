//! Twisted groups `≼Q≽ = {M ∈ SU_n : M Q Mᵀ = Q}` for a real orthogonal
//! parameter `Q`.
//!
//! One implementation serves four selector families: `special-orthogonal:n`
//! is `Q = I_n`, `compact-symplectic:n` is the split form `Q = Ω_n` (ambient
//! order `2n`), `quaternion-unitary:n` is `Q = Ω^{⊕n}`, and `twisted:<file>`
//! takes an arbitrary real orthogonal matrix. The adapted frame of
//! [`TwistedStructure`] reduces every operation to three block types —
//! special orthogonal, unitary (embedded as real 2×2 cells), and
//! quaternionic unitary (embedded as 2×2 complex cells) — so each algorithm
//! here is a per-block dispatch followed by reassembly.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::canonical::{omega_blocks, omega_n};
use crate::cmatrix::CMatrix;
use crate::eig::unitary_eig_with;
use crate::embed::{decomplexify, quaternion_embed};
use crate::error::{Error, Result};
use crate::jordan::real_jordan_form_with;
use crate::plog::{
    check_enumeration_guard, j_pair_span, minimal_log_norm, pi_branch_count, quat_block_log,
    require_log_pair, so_block_log, so_negative_gauge, so_orientation_label, split_mask,
    twisted_census, unitary_block_log, PlogElement, PlogStructure, QuatPair, TorusLogSet,
};
use crate::rng::SplitMix64;
use crate::structure::{special_det_residual, CentralizerStructure, TwistedParts, TwistedStructure};
use crate::tol::Tolerances;

use super::haar::{
    haar_quaternion_unitary, haar_special_orthogonal, haar_unitary, quaternion_skew_sample,
    skew_hermitian_sample, skew_symmetric_sample,
};
use super::{ensure_member, GroupSpec, MatrixGroup, Membership, MembershipCheck};

pub struct TwistedGroup {
    spec: GroupSpec,
    label: String,
    structure: TwistedStructure,
    tols: Tolerances,
}

impl TwistedGroup {
    fn build(q: CMatrix, spec: GroupSpec, label: String, tols: &Tolerances) -> Result<Self> {
        let structure = TwistedStructure::with_tolerances(&q, tols)?;
        Ok(TwistedGroup { spec, label, structure, tols: tols.clone() })
    }

    pub fn special_orthogonal(n: usize, label: String, tols: &Tolerances) -> Result<Self> {
        Self::build(CMatrix::identity(n), GroupSpec::SpecialOrthogonal { n }, label, tols)
    }

    pub fn compact_symplectic(n: usize, label: String, tols: &Tolerances) -> Result<Self> {
        Self::build(omega_n(n), GroupSpec::CompactSymplectic { n }, label, tols)
    }

    pub fn quaternion_unitary(n: usize, label: String, tols: &Tolerances) -> Result<Self> {
        Self::build(omega_blocks(n), GroupSpec::QuaternionUnitary { n }, label, tols)
    }

    pub fn twisted(q: CMatrix, label: String, tols: &Tolerances) -> Result<Self> {
        Self::build(q.clone(), GroupSpec::Twisted { q }, label, tols)
    }

    fn n(&self) -> usize {
        self.structure.order()
    }

    fn check_shape(&self, m: &CMatrix, what: &str) -> Result<()> {
        if m.n() != self.n() {
            return Err(Error::validation(format!(
                "{what} has order {}, but the group lives in U_{}",
                m.n(),
                self.n()
            )));
        }
        if !m.is_finite() {
            return Err(Error::validation(format!("{what} has non-finite entries")));
        }
        Ok(())
    }

    fn scale(&self) -> f64 {
        self.tols.unitary_rel * (self.n() as f64).sqrt().max(1.0)
    }

    /// Adapted blocks of a member or algebra element, with the structural
    /// residual folded into a validation gate.
    fn blocks_of(&self, x: &CMatrix, what: &str) -> Result<TwistedParts> {
        let parts = self.structure.extract(x)?;
        if parts.residual > self.scale() * x.frob_norm().max(1.0) {
            return Err(Error::validation(format!(
                "{what} does not respect the adapted block structure of the group \
                 (defect {:.3e})",
                parts.residual
            )));
        }
        Ok(parts)
    }

    /// Canonical per-block logarithms in embedded form, ordered to match
    /// `block_sizes`.
    fn block_logs(&self, parts: &TwistedParts) -> Result<Vec<CMatrix>> {
        let mut blocks = Vec::new();
        if self.structure.so_size > 0 {
            blocks.push(so_block_log(&parts.so, &self.tols)?.log_matrix());
        }
        for p in &parts.u {
            let l = unitary_block_log(p, &self.tols)?.log_matrix();
            blocks.push(decomplexify(&l));
        }
        if self.structure.quat_size > 0 {
            let y = quaternion_embed(&parts.quat);
            blocks.push(quat_block_log(&y, &self.tols)?.log_matrix());
        }
        Ok(blocks)
    }

    /// Stabilizer sample of the orthogonal block: blockwise Haar (or skew)
    /// over the angle classes of the real Jordan form. Planes at `φ` and at
    /// `φ − π` have different rotation angles and never mix, so each class
    /// carries an independent unitary factor embedded as 2×2 real cells.
    fn so_stabilizer(&self, s: &CMatrix, rng: &mut SplitMix64, algebra: bool) -> Result<CMatrix> {
        if s.n() == 0 {
            return Ok(CMatrix::zeros(0));
        }
        let form = real_jordan_form_with(s, &self.tols)?;
        let mut blocks: Vec<CMatrix> = Vec::new();
        if form.p > 0 {
            blocks.push(if algebra {
                skew_symmetric_sample(form.p, rng)
            } else {
                haar_special_orthogonal(form.p, rng)
            });
        }
        if form.q > 0 {
            blocks.push(if algebra {
                skew_symmetric_sample(form.q, rng)
            } else {
                haar_special_orthogonal(form.q, rng)
            });
        }
        let lift = |d: usize, rng: &mut SplitMix64| {
            if algebra {
                decomplexify(&skew_hermitian_sample(d, rng))
            } else {
                decomplexify(&haar_unitary(d, rng))
            }
        };
        for b in &form.blocks {
            if b.mu > 0 {
                blocks.push(lift(b.mu, rng));
            }
            if b.nu > 0 {
                blocks.push(lift(b.nu, rng));
            }
        }
        if form.k > 0 {
            blocks.push(lift(form.k, rng));
        }
        let refs: Vec<&CMatrix> = blocks.iter().collect();
        let d = CMatrix::direct_sum(&refs);
        Ok(&(&form.a * &d) * &form.a.transpose())
    }

    /// Stabilizer sample of the quaternionic block (in embedded `2k × 2k`
    /// form): quaternionic unitaries on the ±1 eigenspaces, complex
    /// unitaries acting as `T ⊕ T̄` on each rotation class.
    fn quat_stabilizer(&self, y: &CMatrix, rng: &mut SplitMix64, algebra: bool) -> Result<CMatrix> {
        if y.n() == 0 {
            return Ok(CMatrix::zeros(0));
        }
        let qb = quat_block_log(y, &self.tols)?;
        let mut k = CMatrix::zeros(y.n());
        let quaternionic_factor =
            |pairs: &[(Vec<Complex64>, Vec<Complex64>)], rng: &mut SplitMix64, k: &mut CMatrix| {
                let r = pairs.len();
                let t = if algebra {
                    quaternion_embed(&quaternion_skew_sample(r, rng))
                } else {
                    quaternion_embed(&haar_quaternion_unitary(r, rng))
                };
                add_pair_class(k, pairs, &t);
            };
        if !qb.zero_vectors.is_empty() {
            let pairs = j_pair_span(&qb.zero_vectors)?;
            quaternionic_factor(&pairs, rng, &mut k);
        }
        let mut idx = 0;
        while idx < qb.pairs.len() {
            let mut end = idx + 1;
            while end < qb.pairs.len()
                && (qb.pairs[end].angle - qb.pairs[idx].angle).abs() <= self.tols.angle
            {
                end += 1;
            }
            let class = &qb.pairs[idx..end];
            if (class[0].angle - PI).abs() <= self.tols.angle {
                let pairs: Vec<_> =
                    class.iter().map(|p| (p.v.clone(), p.w.clone())).collect();
                quaternionic_factor(&pairs, rng, &mut k);
            } else {
                let r = class.len();
                let t = if algebra {
                    skew_hermitian_sample(r, rng)
                } else {
                    haar_unitary(r, rng)
                };
                add_rotation_class(&mut k, class, &t);
            }
            idx = end;
        }
        Ok(k)
    }

    fn stabilizer_blocks(
        &self,
        m: &CMatrix,
        rng: &mut SplitMix64,
        algebra: bool,
    ) -> Result<CMatrix> {
        let parts = self.blocks_of(m, "stabilized matrix")?;
        let mut blocks = Vec::new();
        if self.structure.so_size > 0 {
            blocks.push(self.so_stabilizer(&parts.so, rng, algebra)?);
        }
        for p in &parts.u {
            let nested = CentralizerStructure::with_tolerances(p, &self.tols)?;
            let inner: Vec<CMatrix> = nested
                .block_sizes()
                .iter()
                .map(|&s| {
                    if algebra {
                        skew_hermitian_sample(s, rng)
                    } else {
                        haar_unitary(s, rng)
                    }
                })
                .collect();
            blocks.push(decomplexify(&nested.assemble(&inner)?));
        }
        if self.structure.quat_size > 0 {
            let y = quaternion_embed(&parts.quat);
            blocks.push(self.quat_stabilizer(&y, rng, algebra)?);
        }
        self.structure.assemble_raw(&blocks)
    }
}

/// Accumulate `B T B*` where `B` has the interleaved pair columns
/// `v_1, w_1, v_2, w_2, …` and `T` is an embedded `2r × 2r` block.
fn add_pair_class(
    k: &mut CMatrix,
    pairs: &[(Vec<Complex64>, Vec<Complex64>)],
    t: &CMatrix,
) {
    let n = k.n();
    let r2 = 2 * pairs.len();
    for a in 0..r2 {
        let ca = if a % 2 == 0 { &pairs[a / 2].0 } else { &pairs[a / 2].1 };
        for b in 0..r2 {
            let tab = t.at(a, b);
            if tab.norm_sqr() == 0.0 {
                continue;
            }
            let cb = if b % 2 == 0 { &pairs[b / 2].0 } else { &pairs[b / 2].1 };
            for i in 0..n {
                for j in 0..n {
                    k.add_to(i, j, tab * ca[i] * cb[j].conj());
                }
            }
        }
    }
}

/// Accumulate `Σ T_ab v_a v_b* + T̄_ab w_a w_b*`: the action commuting with
/// both the rotation angle and the antilinear structure map.
fn add_rotation_class(k: &mut CMatrix, class: &[QuatPair], t: &CMatrix) {
    let n = k.n();
    for a in 0..class.len() {
        for b in 0..class.len() {
            let tab = t.at(a, b);
            for i in 0..n {
                for j in 0..n {
                    let add = tab * class[a].v[i] * class[b].v[j].conj()
                        + tab.conj() * class[a].w[i] * class[b].w[j].conj();
                    k.add_to(i, j, add);
                }
            }
        }
    }
}

impl MatrixGroup for TwistedGroup {
    fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    fn label(&self) -> &str {
        &self.label
    }

    fn ambient(&self) -> usize {
        self.n()
    }

    fn tolerances(&self) -> &Tolerances {
        &self.tols
    }

    fn contains(&self, m: &CMatrix) -> Result<Membership> {
        self.check_shape(m, "matrix")?;
        Ok(Membership::from_checks(vec![
            MembershipCheck {
                name: "unitary",
                residual: m.unitary_residual(),
                tolerance: self.scale(),
            },
            MembershipCheck {
                name: "twist",
                residual: self.structure.twist_residual(m),
                tolerance: self.scale(),
            },
            MembershipCheck {
                name: "special-det",
                residual: special_det_residual(m),
                tolerance: self.scale(),
            },
        ]))
    }

    fn algebra_contains(&self, x: &CMatrix) -> Result<Membership> {
        self.check_shape(x, "matrix")?;
        let scale = self.scale() * x.frob_norm().max(1.0);
        Ok(Membership::from_checks(vec![
            MembershipCheck {
                name: "skew-hermitian",
                residual: x.skew_residual(),
                tolerance: scale,
            },
            MembershipCheck {
                name: "twist-algebra",
                residual: self.structure.algebra_twist_residual(x),
                tolerance: scale,
            },
            MembershipCheck {
                name: "traceless",
                residual: x.trace().norm(),
                tolerance: scale,
            },
        ]))
    }

    fn haar_sample(&self, rng: &mut SplitMix64) -> CMatrix {
        let so = if self.structure.so_size > 0 {
            haar_special_orthogonal(self.structure.so_size, rng)
        } else {
            CMatrix::zeros(0)
        };
        let u: Vec<CMatrix> =
            self.structure.u_sizes.iter().map(|&s| haar_unitary(s, rng)).collect();
        let quat = haar_quaternion_unitary(self.structure.quat_size, rng);
        self.structure.assemble(&so, &u, &quat).expect("block sizes match the structure")
    }

    fn algebra_sample(&self, rng: &mut SplitMix64) -> CMatrix {
        let so = if self.structure.so_size > 0 {
            skew_symmetric_sample(self.structure.so_size, rng)
        } else {
            CMatrix::zeros(0)
        };
        let u: Vec<CMatrix> = self
            .structure
            .u_sizes
            .iter()
            .map(|&s| skew_hermitian_sample(s, rng))
            .collect();
        let quat = quaternion_skew_sample(self.structure.quat_size, rng);
        self.structure.assemble(&so, &u, &quat).expect("block sizes match the structure")
    }

    fn plog(&self, m: &CMatrix) -> Result<PlogElement> {
        ensure_member(&self.contains(m)?, "logarithm target")?;
        let parts = self.blocks_of(m, "logarithm target")?;
        let blocks = self.block_logs(&parts)?;
        let log = self.structure.assemble_raw(&blocks)?;
        Ok(PlogElement { log, group: self.spec.clone(), target: m.clone() })
    }

    fn torus_plogs(&self, m: &CMatrix) -> Result<TorusLogSet> {
        ensure_member(&self.contains(m)?, "logarithm target")?;
        let parts = self.blocks_of(m, "logarithm target")?;

        let so_log = if self.structure.so_size > 0 {
            Some(so_block_log(&parts.so, &self.tols)?)
        } else {
            None
        };
        let u_logs: Vec<_> = parts
            .u
            .iter()
            .map(|p| unitary_block_log(p, &self.tols))
            .collect::<Result<Vec<_>>>()?;
        let quat_log = if self.structure.quat_size > 0 {
            Some(quat_block_log(&quaternion_embed(&parts.quat), &self.tols)?)
        } else {
            None
        };

        let mut slot_counts = Vec::new();
        if let Some(sl) = &so_log {
            slot_counts.push(sl.pi_planes);
        }
        for b in &u_logs {
            slot_counts.push(b.pi_count(self.tols.angle));
        }
        if let Some(ql) = &quat_log {
            slot_counts.push(ql.pi_pair_count(self.tols.angle));
        }
        let total: usize = slot_counts.iter().sum();
        check_enumeration_guard(total)?;

        let mut representatives = Vec::with_capacity(1 << total);
        for mask in 0..(1u64 << total) {
            let flips = split_mask(mask, &slot_counts);
            let mut blocks = Vec::new();
            let mut slot = 0;
            if let Some(sl) = &so_log {
                blocks.push(sl.log_with_flips(&flips[slot]));
                slot += 1;
            }
            for b in &u_logs {
                blocks.push(decomplexify(&b.log_with_flips(&flips[slot])));
                slot += 1;
            }
            if let Some(ql) = &quat_log {
                blocks.push(ql.log_with_flips(&flips[slot]));
            }
            representatives.push(self.structure.assemble_raw(&blocks)?);
        }

        let mut frames = Vec::new();
        if let Some(sl) = &so_log {
            frames.push(sl.frame.clone());
        }
        for b in &u_logs {
            frames.push(decomplexify(&b.basis));
        }
        if let Some(ql) = &quat_log {
            frames.push(ql.torus_frame());
        }
        let refs: Vec<&CMatrix> = frames.iter().collect();
        let torus_basis = &self.structure.z * &CMatrix::direct_sum(&refs);
        Ok(TorusLogSet { representatives, torus_basis })
    }

    fn plog_structure(&self, m: &CMatrix) -> Result<PlogStructure> {
        ensure_member(&self.contains(m)?, "logarithm target")?;
        let parts = self.blocks_of(m, "logarithm target")?;
        let pi_planes = if self.structure.so_size > 0 {
            so_block_log(&parts.so, &self.tols)?.pi_planes
        } else {
            0
        };
        let mut zetas = Vec::with_capacity(parts.u.len());
        for p in &parts.u {
            let ue = unitary_eig_with(p, &self.tols)?;
            zetas.push(ue.neg_one_multiplicity(self.tols.angle));
        }
        let mu = if self.structure.quat_size > 0 {
            quat_block_log(&quaternion_embed(&parts.quat), &self.tols)?
                .pi_pair_count(self.tols.angle)
        } else {
            0
        };
        Ok(twisted_census(pi_planes, &zetas, mu, minimal_log_norm(m, &self.tols)?))
    }

    fn component_of(&self, m: &CMatrix, l: &CMatrix) -> Result<Vec<usize>> {
        ensure_member(&self.contains(m)?, "logarithm target")?;
        ensure_member(&self.algebra_contains(l)?, "logarithm")?;
        require_log_pair(l, m)?;
        let parts_m = self.blocks_of(m, "logarithm target")?;
        let parts_l = self.blocks_of(l, "logarithm")?;

        let mut index = Vec::new();
        if self.structure.so_size > 0 {
            let so_log = so_block_log(&parts_m.so, &self.tols)?;
            let gauge = so_negative_gauge(&so_log);
            index.push(so_orientation_label(&gauge, &parts_l.so, &self.tols)?);
        } else {
            index.push(0);
        }
        for (j, (pm, pl)) in parts_m.u.iter().zip(&parts_l.u).enumerate() {
            let ue = unitary_eig_with(pm, &self.tols)?;
            let neg: Vec<Vec<Complex64>> = ue
                .angles
                .iter()
                .enumerate()
                .filter(|(_, &a)| (a - PI).abs() <= self.tols.angle)
                .map(|(c, _)| ue.basis.col(c))
                .collect();
            index.push(pi_branch_count(&neg, pl, &format!("unitary factor {j}"))?);
        }
        if self.structure.quat_size > 0 {
            // Validity only: all branch splits of the quaternionic block lie
            // in one connected component, so there is no index entry.
            let ym = quaternion_embed(&parts_m.quat);
            let yl = quaternion_embed(&parts_l.quat);
            let ue = unitary_eig_with(&ym, &self.tols)?;
            let neg: Vec<Vec<Complex64>> = ue
                .angles
                .iter()
                .enumerate()
                .filter(|(_, &a)| (a - PI).abs() <= self.tols.angle)
                .map(|(c, _)| ue.basis.col(c))
                .collect();
            pi_branch_count(&neg, &yl, "quaternionic factor")?;
        }
        Ok(index)
    }

    fn stabilizer_sample(&self, m: &CMatrix, rng: &mut SplitMix64) -> Result<CMatrix> {
        ensure_member(&self.contains(m)?, "stabilized matrix")?;
        self.stabilizer_blocks(m, rng, false)
    }

    fn stabilizer_algebra_sample(&self, m: &CMatrix, rng: &mut SplitMix64) -> Result<CMatrix> {
        ensure_member(&self.contains(m)?, "stabilized matrix")?;
        self.stabilizer_blocks(m, rng, true)
    }

    fn diameter(&self) -> f64 {
        let n = self.n();
        if n % 2 == 0 {
            (n as f64).sqrt() * PI
        } else {
            ((n - 1) as f64).sqrt() * PI
        }
    }
}
