//! Centralizer groups `⟨V⟩ = {M ∈ U_n : MV = VM}` of a unitary parameter.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::cmatrix::CMatrix;
use crate::error::{Error, Result};
use crate::plog::{
    check_enumeration_guard, minimal_log_norm, pi_branch_count, product_census,
    require_log_pair, split_mask, unitary_block_log, PlogElement, PlogStructure, TorusLogSet,
};
use crate::rng::SplitMix64;
use crate::structure::{require_unitary, CentralizerStructure};
use crate::tol::Tolerances;

use super::haar::{haar_unitary, skew_hermitian_sample};
use super::{ensure_member, GroupSpec, MatrixGroup, Membership, MembershipCheck};

pub struct CentralizerGroup {
    spec: GroupSpec,
    label: String,
    structure: CentralizerStructure,
    tols: Tolerances,
}

impl CentralizerGroup {
    pub fn new(v: CMatrix, label: String, tols: &Tolerances) -> Result<Self> {
        require_unitary(&v, "centralizer parameter", tols)?;
        let structure = CentralizerStructure::with_tolerances(&v, tols)?;
        Ok(CentralizerGroup {
            spec: GroupSpec::Centralizer { v },
            label,
            structure,
            tols: tols.clone(),
        })
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

    fn commutation_residual(&self, x: &CMatrix) -> f64 {
        let c = &(x * &self.structure.v) - &(&self.structure.v * x);
        c.frob_norm()
    }

    /// Adapted blocks of a member (or algebra element), with the off-block
    /// residual folded into a validation gate.
    fn blocks_of(&self, x: &CMatrix, what: &str) -> Result<Vec<CMatrix>> {
        let (parts, residual) = self.structure.extract(x)?;
        if residual > self.scale() * x.frob_norm().max(1.0) {
            return Err(Error::validation(format!(
                "{what} does not respect the eigenspaces of the parameter \
                 (off-block mass {residual:.3e})"
            )));
        }
        Ok(parts)
    }
}

impl MatrixGroup for CentralizerGroup {
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
                name: "commutes-with-parameter",
                residual: self.commutation_residual(m),
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
                name: "commutes-with-parameter",
                residual: self.commutation_residual(x),
                tolerance: scale,
            },
        ]))
    }

    fn haar_sample(&self, rng: &mut SplitMix64) -> CMatrix {
        let blocks: Vec<CMatrix> = self
            .structure
            .block_sizes()
            .iter()
            .map(|&s| haar_unitary(s, rng))
            .collect();
        self.structure.assemble(&blocks).expect("block sizes match the structure")
    }

    fn algebra_sample(&self, rng: &mut SplitMix64) -> CMatrix {
        let blocks: Vec<CMatrix> = self
            .structure
            .block_sizes()
            .iter()
            .map(|&s| skew_hermitian_sample(s, rng))
            .collect();
        self.structure.assemble(&blocks).expect("block sizes match the structure")
    }

    fn plog(&self, m: &CMatrix) -> Result<PlogElement> {
        ensure_member(&self.contains(m)?, "logarithm target")?;
        let parts = self.blocks_of(m, "logarithm target")?;
        let logs: Vec<CMatrix> = parts
            .iter()
            .map(|p| Ok(unitary_block_log(p, &self.tols)?.log_matrix()))
            .collect::<Result<_>>()?;
        let log = self.structure.assemble(&logs)?;
        Ok(PlogElement { log, group: self.spec.clone(), target: m.clone() })
    }

    fn torus_plogs(&self, m: &CMatrix) -> Result<TorusLogSet> {
        ensure_member(&self.contains(m)?, "logarithm target")?;
        let parts = self.blocks_of(m, "logarithm target")?;
        let blocks: Vec<_> = parts
            .iter()
            .map(|p| unitary_block_log(p, &self.tols))
            .collect::<Result<Vec<_>>>()?;
        let zetas: Vec<usize> = blocks.iter().map(|b| b.pi_count(self.tols.angle)).collect();
        let total: usize = zetas.iter().sum();
        check_enumeration_guard(total)?;
        let mut representatives = Vec::with_capacity(1 << total);
        for mask in 0..(1u64 << total) {
            let flips = split_mask(mask, &zetas);
            let logs: Vec<CMatrix> = blocks
                .iter()
                .zip(&flips)
                .map(|(b, f)| b.log_with_flips(f))
                .collect();
            representatives.push(self.structure.assemble(&logs)?);
        }
        let frames: Vec<&CMatrix> = blocks.iter().map(|b| &b.basis).collect();
        let torus_basis = &self.structure.r * &CMatrix::direct_sum(&frames);
        Ok(TorusLogSet { representatives, torus_basis })
    }

    fn plog_structure(&self, m: &CMatrix) -> Result<PlogStructure> {
        ensure_member(&self.contains(m)?, "logarithm target")?;
        let parts = self.blocks_of(m, "logarithm target")?;
        let mut zetas = Vec::with_capacity(parts.len());
        for p in &parts {
            let ue = crate::eig::unitary_eig_with(p, &self.tols)?;
            zetas.push(ue.neg_one_multiplicity(self.tols.angle));
        }
        Ok(product_census(&zetas, minimal_log_norm(m, &self.tols)?))
    }

    fn component_of(&self, m: &CMatrix, l: &CMatrix) -> Result<Vec<usize>> {
        ensure_member(&self.contains(m)?, "logarithm target")?;
        ensure_member(&self.algebra_contains(l)?, "logarithm")?;
        require_log_pair(l, m)?;
        let parts_m = self.blocks_of(m, "logarithm target")?;
        let parts_l = self.blocks_of(l, "logarithm")?;
        let mut index = Vec::with_capacity(parts_m.len());
        for (b, (pm, pl)) in parts_m.iter().zip(&parts_l).enumerate() {
            let ue = crate::eig::unitary_eig_with(pm, &self.tols)?;
            let neg: Vec<Vec<Complex64>> = ue
                .angles
                .iter()
                .enumerate()
                .filter(|(_, &a)| (a - PI).abs() <= self.tols.angle)
                .map(|(j, _)| ue.basis.col(j))
                .collect();
            index.push(pi_branch_count(&neg, pl, &format!("factor {b}"))?);
        }
        Ok(index)
    }

    fn stabilizer_sample(&self, m: &CMatrix, rng: &mut SplitMix64) -> Result<CMatrix> {
        ensure_member(&self.contains(m)?, "stabilized matrix")?;
        let parts = self.blocks_of(m, "stabilized matrix")?;
        let mut ks = Vec::with_capacity(parts.len());
        for p in &parts {
            let nested = CentralizerStructure::with_tolerances(p, &self.tols)?;
            let blocks: Vec<CMatrix> =
                nested.block_sizes().iter().map(|&s| haar_unitary(s, rng)).collect();
            ks.push(nested.assemble(&blocks)?);
        }
        self.structure.assemble(&ks)
    }

    fn stabilizer_algebra_sample(&self, m: &CMatrix, rng: &mut SplitMix64) -> Result<CMatrix> {
        ensure_member(&self.contains(m)?, "stabilized matrix")?;
        let parts = self.blocks_of(m, "stabilized matrix")?;
        let mut ws = Vec::with_capacity(parts.len());
        for p in &parts {
            let nested = CentralizerStructure::with_tolerances(p, &self.tols)?;
            let blocks: Vec<CMatrix> = nested
                .block_sizes()
                .iter()
                .map(|&s| skew_hermitian_sample(s, rng))
                .collect();
            ws.push(nested.assemble(&blocks)?);
        }
        self.structure.assemble(&ws)
    }

    fn diameter(&self) -> f64 {
        (self.n() as f64).sqrt() * PI
    }
}
