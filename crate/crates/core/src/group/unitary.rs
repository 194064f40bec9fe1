//! The full unitary group `U_n`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::cmatrix::CMatrix;
use crate::error::{Error, Result};
use crate::plog::{
    check_enumeration_guard, minimal_log_norm, pi_branch_count, require_log_pair, split_mask,
    unitary_block_log, unitary_census, PlogElement, PlogStructure, TorusLogSet,
};
use crate::rng::SplitMix64;
use crate::structure::CentralizerStructure;
use crate::tol::Tolerances;

use super::haar::{haar_unitary, skew_hermitian_sample};
use super::{ensure_member, GroupSpec, MatrixGroup, Membership, MembershipCheck};

pub struct UnitaryGroup {
    spec: GroupSpec,
    label: String,
    n: usize,
    tols: Tolerances,
}

impl UnitaryGroup {
    pub fn new(n: usize, label: String, tols: Tolerances) -> Self {
        UnitaryGroup { spec: GroupSpec::Unitary { n }, label, n, tols }
    }

    fn check_shape(&self, m: &CMatrix, what: &str) -> Result<()> {
        if m.n() != self.n {
            return Err(Error::validation(format!(
                "{what} has order {}, but the group lives in U_{}",
                m.n(),
                self.n
            )));
        }
        if !m.is_finite() {
            return Err(Error::validation(format!("{what} has non-finite entries")));
        }
        Ok(())
    }

    fn scale(&self) -> f64 {
        self.tols.unitary_rel * (self.n as f64).sqrt().max(1.0)
    }

    /// Eigenvectors of `m` at eigenvalue −1.
    fn negative_eigenbasis(&self, m: &CMatrix) -> Result<Vec<Vec<Complex64>>> {
        let ue = crate::eig::unitary_eig_with(m, &self.tols)?;
        Ok(ue
            .angles
            .iter()
            .enumerate()
            .filter(|(_, &a)| (a - PI).abs() <= self.tols.angle)
            .map(|(j, _)| ue.basis.col(j))
            .collect())
    }
}

impl MatrixGroup for UnitaryGroup {
    fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    fn label(&self) -> &str {
        &self.label
    }

    fn ambient(&self) -> usize {
        self.n
    }

    fn tolerances(&self) -> &Tolerances {
        &self.tols
    }

    fn contains(&self, m: &CMatrix) -> Result<Membership> {
        self.check_shape(m, "matrix")?;
        Ok(Membership::from_checks(vec![MembershipCheck {
            name: "unitary",
            residual: m.unitary_residual(),
            tolerance: self.scale(),
        }]))
    }

    fn algebra_contains(&self, x: &CMatrix) -> Result<Membership> {
        self.check_shape(x, "matrix")?;
        Ok(Membership::from_checks(vec![MembershipCheck {
            name: "skew-hermitian",
            residual: x.skew_residual(),
            tolerance: self.scale() * x.frob_norm().max(1.0),
        }]))
    }

    fn haar_sample(&self, rng: &mut SplitMix64) -> CMatrix {
        haar_unitary(self.n, rng)
    }

    fn algebra_sample(&self, rng: &mut SplitMix64) -> CMatrix {
        skew_hermitian_sample(self.n, rng)
    }

    fn plog(&self, m: &CMatrix) -> Result<PlogElement> {
        ensure_member(&self.contains(m)?, "logarithm target")?;
        let log = unitary_block_log(m, &self.tols)?.log_matrix();
        Ok(PlogElement { log, group: self.spec.clone(), target: m.clone() })
    }

    fn torus_plogs(&self, m: &CMatrix) -> Result<TorusLogSet> {
        ensure_member(&self.contains(m)?, "logarithm target")?;
        let block = unitary_block_log(m, &self.tols)?;
        let zeta = block.pi_count(self.tols.angle);
        check_enumeration_guard(zeta)?;
        let mut representatives = Vec::with_capacity(1 << zeta);
        for mask in 0..(1u64 << zeta) {
            let flips = &split_mask(mask, &[zeta])[0];
            representatives.push(block.log_with_flips(flips));
        }
        Ok(TorusLogSet { representatives, torus_basis: block.basis })
    }

    fn plog_structure(&self, m: &CMatrix) -> Result<PlogStructure> {
        ensure_member(&self.contains(m)?, "logarithm target")?;
        let block = unitary_block_log(m, &self.tols)?;
        let zeta = block.pi_count(self.tols.angle);
        Ok(unitary_census(zeta, minimal_log_norm(m, &self.tols)?))
    }

    fn component_of(&self, m: &CMatrix, l: &CMatrix) -> Result<Vec<usize>> {
        ensure_member(&self.contains(m)?, "logarithm target")?;
        ensure_member(&self.algebra_contains(l)?, "logarithm")?;
        require_log_pair(l, m)?;
        let neg = self.negative_eigenbasis(m)?;
        Ok(vec![pi_branch_count(&neg, l, "unitary")?])
    }

    fn stabilizer_sample(&self, m: &CMatrix, rng: &mut SplitMix64) -> Result<CMatrix> {
        ensure_member(&self.contains(m)?, "stabilized matrix")?;
        let cs = CentralizerStructure::with_tolerances(m, &self.tols)?;
        let blocks: Vec<CMatrix> =
            cs.block_sizes().iter().map(|&s| haar_unitary(s, rng)).collect();
        cs.assemble(&blocks)
    }

    fn stabilizer_algebra_sample(&self, m: &CMatrix, rng: &mut SplitMix64) -> Result<CMatrix> {
        ensure_member(&self.contains(m)?, "stabilized matrix")?;
        let cs = CentralizerStructure::with_tolerances(m, &self.tols)?;
        let blocks: Vec<CMatrix> =
            cs.block_sizes().iter().map(|&s| skew_hermitian_sample(s, rng)).collect();
        cs.assemble(&blocks)
    }

    fn diameter(&self) -> f64 {
        (self.n as f64).sqrt() * PI
    }
}
