//! The group catalog: a runtime registry of SVD-closed subgroups of `U_n`.
//!
//! Every supported family implements the [`MatrixGroup`] strategy trait —
//! membership tests, Haar sampling, principal logarithms, logarithm-set
//! structure, and diameters — and registers under a textual name. Group
//! selection is data-driven: `unitary:4`, `special-orthogonal:5`,
//! `compact-symplectic:2`, `quaternion-unitary:3`, `centralizer:<file>`,
//! `twisted:<file>`. The two file-backed kinds read a JSON matrix (the
//! commuting parameter `V`, or the real orthogonal twist parameter `Q`).
//!
//! Special orthogonal, compact symplectic and quaternion unitary groups are
//! all instances of one twisted family `{M ∈ SU_n : M Q Mᵀ = Q}` with
//! `Q = I`, `Q = Ω_n` (split form) and `Q = Ω^{⊕n}` respectively, and share
//! a single strategy implementation.

mod centralizer;
pub mod haar;
mod twisted;
mod unitary;

pub use centralizer::CentralizerGroup;
pub use twisted::TwistedGroup;
pub use unitary::UnitaryGroup;

use serde::{Deserialize, Serialize};

use crate::cmatrix::CMatrix;
use crate::error::{Error, Result};
use crate::plog::{PlogElement, PlogStructure, TorusLogSet};
use crate::rng::SplitMix64;
use crate::tol::Tolerances;

/// Serializable identity of a group instance.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum GroupSpec {
    Unitary { n: usize },
    SpecialOrthogonal { n: usize },
    CompactSymplectic { n: usize },
    QuaternionUnitary { n: usize },
    Centralizer { v: CMatrix },
    Twisted { q: CMatrix },
}

impl GroupSpec {
    /// Order of the ambient unitary group the instance embeds into.
    pub fn ambient_order(&self) -> usize {
        match self {
            GroupSpec::Unitary { n } | GroupSpec::SpecialOrthogonal { n } => *n,
            GroupSpec::CompactSymplectic { n } | GroupSpec::QuaternionUnitary { n } => 2 * n,
            GroupSpec::Centralizer { v } => v.n(),
            GroupSpec::Twisted { q } => q.n(),
        }
    }
}

/// One membership criterion with its measured residual.
#[derive(Debug, Clone, Serialize)]
pub struct MembershipCheck {
    pub name: &'static str,
    pub residual: f64,
    pub tolerance: f64,
}

/// Outcome of a membership test: every defining relation of the group (or
/// its Lie algebra) with the measured deviation.
#[derive(Debug, Clone, Serialize)]
pub struct Membership {
    pub ok: bool,
    pub residual: f64,
    pub checks: Vec<MembershipCheck>,
}

impl Membership {
    pub fn from_checks(checks: Vec<MembershipCheck>) -> Membership {
        let ok = checks.iter().all(|c| c.residual <= c.tolerance);
        let residual = checks.iter().fold(0.0f64, |a, c| a.max(c.residual));
        Membership { ok, residual, checks }
    }
}

/// Reject non-members with a message naming the worst failed relation.
pub fn ensure_member(mem: &Membership, what: &str) -> Result<()> {
    if mem.ok {
        return Ok(());
    }
    let worst = mem
        .checks
        .iter()
        .filter(|c| c.residual > c.tolerance)
        .max_by(|a, b| {
            (a.residual / a.tolerance)
                .partial_cmp(&(b.residual / b.tolerance))
                .unwrap_or(std::cmp::Ordering::Equal)
        })
        .expect("not ok implies a failed check");
    Err(Error::validation(format!(
        "{what}: check '{}' failed with residual {:.3e} (tolerance {:.3e})",
        worst.name, worst.residual, worst.tolerance
    )))
}

/// Common strategy interface of all supported groups.
///
/// A `MatrixGroup` owns its parameters and tolerances; all operations are
/// deterministic functions of the inputs (sampling is driven by explicit
/// seeds or caller-provided generators).
pub trait MatrixGroup {
    fn spec(&self) -> &GroupSpec;

    /// The selector text the instance was built from (e.g. `unitary:4`).
    fn label(&self) -> &str;

    /// Order of the ambient unitary group.
    fn ambient(&self) -> usize;

    fn tolerances(&self) -> &Tolerances;

    /// Test group membership; `Err` only for malformed input (wrong order,
    /// non-finite entries), residual failures come back as `ok = false`.
    fn contains(&self, m: &CMatrix) -> Result<Membership>;

    /// Test Lie-algebra membership.
    fn algebra_contains(&self, x: &CMatrix) -> Result<Membership>;

    /// Haar-distributed group element.
    fn haar_sample(&self, rng: &mut SplitMix64) -> CMatrix;

    /// Gaussian-distributed Lie algebra element.
    fn algebra_sample(&self, rng: &mut SplitMix64) -> CMatrix;

    /// Canonical generalized principal logarithm of a member.
    fn plog(&self, m: &CMatrix) -> Result<PlogElement>;

    /// All torus-aligned logarithms of a member (one per branch choice at
    /// eigenvalue −1), with the frame in which they are all canonical.
    fn torus_plogs(&self, m: &CMatrix) -> Result<TorusLogSet>;

    /// Symbolic structure of the full logarithm set of a member.
    fn plog_structure(&self, m: &CMatrix) -> Result<PlogStructure>;

    /// Component label of a logarithm `l` of `m` inside the logarithm set;
    /// errors if `l` is not a generalized principal logarithm of `m` in the
    /// group's algebra.
    fn component_of(&self, m: &CMatrix, l: &CMatrix) -> Result<Vec<usize>>;

    /// Haar-like sample of the identity component of the stabilizer
    /// `{K ∈ G : K M K* = M}`.
    fn stabilizer_sample(&self, m: &CMatrix, rng: &mut SplitMix64) -> Result<CMatrix>;

    /// Gaussian sample of the stabilizer's Lie algebra
    /// `{W ∈ 𝔤 : W M = M W}`.
    fn stabilizer_algebra_sample(&self, m: &CMatrix, rng: &mut SplitMix64) -> Result<CMatrix>;

    /// Diameter of the group in the Frobenius geodesic metric.
    fn diameter(&self) -> f64;

    /// Deterministic sample of the connected component of `l` in the
    /// logarithm set of `m`: conjugates of `l` under stabilizer elements.
    fn orbit_sample(
        &self,
        m: &CMatrix,
        l: &CMatrix,
        seed: u64,
        count: usize,
    ) -> Result<Vec<CMatrix>> {
        let root = SplitMix64::new(seed);
        let mut out = Vec::with_capacity(count);
        for i in 0..count {
            let mut rng = root.split_off(i as u64);
            let k = self.stabilizer_sample(m, &mut rng)?;
            out.push(&(&k * l) * &k.adjoint());
        }
        Ok(out)
    }
}

// ── registry ──────────────────────────────────────────────────────────

type BuilderFn = fn(&str, &str, &Tolerances) -> Result<Box<dyn MatrixGroup>>;

/// Name-indexed catalog of group builders. Selection is textual so that
/// configuration files and CLI arguments can both drive it.
pub struct Registry {
    entries: Vec<(&'static str, BuilderFn)>,
}

fn parse_order(arg: &str, family: &str) -> Result<usize> {
    let n: usize = arg.parse().map_err(|_| {
        Error::validation(format!("{family}: order must be a positive integer, got '{arg}'"))
    })?;
    if n == 0 {
        return Err(Error::validation(format!("{family}: order must be at least 1")));
    }
    Ok(n)
}

fn read_matrix_arg(arg: &str, family: &str) -> Result<CMatrix> {
    if arg.is_empty() {
        return Err(Error::validation(format!(
            "{family}: expected a path to a JSON matrix file"
        )));
    }
    CMatrix::read_json_file(arg)
}

impl Registry {
    pub fn standard() -> Registry {
        let entries: Vec<(&'static str, BuilderFn)> = vec![
            ("unitary", |arg, label, tols| {
                let n = parse_order(arg, "unitary")?;
                Ok(Box::new(UnitaryGroup::new(n, label.to_string(), tols.clone())))
            }),
            ("special-orthogonal", |arg, label, tols| {
                let n = parse_order(arg, "special-orthogonal")?;
                Ok(Box::new(TwistedGroup::special_orthogonal(n, label.to_string(), tols)?))
            }),
            ("compact-symplectic", |arg, label, tols| {
                let n = parse_order(arg, "compact-symplectic")?;
                Ok(Box::new(TwistedGroup::compact_symplectic(n, label.to_string(), tols)?))
            }),
            ("quaternion-unitary", |arg, label, tols| {
                let n = parse_order(arg, "quaternion-unitary")?;
                Ok(Box::new(TwistedGroup::quaternion_unitary(n, label.to_string(), tols)?))
            }),
            ("centralizer", |arg, label, tols| {
                let v = read_matrix_arg(arg, "centralizer")?;
                Ok(Box::new(CentralizerGroup::new(v, label.to_string(), tols)?))
            }),
            ("twisted", |arg, label, tols| {
                let q = read_matrix_arg(arg, "twisted")?;
                Ok(Box::new(TwistedGroup::twisted(q, label.to_string(), tols)?))
            }),
        ];
        Registry { entries }
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.iter().map(|(n, _)| *n).collect()
    }

    pub fn build(&self, text: &str) -> Result<Box<dyn MatrixGroup>> {
        self.build_with(text, &Tolerances::default())
    }

    pub fn build_with(&self, text: &str, tols: &Tolerances) -> Result<Box<dyn MatrixGroup>> {
        let (name, arg) = text.split_once(':').ok_or_else(|| {
            Error::validation(format!(
                "group selector '{text}' is missing ':'; expected <family>:<argument>"
            ))
        })?;
        for (key, builder) in &self.entries {
            if *key == name {
                return builder(arg, text, tols);
            }
        }
        Err(Error::validation(format!(
            "unknown group family '{name}'; known families: {}",
            self.names().join(", ")
        )))
    }
}

/// Build a group from the standard registry with default tolerances.
pub fn parse_group(text: &str) -> Result<Box<dyn MatrixGroup>> {
    Registry::standard().build(text)
}

/// Rebuild a group instance from its serialized identity.
pub fn from_spec(spec: &GroupSpec, tols: &Tolerances) -> Result<Box<dyn MatrixGroup>> {
    match spec {
        GroupSpec::Unitary { n } => Ok(Box::new(UnitaryGroup::new(
            *n,
            format!("unitary:{n}"),
            tols.clone(),
        ))),
        GroupSpec::SpecialOrthogonal { n } => Ok(Box::new(TwistedGroup::special_orthogonal(
            *n,
            format!("special-orthogonal:{n}"),
            tols,
        )?)),
        GroupSpec::CompactSymplectic { n } => Ok(Box::new(TwistedGroup::compact_symplectic(
            *n,
            format!("compact-symplectic:{n}"),
            tols,
        )?)),
        GroupSpec::QuaternionUnitary { n } => Ok(Box::new(TwistedGroup::quaternion_unitary(
            *n,
            format!("quaternion-unitary:{n}"),
            tols,
        )?)),
        GroupSpec::Centralizer { v } => Ok(Box::new(CentralizerGroup::new(
            v.clone(),
            format!("centralizer:(order {})", v.n()),
            tols,
        )?)),
        GroupSpec::Twisted { q } => Ok(Box::new(TwistedGroup::twisted(
            q.clone(),
            format!("twisted:(order {})", q.n()),
            tols,
        )?)),
    }
}
