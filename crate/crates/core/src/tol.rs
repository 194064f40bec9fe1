//! Central numerical tolerances and iteration limits.
//!
//! Every threshold that decides convergence, clustering, or acceptance lives
//! here so that library code, the CLI, and the test suites agree on the same
//! numbers.

/// Jacobi eigensolver convergence: the off-diagonal Frobenius mass must drop
/// below this factor times the Frobenius norm of the input.
pub const JACOBI_REL_TOL: f64 = 1e-13;

/// Hard cap on Jacobi sweeps. Failure to converge is reported as an error,
/// never silently accepted.
pub const JACOBI_MAX_SWEEPS: usize = 60;

/// Unitarity acceptance: `‖M M* − I‖_F ≤ UNITARY_REL_TOL · √n`.
pub const UNITARY_REL_TOL: f64 = 1e-8;

/// Relative acceptance for Hermitian / skew-Hermitian / real-matrix input
/// validation, scaled by `max(1, ‖A‖_F)`.
pub const SYMMETRY_REL_TOL: f64 = 1e-8;

/// Eigenvalue angles closer than this are treated as one cluster, and angles
/// within this of π count toward the (−1)-eigenspace.
pub const ANGLE_CLUSTER_TOL: f64 = 1e-7;

/// Angles this close to the classification boundaries 0, π/2, π of a real
/// orthogonal spectrum are snapped onto them; angles in the band just outside
/// (up to [`ANGLE_AMBIGUITY_FACTOR`] times the tolerance) are refused as
/// unclassifiable rather than silently rounded.
pub const ANGLE_AMBIGUITY_FACTOR: f64 = 10.0;

/// Repeated singular values are grouped with this relative tolerance
/// (times the largest singular value).
pub const SV_CLUSTER_REL_TOL: f64 = 1e-9;

/// Required separation between singular-value clusters, as a multiple of the
/// grouping tolerance. Anything closer is reported as ambiguous.
pub const SV_GAP_FACTOR: f64 = 10.0;

/// Residual acceptance for the SVD-system axioms
/// (`A_h* A_j = A_h A_j* = 0`, `A_j A_j* A_j = A_j`).
pub const SVD_AXIOM_TOL: f64 = 1e-8;

/// Slack on the closed eigenvalue bound `|Im λ| ≤ π` when validating
/// logarithm candidates.
pub const PLOG_EIGEN_SLACK: f64 = 1e-9;

/// Residual acceptance for `exp(L) = M` and other reconstruction checks,
/// scaled by `√n`.
pub const RECON_REL_TOL: f64 = 1e-8;

/// Eigenvalues of a projected logarithm restricted to a (−1)-eigenspace must
/// sit within this of ±π; the +π count is the component multiplicity.
pub const PROJECTED_RANK_TOL: f64 = 1e-6;

/// Enumeration guard: torus representatives are only enumerated while the
/// total (−1)-multiplicity across blocks stays at or below this bound.
pub const TORUS_ENUM_LIMIT: usize = 20;

/// Terms of the scaled Taylor series in the reference matrix exponential are
/// added until they fall below this relative size.
pub const EXP_SERIES_REL_TOL: f64 = 1e-18;

/// Entries smaller than this are skipped when locating the first nonzero
/// component of an eigenvector for the deterministic sign convention.
pub const SIGN_PIVOT_TOL: f64 = 1e-12;

/// Tunable tolerances exposed on the command line. Only the two knobs that
/// make sense to adjust per run are carried here; everything else is fixed.
#[derive(Debug, Clone, Copy)]
pub struct Tolerances {
    /// Relative unitarity acceptance (`--tol-unitary`).
    pub unitary_rel: f64,
    /// Angle clustering width (`--tol-angle`).
    pub angle: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            unitary_rel: UNITARY_REL_TOL,
            angle: ANGLE_CLUSTER_TOL,
        }
    }
}
