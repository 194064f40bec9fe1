//! Frobenius-metric geometry on the catalog groups.
//!
//! With the bi-invariant metric `⟨A, B⟩ = Re tr(A B*)`, the geodesics of
//! every SVD-closed subgroup `G ⊆ U_n` are the translated one-parameter
//! subgroups `γ(t) = P exp(tX)` with `X` in the Lie algebra. The distance
//! between members is read off the eigenvalue angles of `P₀* P₁`, and the
//! minimizing segments from `P₀` to `P₁` correspond exactly to the
//! generalized principal logarithms of `P₀* P₁` — so the geometry of the
//! minimizing set (component count, dimensions) is the logarithm-set
//! structure computed by the plog engine.
//!
//! A geodesic that is not length-minimizing can be much longer than the
//! distance between its endpoints:
//!
//! ```
//! use num_complex::Complex64;
//! use std::f64::consts::PI;
//! use ulog::geodesy::{distance, geodesic_point, Geodesic};
//! use ulog::group::parse_group;
//! use ulog::CMatrix;
//!
//! let g = parse_group("unitary:2").unwrap();
//! let curve = Geodesic::new(
//!     CMatrix::identity(2),
//!     CMatrix::from_diag(&[Complex64::new(0.0, PI), Complex64::new(0.0, 3.0 * PI)]),
//! );
//! let end = geodesic_point(&curve, 1.0).unwrap();
//! assert!(CMatrix::dist(&end, &CMatrix::identity(2).scale(-1.0)) < 1e-12);
//! // This curve reaches −I with length √10·π, yet d(I, −I) = √2·π.
//! assert!((curve.length - PI * 10.0f64.sqrt()).abs() < 1e-12);
//! let d = distance(g.as_ref(), &CMatrix::identity(2), &end).unwrap();
//! assert!((d - PI * 2.0f64.sqrt()).abs() < 1e-12);
//! ```

use std::f64::consts::PI;

use serde::Serialize;

use crate::cmatrix::CMatrix;
use crate::error::Result;
use crate::expm::mat_exp_skew;
use crate::group::{ensure_member, MatrixGroup};
use crate::plog::{eigen_radius, minimal_log_norm, PlogStructure};
use crate::tol;

/// The curve `t ↦ base · exp(t · velocity)` with its Frobenius length over
/// the unit parameter interval.
#[derive(Debug, Clone, Serialize)]
pub struct Geodesic {
    pub base: CMatrix,
    pub velocity: CMatrix,
    pub length: f64,
}

impl Geodesic {
    pub fn new(base: CMatrix, velocity: CMatrix) -> Geodesic {
        let length = velocity.frob_norm();
        Geodesic { base, velocity, length }
    }
}

/// Evaluate the geodesic at parameter `t`.
pub fn geodesic_point(g: &Geodesic, t: f64) -> Result<CMatrix> {
    Ok(&g.base * &mat_exp_skew(&g.velocity.scale(t))?)
}

/// Geodesic distance `d(P₀, P₁) = √(Σ θ_j²)` over the eigenvalue angles
/// `e^{iθ_j}` of `P₀* P₁`, each taken in `(−π, π]`.
pub fn distance(group: &dyn MatrixGroup, p0: &CMatrix, p1: &CMatrix) -> Result<f64> {
    ensure_member(&group.contains(p0)?, "first endpoint")?;
    ensure_member(&group.contains(p1)?, "second endpoint")?;
    let delta = &p0.adjoint() * p1;
    minimal_log_norm(&delta, group.tolerances())
}

/// The set of minimizing geodesics from a base point to a target, carried
/// by the logarithm set of `Δ = P₀* P₁`.
#[derive(Debug, Clone)]
pub struct GeodesicFamily {
    pub base: CMatrix,
    /// `P₀* P₁`, whose logarithm set indexes the family.
    pub delta: CMatrix,
    /// Component census of the family (count, factors, dimensions).
    pub structure: PlogStructure,
    canonical_log: CMatrix,
}

impl GeodesicFamily {
    /// The member through the canonical principal logarithm.
    pub fn canonical(&self) -> Geodesic {
        Geodesic::new(self.base.clone(), self.canonical_log.clone())
    }

    /// Deterministic sample of minimizing geodesics in the canonical
    /// logarithm's component; all have length equal to the distance.
    pub fn sample(
        &self,
        group: &dyn MatrixGroup,
        seed: u64,
        count: usize,
    ) -> Result<Vec<Geodesic>> {
        let logs = group.orbit_sample(&self.delta, &self.canonical_log, seed, count)?;
        Ok(logs
            .into_iter()
            .map(|l| Geodesic::new(self.base.clone(), l))
            .collect())
    }
}

/// Enumerate the minimizing geodesics from `p0` to `p1`: their census and a
/// deterministic sampler.
pub fn minimizing_geodesics(
    group: &dyn MatrixGroup,
    p0: &CMatrix,
    p1: &CMatrix,
) -> Result<GeodesicFamily> {
    ensure_member(&group.contains(p0)?, "first endpoint")?;
    ensure_member(&group.contains(p1)?, "second endpoint")?;
    let delta = &p0.adjoint() * p1;
    let structure = group.plog_structure(&delta)?;
    let canonical_log = group.plog(&delta)?.log;
    Ok(GeodesicFamily { base: p0.clone(), delta, structure, canonical_log })
}

/// Whether the geodesic `t ↦ P₀ exp(tX)` is length-minimizing between its
/// endpoints on `[0, 1]`: true exactly when the spectrum of `X` stays in
/// the closed branch strip.
pub fn is_minimizing(group: &dyn MatrixGroup, p0: &CMatrix, x: &CMatrix) -> Result<bool> {
    ensure_member(&group.contains(p0)?, "geodesic base")?;
    ensure_member(&group.algebra_contains(x)?, "geodesic velocity")?;
    Ok(eigen_radius(x)? <= PI + tol::PLOG_EIGEN_SLACK)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::parse_group;
    use num_complex::Complex64;

    #[test]
    fn distance_examples() {
        let g = parse_group("unitary:4").unwrap();
        let i4 = CMatrix::identity(4);
        let m = i4.scale(-1.0);
        let d = distance(g.as_ref(), &i4, &m).unwrap();
        assert!((d - 2.0 * PI).abs() < 1e-12);
        assert_eq!(distance(g.as_ref(), &m, &m).unwrap(), 0.0);

        let so3 = parse_group("special-orthogonal:3").unwrap();
        let refl = CMatrix::from_diag(&[
            Complex64::new(1.0, 0.0),
            Complex64::new(-1.0, 0.0),
            Complex64::new(-1.0, 0.0),
        ]);
        let d = distance(so3.as_ref(), &CMatrix::identity(3), &refl).unwrap();
        assert!((d - PI * 2.0f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn distance_requires_membership() {
        let g = parse_group("special-orthogonal:2").unwrap();
        let bad = CMatrix::from_diag(&[
            Complex64::from_polar(1.0, 0.3),
            Complex64::from_polar(1.0, 0.3),
        ]);
        assert!(distance(g.as_ref(), &CMatrix::identity(2), &bad).is_err());
    }

    #[test]
    fn minimizing_family_reaches_the_target() {
        let g = parse_group("unitary:2").unwrap();
        let i2 = CMatrix::identity(2);
        let m = i2.scale(-1.0);
        let fam = minimizing_geodesics(g.as_ref(), &i2, &m).unwrap();
        assert_eq!(fam.structure.count, 3);
        let d = distance(g.as_ref(), &i2, &m).unwrap();
        for geo in fam.sample(g.as_ref(), 11, 6).unwrap() {
            assert!((geo.length - d).abs() < 1e-9);
            let end = geodesic_point(&geo, 1.0).unwrap();
            assert!(CMatrix::dist(&end, &m) < 1e-9);
        }
        // Degenerate family: coinciding endpoints give the zero geodesic.
        let trivial = minimizing_geodesics(g.as_ref(), &m, &m).unwrap();
        assert_eq!(trivial.structure.count, 1);
        assert_eq!(trivial.canonical().length, 0.0);
    }

    #[test]
    fn minimality_is_the_branch_strip_condition() {
        let g = parse_group("unitary:2").unwrap();
        let i2 = CMatrix::identity(2);
        let ok = CMatrix::from_diag(&[Complex64::new(0.0, PI), Complex64::new(0.0, -PI)]);
        assert!(is_minimizing(g.as_ref(), &i2, &ok).unwrap());
        assert!(is_minimizing(g.as_ref(), &i2, &CMatrix::zeros(2)).unwrap());
        let long = CMatrix::from_diag(&[
            Complex64::new(0.0, PI),
            Complex64::new(0.0, 3.0 * PI),
        ]);
        assert!(!is_minimizing(g.as_ref(), &i2, &long).unwrap());
        // A Hermitian velocity is rejected, not just flagged.
        assert!(is_minimizing(g.as_ref(), &i2, &CMatrix::identity(2)).is_err());
    }

    #[test]
    fn geodesic_points_stay_in_the_group() {
        let g = parse_group("compact-symplectic:1").unwrap();
        let mut rng = crate::rng::SplitMix64::new(8);
        let m = g.haar_sample(&mut rng);
        let fam = minimizing_geodesics(g.as_ref(), &CMatrix::identity(2), &m).unwrap();
        let geo = fam.canonical();
        for k in 0..=4 {
            let p = geodesic_point(&geo, k as f64 / 4.0).unwrap();
            assert!(g.contains(&p).unwrap().ok);
        }
        let end = geodesic_point(&geo, 1.0).unwrap();
        assert!(CMatrix::dist(&end, &m) < 1e-9);
    }
}
