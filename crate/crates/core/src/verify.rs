//! Named invariant suites over randomized inputs.
//!
//! Each suite draws deterministic samples from a group, measures the worst
//! violation of a family of invariants, and reports one pass/fail line per
//! invariant. Reports are reproducible: the same group, sample count, and
//! seed always produce the same bytes.

use std::f64::consts::PI;

use serde::Serialize;

use crate::canonical::{omega_blocks, omega_n, shuffle_permutation};
use crate::cmatrix::CMatrix;
use crate::error::{Error, Result};
use crate::expm::mat_exp_skew;
use crate::geodesy::distance;
use crate::group::{haar, MatrixGroup, Membership};
use crate::eig::unitary_eig_with;
use crate::embed::{complexify, decomplexify, quaternion_embed, quaternion_extract};
use crate::plog::{eigen_radius, svd_reduce_log};
use crate::rng::SplitMix64;
use crate::svd::{svd_decompose, verify_svd_system};
use crate::tol;

/// The suites accepted by [`run_suite`].
pub const SUITE_NAMES: &[&str] = &[
    "svd-closure",
    "plog-minimality",
    "metric-axioms",
    "component-census",
    "embeddings",
];

/// One invariant line: the worst residual observed across all samples and
/// the bound it must stay under.
#[derive(Debug, Clone, Serialize)]
pub struct CheckLine {
    pub name: &'static str,
    pub pass: bool,
    pub worst: f64,
    pub tolerance: f64,
}

impl CheckLine {
    fn new(name: &'static str, worst: f64, tolerance: f64) -> CheckLine {
        CheckLine { name, pass: worst <= tolerance, worst, tolerance }
    }
}

/// Outcome of one suite run.
#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub group: String,
    pub samples: usize,
    pub seed: u64,
    pub passed: bool,
    pub checks: Vec<CheckLine>,
}

impl SuiteReport {
    /// Human-readable pass/fail table.
    pub fn table(&self) -> String {
        let mut out = format!(
            "suite {} on {} ({} samples, seed {})\n",
            self.suite, self.group, self.samples, self.seed
        );
        for c in &self.checks {
            out.push_str(&format!(
                "  {} {:<28} worst {:>12.4e}  tol {:>9.1e}\n",
                if c.pass { "PASS" } else { "FAIL" },
                c.name,
                c.worst,
                c.tolerance
            ));
        }
        out.push_str(&format!(
            "overall: {}\n",
            if self.passed { "PASS" } else { "FAIL" }
        ));
        out
    }
}

/// Run the named suite against `group` with `samples` deterministic trials.
pub fn run_suite(
    group: &dyn MatrixGroup,
    suite: &str,
    samples: usize,
    seed: u64,
) -> Result<SuiteReport> {
    let checks = match suite {
        "svd-closure" => suite_svd_closure(group, samples, seed)?,
        "plog-minimality" => suite_plog_minimality(group, samples, seed)?,
        "metric-axioms" => suite_metric_axioms(group, samples, seed)?,
        "component-census" => suite_component_census(group, samples, seed)?,
        "embeddings" => suite_embeddings(samples, seed)?,
        other => {
            return Err(Error::validation(format!(
                "unknown verification suite '{other}'; available: {}",
                SUITE_NAMES.join(", ")
            )))
        }
    };
    let passed = checks.iter().all(|c| c.pass);
    Ok(SuiteReport {
        suite: suite.to_string(),
        group: group.label().to_string(),
        samples,
        seed,
        passed,
        checks,
    })
}

/// Largest `residual / tolerance` ratio among the individual checks of a
/// membership report; a value below 1 means every check passed.
fn membership_ratio(mem: &Membership) -> f64 {
    mem.checks
        .iter()
        .map(|c| c.residual / c.tolerance.max(f64::MIN_POSITIVE))
        .fold(0.0, f64::max)
}

/// Real dimension of the span of a set of matrices, each read as a real
/// vector of interleaved components. Gram-Schmidt with two passes; inputs
/// with negligible residual against the accepted basis do not count.
pub fn real_span_dimension(mats: &[CMatrix], threshold: f64) -> usize {
    let mut basis: Vec<Vec<f64>> = Vec::new();
    for m in mats {
        let norm = m.frob_norm();
        if norm < 1e-12 {
            continue;
        }
        let n = m.n();
        let mut v = Vec::with_capacity(2 * n * n);
        for i in 0..n {
            for j in 0..n {
                let z = m.at(i, j);
                v.push(z.re / norm);
                v.push(z.im / norm);
            }
        }
        for _ in 0..2 {
            for b in &basis {
                let dot: f64 = b.iter().zip(&v).map(|(x, y)| x * y).sum();
                for (x, y) in v.iter_mut().zip(b) {
                    *x -= dot * y;
                }
            }
        }
        let res: f64 = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if res > threshold {
            for x in &mut v {
                *x /= res;
            }
            basis.push(v);
        }
    }
    basis.len()
}

fn commutator(a: &CMatrix, b: &CMatrix) -> CMatrix {
    &(a * b) - &(b * a)
}

fn suite_svd_closure(
    group: &dyn MatrixGroup,
    samples: usize,
    seed: u64,
) -> Result<Vec<CheckLine>> {
    let root = SplitMix64::new(seed);
    let mut axioms = 0.0f64;
    let mut recon = 0.0f64;
    let mut member = 0.0f64;
    let mut reduce = 0.0f64;
    for i in 0..samples {
        let mut rng = root.split_off(i as u64);
        let x = group.algebra_sample(&mut rng);
        let sys = svd_decompose(&x)?;
        axioms = axioms.max(verify_svd_system(&sys).max_residual);
        let scale = x.frob_norm().max(1.0);
        recon = recon.max(CMatrix::dist(&sys.reconstruct(), &x) / scale);
        for comp in &sys.components {
            member = member.max(membership_ratio(&group.algebra_contains(comp)?));
        }
        let reduced = svd_reduce_log(group, &x)?;
        let n = x.n() as f64;
        reduce = reduce.max(
            CMatrix::dist(&mat_exp_skew(&reduced.log)?, &reduced.target) / n.sqrt(),
        );
    }
    Ok(vec![
        CheckLine::new("svd-axioms", axioms, tol::SVD_AXIOM_TOL),
        CheckLine::new("reconstruction", recon, tol::RECON_REL_TOL),
        CheckLine::new("components-in-algebra", member, 1.0),
        CheckLine::new("reduction-exp", reduce, tol::RECON_REL_TOL),
    ])
}

fn suite_plog_minimality(
    group: &dyn MatrixGroup,
    samples: usize,
    seed: u64,
) -> Result<Vec<CheckLine>> {
    let root = SplitMix64::new(seed);
    let mut exp_res = 0.0f64;
    let mut radius_excess = 0.0f64;
    let mut algebra = 0.0f64;
    let mut norm_gap = 0.0f64;
    let mut shift_gain = 0.0f64;
    for i in 0..samples {
        let mut rng = root.split_off(i as u64);
        let m = group.haar_sample(&mut rng);
        let e = group.plog(&m)?;
        let n = m.n() as f64;
        exp_res = exp_res.max(CMatrix::dist(&mat_exp_skew(&e.log)?, &m) / n.sqrt());
        radius_excess = radius_excess.max((eigen_radius(&e.log)? - PI).max(0.0));
        algebra = algebra.max(membership_ratio(&group.algebra_contains(&e.log)?));
        let angles = unitary_eig_with(&m, group.tolerances())?.angles;
        let base_sq: f64 = angles.iter().map(|t| t * t).sum();
        let l_norm = e.log.frob_norm();
        norm_gap = norm_gap.max((l_norm - base_sq.sqrt()).abs());
        // No branch shift of any single eigenvalue angle may beat the norm.
        for theta in &angles {
            for k in [-2i32, -1, 1, 2] {
                let shifted = theta + 2.0 * PI * f64::from(k);
                let alt = (base_sq - theta * theta + shifted * shifted).sqrt();
                shift_gain = shift_gain.max(l_norm - alt);
            }
        }
    }
    Ok(vec![
        CheckLine::new("exp-reconstruction", exp_res, tol::RECON_REL_TOL),
        CheckLine::new("branch-strip", radius_excess, tol::PLOG_EIGEN_SLACK),
        CheckLine::new("velocity-in-algebra", algebra, 1.0),
        CheckLine::new("norm-formula", norm_gap, 1e-9),
        CheckLine::new("no-shorter-branch", shift_gain, 1e-9),
    ])
}

fn suite_metric_axioms(
    group: &dyn MatrixGroup,
    samples: usize,
    seed: u64,
) -> Result<Vec<CheckLine>> {
    let root = SplitMix64::new(seed);
    let mut symmetry = 0.0f64;
    let mut separation = 0.0f64;
    let mut triangle = 0.0f64;
    let mut invariance = 0.0f64;
    let mut bound = 0.0f64;
    for i in 0..samples {
        let mut rng = root.split_off(i as u64);
        let p = group.haar_sample(&mut rng);
        let q = group.haar_sample(&mut rng);
        let r = group.haar_sample(&mut rng);
        let k = group.haar_sample(&mut rng);
        let dpq = distance(group, &p, &q)?;
        symmetry = symmetry.max((dpq - distance(group, &q, &p)?).abs());
        separation = separation.max(distance(group, &p, &p)?);
        let excess = distance(group, &p, &r)? - dpq - distance(group, &q, &r)?;
        triangle = triangle.max(excess.max(0.0));
        let left = distance(group, &(&k * &p), &(&k * &q))?;
        let right = distance(group, &(&p * &k), &(&q * &k))?;
        invariance = invariance.max((left - dpq).abs().max((right - dpq).abs()));
        bound = bound.max((dpq - group.diameter()).max(0.0));
    }
    Ok(vec![
        CheckLine::new("symmetry", symmetry, 1e-10),
        CheckLine::new("separation", separation, 1e-9),
        CheckLine::new("triangle", triangle, 1e-8),
        CheckLine::new("bi-invariance", invariance, 1e-9),
        CheckLine::new("diameter-bound", bound, 1e-8),
    ])
}

fn suite_component_census(
    group: &dyn MatrixGroup,
    samples: usize,
    seed: u64,
) -> Result<Vec<CheckLine>> {
    let root = SplitMix64::new(seed);
    let mut norm_gap = 0.0f64;
    let mut exp_res = 0.0f64;
    let mut canonical_mismatch = 0.0f64;
    let mut count_gap = 0.0f64;
    let mut rank_gap = 0.0f64;
    for i in 0..samples {
        let mut rng = root.split_off(i as u64);
        // Scale a random velocity so its spectrum touches the branch
        // boundary: the exponential then has eigenvalue -1 and the
        // logarithm set acquires several components.
        let x = group.algebra_sample(&mut rng);
        let x = x.scale(PI / eigen_radius(&x)?);
        let m = mat_exp_skew(&x)?;
        let canonical = group.plog(&m)?;
        let structure = group.plog_structure(&m)?;
        let torus = group.torus_plogs(&m)?;
        let n = m.n() as f64;

        let mut indices: Vec<Vec<usize>> = Vec::new();
        for (pos, rep) in torus.representatives.iter().enumerate() {
            norm_gap = norm_gap.max((rep.frob_norm() - structure.minimal_norm).abs());
            exp_res = exp_res.max(CMatrix::dist(&mat_exp_skew(rep)?, &m) / n.sqrt());
            let idx = group.component_of(&m, rep)?;
            if pos == 0 {
                // The flip-free representative is the canonical logarithm.
                let own = group.component_of(&m, &canonical.log)?;
                if own != idx {
                    canonical_mismatch += 1.0;
                }
            }
            if !indices.contains(&idx) {
                indices.push(idx);
            }
        }
        count_gap = count_gap.max((indices.len() as f64 - structure.count as f64).abs());

        // Tangent rank: stabilizer directions commuted against a component
        // representative span exactly that component's tangent space.
        for idx in &indices {
            let rep = torus
                .representatives
                .iter()
                .position(|r| &group.component_of(&m, r).unwrap_or_default() == idx);
            let Some(rep) = rep else { continue };
            let rep = &torus.representatives[rep];
            let dim = structure
                .components
                .iter()
                .find(|c| &c.index == idx)
                .map(|c| c.dim)
                .unwrap_or(0);
            let mut dirs = Vec::with_capacity(dim + 6);
            for _ in 0..dim + 6 {
                let w = group.stabilizer_algebra_sample(&m, &mut rng)?;
                dirs.push(commutator(&w, rep));
            }
            let rank = real_span_dimension(&dirs, tol::PROJECTED_RANK_TOL);
            rank_gap = rank_gap.max((rank as f64 - dim as f64).abs());
        }
    }
    Ok(vec![
        CheckLine::new("representative-norms", norm_gap, 1e-9),
        CheckLine::new("representative-exp", exp_res, tol::RECON_REL_TOL),
        CheckLine::new("canonical-component", canonical_mismatch, 0.5),
        CheckLine::new("census-count", count_gap, 0.5),
        CheckLine::new("tangent-rank", rank_gap, 0.5),
    ])
}

fn suite_embeddings(samples: usize, seed: u64) -> Result<Vec<CheckLine>> {
    let root = SplitMix64::new(seed);
    let mut complex_rt = 0.0f64;
    let mut exp_lift = 0.0f64;
    let mut quat_rt = 0.0f64;
    let mut shuffle = 0.0f64;
    for i in 0..samples {
        let mut rng = root.split_off(i as u64);
        let k = 1 + i % 4;

        let u = haar::haar_unitary(k, &mut rng);
        let lifted = decomplexify(&u);
        let (back, res) = complexify(&lifted)?;
        complex_rt = complex_rt.max(res.max(CMatrix::dist(&back, &u)));

        let x = haar::skew_hermitian_sample(k, &mut rng);
        exp_lift = exp_lift.max(CMatrix::dist(
            &mat_exp_skew(&decomplexify(&x))?,
            &decomplexify(&mat_exp_skew(&x)?),
        ));

        let q = haar::haar_quaternion_unitary(k, &mut rng);
        let e = quaternion_embed(&q);
        let (qback, qres) = quaternion_extract(&e)?;
        quat_rt = quat_rt.max(qres.max(CMatrix::dist(&quaternion_embed(&qback), &e)));

        let b = shuffle_permutation(k);
        shuffle = shuffle.max(CMatrix::dist(
            &(&(&b.transpose() * &omega_n(k)) * &b),
            &omega_blocks(k),
        ));
    }
    Ok(vec![
        CheckLine::new("complexify-roundtrip", complex_rt, 1e-12),
        CheckLine::new("exp-lifting", exp_lift, 1e-12),
        CheckLine::new("quaternion-roundtrip", quat_rt, 1e-12),
        CheckLine::new("interleave-shuffle", shuffle, 0.0),
    ])
}
