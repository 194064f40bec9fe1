//! Generalized principal logarithms and the geometry of full logarithm sets.
//!
//! For `M` in an SVD-closed subgroup `G ⊆ U_n` with Lie algebra `𝔤`, a
//! *generalized principal 𝔤-logarithm* is `L ∈ 𝔤` with `exp(L) = M` and all
//! eigenvalues inside the closed strip `|Im λ| ≤ π`. Unlike the classical
//! principal logarithm, `M` may have eigenvalue −1; both branches `±iπ` are
//! then admissible, and the set of such logarithms is a disjoint union of
//! finitely many compact manifolds (Grassmannians and the symmetric spaces
//! `SO_{2m}/U_m`, `Sp_μ/U_μ`), one adjoint orbit of the stabilizer of `M`
//! per maximal-torus branch pattern.
//!
//! This module holds the block-level algorithms (unitary, special
//! orthogonal, quaternionic), the torus enumeration, the symbolic component
//! census, and the integer component label of a logarithm.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, PI};

use crate::cmatrix::{cdot, project_off, vnorm, CMatrix};
use crate::eig::{herm_eig, unitary_eig_with};
use crate::error::{Error, Result};
use crate::expm::mat_exp_skew;
use crate::group::{GroupSpec, MatrixGroup, Membership};
use crate::jordan::real_jordan_form_with;
use crate::svd::svd_decompose;
use crate::tol::{self, Tolerances};

// ── result types ──────────────────────────────────────────────────────

/// A generalized principal logarithm together with what it solves.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PlogElement {
    #[serde(rename = "L")]
    pub log: CMatrix,
    pub group: GroupSpec,
    pub target: CMatrix,
}

/// One manifold factor of a logarithm-set component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Factor {
    Grassmannian { k: usize, zeta: usize },
    So2mModUm { m: usize },
    SpmuModUmu { mu: usize },
    Point,
}

impl Factor {
    pub fn dim(&self) -> usize {
        match *self {
            Factor::Grassmannian { k, zeta } => 2 * k * (zeta - k),
            Factor::So2mModUm { m } => m * m - m,
            Factor::SpmuModUmu { mu } => mu * (mu + 1),
            Factor::Point => 0,
        }
    }
}

/// A connected component of the logarithm set, labeled by its branch index.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComponentDescriptor {
    pub index: Vec<usize>,
    pub factors: Vec<Factor>,
    pub dim: usize,
}

fn descriptor(index: Vec<usize>, raw: Vec<Factor>) -> ComponentDescriptor {
    let mut factors: Vec<Factor> = raw.into_iter().filter(|f| f.dim() > 0).collect();
    let dim = factors.iter().map(Factor::dim).sum();
    if factors.is_empty() {
        factors.push(Factor::Point);
    }
    ComponentDescriptor { index, factors, dim }
}

/// The full symbolic description of a logarithm set.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PlogStructure {
    pub count: usize,
    pub minimal_norm: f64,
    pub components: Vec<ComponentDescriptor>,
}

/// All torus-aligned logarithms of a target, plus the frame that carries
/// them to their sparse canonical form.
#[derive(Debug, Clone)]
pub struct TorusLogSet {
    pub representatives: Vec<CMatrix>,
    pub torus_basis: CMatrix,
}

// ── angle helpers ─────────────────────────────────────────────────────

/// Reduce an angle to the branch interval (−π, π].
pub fn wrap_angle(s: f64) -> f64 {
    let two_pi = 2.0 * PI;
    let mut r = s % two_pi;
    if r > PI {
        r -= two_pi;
    } else if r <= -PI {
        r += two_pi;
    }
    r
}

fn is_pi(angle: f64, tol_angle: f64) -> bool {
    (angle - PI).abs() <= tol_angle
}

// ── unitary blocks ────────────────────────────────────────────────────

/// Eigen data of a unitary block prepared for logarithm extraction. Angles
/// are descending in (−π, π] with −1 read as +π, so the flippable branches
/// sit at the front.
#[derive(Debug, Clone)]
pub struct UnitaryBlockLog {
    pub basis: CMatrix,
    pub angles: Vec<f64>,
}

impl UnitaryBlockLog {
    pub fn pi_count(&self, tol_angle: f64) -> usize {
        self.angles.iter().filter(|&&a| is_pi(a, tol_angle)).count()
    }

    /// The logarithm with sign flips applied to the first `flips.len()`
    /// angles (the +π branches); `true` selects −iπ.
    pub fn log_with_flips(&self, flips: &[bool]) -> CMatrix {
        let values: Vec<Complex64> = self
            .angles
            .iter()
            .enumerate()
            .map(|(j, &a)| {
                let sign = if flips.get(j).copied().unwrap_or(false) { -1.0 } else { 1.0 };
                Complex64::new(0.0, sign * a)
            })
            .collect();
        CMatrix::from_spectral(&values, &self.basis.columns())
    }

    /// Canonical choice: every −1 branch kept at +iπ.
    pub fn log_matrix(&self) -> CMatrix {
        self.log_with_flips(&[])
    }
}

pub fn unitary_block_log(m: &CMatrix, tols: &Tolerances) -> Result<UnitaryBlockLog> {
    let ue = unitary_eig_with(m, tols)?;
    Ok(UnitaryBlockLog { basis: ue.basis, angles: ue.angles })
}

/// Canonical generalized principal logarithm of a unitary matrix.
pub fn plog_of_unitary(m: &CMatrix, tols: &Tolerances) -> Result<CMatrix> {
    Ok(unitary_block_log(m, tols)?.log_matrix())
}

// ── special orthogonal blocks ─────────────────────────────────────────

/// Plane-decomposed logarithm data of a special orthogonal matrix: an
/// orthogonal frame whose column pairs carry rotation planes. The −1
/// eigenspace is organized into `pi_planes` two-planes on which every
/// logarithm acts as `±πΩ`.
#[derive(Debug, Clone)]
pub struct SoBlockLog {
    pub frame: CMatrix,
    pub zeros: usize,
    pub pi_planes: usize,
    /// Signed rotation angles of the remaining planes, each in (−π, π)∖{0}.
    pub plane_angles: Vec<f64>,
}

impl SoBlockLog {
    pub fn order(&self) -> usize {
        self.frame.n()
    }

    /// Logarithm with sign flips on the π-planes (`true` selects −πΩ).
    pub fn log_with_flips(&self, flips: &[bool]) -> CMatrix {
        let n = self.order();
        let mut lam = CMatrix::zeros(n);
        let mut off = self.zeros;
        for j in 0..self.pi_planes {
            let sign = if flips.get(j).copied().unwrap_or(false) { -1.0 } else { 1.0 };
            lam.set(off, off + 1, Complex64::new(-sign * PI, 0.0));
            lam.set(off + 1, off, Complex64::new(sign * PI, 0.0));
            off += 2;
        }
        for &theta in &self.plane_angles {
            lam.set(off, off + 1, Complex64::new(-theta, 0.0));
            lam.set(off + 1, off, Complex64::new(theta, 0.0));
            off += 2;
        }
        &(&self.frame * &lam) * &self.frame.transpose()
    }

    pub fn log_matrix(&self) -> CMatrix {
        self.log_with_flips(&[])
    }
}

pub fn so_block_log(s: &CMatrix, tols: &Tolerances) -> Result<SoBlockLog> {
    let form = real_jordan_form_with(s, tols)?;
    if form.q % 2 != 0 {
        return Err(Error::validation(format!(
            "matrix has determinant −1 (eigenvalue −1 of odd multiplicity {}); no logarithm \
             exists in the real skew-symmetric algebra",
            form.q
        )));
    }
    let mut plane_angles = Vec::new();
    for b in &form.blocks {
        for _ in 0..b.mu {
            plane_angles.push(b.phi);
        }
        for _ in 0..b.nu {
            plane_angles.push(b.phi - PI);
        }
    }
    for _ in 0..form.k {
        plane_angles.push(FRAC_PI_2);
    }
    Ok(SoBlockLog {
        frame: form.a.clone(),
        zeros: form.p,
        pi_planes: form.q / 2,
        plane_angles,
    })
}

// ── quaternionic blocks ───────────────────────────────────────────────

/// The antilinear structure map `J(x) = Ω^{⊕k} x̄` whose commutant is the
/// image of the quaternionic matrices.
fn j_map(x: &[Complex64]) -> Vec<Complex64> {
    let k2 = x.len();
    let mut out = vec![Complex64::new(0.0, 0.0); k2];
    for a in 0..k2 / 2 {
        // Ω on the pair (2a, 2a+1): e_{2a} ↦ e_{2a+1}, e_{2a+1} ↦ −e_{2a}.
        out[2 * a + 1] = x[2 * a].conj();
        out[2 * a] = -x[2 * a + 1].conj();
    }
    out
}

#[derive(Debug, Clone)]
pub struct QuatPair {
    pub v: Vec<Complex64>,
    pub w: Vec<Complex64>,
    pub angle: f64,
}

/// Organize a J-invariant orthonormal family into `(v, Jv)` pairs by greedy
/// residual-norm pivoting. Errors when the family has odd size or is not
/// actually J-invariant (a projected vector collapses).
pub fn j_pair_span(
    members: &[Vec<Complex64>],
) -> Result<Vec<(Vec<Complex64>, Vec<Complex64>)>> {
    if members.len() % 2 != 0 {
        return Err(Error::tolerance(
            "quaternionic eigenspace has odd dimension".to_string(),
        ));
    }
    let mut span: Vec<Vec<Complex64>> = Vec::new();
    let mut pairs = Vec::with_capacity(members.len() / 2);
    for _ in 0..members.len() / 2 {
        let mut best: Option<(f64, Vec<Complex64>)> = None;
        for u in members {
            let r = project_off(u, &span);
            let nr = vnorm(&r);
            if best.as_ref().map_or(true, |(bn, _)| nr > *bn) {
                best = Some((nr, r));
            }
        }
        let (norm, mut v) = best.expect("nonempty family");
        if norm < 0.5 {
            return Err(Error::tolerance(
                "failed to pair a quaternionic eigenspace".to_string(),
            ));
        }
        for x in v.iter_mut() {
            *x /= norm;
        }
        let mut w = j_map(&v);
        w = project_off(&w, &span);
        let wproj = cdot(&v, &w);
        for (wi, vi) in w.iter_mut().zip(&v) {
            *wi -= wproj * vi;
        }
        let wn = vnorm(&w);
        if wn < 0.5 {
            return Err(Error::tolerance(
                "failed to pair a quaternionic eigenspace".to_string(),
            ));
        }
        for x in w.iter_mut() {
            *x /= wn;
        }
        span.push(v.clone());
        span.push(w.clone());
        pairs.push((v, w));
    }
    Ok(pairs)
}

/// J-paired eigenstructure of a quaternionic unitary block (the embedded
/// `2k × 2k` complex image). Pairs are ordered by descending angle, so the
/// `π` pairs whose branches can flip come first.
#[derive(Debug, Clone)]
pub struct QuatBlockLog {
    pub order: usize,
    pub pairs: Vec<QuatPair>,
    pub zero_vectors: Vec<Vec<Complex64>>,
}

impl QuatBlockLog {
    pub fn pi_pair_count(&self, tol_angle: f64) -> usize {
        self.pairs.iter().filter(|p| is_pi(p.angle, tol_angle)).count()
    }

    /// Logarithm `Σ ±iθ_a (v_a v_a* − w_a w_a*)`; flips act on the π pairs
    /// (swapping which member of the pair carries +iπ).
    pub fn log_with_flips(&self, flips: &[bool]) -> CMatrix {
        let mut l = CMatrix::zeros(self.order);
        for (a, pair) in self.pairs.iter().enumerate() {
            let sign = if flips.get(a).copied().unwrap_or(false) { -1.0 } else { 1.0 };
            let t = Complex64::new(0.0, sign * pair.angle);
            for i in 0..self.order {
                for j in 0..self.order {
                    let add = t * (pair.v[i] * pair.v[j].conj() - pair.w[i] * pair.w[j].conj());
                    l.add_to(i, j, add);
                }
            }
        }
        l
    }

    pub fn log_matrix(&self) -> CMatrix {
        self.log_with_flips(&[])
    }

    /// Unitary frame with columns `v_1, w_1, v_2, w_2, …` followed by the
    /// fixed vectors; carries the block torus to its diagonal form.
    pub fn torus_frame(&self) -> CMatrix {
        let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(self.order);
        for pair in &self.pairs {
            cols.push(pair.v.clone());
            cols.push(pair.w.clone());
        }
        for z in &self.zero_vectors {
            cols.push(z.clone());
        }
        CMatrix::from_columns(&cols)
    }
}

pub fn quat_block_log(y: &CMatrix, tols: &Tolerances) -> Result<QuatBlockLog> {
    let n = y.n();
    if n % 2 != 0 {
        return Err(Error::validation("quaternionic block must have even order"));
    }
    let ue = unitary_eig_with(y, tols)?;
    let clusters = ue.angle_clusters(tols.angle);
    let mut pairs: Vec<QuatPair> = Vec::new();
    let mut zero_vectors: Vec<Vec<Complex64>> = Vec::new();
    let mut negative_count = 0usize;

    for (mean, range) in clusters {
        if mean.abs() <= tols.angle {
            for j in range {
                zero_vectors.push(ue.basis.col(j));
            }
        } else if is_pi(mean, tols.angle) {
            // J-invariant −1 eigenspace: greedily split into (v, Jv) pairs.
            let members: Vec<Vec<Complex64>> = range.map(|j| ue.basis.col(j)).collect();
            for (v, w) in j_pair_span(&members)? {
                pairs.push(QuatPair { v, w, angle: PI });
            }
        } else if mean > 0.0 {
            // Rotation class: partners in the −θ class are J-images.
            for j in range {
                let v = ue.basis.col(j);
                let w = j_map(&v);
                pairs.push(QuatPair { v, w, angle: ue.angles[j] });
            }
        } else {
            negative_count += range.len();
        }
    }

    let covered = zero_vectors.len() + pairs.iter().map(|_| 2).sum::<usize>();
    if covered != n || negative_count != pairs.iter().filter(|p| !is_pi(p.angle, tols.angle)).count()
    {
        return Err(Error::tolerance(
            "conjugate eigenvalue pairing mismatch on a quaternionic block".to_string(),
        ));
    }
    Ok(QuatBlockLog { order: n, pairs, zero_vectors })
}

// ── censuses ──────────────────────────────────────────────────────────

/// Odometer over index tuples `0..=zetas[j]`, last coordinate fastest.
fn index_tuples(zetas: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &z in zetas {
        let mut next = Vec::with_capacity(out.len() * (z + 1));
        for prefix in &out {
            for l in 0..=z {
                let mut t = prefix.clone();
                t.push(l);
                next.push(t);
            }
        }
        out = next;
    }
    out
}

/// Census of the logarithm set of a unitary-group target with `zeta`
/// branches at −1: one Grassmannian per branch split.
pub fn unitary_census(zeta: usize, minimal_norm: f64) -> PlogStructure {
    let components = (0..=zeta)
        .map(|j| descriptor(vec![j], vec![Factor::Grassmannian { k: j, zeta }]))
        .collect::<Vec<_>>();
    PlogStructure { count: zeta + 1, minimal_norm, components }
}

/// Census for a product of unitary blocks (centralizer groups).
pub fn product_census(zetas: &[usize], minimal_norm: f64) -> PlogStructure {
    let mut components = Vec::new();
    for tuple in index_tuples(zetas) {
        let factors = tuple
            .iter()
            .zip(zetas)
            .map(|(&k, &z)| Factor::Grassmannian { k, zeta: z })
            .collect();
        components.push(descriptor(tuple, factors));
    }
    let count = components.len();
    PlogStructure { count, minimal_norm, components }
}

/// Census for a twisted group: `m` π-plane pairs in the orthogonal block,
/// per-unitary-factor branch counts, and `mu` quaternionic π pairs. The
/// index is `[σ, l_1…l_h]` with σ fixed to 0 when the orthogonal block has
/// no −1 eigenvalues.
pub fn twisted_census(m: usize, zetas: &[usize], mu: usize, minimal_norm: f64) -> PlogStructure {
    let sigmas: &[usize] = if m == 0 { &[0] } else { &[0, 1] };
    let mut components = Vec::new();
    for &sigma in sigmas {
        for tuple in index_tuples(zetas) {
            let mut index = vec![sigma];
            index.extend_from_slice(&tuple);
            let mut factors = vec![Factor::So2mModUm { m }];
            factors.extend(
                tuple
                    .iter()
                    .zip(zetas)
                    .map(|(&k, &z)| Factor::Grassmannian { k, zeta: z }),
            );
            factors.push(Factor::SpmuModUmu { mu });
            components.push(descriptor(index, factors));
        }
    }
    let count = components.len();
    PlogStructure { count, minimal_norm, components }
}

/// `√(Σ θ_j²)` over the eigenvalue angles of a unitary target: the common
/// Frobenius norm of all its generalized principal logarithms.
pub fn minimal_log_norm(m: &CMatrix, tols: &Tolerances) -> Result<f64> {
    let ue = unitary_eig_with(m, tols)?;
    Ok(ue.angles.iter().map(|a| a * a).sum::<f64>().sqrt())
}

// ── component labels ──────────────────────────────────────────────────

/// Multiplicity of the +iπ branch of a skew-Hermitian `l` on the −1
/// eigenspace of `m` (given by its basis columns). Errors if the projected
/// eigenvalues are not ±π, i.e. if `l` is not a principal logarithm of `m`.
pub fn pi_branch_count(
    neg_basis: &[Vec<Complex64>],
    l: &CMatrix,
    label: &str,
) -> Result<usize> {
    let zeta = neg_basis.len();
    if zeta == 0 {
        return Ok(0);
    }
    let mut restricted = CMatrix::zeros(zeta);
    for (a, va) in neg_basis.iter().enumerate() {
        let lv: Vec<Complex64> = l.matvec(va);
        for (b, vb) in neg_basis.iter().enumerate() {
            // Hermitian form −i⟨v_b, L v_a⟩.
            let val = cdot(vb, &lv) * Complex64::new(0.0, -1.0);
            restricted.set(b, a, val);
        }
    }
    let sym = restricted.hermitian_residual();
    if sym > tol::PROJECTED_RANK_TOL {
        return Err(Error::validation(format!(
            "logarithm is not compatible with the −1 eigenspace of the target ({label}): \
             restriction is not Hermitian (residual {sym:.3e})"
        )));
    }
    let e = herm_eig(&restricted)?;
    let mut plus = 0usize;
    for &v in &e.values {
        if (v - PI).abs() <= tol::PROJECTED_RANK_TOL {
            plus += 1;
        } else if (v + PI).abs() > tol::PROJECTED_RANK_TOL {
            return Err(Error::validation(format!(
                "logarithm restricted to the −1 eigenspace ({label}) has eigenvalue {v:.6} \
                 instead of ±π; it is not a principal logarithm of the target"
            )));
        }
    }
    Ok(plus)
}

/// Sign of the Pfaffian of a real skew-symmetric matrix of even order,
/// via Householder reduction to skew-tridiagonal form. Errors if the sign
/// is numerically ambiguous (a pair entry too close to zero).
pub fn pfaffian_sign(a: &CMatrix) -> Result<f64> {
    let n = a.n();
    if n % 2 != 0 {
        return Err(Error::validation("Pfaffian needs even order"));
    }
    if n == 0 {
        return Ok(1.0);
    }
    if a.imag_residual() > tol::SYMMETRY_REL_TOL * (n as f64).sqrt().max(1.0)
        || a.skew_residual() > tol::SYMMETRY_REL_TOL * a.frob_norm().max(1.0)
    {
        return Err(Error::validation("Pfaffian needs a real skew-symmetric matrix"));
    }
    let mut t: Vec<f64> = (0..n * n).map(|p| a.at(p / n, p % n).re).collect();
    let idx = |i: usize, j: usize| i * n + j;
    let mut sign = 1.0f64;
    for j in 0..n.saturating_sub(2) {
        // Reflect rows/cols j+1.. so that column j is zero below j+1.
        let mut v: Vec<f64> = (j + 1..n).map(|i| t[idx(i, j)]).collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm < 1e-14 {
            continue;
        }
        let alpha = if v[0] >= 0.0 { -norm } else { norm };
        v[0] -= alpha;
        let vv: f64 = v.iter().map(|x| x * x).sum();
        if vv < 1e-28 {
            continue;
        }
        // A ← H A H with H = I − 2vvᵀ/⟨v,v⟩ acting on indices j+1…n−1.
        for c in 0..n {
            let dot: f64 = (0..v.len()).map(|r| v[r] * t[idx(j + 1 + r, c)]).sum();
            let f = 2.0 * dot / vv;
            for r in 0..v.len() {
                t[idx(j + 1 + r, c)] -= f * v[r];
            }
        }
        for r in 0..n {
            let dot: f64 = (0..v.len()).map(|c| v[c] * t[idx(r, j + 1 + c)]).sum();
            let f = 2.0 * dot / vv;
            for c in 0..v.len() {
                t[idx(r, j + 1 + c)] -= f * v[c];
            }
        }
        sign = -sign;
    }
    let mut product_sign = 1.0f64;
    let scale = a.max_abs().max(1.0);
    for p in 0..n / 2 {
        let entry = t[idx(2 * p, 2 * p + 1)];
        if entry.abs() < 1e-8 * scale {
            return Err(Error::tolerance(
                "Pfaffian sign is numerically ambiguous (near-zero pair entry)".to_string(),
            ));
        }
        if entry < 0.0 {
            product_sign = -product_sign;
        }
    }
    Ok(sign * product_sign)
}

/// Real columns of the rotation frame spanning the −1 eigenspace of the
/// orthogonal block: the canonical gauge in which orientation labels are
/// measured. All-(+πΩ) logarithms get label 0 in this gauge by
/// construction.
pub fn so_negative_gauge(so_log: &SoBlockLog) -> Vec<Vec<f64>> {
    let n = so_log.order();
    (so_log.zeros..so_log.zeros + 2 * so_log.pi_planes)
        .map(|c| (0..n).map(|i| so_log.frame.at(i, c).re).collect())
        .collect()
}

/// Two-component label of a logarithm's restriction to the −1 eigenspace of
/// a special orthogonal block: 0 when the Pfaffian sign of `Λ/π` in the
/// fixed basis matches the all-(+πΩ) reference `(−1)^m`, 1 otherwise.
pub fn so_orientation_label(
    neg_basis: &[Vec<f64>],
    l_so: &CMatrix,
    _tols: &Tolerances,
) -> Result<usize> {
    let d = neg_basis.len();
    if d == 0 {
        return Ok(0);
    }
    if d % 2 != 0 {
        return Err(Error::validation(
            "−1 eigenspace of the orthogonal block has odd dimension".to_string(),
        ));
    }
    let m = d / 2;
    let mut lam = CMatrix::zeros(d);
    for (a, xa) in neg_basis.iter().enumerate() {
        for (b, xb) in neg_basis.iter().enumerate() {
            let mut s = 0.0;
            for i in 0..l_so.n() {
                for j in 0..l_so.n() {
                    s += xa[i] * l_so.at(i, j).re * xb[j];
                }
            }
            lam.set(a, b, Complex64::new(s / PI, 0.0));
        }
    }
    // Λ/π must be a complex structure on the eigenspace.
    let sq = &lam * &lam;
    let mut dev: f64 = 0.0;
    for i in 0..d {
        for j in 0..d {
            let want = if i == j { -1.0 } else { 0.0 };
            dev = dev.max((sq.at(i, j).re - want).abs().max(sq.at(i, j).im.abs()));
        }
    }
    if dev > tol::PROJECTED_RANK_TOL {
        return Err(Error::validation(format!(
            "logarithm restricted to the orthogonal −1 eigenspace is not a π-rotation \
             family (deviation {dev:.3e})"
        )));
    }
    let reference = if m % 2 == 0 { 1.0 } else { -1.0 };
    let sign = pfaffian_sign(&lam)?;
    Ok(if sign * reference > 0.0 { 0 } else { 1 })
}

// ── torus enumeration ─────────────────────────────────────────────────

/// Split a flip bitmask into per-slot booleans for blocks with the given
/// flip counts (block order fixed; bit 0 is the first slot of the first
/// block).
pub fn split_mask(mask: u64, slot_counts: &[usize]) -> Vec<Vec<bool>> {
    let mut out = Vec::with_capacity(slot_counts.len());
    let mut bit = 0;
    for &c in slot_counts {
        let mut flips = Vec::with_capacity(c);
        for _ in 0..c {
            flips.push(mask >> bit & 1 == 1);
            bit += 1;
        }
        out.push(flips);
    }
    out
}

/// Guard for torus enumeration: errors when 2^total would be unreasonable.
pub fn check_enumeration_guard(total: usize) -> Result<()> {
    if total > tol::TORUS_ENUM_LIMIT {
        return Err(Error::validation(format!(
            "target has {total} flippable −1 branches; enumeration is capped at \
             {} to keep 2^count tractable",
            tol::TORUS_ENUM_LIMIT
        )));
    }
    Ok(())
}

// ── diagnostics ───────────────────────────────────────────────────────

/// Largest |eigenvalue| of a skew-Hermitian matrix (all eigenvalues are
/// purely imaginary; this is the branch-strip radius of a candidate log).
pub fn eigen_radius(l: &CMatrix) -> Result<f64> {
    let h = l.scale_c(Complex64::new(0.0, -1.0));
    let e = herm_eig(&h)?;
    Ok(e.values.iter().fold(0.0f64, |acc, v| acc.max(v.abs())))
}

/// Gate shared by all component labeling: `l` must exponentiate to `m` and
/// keep its spectrum inside the closed branch strip.
pub fn require_log_pair(l: &CMatrix, m: &CMatrix) -> Result<()> {
    let n = m.n() as f64;
    let exp_residual = CMatrix::dist(&mat_exp_skew(l)?, m);
    if exp_residual > tol::RECON_REL_TOL * n.sqrt().max(1.0) {
        return Err(Error::validation(format!(
            "matrix does not exponentiate to the target (residual {exp_residual:.3e})"
        )));
    }
    let radius = eigen_radius(l)?;
    if radius > PI + tol::PLOG_EIGEN_SLACK {
        return Err(Error::validation(format!(
            "matrix has an eigenvalue of modulus {radius:.12} outside the closed branch \
             strip of radius π"
        )));
    }
    Ok(())
}

/// Full diagnostics of a claimed logarithm: algebra membership, exponential
/// residual, and branch-strip radius.
#[derive(Debug, Clone, Serialize)]
pub struct PlogDiagnostics {
    pub exp_residual: f64,
    pub eigen_radius: f64,
    pub algebra: Membership,
    pub ok: bool,
}

pub fn check_plog(group: &dyn MatrixGroup, l: &CMatrix, m: &CMatrix) -> Result<PlogDiagnostics> {
    let algebra = group.algebra_contains(l)?;
    let exp_residual = CMatrix::dist(&mat_exp_skew(l)?, m);
    let radius = eigen_radius(l)?;
    let n = m.n() as f64;
    let ok = algebra.ok
        && exp_residual <= tol::RECON_REL_TOL * n.sqrt().max(1.0)
        && radius <= PI + tol::PLOG_EIGEN_SLACK;
    Ok(PlogDiagnostics { exp_residual, eigen_radius: radius, algebra, ok })
}

/// Fold an arbitrary Lie algebra element into a generalized principal
/// logarithm of its own exponential by reducing each singular weight into
/// `(−π, π]`. The group's SVD-closure keeps every reduced term in the
/// algebra, and the shared generalized Rodrigues formula keeps the
/// exponential fixed.
pub fn svd_reduce_log(group: &dyn MatrixGroup, x: &CMatrix) -> Result<PlogElement> {
    let membership = group.algebra_contains(x)?;
    crate::group::ensure_member(&membership, "reduction input")?;
    let target = mat_exp_skew(x)?;
    let log = if x.frob_norm() == 0.0 {
        x.clone()
    } else {
        let sys = svd_decompose(x)?;
        let mut y = CMatrix::zeros(x.n());
        for (sigma, comp) in sys.sigmas.iter().zip(&sys.components) {
            y = &y + &comp.scale(wrap_angle(*sigma));
        }
        y
    };
    let reduced_membership = group.algebra_contains(&log)?;
    crate::group::ensure_member(&reduced_membership, "reduced logarithm")?;
    require_log_pair(&log, &target)?;
    Ok(PlogElement { log, group: group.spec().clone(), target })
}
