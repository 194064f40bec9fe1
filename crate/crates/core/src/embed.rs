//! Field embeddings and matrix-algebra automorphisms.
//!
//! * Decomplexification `ρ`: each complex entry `a + bi` becomes the real
//!   2×2 cell `[[a, −b], [b, a]]`. It is multiplicative and sends adjoints
//!   to transposes, so `ρ(U_h) ⊂ SO_{2h}`.
//! * Quaternion embedding `Ψ`: each quaternion entry `z + wj` becomes the
//!   complex 2×2 cell `[[z, −w], [conj(w), conj(z)]]`; `Ψ(A*) = Ψ(A)*`, and
//!   the image commutes with the antilinear structure map `x ↦ Ω^{⊕h} conj(x)`.
//! * The four families of isometric algebra (anti)automorphisms of the
//!   ambient matrix algebra, whose fixed sets cut out the group catalog.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::cmatrix::CMatrix;
use crate::error::{Error, Result};
use crate::tol;

// ── decomplexification ────────────────────────────────────────────────

/// `ρ`: complex h×h to real 2h×2h, entrywise `a + bi ↦ [[a, −b], [b, a]]`.
pub fn decomplexify(z: &CMatrix) -> CMatrix {
    let h = z.n();
    let mut out = CMatrix::zeros(2 * h);
    for i in 0..h {
        for j in 0..h {
            let e = z.at(i, j);
            out.set(2 * i, 2 * j, Complex64::new(e.re, 0.0));
            out.set(2 * i, 2 * j + 1, Complex64::new(-e.im, 0.0));
            out.set(2 * i + 1, 2 * j, Complex64::new(e.im, 0.0));
            out.set(2 * i + 1, 2 * j + 1, Complex64::new(e.re, 0.0));
        }
    }
    out
}

/// Inverse of [`decomplexify`]: validates the 2×2 cell structure and returns
/// the complex matrix, with the structure residual it saw.
pub fn complexify(r: &CMatrix) -> Result<(CMatrix, f64)> {
    let n = r.n();
    if n % 2 != 0 {
        return Err(Error::validation("decomplexified matrix must have even order"));
    }
    let h = n / 2;
    let mut out = CMatrix::zeros(h);
    let mut residual = 0.0f64;
    for i in 0..h {
        for j in 0..h {
            let a00 = r.at(2 * i, 2 * j);
            let a01 = r.at(2 * i, 2 * j + 1);
            let a10 = r.at(2 * i + 1, 2 * j);
            let a11 = r.at(2 * i + 1, 2 * j + 1);
            residual = residual
                .max(a00.im.abs())
                .max(a01.im.abs())
                .max(a10.im.abs())
                .max(a11.im.abs())
                .max((a00.re - a11.re).abs())
                .max((a01.re + a10.re).abs());
            let re = 0.5 * (a00.re + a11.re);
            let im = 0.5 * (a10.re - a01.re);
            out.set(i, j, Complex64::new(re, im));
        }
    }
    let scale = r.frob_norm().max(1.0);
    if residual > tol::SYMMETRY_REL_TOL * scale {
        return Err(Error::validation(format!(
            "matrix does not carry the decomplexified 2×2 cell structure (residual {:.3e})",
            residual
        )));
    }
    Ok((out, residual))
}

// ── quaternions ───────────────────────────────────────────────────────

/// A quaternion written as `z + w·j` with complex `z`, `w`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quaternion {
    pub z: Complex64,
    pub w: Complex64,
}

impl Quaternion {
    pub fn zero() -> Self {
        Quaternion {
            z: Complex64::new(0.0, 0.0),
            w: Complex64::new(0.0, 0.0),
        }
    }

    pub fn one() -> Self {
        Quaternion {
            z: Complex64::new(1.0, 0.0),
            w: Complex64::new(0.0, 0.0),
        }
    }

    /// `(z1 + w1 j)(z2 + w2 j)`, using `j z = conj(z) j`.
    pub fn mul(self, rhs: Quaternion) -> Quaternion {
        Quaternion {
            z: self.z * rhs.z - self.w * rhs.w.conj(),
            w: self.z * rhs.w + self.w * rhs.z.conj(),
        }
    }

    pub fn add(self, rhs: Quaternion) -> Quaternion {
        Quaternion {
            z: self.z + rhs.z,
            w: self.w + rhs.w,
        }
    }

    pub fn conj(self) -> Quaternion {
        Quaternion {
            z: self.z.conj(),
            w: -self.w,
        }
    }

    pub fn scale(self, s: f64) -> Quaternion {
        Quaternion {
            z: self.z * s,
            w: self.w * s,
        }
    }

    pub fn norm_sqr(self) -> f64 {
        self.z.norm_sqr() + self.w.norm_sqr()
    }
}

/// Dense square quaternion matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct QMatrix {
    h: usize,
    data: Vec<Quaternion>,
}

impl QMatrix {
    pub fn zeros(h: usize) -> Self {
        QMatrix {
            h,
            data: vec![Quaternion::zero(); h * h],
        }
    }

    pub fn identity(h: usize) -> Self {
        let mut m = QMatrix::zeros(h);
        for i in 0..h {
            m.set(i, i, Quaternion::one());
        }
        m
    }

    #[inline]
    pub fn h(&self) -> usize {
        self.h
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> Quaternion {
        self.data[i * self.h + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, q: Quaternion) {
        self.data[i * self.h + j] = q;
    }

    pub fn adjoint(&self) -> QMatrix {
        let mut out = QMatrix::zeros(self.h);
        for i in 0..self.h {
            for j in 0..self.h {
                out.set(i, j, self.at(j, i).conj());
            }
        }
        out
    }

    pub fn mul(&self, rhs: &QMatrix) -> QMatrix {
        assert_eq!(self.h, rhs.h);
        let mut out = QMatrix::zeros(self.h);
        for i in 0..self.h {
            for j in 0..self.h {
                let mut acc = Quaternion::zero();
                for k in 0..self.h {
                    acc = acc.add(self.at(i, k).mul(rhs.at(k, j)));
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn col(&self, j: usize) -> Vec<Quaternion> {
        (0..self.h).map(|i| self.at(i, j)).collect()
    }

    pub fn set_col(&mut self, j: usize, v: &[Quaternion]) {
        for (i, &q) in v.iter().enumerate() {
            self.set(i, j, q);
        }
    }
}

/// `Ψ`: quaternion h×h to complex 2h×2h, entrywise
/// `z + wj ↦ [[z, −w], [conj(w), conj(z)]]`.
pub fn quaternion_embed(q: &QMatrix) -> CMatrix {
    let h = q.h();
    let mut out = CMatrix::zeros(2 * h);
    for i in 0..h {
        for j in 0..h {
            let e = q.at(i, j);
            out.set(2 * i, 2 * j, e.z);
            out.set(2 * i, 2 * j + 1, -e.w);
            out.set(2 * i + 1, 2 * j, e.w.conj());
            out.set(2 * i + 1, 2 * j + 1, e.z.conj());
        }
    }
    out
}

/// Inverse of [`quaternion_embed`] with structure validation.
pub fn quaternion_extract(m: &CMatrix) -> Result<(QMatrix, f64)> {
    let n = m.n();
    if n % 2 != 0 {
        return Err(Error::validation("quaternion-embedded matrix must have even order"));
    }
    let h = n / 2;
    let mut out = QMatrix::zeros(h);
    let mut residual = 0.0f64;
    for i in 0..h {
        for j in 0..h {
            let a = m.at(2 * i, 2 * j);
            let b = m.at(2 * i, 2 * j + 1);
            let c = m.at(2 * i + 1, 2 * j);
            let d = m.at(2 * i + 1, 2 * j + 1);
            residual = residual
                .max((a - d.conj()).norm())
                .max((b + c.conj()).norm());
            let z = (a + d.conj()) * 0.5;
            let w = (c.conj() - b) * 0.5;
            out.set(i, j, Quaternion { z, w });
        }
    }
    let scale = m.frob_norm().max(1.0);
    if residual > tol::SYMMETRY_REL_TOL * scale {
        return Err(Error::validation(format!(
            "matrix does not carry the quaternion 2×2 cell structure (residual {:.3e})",
            residual
        )));
    }
    Ok((out, residual))
}

// ── automorphism families ─────────────────────────────────────────────

/// The four families of isometric algebra (anti)automorphisms of the full
/// matrix algebra: conjugation by a unitary `V`, optionally composed with
/// entrywise conjugation, negative transpose, or negative adjoint. Fixed
/// sets of these maps are closed under taking SVD-components.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum AutomorphismFamily {
    /// `A ↦ V A V*`
    #[serde(rename = "adV")]
    AdV,
    /// `A ↦ V conj(A) V*`
    #[serde(rename = "adV-conj")]
    AdVConj,
    /// `A ↦ −V Aᵀ V*`
    #[serde(rename = "adV-negT")]
    AdVNegTranspose,
    /// `A ↦ −V A* V*`
    #[serde(rename = "adV-negAdj")]
    AdVNegAdjoint,
}

impl AutomorphismFamily {
    pub fn parse(text: &str) -> Result<Self> {
        match text {
            "adV" => Ok(AutomorphismFamily::AdV),
            "adV-conj" => Ok(AutomorphismFamily::AdVConj),
            "adV-negT" => Ok(AutomorphismFamily::AdVNegTranspose),
            "adV-negAdj" => Ok(AutomorphismFamily::AdVNegAdjoint),
            other => Err(Error::validation(format!(
                "unknown automorphism family '{other}' (expected adV, adV-conj, adV-negT, adV-negAdj)"
            ))),
        }
    }
}

/// Apply one of the automorphism families with parameter `V` to `A`.
pub fn apply_automorphism(
    family: AutomorphismFamily,
    v: &CMatrix,
    a: &CMatrix,
) -> Result<CMatrix> {
    let n = v.n();
    if a.n() != n {
        return Err(Error::validation(format!(
            "size mismatch: V is {}×{} but A is {}×{}",
            n,
            n,
            a.n(),
            a.n()
        )));
    }
    let ur = v.unitary_residual();
    if ur > tol::UNITARY_REL_TOL * (n as f64).sqrt() {
        return Err(Error::validation(format!(
            "automorphism parameter is not unitary: ‖VV* − I‖ = {:.3e}",
            ur
        )));
    }
    let vs = v.adjoint();
    let core = match family {
        AutomorphismFamily::AdV => a.clone(),
        AutomorphismFamily::AdVConj => a.conj(),
        AutomorphismFamily::AdVNegTranspose => a.transpose().scale(-1.0),
        AutomorphismFamily::AdVNegAdjoint => a.adjoint().scale(-1.0),
    };
    Ok(&(v * &core) * &vs)
}
