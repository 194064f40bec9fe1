//! Dense square complex matrices.
//!
//! A deliberately small, hand-rolled type: the eigensolvers in this crate pin
//! down sweep orders and sign conventions that general-purpose linear algebra
//! crates do not expose, and everything downstream (logarithm sets, geodesic
//! reports) must be reproducible bit for bit. Matrices are stored row-major;
//! all inputs are validated to be square with finite entries.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::path::Path;

use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq)]
pub struct CMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(n: usize) -> Self {
        CMatrix {
            n,
            data: vec![Complex64::new(0.0, 0.0); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = CMatrix::zeros(n);
        for i in 0..n {
            m.set(i, i, Complex64::new(1.0, 0.0));
        }
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = CMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn from_diag(diag: &[Complex64]) -> Self {
        let mut m = CMatrix::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m.set(i, i, d);
        }
        m
    }

    /// Real entries given row-major; imaginary parts zero.
    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let n = rows.len();
        let mut m = CMatrix::zeros(n);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), n, "row {i} has wrong length");
            for (j, &x) in row.iter().enumerate() {
                m.set(i, j, Complex64::new(x, 0.0));
            }
        }
        m
    }

    pub fn scalar(z: Complex64) -> Self {
        CMatrix {
            n: 1,
            data: vec![z],
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, z: Complex64) {
        self.data[i * self.n + j] = z;
    }

    #[inline]
    pub fn add_to(&mut self, i: usize, j: usize, z: Complex64) {
        self.data[i * self.n + j] += z;
    }

    pub fn col(&self, j: usize) -> Vec<Complex64> {
        (0..self.n).map(|i| self.at(i, j)).collect()
    }

    pub fn set_col(&mut self, j: usize, v: &[Complex64]) {
        assert_eq!(v.len(), self.n);
        for (i, &z) in v.iter().enumerate() {
            self.set(i, j, z);
        }
    }

    pub fn columns(&self) -> Vec<Vec<Complex64>> {
        (0..self.n).map(|j| self.col(j)).collect()
    }

    /// Square matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<Complex64>]) -> Self {
        let n = cols.len();
        let mut m = CMatrix::zeros(n);
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), n, "column {j} has wrong length");
            m.set_col(j, c);
        }
        m
    }

    /// `Σ_j values[j] · v_j v_j*` over the given orthonormal columns.
    pub fn from_spectral(values: &[Complex64], cols: &[Vec<Complex64>]) -> Self {
        assert_eq!(values.len(), cols.len());
        let n = cols.first().map_or(0, |c| c.len());
        let mut m = CMatrix::zeros(n);
        for (lam, v) in values.iter().zip(cols) {
            for i in 0..n {
                for j in 0..n {
                    m.add_to(i, j, lam * v[i] * v[j].conj());
                }
            }
        }
        m
    }

    pub fn adjoint(&self) -> CMatrix {
        CMatrix::from_fn(self.n, |i, j| self.at(j, i).conj())
    }

    pub fn transpose(&self) -> CMatrix {
        CMatrix::from_fn(self.n, |i, j| self.at(j, i))
    }

    pub fn conj(&self) -> CMatrix {
        CMatrix::from_fn(self.n, |i, j| self.at(i, j).conj())
    }

    pub fn scale(&self, s: f64) -> CMatrix {
        CMatrix {
            n: self.n,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn scale_c(&self, s: Complex64) -> CMatrix {
        CMatrix {
            n: self.n,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.n).map(|i| self.at(i, i)).sum()
    }

    pub fn matvec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.n);
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.at(i, j) * v[j]).sum())
            .collect()
    }

    /// Frobenius inner product `Re Σ a_ij conj(b_ij)` (equals `Re tr(A B*)`).
    pub fn frob_inner(a: &CMatrix, b: &CMatrix) -> f64 {
        assert_eq!(a.n, b.n);
        a.data
            .iter()
            .zip(&b.data)
            .map(|(x, y)| (x * y.conj()).re)
            .sum()
    }

    pub fn frob_norm(&self) -> f64 {
        CMatrix::frob_inner(self, self).max(0.0).sqrt()
    }

    pub fn dist(a: &CMatrix, b: &CMatrix) -> f64 {
        (a - b).frob_norm()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// `‖M M* − I‖_F`; small for unitary matrices.
    pub fn unitary_residual(&self) -> f64 {
        let prod = self * &self.adjoint();
        CMatrix::dist(&prod, &CMatrix::identity(self.n))
    }

    /// `‖A − A*‖_F`; small for Hermitian matrices.
    pub fn hermitian_residual(&self) -> f64 {
        CMatrix::dist(self, &self.adjoint())
    }

    /// `‖A + A*‖_F`; small for skew-Hermitian matrices.
    pub fn skew_residual(&self) -> f64 {
        CMatrix::dist(self, &self.adjoint().scale(-1.0))
    }

    /// Frobenius mass of the imaginary parts; small for real matrices.
    pub fn imag_residual(&self) -> f64 {
        self.data
            .iter()
            .map(|z| z.im * z.im)
            .sum::<f64>()
            .sqrt()
    }

    /// Entrywise real part (imaginary parts dropped).
    pub fn real_part(&self) -> CMatrix {
        CMatrix::from_fn(self.n, |i, j| Complex64::new(self.at(i, j).re, 0.0))
    }

    /// Direct sum of blocks along the diagonal. Zero-order blocks are legal
    /// and contribute nothing.
    pub fn direct_sum(blocks: &[&CMatrix]) -> CMatrix {
        let n: usize = blocks.iter().map(|b| b.n).sum();
        let mut m = CMatrix::zeros(n);
        let mut off = 0;
        for b in blocks {
            m.put_block(off, off, b);
            off += b.n;
        }
        m
    }

    /// Copy `b` into this matrix with its (0,0) entry at (r0, c0).
    pub fn put_block(&mut self, r0: usize, c0: usize, b: &CMatrix) {
        assert!(r0 + b.n <= self.n && c0 + b.n <= self.n);
        for i in 0..b.n {
            for j in 0..b.n {
                self.set(r0 + i, c0 + j, b.at(i, j));
            }
        }
    }

    /// Square sub-block of the given size with its top-left corner at (r0, c0).
    pub fn block(&self, r0: usize, c0: usize, size: usize) -> CMatrix {
        assert!(r0 + size <= self.n && c0 + size <= self.n);
        CMatrix::from_fn(size, |i, j| self.at(r0 + i, c0 + j))
    }

    /// Frobenius mass of the entries outside the listed diagonal blocks.
    pub fn off_block_residual(&self, sizes: &[usize]) -> f64 {
        debug_assert_eq!(sizes.iter().sum::<usize>(), self.n);
        let mut owner = vec![0usize; self.n];
        let mut off = 0;
        for (b, &s) in sizes.iter().enumerate() {
            for k in 0..s {
                owner[off + k] = b;
            }
            off += s;
        }
        let mut mass = 0.0;
        for i in 0..self.n {
            for j in 0..self.n {
                if owner[i] != owner[j] {
                    mass += self.at(i, j).norm_sqr();
                }
            }
        }
        mass.sqrt()
    }

    /// Determinant via LU with partial pivoting.
    pub fn det(&self) -> Complex64 {
        let n = self.n;
        if n == 0 {
            return Complex64::new(1.0, 0.0);
        }
        let mut a = self.clone();
        let mut det = Complex64::new(1.0, 0.0);
        for c in 0..n {
            let mut piv = c;
            let mut best = a.at(c, c).norm();
            for r in (c + 1)..n {
                let x = a.at(r, c).norm();
                if x > best {
                    best = x;
                    piv = r;
                }
            }
            if best == 0.0 {
                return Complex64::new(0.0, 0.0);
            }
            if piv != c {
                for j in 0..n {
                    let t = a.at(c, j);
                    a.set(c, j, a.at(piv, j));
                    a.set(piv, j, t);
                }
                det = -det;
            }
            let d = a.at(c, c);
            det *= d;
            for r in (c + 1)..n {
                let f = a.at(r, c) / d;
                for j in c..n {
                    let v = a.at(r, j) - f * a.at(c, j);
                    a.set(r, j, v);
                }
            }
        }
        det
    }
}

impl fmt::Debug for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMatrix({}x{}):", self.n, self.n)?;
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n)
                .map(|j| {
                    let z = self.at(i, j);
                    format!("{:+.4}{:+.4}i", z.re, z.im)
                })
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Add for &CMatrix {
    type Output = CMatrix;
    fn add(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.n, rhs.n);
        CMatrix {
            n: self.n,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &CMatrix {
    type Output = CMatrix;
    fn sub(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.n, rhs.n);
        CMatrix {
            n: self.n,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &CMatrix {
    type Output = CMatrix;
    fn neg(self) -> CMatrix {
        self.scale(-1.0)
    }
}

impl Mul for &CMatrix {
    type Output = CMatrix;
    fn mul(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.n, rhs.n);
        let n = self.n;
        let mut out = CMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.at(i, k);
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out.add_to(i, j, a * rhs.at(k, j));
                }
            }
        }
        out
    }
}

// ── complex vector helpers ─────────────────────────────────────────────

/// Hermitian inner product `Σ conj(x_i) y_i`, antilinear in the first slot.
pub fn cdot(x: &[Complex64], y: &[Complex64]) -> Complex64 {
    x.iter().zip(y).map(|(a, b)| a.conj() * b).sum()
}

pub fn vnorm(x: &[Complex64]) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn vscale(x: &[Complex64], s: Complex64) -> Vec<Complex64> {
    x.iter().map(|z| z * s).collect()
}

/// `x − Σ_b ⟨b, x⟩ b` over the given orthonormal vectors.
pub fn project_off(x: &[Complex64], basis: &[Vec<Complex64>]) -> Vec<Complex64> {
    let mut out = x.to_vec();
    for b in basis {
        let c = cdot(b, &out);
        for (o, &bv) in out.iter_mut().zip(b) {
            *o -= c * bv;
        }
    }
    out
}

// ── JSON wire format ───────────────────────────────────────────────────
//
// {"n": 2, "entries": [[[re, im], [re, im]], [[re, im], [re, im]]]}
// with entries row-major, one [re, im] pair per entry.

#[derive(Serialize, Deserialize)]
struct MatrixWire {
    n: usize,
    entries: Vec<Vec<[f64; 2]>>,
}

impl Serialize for CMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let entries = (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| {
                        let z = self.at(i, j);
                        [z.re, z.im]
                    })
                    .collect()
            })
            .collect();
        MatrixWire { n: self.n, entries }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let wire = MatrixWire::deserialize(deserializer)?;
        CMatrix::from_wire(wire).map_err(D::Error::custom)
    }
}

impl CMatrix {
    fn from_wire(wire: MatrixWire) -> Result<Self> {
        let n = wire.n;
        if wire.entries.len() != n {
            return Err(Error::validation(format!(
                "matrix declares n={} but has {} rows",
                n,
                wire.entries.len()
            )));
        }
        let mut m = CMatrix::zeros(n);
        for (i, row) in wire.entries.iter().enumerate() {
            if row.len() != n {
                return Err(Error::validation(format!(
                    "matrix row {} has {} entries, expected {}",
                    i,
                    row.len(),
                    n
                )));
            }
            for (j, &[re, im]) in row.iter().enumerate() {
                if !re.is_finite() || !im.is_finite() {
                    return Err(Error::validation(format!(
                        "matrix entry ({i}, {j}) is not finite"
                    )));
                }
                m.set(i, j, Complex64::new(re, im));
            }
        }
        Ok(m)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("matrix serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::validation(format!("invalid matrix JSON: {e}")))
    }

    pub fn read_json_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| {
            Error::validation(format!("cannot read matrix file {}: {e}", path.display()))
        })?;
        Self::from_json(&text)
    }

    pub fn write_json_file(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        std::fs::write(path, self.to_json()).map_err(|e| {
            Error::validation(format!("cannot write matrix file {}: {e}", path.display()))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn frob_inner_matches_trace_route() {
        // Independent route: Re tr(A B*) via an explicit matrix product.
        let mut rng = crate::rng::SplitMix64::new(11);
        for _ in 0..10 {
            let a = CMatrix::from_fn(4, |_, _| rng.complex_normal());
            let b = CMatrix::from_fn(4, |_, _| rng.complex_normal());
            let direct = CMatrix::frob_inner(&a, &b);
            let via_trace = (&a * &b.adjoint()).trace().re;
            assert!((direct - via_trace).abs() < 1e-12 * (1.0 + direct.abs()));
        }
    }

    #[test]
    fn frob_inner_frozen_values() {
        let id2 = CMatrix::identity(2);
        assert_eq!(CMatrix::frob_inner(&id2, &id2), 2.0);
        let omega = CMatrix::from_real_rows(&[&[0.0, -1.0], &[1.0, 0.0]]);
        assert_eq!(CMatrix::frob_inner(&omega, &omega), 2.0);
        // Orthogonal pair: symmetric vs antisymmetric.
        let sym = CMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]);
        assert_eq!(CMatrix::frob_inner(&omega, &sym), 0.0);
    }

    #[test]
    fn frob_norm_of_skew_diagonal() {
        // diag(iπ, iπ, iπ) has norm π√3.
        let d = CMatrix::from_diag(&[c(0.0, PI), c(0.0, PI), c(0.0, PI)]);
        assert!((d.frob_norm() - PI * 3f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn skew_norm_matches_trace_square_route() {
        // For skew-Hermitian A, ‖A‖² = −Re tr(A²).
        let mut rng = crate::rng::SplitMix64::new(5);
        let g = CMatrix::from_fn(5, |_, _| rng.complex_normal());
        let a = &g - &g.adjoint();
        let direct = a.frob_norm().powi(2);
        let via_trace = -(&a * &a).trace().re;
        assert!((direct - via_trace).abs() < 1e-10 * (1.0 + direct));
    }

    #[test]
    fn det_of_known_matrices() {
        let id = CMatrix::identity(3);
        assert!((id.det() - c(1.0, 0.0)).norm() < 1e-15);
        let omega = CMatrix::from_real_rows(&[&[0.0, -1.0], &[1.0, 0.0]]);
        assert!((omega.det() - c(1.0, 0.0)).norm() < 1e-15);
        let w = CMatrix::from_diag(&[c(1.0, 0.0), c(0.0, 1.0)]);
        assert!((w.det() - c(0.0, 1.0)).norm() < 1e-15);
        let singular = CMatrix::from_real_rows(&[&[1.0, 2.0], &[2.0, 4.0]]);
        assert!(singular.det().norm() < 1e-14);
    }

    #[test]
    fn det_is_multiplicative() {
        let mut rng = crate::rng::SplitMix64::new(9);
        let a = CMatrix::from_fn(4, |_, _| rng.complex_normal());
        let b = CMatrix::from_fn(4, |_, _| rng.complex_normal());
        let lhs = (&a * &b).det();
        let rhs = a.det() * b.det();
        assert!((lhs - rhs).norm() < 1e-9 * (1.0 + rhs.norm()));
    }

    #[test]
    fn block_roundtrip_and_direct_sum() {
        let a = CMatrix::from_real_rows(&[&[1.0, 2.0], &[3.0, 4.0]]);
        let b = CMatrix::scalar(c(5.0, 6.0));
        let s = CMatrix::direct_sum(&[&a, &b]);
        assert_eq!(s.n(), 3);
        assert_eq!(s.block(0, 0, 2), a);
        assert_eq!(s.block(2, 2, 1), b);
        assert_eq!(s.at(0, 2), c(0.0, 0.0));
        assert_eq!(s.off_block_residual(&[2, 1]), 0.0);
    }

    #[test]
    fn json_roundtrip_preserves_bits() {
        let m = CMatrix::from_fn(3, |i, j| c(1.0 / (1 + i + j) as f64, -(i as f64) * 0.1));
        let text = m.to_json();
        let back = CMatrix::from_json(&text).unwrap();
        assert_eq!(m, back);
    }

    #[test]
    fn json_rejects_malformed_input() {
        // wrong row count
        let bad = r#"{"n": 2, "entries": [[[1.0, 0.0], [0.0, 0.0]]]}"#;
        assert!(CMatrix::from_json(bad).is_err());
        // ragged row
        let bad = r#"{"n": 2, "entries": [[[1.0, 0.0]], [[0.0, 0.0], [1.0, 0.0]]]}"#;
        assert!(CMatrix::from_json(bad).is_err());
        // non-finite entry
        let bad = r#"{"n": 1, "entries": [[[1e999, 0.0]]]}"#;
        assert!(CMatrix::from_json(bad).is_err());
    }

    #[test]
    fn unitary_residual_flags_non_unitary() {
        let omega = CMatrix::from_real_rows(&[&[0.0, -1.0], &[1.0, 0.0]]);
        assert!(omega.unitary_residual() < 1e-15);
        assert!(omega.scale(2.0).unitary_residual() > 1.0);
    }
}
