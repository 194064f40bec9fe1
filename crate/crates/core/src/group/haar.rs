//! Haar-distributed samples on the classical compact groups, plus Gaussian
//! samples of their Lie algebras.
//!
//! Unitary samples come from QR of a complex Ginibre matrix implemented as
//! modified Gram-Schmidt with two reorthogonalization passes; normalizing
//! with real positive norms fixes the diagonal phases, which is exactly the
//! condition making the factor Haar-distributed. The special orthogonal
//! sampler runs the same recipe over the reals (giving Haar on `O_n`) and
//! reflects the last column when the determinant is −1; the map is a
//! measure-preserving bijection between the two cosets, so the result is
//! Haar on `SO_n`. The quaternionic sampler is Gram-Schmidt over ℍ with the
//! same normalization argument.

use num_complex::Complex64;

use crate::cmatrix::{cdot, vnorm, CMatrix};
use crate::embed::{QMatrix, Quaternion};
use crate::rng::SplitMix64;

/// Haar-distributed element of `U_n`.
pub fn haar_unitary(n: usize, rng: &mut SplitMix64) -> CMatrix {
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    for _ in 0..n {
        let mut v: Vec<Complex64> = (0..n).map(|_| rng.complex_normal()).collect();
        for _ in 0..2 {
            for b in &cols {
                let d = cdot(b, &v);
                for (x, y) in v.iter_mut().zip(b) {
                    *x -= d * y;
                }
            }
        }
        let nv = vnorm(&v);
        for x in v.iter_mut() {
            *x /= nv;
        }
        cols.push(v);
    }
    CMatrix::from_columns(&cols)
}

/// Haar-distributed element of `SO_n`.
pub fn haar_special_orthogonal(n: usize, rng: &mut SplitMix64) -> CMatrix {
    let mut cols: Vec<Vec<f64>> = Vec::with_capacity(n);
    for _ in 0..n {
        let mut v: Vec<f64> = (0..n).map(|_| rng.normal()).collect();
        for _ in 0..2 {
            for b in &cols {
                let d: f64 = b.iter().zip(&v).map(|(x, y)| x * y).sum();
                for (x, y) in v.iter_mut().zip(b) {
                    *x -= d * y;
                }
            }
        }
        let nv: f64 = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        for x in v.iter_mut() {
            *x /= nv;
        }
        cols.push(v);
    }
    let mut m = CMatrix::from_fn(n, |i, j| Complex64::new(cols[j][i], 0.0));
    if m.det().re < 0.0 {
        for i in 0..n {
            let z = m.at(i, n - 1);
            m.set(i, n - 1, -z);
        }
    }
    m
}

fn quaternion_normal(rng: &mut SplitMix64) -> Quaternion {
    Quaternion { z: rng.complex_normal(), w: rng.complex_normal() }
}

fn qdot(a: &[Quaternion], b: &[Quaternion]) -> Quaternion {
    let mut s = Quaternion::zero();
    for (x, y) in a.iter().zip(b) {
        s = s.add(x.conj().mul(*y));
    }
    s
}

fn qnorm(v: &[Quaternion]) -> f64 {
    v.iter().map(|q| q.norm_sqr()).sum::<f64>().sqrt()
}

/// Haar-distributed element of the quaternionic unitary group `U_h(ℍ)`.
pub fn haar_quaternion_unitary(h: usize, rng: &mut SplitMix64) -> QMatrix {
    let mut m = QMatrix::zeros(h);
    let mut cols: Vec<Vec<Quaternion>> = Vec::with_capacity(h);
    for j in 0..h {
        let mut v: Vec<Quaternion> = (0..h).map(|_| quaternion_normal(rng)).collect();
        for _ in 0..2 {
            for b in &cols {
                let d = qdot(b, &v);
                for (x, y) in v.iter_mut().zip(b) {
                    *x = x.add(y.mul(d).scale(-1.0));
                }
            }
        }
        let nv = qnorm(&v);
        for x in v.iter_mut() {
            *x = x.scale(1.0 / nv);
        }
        m.set_col(j, &v);
        cols.push(v);
    }
    m
}

/// Gaussian skew-Hermitian matrix, the Lie algebra sample of `U_n`.
pub fn skew_hermitian_sample(n: usize, rng: &mut SplitMix64) -> CMatrix {
    let g = CMatrix::from_fn(n, |_, _| rng.complex_normal());
    (&g - &g.adjoint()).scale(0.5)
}

/// Gaussian real skew-symmetric matrix, the Lie algebra sample of `SO_n`.
pub fn skew_symmetric_sample(n: usize, rng: &mut SplitMix64) -> CMatrix {
    let g = CMatrix::from_fn(n, |_, _| Complex64::new(rng.normal(), 0.0));
    (&g - &g.transpose()).scale(0.5)
}

/// Gaussian skew-Hermitian quaternionic matrix, the Lie algebra sample of
/// `U_h(ℍ)`.
pub fn quaternion_skew_sample(h: usize, rng: &mut SplitMix64) -> QMatrix {
    let mut g = QMatrix::zeros(h);
    for i in 0..h {
        for j in 0..h {
            g.set(i, j, quaternion_normal(rng));
        }
    }
    let ga = g.adjoint();
    let mut out = QMatrix::zeros(h);
    for i in 0..h {
        for j in 0..h {
            out.set(i, j, g.at(i, j).add(ga.at(i, j).scale(-1.0)).scale(0.5));
        }
    }
    out
}
