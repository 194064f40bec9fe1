//! Canonical matrices used throughout the group catalog.
//!
//! * `Ω = [[0, −1], [1, 0]]` and the block forms `Ω_n` (split) and `Ω^{⊕n}`
//!   (interleaved);
//! * plane rotations `E_φ` and the signed stacks `E_φ^{(p,q)} = E_φ^{⊕p} ⊕ (−E_φ)^{⊕q}`;
//! * the phase matrix `W_{(p,q)} = I_p ⊕ i I_q` and the signature
//!   `J^{(p,q)} = I_p ⊕ (−I_q)`;
//! * the shuffle permutation `B` with `Bᵀ Ω_n B = Ω^{⊕n}` exactly, which
//!   carries the interleaved quaternion picture to the split symplectic one.

use num_complex::Complex64;

use crate::cmatrix::CMatrix;

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// `Ω = [[0, −1], [1, 0]]`, the 2×2 rotation by π/2.
pub fn omega() -> CMatrix {
    CMatrix::from_real_rows(&[&[0.0, -1.0], &[1.0, 0.0]])
}

/// Split form `Ω_n = [[0, −I_n], [I_n, 0]]` of order 2n.
pub fn omega_n(n: usize) -> CMatrix {
    let mut m = CMatrix::zeros(2 * n);
    for j in 0..n {
        m.set(j, n + j, re(-1.0));
        m.set(n + j, j, re(1.0));
    }
    m
}

/// Interleaved form `Ω^{⊕n}` of order 2n.
pub fn omega_blocks(n: usize) -> CMatrix {
    let om = omega();
    let blocks: Vec<&CMatrix> = (0..n).map(|_| &om).collect();
    CMatrix::direct_sum(&blocks)
}

/// Plane rotation `E_φ = cos(φ) I_2 + sin(φ) Ω`.
pub fn rot(phi: f64) -> CMatrix {
    CMatrix::from_real_rows(&[&[phi.cos(), -phi.sin()], &[phi.sin(), phi.cos()]])
}

/// Signed rotation stack `E_φ^{(p,q)} = E_φ^{⊕p} ⊕ (−E_φ)^{⊕q}` of order 2(p+q).
pub fn rot_pq(phi: f64, p: usize, q: usize) -> CMatrix {
    let plus = rot(phi);
    let minus = plus.scale(-1.0);
    let mut blocks: Vec<&CMatrix> = Vec::with_capacity(p + q);
    for _ in 0..p {
        blocks.push(&plus);
    }
    for _ in 0..q {
        blocks.push(&minus);
    }
    CMatrix::direct_sum(&blocks)
}

/// `W_{(p,q)} = I_p ⊕ i I_q`.
pub fn w_pq(p: usize, q: usize) -> CMatrix {
    let mut d = vec![re(1.0); p];
    d.extend(vec![Complex64::new(0.0, 1.0); q]);
    CMatrix::from_diag(&d)
}

/// `J^{(p,q)} = I_p ⊕ (−I_q)`.
pub fn j_pq(p: usize, q: usize) -> CMatrix {
    let mut d = vec![re(1.0); p];
    d.extend(vec![re(-1.0); q]);
    CMatrix::from_diag(&d)
}

/// Orthogonal shuffle `B` of order 2n sending the interleaved coordinate
/// pairing to the split one: `Bᵀ Ω_n B = Ω^{⊕n}` holds exactly.
pub fn shuffle_permutation(n: usize) -> CMatrix {
    let mut b = CMatrix::zeros(2 * n);
    for j in 0..n {
        b.set(j, 2 * j, re(1.0));
        b.set(n + j, 2 * j + 1, re(1.0));
    }
    b
}
