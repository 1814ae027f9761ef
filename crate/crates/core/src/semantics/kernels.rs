//! In-place local gate actions on dense `2^d × 2^d` matrices.
//!
//! Qubit 0 is the most significant bit of a basis index.

use num_complex::Complex64;

use super::ComplexMatrix;

pub(crate) fn mask(q: usize, d: usize) -> usize {
    1 << (d - 1 - q)
}

/// `m ← apply1(u, q, d) · m`.
pub(crate) fn left_local1(m: &mut ComplexMatrix, u: &[[Complex64; 2]; 2], q: usize, d: usize) {
    let bit = mask(q, d);
    let cols = m.cols();
    let data = m.data_mut();
    for r0 in (0..1usize << d).filter(|r| r & bit == 0) {
        let r1 = r0 | bit;
        for j in 0..cols {
            let a = data[r0 * cols + j];
            let b = data[r1 * cols + j];
            data[r0 * cols + j] = u[0][0] * a + u[0][1] * b;
            data[r1 * cols + j] = u[1][0] * a + u[1][1] * b;
        }
    }
}

/// `m ← m · apply1(u, q, d)†`.
pub(crate) fn right_local1_adjoint(
    m: &mut ComplexMatrix,
    u: &[[Complex64; 2]; 2],
    q: usize,
    d: usize,
) {
    let bit = mask(q, d);
    let cols = m.cols();
    let rows = m.rows();
    let data = m.data_mut();
    for i in 0..rows {
        let row = &mut data[i * cols..(i + 1) * cols];
        for k0 in (0..1usize << d).filter(|k| k & bit == 0) {
            let k1 = k0 | bit;
            let a = row[k0];
            let b = row[k1];
            row[k0] = a * u[0][0].conj() + b * u[0][1].conj();
            row[k1] = a * u[1][0].conj() + b * u[1][1].conj();
        }
    }
}

/// `m ← apply2(CNOT, c, t, d) · m`.
pub(crate) fn left_cnot(m: &mut ComplexMatrix, c: usize, t: usize, d: usize) {
    let (cb, tb) = (mask(c, d), mask(t, d));
    let cols = m.cols();
    let data = m.data_mut();
    for r in (0..1usize << d).filter(|r| r & cb != 0 && r & tb == 0) {
        let s = r | tb;
        for j in 0..cols {
            data.swap(r * cols + j, s * cols + j);
        }
    }
}

/// `m ← m · apply2(CNOT, c, t, d)†`; CNOT is real and self-adjoint.
pub(crate) fn right_cnot(m: &mut ComplexMatrix, c: usize, t: usize, d: usize) {
    let (cb, tb) = (mask(c, d), mask(t, d));
    let cols = m.cols();
    let rows = m.rows();
    let data = m.data_mut();
    for i in 0..rows {
        let row = &mut data[i * cols..(i + 1) * cols];
        for k in (0..1usize << d).filter(|k| k & cb != 0 && k & tb == 0) {
            row.swap(k, k | tb);
        }
    }
}
