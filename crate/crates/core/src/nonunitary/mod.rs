//! Programs with measurement, their density-matrix semantics, and the
//! optimizations that exploit measurement.

mod passes;

use num_complex::Complex64;

use crate::ir::{Circuit, GateApp};
use crate::semantics::{self, check_dim, kernels, ComplexMatrix, SemanticsError};

pub use passes::{propagate_classical_state, remove_z_rotations_before_measure, simplify_branches};

/// Largest register for which density-matrix semantics is evaluated.
pub const MAX_PROGRAM_DIM: usize = 10;

/// A unitary gate list, or a measurement of `qubit` that continues with
/// `if_one` on outcome 1 and `if_zero` on outcome 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Block {
    Unitary(Vec<GateApp>),
    Meas { qubit: usize, if_one: Vec<Block>, if_zero: Vec<Block> },
}

impl Block {
    /// Measurement whose outcome is discarded.
    pub fn measure(q: usize) -> Block {
        Block::Meas { qubit: q, if_one: Vec::new(), if_zero: Vec::new() }
    }

    /// Measure and flip back to |0⟩ on outcome 1.
    pub fn reset(q: usize) -> Block {
        Block::Meas { qubit: q, if_one: vec![Block::Unitary(vec![GateApp::X(q)])], if_zero: Vec::new() }
    }

    fn well_typed(&self, dim: usize) -> bool {
        match self {
            Block::Unitary(g) => Circuit::new(dim, g.clone()).well_typed(),
            Block::Meas { qubit, if_one, if_zero } => {
                *qubit < dim && if_one.iter().chain(if_zero).all(|b| b.well_typed(dim))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Program {
    pub dim: usize,
    pub body: Vec<Block>,
}

impl Program {
    pub fn new(dim: usize, body: Vec<Block>) -> Self {
        Program { dim, body }
    }

    pub fn well_typed(&self) -> bool {
        self.body.iter().all(|b| b.well_typed(self.dim))
    }

    /// Total number of unitary gates across all branches.
    pub fn gate_count(&self) -> usize {
        fn count(bs: &[Block]) -> usize {
            bs.iter()
                .map(|b| match b {
                    Block::Unitary(g) => g.len(),
                    Block::Meas { if_one, if_zero, .. } => count(if_one) + count(if_zero),
                })
                .sum()
        }
        count(&self.body)
    }
}

impl From<Circuit> for Program {
    fn from(c: Circuit) -> Self {
        Program { dim: c.dim, body: vec![Block::Unitary(c.gates)] }
    }
}

/// A `2^d × 2^d` density matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    dim: usize,
    m: ComplexMatrix,
}

impl DensityMatrix {
    /// Wrap a square matrix of side `2^dim`. Panics on a shape mismatch.
    pub fn from_matrix(dim: usize, m: ComplexMatrix) -> Self {
        assert!(m.rows() == 1 << dim && m.cols() == 1 << dim, "matrix is not 2^{dim} square");
        DensityMatrix { dim, m }
    }

    /// `|x⟩⟨x|` on `dim` qubits.
    pub fn basis(dim: usize, x: usize) -> Self {
        let mut m = ComplexMatrix::zeros(1 << dim, 1 << dim);
        m[(x, x)] = Complex64::new(1.0, 0.0);
        DensityMatrix { dim, m }
    }

    /// `|ψ⟩⟨ψ|` for an amplitude vector of length `2^dim`.
    pub fn pure(dim: usize, psi: &[Complex64]) -> Self {
        let n = 1 << dim;
        assert_eq!(psi.len(), n);
        let mut m = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = psi[i] * psi[j].conj();
            }
        }
        DensityMatrix { dim, m }
    }

    /// `self ⊗ other`, with `self` on the leading qubits.
    pub fn kron(&self, other: &DensityMatrix) -> Self {
        DensityMatrix { dim: self.dim + other.dim, m: self.m.kron(&other.m) }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.m
    }

    pub fn trace(&self) -> Complex64 {
        self.m.trace()
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.m.approx_eq(&self.m.adjoint(), tol)
    }

    pub fn approx_eq(&self, other: &DensityMatrix, tol: f64) -> bool {
        self.dim == other.dim && self.m.approx_eq(&other.m, tol)
    }

    /// `|i⟩⟨i|_q ρ |i⟩⟨i|_q`.
    pub fn project(&self, q: usize, i: bool) -> DensityMatrix {
        let mut out = self.clone();
        out.project_in_place(q, i);
        out
    }

    fn project_in_place(&mut self, q: usize, i: bool) {
        let (one, zero) = (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
        let p = if i { [[zero, zero], [zero, one]] } else { [[one, zero], [zero, zero]] };
        kernels::left_local1(&mut self.m, &p, q, self.dim);
        kernels::right_local1_adjoint(&mut self.m, &p, q, self.dim);
    }

    fn add_assign(&mut self, other: &DensityMatrix) {
        for (a, b) in self.m.data_mut().iter_mut().zip(other.m.data()) {
            *a += b;
        }
    }
}

fn denote_blocks(blocks: &[Block], dim: usize, rho: &mut DensityMatrix) {
    for b in blocks {
        match b {
            Block::Unitary(gates) => {
                for g in gates {
                    semantics::left_apply_gate(&mut rho.m, g, dim);
                    semantics::right_apply_gate_adjoint(&mut rho.m, g, dim);
                }
            }
            Block::Meas { qubit, if_one, if_zero } => {
                let mut one = rho.project(*qubit, true);
                rho.project_in_place(*qubit, false);
                denote_blocks(if_one, dim, &mut one);
                denote_blocks(if_zero, dim, rho);
                rho.add_assign(&one);
            }
        }
    }
}

/// `⟦p⟧(ρ)`: unitary blocks conjugate ρ, and a measurement sums its two
/// projected branches. An ill-typed program maps every state to zero.
pub fn denote_program(p: &Program, rho: &DensityMatrix) -> Result<DensityMatrix, SemanticsError> {
    check_dim(p.dim, MAX_PROGRAM_DIM)?;
    if rho.dim != p.dim {
        return Err(SemanticsError::DimensionMismatch(p.dim, rho.dim));
    }
    if !p.well_typed() {
        let n = 1 << p.dim;
        return Ok(DensityMatrix { dim: p.dim, m: ComplexMatrix::zeros(n, n) });
    }
    let mut out = rho.clone();
    denote_blocks(&p.body, p.dim, &mut out);
    Ok(out)
}

/// Teleport qubit 0 to qubit 2, then reset qubits 0 and 1.
///
/// Bob's corrections are applied as gates controlled by the measured qubits.
pub fn teleport() -> Program {
    use GateApp::*;
    Program::new(
        3,
        vec![
            Block::Unitary(vec![H(1), Cnot(1, 2), Cnot(0, 1), H(0)]),
            Block::measure(0),
            Block::measure(1),
            Block::Unitary(vec![Cnot(1, 2), H(2), Cnot(0, 2), H(2)]),
            Block::reset(0),
            Block::reset(1),
        ],
    )
}
