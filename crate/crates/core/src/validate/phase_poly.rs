use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;

use super::ValidateError;
use crate::ir::{Affine, Angle, Circuit, GateApp};
use crate::semantics::ComplexMatrix;

/// The normal form of a {Rz, CNOT} circuit: on basis state `|x⟩` it produces
/// `e^{iπ Σ θ_f f(x)} |h(x)⟩`, where each output qubit of `h` and each `f` is
/// an affine parity of the input bits.
#[derive(Clone, PartialEq, Eq)]
pub struct PhasePolynomial {
    n: usize,
    outputs: Vec<Affine>,
    terms: BTreeMap<Affine, Angle>,
}

impl PhasePolynomial {
    pub fn identity(n: usize) -> Self {
        PhasePolynomial { n, outputs: (0..n).map(|i| Affine::var(n, i)).collect(), terms: BTreeMap::new() }
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    /// Output qubit `q` as a function of the inputs.
    pub fn output(&self, q: usize) -> &Affine {
        &self.outputs[q]
    }

    pub fn outputs(&self) -> &[Affine] {
        &self.outputs
    }

    /// Nonzero terms, ordered by function.
    pub fn terms(&self) -> impl Iterator<Item = (&Affine, Angle)> {
        self.terms.iter().map(|(f, a)| (f, *a))
    }

    pub fn term(&self, f: &Affine) -> Option<Angle> {
        self.terms.get(f).copied()
    }

    fn add_term(&mut self, f: Affine, a: Angle) {
        let sum = self.terms.get(&f).copied().unwrap_or_default() + a;
        if sum.is_zero() {
            self.terms.remove(&f);
        } else {
            self.terms.insert(f, sum);
        }
    }

    /// `(h(x), p(x))` for basis index `x`, with `p` as a multiple of π in `[0, 2)`.
    pub fn eval(&self, x: usize) -> (usize, Angle) {
        let n = self.n;
        let bit = |i: usize| x >> (n - 1 - i) & 1 == 1;
        let y = self.outputs.iter().fold(0, |acc, f| acc << 1 | f.eval(bit) as usize);
        let phase = self.terms.iter().filter(|(f, _)| f.eval(bit)).fold(Angle::zero(), |acc, (_, a)| acc + *a);
        (y, phase)
    }

    /// The unitary: column `x` holds `e^{iπ p(x)}` in row `h(x)`.
    pub fn to_unitary(&self) -> ComplexMatrix {
        let size = 1 << self.n;
        let mut m = ComplexMatrix::zeros(size, size);
        for x in 0..size {
            let (y, p) = self.eval(x);
            m[(y, x)] = Complex64::from_polar(1.0, p.radians());
        }
        m
    }
}

impl fmt::Debug for PhasePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PhasePolynomial").field("h", &self.outputs).field("terms", &self.terms).finish()
    }
}

/// The phase polynomial of `c`. Fails on any gate other than Rz or CNOT.
pub fn phase_poly_of(c: &Circuit) -> Result<PhasePolynomial, ValidateError> {
    let mut pp = PhasePolynomial::identity(c.dim);
    for (index, g) in c.gates.iter().enumerate() {
        match *g {
            GateApp::Rz(a, q) if q < c.dim => {
                let f = pp.outputs[q].clone();
                pp.add_term(f, a);
            }
            GateApp::Cnot(a, b) if a < c.dim && b < c.dim && a != b => {
                let fa = pp.outputs[a].clone();
                pp.outputs[b].xor_assign(&fa);
            }
            GateApp::Rz(..) | GateApp::Cnot(..) => return Err(ValidateError::IllTyped { index }),
            _ => return Err(ValidateError::GateSet { index, gate: *g }),
        }
    }
    Ok(pp)
}
