//! Translation validation: equivalence verdicts, phase-polynomial normal
//! forms, and generators for test circuits.

mod phase_poly;
mod random;

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use thiserror::Error;

use crate::ir::{Circuit, GateApp};
use crate::semantics::{denote_unitary, equiv_up_to_phase, SemanticsError};

pub use phase_poly::{phase_poly_of, PhasePolynomial};
pub use random::{ghz, random_circuit, random_program, GateMix};

/// Largest register for which single state vectors are simulated.
pub const MAX_STATE_DIM: usize = 24;

/// Largest register for which phase polynomials are compared by enumerating
/// basis states.
pub const MAX_ENUMERATION_DIM: usize = 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ValidateError {
    #[error("circuits act on {0} and {1} qubits")]
    DimensionMismatch(usize, usize),
    #[error("gate {index} ({gate}) is not an Rz or CNOT")]
    GateSet { index: usize, gate: GateApp },
    #[error("gate {index} is ill-typed")]
    IllTyped { index: usize },
    #[error("phase polynomials over {0} qubits differ in form and are too large to compare exhaustively")]
    Inconclusive(usize),
    #[error("a GHZ circuit needs at least one qubit")]
    ZeroQubits,
    #[error(transparent)]
    Semantics(#[from] SemanticsError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum EquivMode {
    /// Compare dense unitaries, allowing a global phase.
    #[default]
    Matrix,
    /// Compare phase polynomials exactly. Only for {Rz, CNOT} circuits.
    PhasePoly,
}

impl FromStr for EquivMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "matrix" => Ok(EquivMode::Matrix),
            "phasepoly" | "phase_poly" => Ok(EquivMode::PhasePoly),
            _ => Err(format!("unknown mode `{s}` (expected matrix or phasepoly)")),
        }
    }
}

impl fmt::Display for EquivMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EquivMode::Matrix => "matrix",
            EquivMode::PhasePoly => "phasepoly",
        })
    }
}

/// An output amplitude at which two circuits disagree: on input
/// `|basis_state⟩`, the amplitudes at `row` differ by `deviation`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Witness {
    pub basis_state: usize,
    pub row: usize,
    pub deviation: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum EquivVerdict {
    Equal,
    EqualUpToPhase(f64),
    NotEquivalent(Witness),
}

impl EquivVerdict {
    /// Equal, possibly up to a global phase.
    pub fn is_equivalent(&self) -> bool {
        !matches!(self, EquivVerdict::NotEquivalent(_))
    }
}

impl fmt::Display for EquivVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EquivVerdict::Equal => write!(f, "equal"),
            EquivVerdict::EqualUpToPhase(t) => write!(f, "equal up to global phase {t:.6}"),
            EquivVerdict::NotEquivalent(w) => write!(
                f,
                "not equivalent: input |{}> differs at output {} by {:.3e}",
                w.basis_state, w.row, w.deviation
            ),
        }
    }
}

/// Decide whether `c1` and `c2` denote the same unitary.
///
/// Matrix mode allows a global phase (reported when it exceeds `tol`).
/// Phase-polynomial mode is exact and ignores `tol`.
pub fn check_equiv(c1: &Circuit, c2: &Circuit, mode: EquivMode, tol: f64) -> Result<EquivVerdict, ValidateError> {
    if c1.dim != c2.dim {
        return Err(ValidateError::DimensionMismatch(c1.dim, c2.dim));
    }
    for c in [c1, c2] {
        if let Some(index) = c.gates.iter().position(|g| !Circuit::new(c.dim, vec![*g]).well_typed()) {
            return Err(ValidateError::IllTyped { index });
        }
    }
    match mode {
        EquivMode::Matrix => matrix_verdict(c1, c2, tol),
        EquivMode::PhasePoly => phase_poly_verdict(c1, c2),
    }
}

fn matrix_verdict(c1: &Circuit, c2: &Circuit, tol: f64) -> Result<EquivVerdict, ValidateError> {
    let a = denote_unitary(c1)?;
    let b = denote_unitary(c2)?;
    if let Some(ph) = equiv_up_to_phase(&a, &b, tol) {
        return Ok(if ph.is_trivial(tol) { EquivVerdict::Equal } else { EquivVerdict::EqualUpToPhase(ph.theta) });
    }
    let n = a.rows();
    let mut w = Witness { basis_state: 0, row: 0, deviation: -1.0 };
    for row in 0..n {
        for col in 0..n {
            let d = (a[(row, col)] - b[(row, col)]).norm();
            if d > w.deviation {
                w = Witness { basis_state: col, row, deviation: d };
            }
        }
    }
    Ok(EquivVerdict::NotEquivalent(w))
}

fn phase_poly_verdict(c1: &Circuit, c2: &Circuit) -> Result<EquivVerdict, ValidateError> {
    let p1 = phase_poly_of(c1)?;
    let p2 = phase_poly_of(c2)?;
    if p1 == p2 {
        return Ok(EquivVerdict::Equal);
    }
    // Distinct term sets can still describe the same phase function.
    let n = c1.dim;
    if n > MAX_ENUMERATION_DIM {
        return Err(ValidateError::Inconclusive(n));
    }
    for x in 0..1usize << n {
        let (y1, a1) = p1.eval(x);
        let (y2, a2) = p2.eval(x);
        if y1 != y2 {
            return Ok(EquivVerdict::NotEquivalent(Witness { basis_state: x, row: y1, deviation: 1.0 }));
        }
        if a1 != a2 {
            let d = (Complex64::from_polar(1.0, a1.radians()) - Complex64::from_polar(1.0, a2.radians())).norm();
            return Ok(EquivVerdict::NotEquivalent(Witness { basis_state: x, row: y1, deviation: d }));
        }
    }
    Ok(EquivVerdict::Equal)
}
