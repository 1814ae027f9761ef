use std::fmt;
use std::ops::Deref;

use super::Angle;

/// A gate from the base optimizer set, without qubit arguments.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Gate {
    H,
    X,
    Rz(Angle),
    Cnot,
}

impl Gate {
    pub fn arity(&self) -> usize {
        match self {
            Gate::Cnot => 2,
            _ => 1,
        }
    }
}

/// The qubit arguments of a gate application, at most two.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Qubits {
    buf: [usize; 2],
    len: u8,
}

impl Qubits {
    pub fn one(q: usize) -> Self {
        Qubits { buf: [q, 0], len: 1 }
    }

    pub fn two(a: usize, b: usize) -> Self {
        Qubits { buf: [a, b], len: 2 }
    }
}

impl Deref for Qubits {
    type Target = [usize];
    fn deref(&self) -> &[usize] {
        &self.buf[..self.len as usize]
    }
}

impl fmt::Debug for Qubits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.iter()).finish()
    }
}

/// A gate applied to concrete indices of the global register.
///
/// For `Cnot(c, t)`, `c` is the control and `t` the target.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub enum GateApp {
    H(usize),
    X(usize),
    Rz(Angle, usize),
    Cnot(usize, usize),
}

impl GateApp {
    pub fn gate(&self) -> Gate {
        match *self {
            GateApp::H(_) => Gate::H,
            GateApp::X(_) => Gate::X,
            GateApp::Rz(a, _) => Gate::Rz(a),
            GateApp::Cnot(..) => Gate::Cnot,
        }
    }

    pub fn qubits(&self) -> Qubits {
        match *self {
            GateApp::H(q) | GateApp::X(q) | GateApp::Rz(_, q) => Qubits::one(q),
            GateApp::Cnot(c, t) => Qubits::two(c, t),
        }
    }

    pub fn touches(&self, q: usize) -> bool {
        match *self {
            GateApp::H(p) | GateApp::X(p) | GateApp::Rz(_, p) => p == q,
            GateApp::Cnot(c, t) => c == q || t == q,
        }
    }

    pub fn is_single_qubit(&self) -> bool {
        !matches!(self, GateApp::Cnot(..))
    }

    pub fn is_cnot(&self) -> bool {
        matches!(self, GateApp::Cnot(..))
    }

    pub fn is_h(&self) -> bool {
        matches!(self, GateApp::H(_))
    }

    pub fn is_x(&self) -> bool {
        matches!(self, GateApp::X(_))
    }

    pub fn is_rz(&self) -> bool {
        matches!(self, GateApp::Rz(..))
    }

    /// The adjoint gate. H, X and CNOT are self-inverse.
    pub fn inverse(&self) -> GateApp {
        match *self {
            GateApp::Rz(a, q) => GateApp::Rz(a.inverse(), q),
            g => g,
        }
    }

    /// Apply a qubit relabeling to the arguments.
    pub fn map_qubits(&self, f: impl Fn(usize) -> usize) -> GateApp {
        match *self {
            GateApp::H(q) => GateApp::H(f(q)),
            GateApp::X(q) => GateApp::X(f(q)),
            GateApp::Rz(a, q) => GateApp::Rz(a, f(q)),
            GateApp::Cnot(c, t) => GateApp::Cnot(f(c), f(t)),
        }
    }
}

impl fmt::Debug for GateApp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GateApp::H(q) => write!(f, "H {q}"),
            GateApp::X(q) => write!(f, "X {q}"),
            GateApp::Rz(a, q) => write!(f, "Rz({a}) {q}"),
            GateApp::Cnot(c, t) => write!(f, "CNOT {c} {t}"),
        }
    }
}

impl fmt::Display for GateApp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}
