use super::GateApp;

/// A unitary program over a global register of `dim` qubits, flattened into a gate list.
///
/// Passes take circuits by reference and return fresh ones.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Circuit {
    pub dim: usize,
    pub gates: Vec<GateApp>,
}

impl Circuit {
    pub fn new(dim: usize, gates: Vec<GateApp>) -> Self {
        Circuit { dim, gates }
    }

    pub fn empty(dim: usize) -> Self {
        Circuit { dim, gates: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn with_gates(&self, gates: Vec<GateApp>) -> Self {
        Circuit { dim: self.dim, gates }
    }

    /// `self; other`, both over the same register.
    pub fn then(&self, other: &Circuit) -> Circuit {
        let mut gates = self.gates.clone();
        gates.extend_from_slice(&other.gates);
        Circuit { dim: self.dim.max(other.dim), gates }
    }

    /// `self` repeated `n` times.
    pub fn repeat(&self, n: usize) -> Circuit {
        Circuit { dim: self.dim, gates: self.gates.repeat(n) }
    }

    pub fn inverse(&self) -> Circuit {
        Circuit { dim: self.dim, gates: super::invert(&self.gates) }
    }

    pub fn well_typed(&self) -> bool {
        well_typed(self)
    }

    pub fn counts(&self) -> GateCounts {
        count_gates(self)
    }
}

/// Every index is in bounds and no gate repeats an index.
pub fn well_typed(c: &Circuit) -> bool {
    c.gates.iter().all(|g| match *g {
        GateApp::H(q) | GateApp::X(q) | GateApp::Rz(_, q) => q < c.dim,
        GateApp::Cnot(a, b) => a < c.dim && b < c.dim && a != b,
    })
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct GateCounts {
    pub total: usize,
    pub h: usize,
    pub x: usize,
    pub rz: usize,
    pub cnot: usize,
    /// Rz gates whose angle is an odd multiple of π/4.
    pub t_count: usize,
    /// Rz gates that are not T-like.
    pub other_rz: usize,
}

pub fn count_gates(c: &Circuit) -> GateCounts {
    count_gate_list(&c.gates)
}

pub fn count_gate_list(gates: &[GateApp]) -> GateCounts {
    let mut n = GateCounts::default();
    for g in gates {
        match g {
            GateApp::H(_) => n.h += 1,
            GateApp::X(_) => n.x += 1,
            GateApp::Cnot(..) => n.cnot += 1,
            GateApp::Rz(a, _) => {
                n.rz += 1;
                if a.is_t_like() {
                    n.t_count += 1;
                } else {
                    n.other_rz += 1;
                }
            }
        }
    }
    n.total = n.h + n.x + n.rz + n.cnot;
    n
}
