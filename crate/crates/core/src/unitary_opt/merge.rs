//! Rotation merging over {Rz, CNOT} subcircuits.

use std::collections::HashMap;

use crate::ir::{Affine, Circuit, GateApp};

/// Combine z-rotations that act on the same affine function of the qubit
/// values.
///
/// Starting from each Rz, the scan follows CNOTs and tracks every qubit's
/// value as a parity of the values at the starting point. H and X gates end
/// tracking on their qubit. When a later Rz sits on the same parity as the
/// starting one, the two are replaced by a single rotation at the later
/// position, or removed if the angles sum to zero.
pub fn merge_rotations(c: &Circuit) -> Circuit {
    let mut gates = c.gates.clone();
    let mut i = 0;
    while i < gates.len() {
        match gates[i] {
            GateApp::Rz(a, q) => match find_partner(&gates, i, c.dim, q) {
                Some(j) => {
                    let GateApp::Rz(b, p) = gates[j] else { unreachable!() };
                    let sum = a + b;
                    if sum.is_zero() {
                        gates.remove(j);
                    } else {
                        gates[j] = GateApp::Rz(sum, p);
                    }
                    gates.remove(i);
                }
                None => i += 1,
            },
            _ => i += 1,
        }
    }
    c.with_gates(gates)
}

/// The first Rz after `i` acting on the same parity as qubit `q` at `i`.
fn find_partner(gates: &[GateApp], i: usize, dim: usize, q: usize) -> Option<usize> {
    let target = Affine::var(dim, q);
    let mut func: HashMap<usize, Affine> = HashMap::new();
    let mut blocked = vec![false; dim];
    let mut num_blocked = 0;
    let mut block = |p: usize, blocked: &mut Vec<bool>| {
        if !blocked[p] {
            blocked[p] = true;
            num_blocked += 1;
        }
        num_blocked == dim
    };
    for (j, g) in gates.iter().enumerate().skip(i + 1) {
        match *g {
            GateApp::H(p) | GateApp::X(p) => {
                if block(p, &mut blocked) {
                    return None;
                }
            }
            GateApp::Rz(_, p) => {
                let f = func.get(&p).cloned().unwrap_or_else(|| Affine::var(dim, p));
                if !blocked[p] && f == target {
                    return Some(j);
                }
            }
            GateApp::Cnot(c, t) => {
                if blocked[c] {
                    if block(t, &mut blocked) {
                        return None;
                    }
                } else if !blocked[t] {
                    let fc = func.get(&c).cloned().unwrap_or_else(|| Affine::var(dim, c));
                    func.entry(t).or_insert_with(|| Affine::var(dim, t)).xor_assign(&fc);
                }
            }
        }
    }
    None
}
