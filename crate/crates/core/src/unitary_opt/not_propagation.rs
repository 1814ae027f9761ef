//! Push X gates rightward until they cancel or reach the end of the circuit.

use crate::ir::{Angle, Circuit, GateApp};

/// Move every X gate toward the end of the circuit.
///
/// `X; H` becomes `H; Rz(1)`, `X; Rz(k)` becomes `Rz(2 - k); X` (up to global
/// phase), an X on a CNOT control spreads to the target, and two Xs on the same
/// qubit cancel. Xs that reach the end stay there.
pub fn not_propagation(c: &Circuit) -> Circuit {
    let mut gates = c.gates.clone();
    // Gates at or past `limit` were appended by pushing and are not rescanned.
    let mut limit = gates.len();
    let mut i = 0;
    while i < limit {
        match gates[i] {
            GateApp::X(q) => {
                gates.remove(i);
                limit -= 1;
                push_x(&mut gates, &mut limit, i, q);
            }
            _ => i += 1,
        }
    }
    c.with_gates(gates)
}

fn push_x(gates: &mut Vec<GateApp>, limit: &mut usize, start: usize, qubit: usize) {
    let mut frames = vec![(start, qubit)];
    'frame: while let Some((mut j, q)) = frames.pop() {
        while j < gates.len() {
            match gates[j] {
                g if !g.touches(q) => j += 1,
                GateApp::X(_) => {
                    gates.remove(j);
                    if j < *limit {
                        *limit -= 1;
                    }
                    continue 'frame;
                }
                GateApp::H(_) => {
                    gates.insert(j + 1, GateApp::Rz(Angle::new(1, 1), q));
                    if j < *limit {
                        *limit += 1;
                    }
                    continue 'frame;
                }
                GateApp::Rz(k, _) => {
                    gates[j] = GateApp::Rz(k.inverse(), q);
                    j += 1;
                }
                GateApp::Cnot(c, t) if c == q => {
                    frames.push((j + 1, q));
                    frames.push((j + 1, t));
                    continue 'frame;
                }
                GateApp::Cnot(..) => j += 1,
            }
        }
        gates.push(GateApp::X(q));
    }
}
