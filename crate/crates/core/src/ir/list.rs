//! Utilities over flat gate lists.

use super::GateApp;

/// Position of the first gate touching `q`.
pub fn first_gate_on(gates: &[GateApp], q: usize) -> Option<usize> {
    gates.iter().position(|g| g.touches(q))
}

/// Position of the last gate touching `q`.
pub fn last_gate_on(gates: &[GateApp], q: usize) -> Option<usize> {
    gates.iter().rposition(|g| g.touches(q))
}

/// The first gate touching `q` that satisfies `pred`. Gates on `q` that fail
/// `pred` are skipped.
pub fn next_gate(
    gates: &[GateApp],
    q: usize,
    pred: impl Fn(&GateApp) -> bool,
) -> Option<(usize, GateApp)> {
    next_gate_until(gates, q, pred, |_| false)
}

/// Like [`next_gate`], but gives up as soon as a gate on `q` satisfies
/// `blocks` before a match is found.
pub fn next_gate_until(
    gates: &[GateApp],
    q: usize,
    pred: impl Fn(&GateApp) -> bool,
    blocks: impl Fn(&GateApp) -> bool,
) -> Option<(usize, GateApp)> {
    for (i, g) in gates.iter().enumerate() {
        if !g.touches(q) {
            continue;
        }
        if pred(g) {
            return Some((i, *g));
        }
        if blocks(g) {
            return None;
        }
    }
    None
}

/// The next gate on `q`, provided it is a single-qubit gate.
pub fn next_single_qubit_gate(gates: &[GateApp], q: usize) -> Option<(usize, GateApp)> {
    let i = first_gate_on(gates, q)?;
    gates[i].is_single_qubit().then(|| (i, gates[i]))
}

/// The next gate on `q`, provided it is a CNOT. Returns its position, control and target.
pub fn next_two_qubit_gate(gates: &[GateApp], q: usize) -> Option<(usize, usize, usize)> {
    let i = first_gate_on(gates, q)?;
    match gates[i] {
        GateApp::Cnot(c, t) => Some((i, c, t)),
        _ => None,
    }
}

/// The last gate on `q`, provided it is a single-qubit gate.
pub fn last_single_qubit_gate(gates: &[GateApp], q: usize) -> Option<(usize, GateApp)> {
    let i = last_gate_on(gates, q)?;
    gates[i].is_single_qubit().then(|| (i, gates[i]))
}

pub fn does_not_reference(gates: &[GateApp], q: usize) -> bool {
    gates.iter().all(|g| !g.touches(q))
}

/// The adjoint of a gate list: reversed, with every rotation negated.
pub fn invert(gates: &[GateApp]) -> Vec<GateApp> {
    gates.iter().rev().map(GateApp::inverse).collect()
}

/// The largest common prefix of `a` and `b`, up to reordering gates on disjoint qubits.
///
/// Returns `(prefix, rest_a, rest_b)` with `prefix ++ rest_a ≡ a` and
/// `prefix ++ rest_b ≡ b`. Only commutation of gates acting on disjoint qubits
/// is used to move gates into the prefix.
pub fn matching_prefix(
    a: &[GateApp],
    b: &[GateApp],
) -> (Vec<GateApp>, Vec<GateApp>, Vec<GateApp>) {
    let mut prefix = Vec::new();
    let mut rest_a = Vec::new();
    let mut rest_b: Vec<GateApp> = b.to_vec();
    let mut blocked: Vec<usize> = Vec::new();

    for g in a {
        let qs = g.qubits();
        let free = qs.iter().all(|q| !blocked.contains(q));
        let found = free.then(|| first_gate_on(&rest_b, qs[0])).flatten().filter(|&i| {
            rest_b[i] == *g && qs.iter().all(|&q| first_gate_on(&rest_b, q) == Some(i))
        });
        match found {
            Some(i) => {
                rest_b.remove(i);
                prefix.push(*g);
            }
            None => {
                rest_a.push(*g);
                for &q in qs.iter() {
                    if !blocked.contains(&q) {
                        blocked.push(q);
                    }
                }
            }
        }
    }
    (prefix, rest_a, rest_b)
}
