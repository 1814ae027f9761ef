//! Hadamard reduction.

use crate::ir::{
    last_single_qubit_gate, next_single_qubit_gate, next_two_qubit_gate, Angle, Circuit, GateApp,
};

fn p(q: usize) -> GateApp {
    GateApp::Rz(Angle::half(), q)
}

fn pdag(q: usize) -> GateApp {
    GateApp::Rz(Angle::three_halves(), q)
}

fn remove_at(mut l: Vec<GateApp>, i: usize) -> Vec<GateApp> {
    l.remove(i);
    l
}

/// Remove the single-qubit gates of `pat` from the front of `l`, allowing
/// each to be preceded by gates on other qubits.
fn remove_prefix(l: &[GateApp], pat: &[GateApp]) -> Option<Vec<GateApp>> {
    let mut l = l.to_vec();
    for g in pat {
        let (i, h) = next_single_qubit_gate(&l, g.qubits()[0])?;
        if h != *g {
            return None;
        }
        l.remove(i);
    }
    Some(l)
}

fn replace_pattern(l: &[GateApp], pat: &[GateApp], with: &[GateApp]) -> Option<Vec<GateApp>> {
    let rest = remove_prefix(l, pat)?;
    Some(with.iter().copied().chain(rest).collect())
}

/// `H q; CNOT` with H on both ends of both wires becomes the reversed CNOT.
fn reverse_cnot(l: &[GateApp], q: usize) -> Option<Vec<GateApp>> {
    let (i, g) = next_single_qubit_gate(l, q)?;
    if !g.is_h() {
        return None;
    }
    let l = remove_at(l.to_vec(), i);
    let (j, m, n) = next_two_qubit_gate(&l, q)?;
    let other = if q == m { n } else { m };
    let (l1, l2) = (&l[..j], &l[j + 1..]);
    let (k, g) = last_single_qubit_gate(l1, other)?;
    if !g.is_h() {
        return None;
    }
    let l1 = remove_at(l1.to_vec(), k);
    let (k, g) = next_single_qubit_gate(l2, q)?;
    if !g.is_h() {
        return None;
    }
    let l2 = remove_at(l2.to_vec(), k);
    let (k, g) = next_single_qubit_gate(&l2, other)?;
    if !g.is_h() {
        return None;
    }
    let l2 = remove_at(l2, k);
    let mut out = l1;
    out.push(GateApp::Cnot(n, m));
    out.extend(l2);
    Some(out)
}

/// `H q; S q; CNOT _ q; S' q; H q` becomes `S' q; CNOT _ q; S q`, where
/// `(S, S')` is `(P, P†)` or `(P†, P)`.
fn phase_sandwich(l: &[GateApp], q: usize, s: GateApp, s_inv: GateApp) -> Option<Vec<GateApp>> {
    let l1 = remove_prefix(l, &[GateApp::H(q), s])?;
    let (j, c, t) = next_two_qubit_gate(&l1, q)?;
    if t != q {
        return None;
    }
    let l4 = remove_prefix(&l1[j + 1..], &[s_inv, GateApp::H(q)])?;
    let mut out = l1[..j].to_vec();
    out.extend([s_inv, GateApp::Cnot(c, t), s]);
    out.extend(l4);
    Some(out)
}

fn apply_equivalence(l: &[GateApp], q: usize) -> Option<Vec<GateApp>> {
    let h = GateApp::H(q);
    replace_pattern(l, &[h, p(q), h], &[pdag(q), h, pdag(q)])
        .or_else(|| replace_pattern(l, &[h, pdag(q), h], &[p(q), h, p(q)]))
        .or_else(|| reverse_cnot(l, q))
        .or_else(|| phase_sandwich(l, q, p(q), pdag(q)))
        .or_else(|| phase_sandwich(l, q, pdag(q), p(q)))
}

/// Rewrite around each H gate, left to right, with the five Hadamard
/// identities. The H count never increases.
pub fn hadamard_reduction(c: &Circuit) -> Circuit {
    let mut acc: Vec<GateApp> = Vec::with_capacity(c.len());
    let mut rest = c.gates.clone();
    let mut pos = 0;
    let mut fuel = 2 * c.len();
    while pos < rest.len() && fuel > 0 {
        fuel -= 1;
        let g = rest[pos];
        if let GateApp::H(q) = g {
            if let Some(l) = apply_equivalence(&rest[pos..], q) {
                rest = l;
                pos = 0;
                continue;
            }
        }
        acc.push(g);
        pos += 1;
    }
    acc.extend_from_slice(&rest[pos..]);
    c.with_gates(acc)
}
