//! Single- and two-qubit gate cancellation by propagation.

use super::propagate::{propagate_rest, Outcome, RewriteRule, RuleKind};
use crate::ir::{
    does_not_reference, next_single_qubit_gate, next_two_qubit_gate, Angle, Circuit, GateApp,
};

fn without(l: &[GateApp], i: usize) -> Vec<GateApp> {
    let mut v = Vec::with_capacity(l.len().saturating_sub(1));
    v.extend_from_slice(&l[..i]);
    v.extend_from_slice(&l[i + 1..]);
    v
}

fn refs_none(l: &[GateApp], qs: &[usize]) -> bool {
    qs.iter().all(|&q| does_not_reference(l, q))
}

/// `H q` cancels with the next gate on `q` if that is also `H`.
pub fn h_cancel_rule<'a>(q: usize) -> RewriteRule<'a> {
    RewriteRule::new("h_cancel", RuleKind::Cancellation, move |l| {
        match next_single_qubit_gate(l, q)? {
            (i, GateApp::H(_)) => Some(Outcome::Cancelled(without(l, i))),
            _ => None,
        }
    })
}

/// `X q` cancels with the next gate on `q` if that is also `X`.
pub fn x_cancel_rule<'a>(q: usize) -> RewriteRule<'a> {
    RewriteRule::new("x_cancel", RuleKind::Cancellation, move |l| {
        match next_single_qubit_gate(l, q)? {
            (i, GateApp::X(_)) => Some(Outcome::Cancelled(without(l, i))),
            _ => None,
        }
    })
}

/// `X q` commutes past a CNOT that targets `q`.
pub fn x_commute_rule<'a>(q: usize) -> RewriteRule<'a> {
    RewriteRule::new("x_cnot_target", RuleKind::Commutation, move |l| {
        let (i, _, t) = next_two_qubit_gate(l, q)?;
        (t == q).then_some(Outcome::Advance(i + 1))
    })
}

/// `Rz(a) q` merges with the next rotation on `q`; a zero sum deletes both.
pub fn rz_cancel_rule<'a>(a: Angle, q: usize) -> RewriteRule<'a> {
    RewriteRule::new("rz_combine", RuleKind::Cancellation, move |l| {
        let (i, g) = next_single_qubit_gate(l, q)?;
        let GateApp::Rz(b, _) = g else { return None };
        let sum = a + b;
        let mut out = Vec::with_capacity(l.len());
        if !sum.is_zero() {
            out.push(GateApp::Rz(sum, q));
        }
        out.extend_from_slice(&l[..i]);
        out.extend_from_slice(&l[i + 1..]);
        Some(Outcome::Cancelled(out))
    })
}

/// `Rz q` moves past `H q; CNOT p q; H q`.
pub fn rz_commute_h_cnot_h<'a>(q: usize) -> RewriteRule<'a> {
    RewriteRule::new("rz_h_cnot_h", RuleKind::Commutation, move |l| {
        let (i, g) = next_single_qubit_gate(l, q)?;
        if !g.is_h() {
            return None;
        }
        let (j, _, t) = next_two_qubit_gate(&l[i + 1..], q)?;
        if t != q {
            return None;
        }
        let j = i + 1 + j;
        let (k, g) = next_single_qubit_gate(&l[j + 1..], q)?;
        g.is_h().then_some(Outcome::Advance(j + 1 + k + 1))
    })
}

/// `Rz q` moves past `CNOT p q; Rz q; CNOT p q` when nothing in between touches `p`.
pub fn rz_commute_cnot_sandwich<'a>(q: usize) -> RewriteRule<'a> {
    RewriteRule::new("rz_cnot_rz_cnot", RuleKind::Commutation, move |l| {
        let (i, c, t) = next_two_qubit_gate(l, q)?;
        if t != q {
            return None;
        }
        let (j, g) = next_single_qubit_gate(&l[i + 1..], q)?;
        if !g.is_rz() {
            return None;
        }
        let j = i + 1 + j;
        let (k, c2, t2) = next_two_qubit_gate(&l[j + 1..], q)?;
        let k = j + 1 + k;
        let between = &l[i + 1..k];
        (t2 == q && c2 == c && does_not_reference(between, c)).then_some(Outcome::Advance(k + 1))
    })
}

/// `Rz q` moves past a CNOT controlled by `q`.
pub fn rz_commute_cnot_control<'a>(q: usize) -> RewriteRule<'a> {
    RewriteRule::new("rz_cnot_control", RuleKind::Commutation, move |l| {
        let (i, c, _) = next_two_qubit_gate(l, q)?;
        (c == q).then_some(Outcome::Advance(i + 1))
    })
}

/// `CNOT c t` cancels with an identical CNOT when nothing in between touches `t`.
pub fn cnot_cancel_rule<'a>(c: usize, t: usize) -> RewriteRule<'a> {
    RewriteRule::new("cnot_cancel", RuleKind::Cancellation, move |l| {
        let (i, c2, t2) = next_two_qubit_gate(l, c)?;
        (c2 == c && t2 == t && does_not_reference(&l[..i], t)).then(|| Outcome::Cancelled(without(l, i)))
    })
}

/// A rotation on the control is pulled in front of the CNOT.
pub fn cnot_commute_rz_control<'a>(c: usize) -> RewriteRule<'a> {
    RewriteRule::new("cnot_rz_control", RuleKind::Commutation, move |l| {
        let (i, g) = next_single_qubit_gate(l, c)?;
        g.is_rz().then(|| Outcome::Rearranged { passed: vec![g], rest: without(l, i) })
    })
}

/// CNOTs sharing a target commute.
pub fn cnot_commute_shared_target<'a>(c: usize, t: usize) -> RewriteRule<'a> {
    RewriteRule::new("cnot_shared_target", RuleKind::Commutation, move |l| {
        let (i, c2, t2) = next_two_qubit_gate(l, t)?;
        (t2 == t && refs_none(&l[..i], &[c, c2])).then_some(Outcome::Advance(i + 1))
    })
}

/// CNOTs sharing a control commute.
pub fn cnot_commute_shared_control<'a>(c: usize, t: usize) -> RewriteRule<'a> {
    RewriteRule::new("cnot_shared_control", RuleKind::Commutation, move |l| {
        let (i, c2, t2) = next_two_qubit_gate(l, c)?;
        (c2 == c && refs_none(&l[..i], &[t, t2])).then_some(Outcome::Advance(i + 1))
    })
}

/// `CNOT c t` moves past `H t; CNOT t u; H t`.
pub fn cnot_commute_h_cnot_h<'a>(c: usize, t: usize) -> RewriteRule<'a> {
    RewriteRule::new("cnot_h_cnot_h", RuleKind::Commutation, move |l| {
        let (i, g) = next_single_qubit_gate(l, t)?;
        if !g.is_h() {
            return None;
        }
        let (j, c2, t2) = next_two_qubit_gate(&l[i + 1..], t)?;
        let j = i + 1 + j;
        if c2 != t || t2 == c || !does_not_reference(&l[..j], c) {
            return None;
        }
        let (k, g) = next_single_qubit_gate(&l[j + 1..], t)?;
        if !g.is_h() {
            return None;
        }
        let k = j + 1 + k;
        let mut passed = l[..=j].to_vec();
        passed.push(GateApp::H(t));
        let mut rest = l[j + 1..k].to_vec();
        rest.extend_from_slice(&l[k + 1..]);
        Some(Outcome::Rearranged { passed, rest })
    })
}

/// `CNOT c t` moves past `Rz(a) t; CNOT c t; Rz(b) t`, exchanging the rotations.
pub fn cnot_commute_rz_sandwich<'a>(c: usize, t: usize) -> RewriteRule<'a> {
    RewriteRule::new("cnot_rz_cnot_rz", RuleKind::Commutation, move |l| {
        let (i, g) = next_single_qubit_gate(l, t)?;
        let GateApp::Rz(a, _) = g else { return None };
        let (j, c2, t2) = next_two_qubit_gate(&l[i + 1..], t)?;
        let j = i + 1 + j;
        if c2 != c || t2 != t || !does_not_reference(&l[..j], c) {
            return None;
        }
        let (k, g) = next_single_qubit_gate(&l[j + 1..], t)?;
        let GateApp::Rz(b, _) = g else { return None };
        let k = j + 1 + k;
        let mut passed = l[..i].to_vec();
        passed.push(GateApp::Rz(b, t));
        passed.extend_from_slice(&l[i + 1..j]);
        passed.push(GateApp::Cnot(c, t));
        passed.push(GateApp::Rz(a, t));
        let mut rest = l[j + 1..k].to_vec();
        rest.extend_from_slice(&l[k + 1..]);
        Some(Outcome::Rearranged { passed, rest })
    })
}

/// The rules used to propagate a single-qubit gate.
pub fn single_qubit_rules<'a>(g: GateApp) -> Vec<RewriteRule<'a>> {
    match g {
        GateApp::H(q) => vec![h_cancel_rule(q)],
        GateApp::X(q) => vec![x_cancel_rule(q), x_commute_rule(q)],
        GateApp::Rz(a, q) => vec![
            rz_cancel_rule(a, q),
            rz_commute_h_cnot_h(q),
            rz_commute_cnot_sandwich(q),
            rz_commute_cnot_control(q),
        ],
        GateApp::Cnot(..) => Vec::new(),
    }
}

/// The rules used to propagate a CNOT.
pub fn two_qubit_rules<'a>(c: usize, t: usize) -> Vec<RewriteRule<'a>> {
    vec![
        cnot_cancel_rule(c, t),
        cnot_commute_rz_control(c),
        cnot_commute_shared_target(c, t),
        cnot_commute_shared_control(c, t),
        cnot_commute_h_cnot_h(c, t),
        cnot_commute_rz_sandwich(c, t),
    ]
}

/// Scan left to right, propagating each gate selected by `rules_for`. After a
/// successful cancellation the scan resumes at the same position.
fn cancel_by_propagation(c: &Circuit, rules_for: impl Fn(GateApp) -> Vec<RewriteRule<'static>>) -> Circuit {
    let mut done: Vec<GateApp> = Vec::with_capacity(c.len());
    let mut rest: Vec<GateApp> = c.gates.clone();
    let mut pos = 0;
    while pos < rest.len() {
        let g = rest[pos];
        let rules = rules_for(g);
        let replaced = if rules.is_empty() {
            None
        } else {
            let tail = &rest[pos + 1..];
            propagate_rest(tail, &rules, tail.len())
        };
        match replaced {
            Some(new_rest) => {
                rest = new_rest;
                pos = 0;
            }
            None => {
                done.push(g);
                pos += 1;
            }
        }
    }
    c.with_gates(done)
}

/// Propagate every H, X and Rz rightward, combining rotations and cancelling
/// self-inverse pairs where the commutation rules allow them to meet.
pub fn cancel_single_qubit_gates(c: &Circuit) -> Circuit {
    cancel_by_propagation(c, single_qubit_rules)
}

/// Propagate every CNOT rightward, cancelling identical pairs.
pub fn cancel_two_qubit_gates(c: &Circuit) -> Circuit {
    cancel_by_propagation(c, |g| match g {
        GateApp::Cnot(a, b) => two_qubit_rules(a, b),
        _ => Vec::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::unitary_opt::propagate;
    use GateApp::*;

    fn q(n: i64, d: i64) -> Angle {
        Angle::new(n, d)
    }

    #[test]
    fn propagate_examples() {
        let l = [H(0), H(0)];
        assert_eq!(propagate(&l, 0, &[h_cancel_rule(0)], 2), Some(vec![]));
        let l = [Rz(q(1, 4), 0), Cnot(0, 1), Rz(q(7, 4), 0)];
        assert_eq!(propagate(&l, 0, &single_qubit_rules(l[0]), 3), Some(vec![Cnot(0, 1)]));
        let l = [H(0), X(0)];
        assert_eq!(propagate(&l, 1, &single_qubit_rules(l[1]), 2), None);
    }

    #[test]
    fn single_qubit_examples() {
        let c = |g: Vec<GateApp>| Circuit::new(2, g);
        assert_eq!(cancel_single_qubit_gates(&c(vec![Rz(q(1, 4), 0), Rz(q(1, 4), 0)])).gates, vec![Rz(q(1, 2), 0)]);
        assert_eq!(cancel_single_qubit_gates(&c(vec![Rz(q(1, 4), 0), Rz(q(7, 4), 0)])).gates, vec![]);
        let l = vec![Rz(q(1, 4), 1), Cnot(0, 1)];
        assert_eq!(cancel_single_qubit_gates(&c(l.clone())).gates, l);
    }

    #[test]
    fn two_qubit_examples() {
        let c = |g: Vec<GateApp>| Circuit::new(3, g);
        assert_eq!(cancel_two_qubit_gates(&c(vec![Cnot(0, 1), Cnot(0, 1)])).gates, vec![]);
        assert_eq!(cancel_two_qubit_gates(&c(vec![Cnot(0, 2), Cnot(1, 2), Cnot(0, 2)])).gates, vec![Cnot(1, 2)]);
        let l = vec![Cnot(0, 1), Cnot(1, 0)];
        assert_eq!(cancel_two_qubit_gates(&c(l.clone())).gates, l);
    }

    #[test]
    fn rearranging_rules() {
        let c = Circuit::new(2, vec![Cnot(0, 1), Rz(q(1, 4), 0), Cnot(0, 1)]);
        assert_eq!(cancel_two_qubit_gates(&c).gates, vec![Rz(q(1, 4), 0)]);
        let c = Circuit::new(
            2,
            vec![Cnot(0, 1), Rz(q(1, 4), 1), Cnot(0, 1), Rz(q(3, 4), 1), Cnot(0, 1)],
        );
        assert_eq!(cancel_two_qubit_gates(&c).gates, vec![Rz(q(3, 4), 1), Cnot(0, 1), Rz(q(1, 4), 1)]);
    }
}
