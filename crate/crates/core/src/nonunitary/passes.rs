use std::collections::VecDeque;

use super::{Block, Program};
use crate::ir::{last_gate_on, GateApp};

/// Delete z-rotations on `q` that directly precede a measurement of `q`.
///
/// The search looks back through the unitary blocks immediately before the
/// measurement and stops at the previous measurement.
pub fn remove_z_rotations_before_measure(p: &Program) -> Program {
    Program::new(p.dim, remove_z(&p.body))
}

fn remove_z(blocks: &[Block]) -> Vec<Block> {
    let mut out: Vec<Block> = Vec::new();
    for b in blocks {
        match b {
            Block::Unitary(g) => out.push(Block::Unitary(g.clone())),
            Block::Meas { qubit, if_one, if_zero } => {
                while let Some((bi, gi)) = last_gate_before_meas(&out, *qubit) {
                    let Block::Unitary(g) = &mut out[bi] else { unreachable!() };
                    if !g[gi].is_rz() {
                        break;
                    }
                    g.remove(gi);
                }
                out.push(Block::Meas {
                    qubit: *qubit,
                    if_one: remove_z(if_one),
                    if_zero: remove_z(if_zero),
                });
            }
        }
    }
    out.retain(|b| !matches!(b, Block::Unitary(g) if g.is_empty()));
    out
}

fn last_gate_before_meas(blocks: &[Block], q: usize) -> Option<(usize, usize)> {
    for (bi, b) in blocks.iter().enumerate().rev() {
        match b {
            Block::Unitary(g) => {
                if let Some(gi) = last_gate_on(g, q) {
                    return Some((bi, gi));
                }
            }
            Block::Meas { .. } => return None,
        }
    }
    None
}

/// Simplify `p` under the assumption that qubit `q` starts in the classical
/// state `|i⟩`, then run one propagation round at the head of every
/// measurement branch, where the measured qubit's value is known.
pub fn propagate_classical_state(p: &Program, q: usize, i: bool) -> Program {
    let (body, _) = track(p.body.clone(), q, i);
    Program::new(p.dim, simplify(body))
}

/// Run one classical-state propagation round at the head of each measurement
/// branch. Needs no assumption about the input state.
pub fn simplify_branches(p: &Program) -> Program {
    Program::new(p.dim, simplify(p.body.clone()))
}

fn simplify(blocks: Vec<Block>) -> Vec<Block> {
    blocks
        .into_iter()
        .map(|b| match b {
            Block::Meas { qubit, if_one, if_zero } => Block::Meas {
                qubit,
                if_one: simplify(track(if_one, qubit, true).0),
                if_zero: simplify(track(if_zero, qubit, false).0),
            },
            u => u,
        })
        .collect()
}

/// Propagate the classical value `bit` of `q` through `blocks`. Returns the
/// rewritten blocks and the value of `q` at the end, if still classical.
fn track(blocks: Vec<Block>, q: usize, bit: bool) -> (Vec<Block>, Option<bool>) {
    let mut queue: VecDeque<Block> = blocks.into();
    let mut out = Vec::new();
    let mut state = Some(bit);
    while let Some(b) = queue.pop_front() {
        let Some(bit) = state else {
            out.push(b);
            continue;
        };
        match b {
            Block::Unitary(gates) => {
                let (gates, s) = track_gates(gates, q, bit);
                state = s;
                if !gates.is_empty() {
                    out.push(Block::Unitary(gates));
                }
            }
            Block::Meas { qubit, if_one, if_zero } if qubit == q => {
                let branch = if bit { if_one } else { if_zero };
                for b in branch.into_iter().rev() {
                    queue.push_front(b);
                }
            }
            Block::Meas { qubit, if_one, if_zero } => {
                let (if_one, s1) = track(if_one, q, bit);
                let (if_zero, s0) = track(if_zero, q, bit);
                state = if s1 == s0 { s1 } else { None };
                out.push(Block::Meas { qubit, if_one, if_zero });
            }
        }
    }
    (out, state)
}

fn track_gates(gates: Vec<GateApp>, q: usize, mut bit: bool) -> (Vec<GateApp>, Option<bool>) {
    let mut out = Vec::with_capacity(gates.len());
    let mut rest = gates.into_iter();
    for g in rest.by_ref() {
        match g {
            _ if !g.touches(q) => out.push(g),
            GateApp::Rz(..) => out.push(g),
            GateApp::X(_) => {
                out.push(g);
                bit = !bit;
            }
            GateApp::Cnot(c, t) if c == q => {
                if bit {
                    out.push(GateApp::X(t));
                }
            }
            GateApp::H(_) | GateApp::Cnot(..) => {
                out.push(g);
                out.extend(rest);
                return (out, None);
            }
        }
    }
    (out, Some(bit))
}
