use rand::distributions::{Distribution, WeightedIndex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::ValidateError;
use crate::ir::{Angle, Circuit, GateApp};
use crate::nonunitary::{Block, Program};

/// Relative weights for drawing H, X, Rz and CNOT gates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GateMix {
    pub h: u32,
    pub x: u32,
    pub rz: u32,
    pub cnot: u32,
}

impl GateMix {
    pub const UNIFORM: GateMix = GateMix { h: 1, x: 1, rz: 1, cnot: 1 };
    pub const NO_CNOT: GateMix = GateMix { h: 1, x: 1, rz: 1, cnot: 0 };
    pub const RZ_CNOT: GateMix = GateMix { h: 0, x: 0, rz: 1, cnot: 1 };
    /// Rotation-heavy, close to Clifford+T benchmark circuits.
    pub const CLIFFORD_T: GateMix = GateMix { h: 2, x: 1, rz: 4, cnot: 4 };
}

impl Default for GateMix {
    fn default() -> Self {
        GateMix::UNIFORM
    }
}

fn random_gate(rng: &mut ChaCha8Rng, dim: usize, pick: &WeightedIndex<u32>) -> GateApp {
    let q = rng.gen_range(0..dim);
    match pick.sample(rng) {
        0 => GateApp::H(q),
        1 => GateApp::X(q),
        2 => GateApp::Rz(Angle::new(rng.gen_range(1..=7), 4), q),
        _ => {
            let t = (q + rng.gen_range(1..dim)) % dim;
            GateApp::Cnot(q, t)
        }
    }
}

fn weights(dim: usize, mix: GateMix) -> WeightedIndex<u32> {
    let cnot = if dim >= 2 { mix.cnot } else { 0 };
    WeightedIndex::new([mix.h, mix.x, mix.rz, cnot]).expect("gate mix has no usable gate")
}

/// A well-typed circuit of `len` gates drawn with `mix`, deterministic in
/// `seed`. Rotation angles are multiples of π/4. CNOTs are skipped when
/// `dim < 2`. Panics if `dim == 0` or no gate kind has positive weight.
pub fn random_circuit(dim: usize, len: usize, seed: u64, mix: GateMix) -> Circuit {
    assert!(dim >= 1, "random_circuit needs at least one qubit");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pick = weights(dim, mix);
    Circuit::new(dim, (0..len).map(|_| random_gate(&mut rng, dim, &pick)).collect())
}

/// A random program of at most `blocks` top-level blocks mixing unitary
/// segments, plain measurements, resets and measurements with branches
/// (nested at most `depth` deep).
pub fn random_program(dim: usize, blocks: usize, depth: usize, seed: u64) -> Program {
    assert!(dim >= 1, "random_program needs at least one qubit");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pick = weights(dim, GateMix::CLIFFORD_T);
    Program::new(dim, random_blocks(&mut rng, dim, blocks, depth, &pick))
}

fn random_blocks(
    rng: &mut ChaCha8Rng,
    dim: usize,
    count: usize,
    depth: usize,
    pick: &WeightedIndex<u32>,
) -> Vec<Block> {
    (0..count)
        .map(|_| {
            let q = rng.gen_range(0..dim);
            match rng.gen_range(0..10) {
                0..=4 => {
                    let len = rng.gen_range(1..=6);
                    Block::Unitary((0..len).map(|_| random_gate(rng, dim, pick)).collect())
                }
                5 => Block::measure(q),
                6 => Block::reset(q),
                _ if depth == 0 => Block::measure(q),
                _ => {
                    let n1 = rng.gen_range(0..=2);
                    let n0 = rng.gen_range(0..=2);
                    Block::Meas {
                        qubit: q,
                        if_one: random_blocks(rng, dim, n1, depth - 1, pick),
                        if_zero: random_blocks(rng, dim, n0, depth - 1, pick),
                    }
                }
            }
        })
        .collect()
}

/// `H 0; CNOT 0 1; …; CNOT (n-2) (n-1)`, preparing the n-qubit GHZ state.
pub fn ghz(n: usize) -> Result<Circuit, ValidateError> {
    if n == 0 {
        return Err(ValidateError::ZeroQubits);
    }
    let mut gates = vec![GateApp::H(0)];
    gates.extend((1..n).map(|i| GateApp::Cnot(i - 1, i)));
    Ok(Circuit::new(n, gates))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_circuit_examples() {
        let c = random_circuit(1, 10, 7, GateMix::NO_CNOT);
        assert_eq!(c.len(), 10);
        assert!(c.gates.iter().all(GateApp::is_single_qubit));
        assert!(random_circuit(2, 0, 7, GateMix::UNIFORM).is_empty());
        assert_eq!(random_circuit(4, 30, 9, GateMix::UNIFORM), random_circuit(4, 30, 9, GateMix::UNIFORM));
        assert!(random_circuit(1, 20, 3, GateMix::UNIFORM).well_typed());
    }

    #[test]
    fn random_programs_are_well_typed() {
        for seed in 0..20 {
            assert!(random_program(3, 6, 2, seed).well_typed());
        }
    }

    #[test]
    fn ghz_examples() {
        use GateApp::*;
        assert_eq!(ghz(1).unwrap().gates, vec![H(0)]);
        assert_eq!(ghz(3).unwrap().gates, vec![H(0), Cnot(0, 1), Cnot(1, 2)]);
        assert_eq!(ghz(0), Err(ValidateError::ZeroQubits));
    }
}
