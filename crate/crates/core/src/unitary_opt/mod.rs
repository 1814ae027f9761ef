//! Unitary circuit optimizations and the pass scheduler.

mod cancellation;
mod hadamard;
mod merge;
mod not_propagation;
mod propagate;
pub mod rules;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::ir::{invert, matching_prefix, Circuit, GateApp};

pub use cancellation::{
    cancel_single_qubit_gates, cancel_two_qubit_gates, single_qubit_rules, two_qubit_rules,
};
pub use hadamard::hadamard_reduction;
pub use merge::merge_rotations;
pub use not_propagation::not_propagation;
pub use propagate::{propagate, Outcome, RewriteRule, RuleKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pass {
    NotPropagation,
    HadamardReduction,
    CancelSingleQubit,
    CancelTwoQubit,
    MergeRotations,
}

impl Pass {
    pub const ALL: [Pass; 5] = [
        Pass::NotPropagation,
        Pass::HadamardReduction,
        Pass::CancelSingleQubit,
        Pass::CancelTwoQubit,
        Pass::MergeRotations,
    ];

    /// The digit naming this pass in a schedule string.
    pub fn digit(self) -> char {
        match self {
            Pass::NotPropagation => '0',
            Pass::HadamardReduction => '1',
            Pass::CancelSingleQubit => '2',
            Pass::CancelTwoQubit => '3',
            Pass::MergeRotations => '4',
        }
    }

    pub fn from_digit(c: char) -> Option<Pass> {
        Pass::ALL.into_iter().find(|p| p.digit() == c)
    }

    pub fn name(self) -> &'static str {
        match self {
            Pass::NotPropagation => "not_propagation",
            Pass::HadamardReduction => "hadamard_reduction",
            Pass::CancelSingleQubit => "cancel_single_qubit_gates",
            Pass::CancelTwoQubit => "cancel_two_qubit_gates",
            Pass::MergeRotations => "merge_rotations",
        }
    }

    pub fn apply(self, c: &Circuit) -> Circuit {
        match self {
            Pass::NotPropagation => not_propagation(c),
            Pass::HadamardReduction => hadamard_reduction(c),
            Pass::CancelSingleQubit => cancel_single_qubit_gates(c),
            Pass::CancelTwoQubit => cancel_two_qubit_gates(c),
            Pass::MergeRotations => merge_rotations(c),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("invalid pass `{0}` in schedule (expected digits 0-4)")]
pub struct ScheduleError(pub char);

/// An ordered sequence of passes, written as a digit string such as `"0132312432"`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Schedule(pub Vec<Pass>);

impl Schedule {
    pub const DEFAULT: &'static str = "0132312432";

    pub fn passes(&self) -> &[Pass] {
        &self.0
    }
}

impl Default for Schedule {
    fn default() -> Self {
        Schedule::DEFAULT.parse().unwrap()
    }
}

impl FromStr for Schedule {
    type Err = ScheduleError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars().map(|c| Pass::from_digit(c).ok_or(ScheduleError(c))).collect::<Result<_, _>>().map(Schedule)
    }
}

impl fmt::Display for Schedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.iter().try_for_each(|p| write!(f, "{}", p.digit()))
    }
}

/// Run the default schedule.
pub fn optimize(c: &Circuit) -> Circuit {
    optimize_with(c, &Schedule::default())
}

pub fn optimize_with(c: &Circuit, schedule: &Schedule) -> Circuit {
    schedule.passes().iter().fold(c.clone(), |acc, p| p.apply(&acc))
}

/// Split a loop body into `(L, C, R)` so that `n ≥ 3` iterations of `c`
/// equal `L; C^(n-2); R` up to global phase.
///
/// `L` is the part of `optimize(O; O)` that matches a prefix of
/// `O = optimize(c)`, and `R` is the rest. `C` is what remains of
/// `optimize(O; O; O)` once `L` and `R` are stripped from its ends, or
/// `optimize(L⁻¹; O; L)` when they cannot be stripped.
pub fn optimize_lcr(c: &Circuit) -> Option<(Circuit, Circuit, Circuit)> {
    if c.is_empty() {
        let e = Circuit::empty(c.dim);
        return Some((e.clone(), e.clone(), e));
    }
    let o = optimize(c);
    let o2 = optimize(&o.repeat(2));
    let (l, r, _) = matching_prefix(&o2.gates, &o.gates);
    let o3 = optimize(&o.repeat(3));
    let core = strip(&o3.gates, &l, &r).unwrap_or_else(|| {
        let conj = Circuit::new(c.dim, invert(&l)).then(&o).then(&Circuit::new(c.dim, l.clone()));
        optimize(&conj).gates
    });
    Some((c.with_gates(l), c.with_gates(core), c.with_gates(r)))
}

/// `gates` with `prefix` removed from the front and `suffix` from the back,
/// if both match completely.
fn strip(gates: &[GateApp], prefix: &[GateApp], suffix: &[GateApp]) -> Option<Vec<GateApp>> {
    let (p, _, rest) = matching_prefix(prefix, gates);
    if p.len() != prefix.len() {
        return None;
    }
    let rev = |l: &[GateApp]| l.iter().rev().copied().collect::<Vec<_>>();
    let (s, _, rest) = matching_prefix(&rev(suffix), &rev(&rest));
    (s.len() == suffix.len()).then(|| rev(&rest))
}
