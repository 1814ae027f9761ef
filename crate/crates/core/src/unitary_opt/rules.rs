//! The circuit identities behind the optimization passes, as concrete gate
//! lists that can be checked by simulation.

use crate::ir::{Angle, Circuit, GateApp};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RuleFamily {
    NotPropagation,
    Commutation,
    Cancellation,
    HadamardReduction,
}

/// A pair of circuits the optimizer treats as interchangeable.
#[derive(Clone, Debug)]
pub struct RuleIdentity {
    pub name: &'static str,
    pub family: RuleFamily,
    /// Whether `lhs` and `rhs` are equal exactly, not just up to global phase.
    pub phase_exact: bool,
    pub lhs: Circuit,
    pub rhs: Circuit,
}

impl RuleIdentity {
    fn new(
        name: &'static str,
        family: RuleFamily,
        phase_exact: bool,
        dim: usize,
        lhs: Vec<GateApp>,
        rhs: Vec<GateApp>,
    ) -> Self {
        RuleIdentity { name, family, phase_exact, lhs: Circuit::new(dim, lhs), rhs: Circuit::new(dim, rhs) }
    }
}

/// Every identity, instantiated on as few qubits as it needs. Rotation
/// angles are fixed to `k = 1/4` and `k' = 3/4`.
pub fn catalog() -> Vec<RuleIdentity> {
    use GateApp::*;
    use RuleFamily::*;
    let k = Angle::quarter();
    let k2 = Angle::new(3, 4);
    let p = Rz(Angle::half(), 0);
    let pdag = Rz(Angle::three_halves(), 0);
    let p1 = Rz(Angle::half(), 1);
    let pdag1 = Rz(Angle::three_halves(), 1);
    vec![
        RuleIdentity::new("x_h", NotPropagation, true, 1, vec![X(0), H(0)], vec![H(0), Rz(Angle::new(1, 1), 0)]),
        RuleIdentity::new("x_rz", NotPropagation, false, 1, vec![X(0), Rz(k, 0)], vec![Rz(k.inverse(), 0), X(0)]),
        RuleIdentity::new(
            "x_cnot_control",
            NotPropagation,
            true,
            2,
            vec![X(0), Cnot(0, 1)],
            vec![Cnot(0, 1), X(0), X(1)],
        ),
        RuleIdentity::new("x_cnot_target", NotPropagation, true, 2, vec![X(1), Cnot(0, 1)], vec![Cnot(0, 1), X(1)]),
        RuleIdentity::new(
            "rz_h_cnot_h",
            Commutation,
            true,
            2,
            vec![Rz(k, 1), H(1), Cnot(0, 1), H(1)],
            vec![H(1), Cnot(0, 1), H(1), Rz(k, 1)],
        ),
        RuleIdentity::new(
            "rz_cnot_rz_cnot",
            Commutation,
            true,
            2,
            vec![Rz(k, 1), Cnot(0, 1), Rz(k2, 1), Cnot(0, 1)],
            vec![Cnot(0, 1), Rz(k2, 1), Cnot(0, 1), Rz(k, 1)],
        ),
        RuleIdentity::new("rz_cnot_control", Commutation, true, 2, vec![Rz(k, 0), Cnot(0, 1)], vec![Cnot(0, 1), Rz(k, 0)]),
        RuleIdentity::new(
            "cnot_h_cnot_h",
            Commutation,
            true,
            3,
            vec![Cnot(0, 1), H(1), Cnot(1, 2), H(1)],
            vec![H(1), Cnot(1, 2), H(1), Cnot(0, 1)],
        ),
        RuleIdentity::new(
            "cnot_shared_target",
            Commutation,
            true,
            3,
            vec![Cnot(0, 2), Cnot(1, 2)],
            vec![Cnot(1, 2), Cnot(0, 2)],
        ),
        RuleIdentity::new(
            "cnot_shared_control",
            Commutation,
            true,
            3,
            vec![Cnot(0, 1), Cnot(0, 2)],
            vec![Cnot(0, 2), Cnot(0, 1)],
        ),
        RuleIdentity::new("h_h", Cancellation, true, 1, vec![H(0), H(0)], vec![]),
        RuleIdentity::new("x_x", Cancellation, true, 1, vec![X(0), X(0)], vec![]),
        RuleIdentity::new("cnot_cnot", Cancellation, true, 2, vec![Cnot(0, 1), Cnot(0, 1)], vec![]),
        RuleIdentity::new("rz_rz", Cancellation, true, 1, vec![Rz(k, 0), Rz(k2, 0)], vec![Rz(k + k2, 0)]),
        RuleIdentity::new("h_p_h", HadamardReduction, false, 1, vec![H(0), p, H(0)], vec![pdag, H(0), pdag]),
        RuleIdentity::new("h_pdag_h", HadamardReduction, false, 1, vec![H(0), pdag, H(0)], vec![p, H(0), p]),
        RuleIdentity::new(
            "h_p_cnot_pdag_h",
            HadamardReduction,
            true,
            2,
            vec![H(1), p1, Cnot(0, 1), pdag1, H(1)],
            vec![pdag1, Cnot(0, 1), p1],
        ),
        RuleIdentity::new(
            "h_pdag_cnot_p_h",
            HadamardReduction,
            true,
            2,
            vec![H(1), pdag1, Cnot(0, 1), p1, H(1)],
            vec![p1, Cnot(0, 1), pdag1],
        ),
        RuleIdentity::new(
            "hh_cnot_hh",
            HadamardReduction,
            true,
            2,
            vec![H(0), H(1), Cnot(0, 1), H(0), H(1)],
            vec![Cnot(1, 0)],
        ),
    ]
}
