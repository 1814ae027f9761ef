//! Dense-matrix semantics of unitary circuits and equivalence checks.

pub(crate) mod kernels;
mod matrix;

use std::f64::consts::PI;

use num_complex::Complex64;
use thiserror::Error;

use crate::ir::{Circuit, Gate, GateApp};
pub use matrix::ComplexMatrix;

/// Largest register for which dense denotations are built.
pub const MAX_DENOTE_DIM: usize = 12;

/// Default tolerance for floating-point equivalence checks.
pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SemanticsError {
    #[error("register of {dim} qubits exceeds the dense simulation limit of {max}")]
    DimensionTooLarge { dim: usize, max: usize },
    #[error("dimension mismatch: {0} vs {1} qubits")]
    DimensionMismatch(usize, usize),
    #[error("invalid permutation: {0}")]
    BadPermutation(String),
}

/// The general single-qubit rotation `R(θ, φ, λ)`, angles in radians.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BaseRotation {
    pub theta: f64,
    pub phi: f64,
    pub lambda: f64,
}

impl BaseRotation {
    pub fn new(theta: f64, phi: f64, lambda: f64) -> Self {
        BaseRotation { theta, phi, lambda }
    }
}

/// A gate of the base set: a single-qubit rotation or CNOT.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum BaseGate {
    Rotation(BaseRotation),
    Cnot,
}

/// A global phase `e^{iθ}`, θ in radians.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Phase {
    pub theta: f64,
}

impl Phase {
    pub fn is_trivial(&self, tol: f64) -> bool {
        self.theta.abs() <= tol
    }
}

fn rotation_entries(r: BaseRotation) -> [[Complex64; 2]; 2] {
    let (s, c) = (r.theta / 2.0).sin_cos();
    let e = |a: f64| Complex64::from_polar(1.0, a);
    [
        [Complex64::new(c, 0.0), -e(r.lambda) * s],
        [e(r.phi) * s, e(r.phi + r.lambda) * c],
    ]
}

/// Exact entries for the gates of the optimizer set, avoiding rounding in
/// `sin(π)`-style evaluations where possible.
pub(crate) fn gate_entries(g: Gate) -> Option<[[Complex64; 2]; 2]> {
    let z = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    match g {
        Gate::H => {
            let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
            Some([[h, h], [h, -h]])
        }
        Gate::X => Some([[z, one], [one, z]]),
        Gate::Rz(a) => {
            let phase = match (a.numer(), a.denom()) {
                (0, 1) => one,
                (1, 2) => Complex64::i(),
                (1, 1) => -one,
                (3, 2) => -Complex64::i(),
                _ => Complex64::from_polar(1.0, a.radians()),
            };
            Some([[one, z], [z, phase]])
        }
        Gate::Cnot => None,
    }
}

fn to_matrix(u: &[[Complex64; 2]; 2]) -> ComplexMatrix {
    ComplexMatrix::from_vec(2, 2, vec![u[0][0], u[0][1], u[1][0], u[1][1]])
}

pub fn base_matrix(r: BaseRotation) -> ComplexMatrix {
    to_matrix(&rotation_entries(r))
}

/// `H ↦ R(π/2, 0, π)`, `X ↦ R(π, 0, π)`, `Rz(k) ↦ R(0, 0, kπ)`, CNOT unchanged.
pub fn gate_to_base(g: Gate) -> BaseGate {
    match g {
        Gate::H => BaseGate::Rotation(BaseRotation::new(PI / 2.0, 0.0, PI)),
        Gate::X => BaseGate::Rotation(BaseRotation::new(PI, 0.0, PI)),
        Gate::Rz(a) => BaseGate::Rotation(BaseRotation::new(0.0, 0.0, a.radians())),
        Gate::Cnot => BaseGate::Cnot,
    }
}

/// `I_{2^q} ⊗ u ⊗ I_{2^{d−q−1}}`.
pub fn apply1(u: &ComplexMatrix, q: usize, d: usize) -> ComplexMatrix {
    assert!(q < d, "qubit {q} out of range for dimension {d}");
    ComplexMatrix::identity(1 << q)
        .kron(u)
        .kron(&ComplexMatrix::identity(1 << (d - q - 1)))
}

/// The CNOT with control `q1` and target `q2` on a `d`-qubit register, built as
/// the sum of the `|0⟩⟨0|` and `|1⟩⟨1|` control branches.
pub fn apply2(q1: usize, q2: usize, d: usize) -> ComplexMatrix {
    assert!(q1 < d && q2 < d && q1 != q2, "invalid CNOT indices ({q1}, {q2}) for dimension {d}");
    let p0 = ComplexMatrix::from_real(2, 2, &[1.0, 0.0, 0.0, 0.0]);
    let p1 = ComplexMatrix::from_real(2, 2, &[0.0, 0.0, 0.0, 1.0]);
    let x = ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0]);
    let id = ComplexMatrix::identity;
    let (lo, hi) = (q1.min(q2), q1.max(q2));
    let gap = id(1 << (hi - lo - 1));
    let outer = |m: ComplexMatrix| id(1 << lo).kron(&m).kron(&id(1 << (d - hi - 1)));
    let (a, b) = if q1 < q2 {
        (p0.kron(&gap).kron(&id(2)), p1.kron(&gap).kron(&x))
    } else {
        (id(2).kron(&gap).kron(&p0), x.kron(&gap).kron(&p1))
    };
    let (a, b) = (outer(a), outer(b));
    let mut sum = a;
    for (s, t) in sum.data_mut().iter_mut().zip(b.data()) {
        *s += t;
    }
    sum
}

/// The matrix of a single gate application on a `d`-qubit register.
pub fn gate_matrix(g: &GateApp, d: usize) -> ComplexMatrix {
    match *g {
        GateApp::Cnot(c, t) => apply2(c, t, d),
        _ => {
            let u = gate_entries(g.gate()).expect("single-qubit gate");
            apply1(&to_matrix(&u), g.qubits()[0], d)
        }
    }
}

pub(crate) fn check_dim(dim: usize, max: usize) -> Result<(), SemanticsError> {
    if dim > max {
        Err(SemanticsError::DimensionTooLarge { dim, max })
    } else {
        Ok(())
    }
}

/// Left-multiply `m` by the matrix of `g`.
pub(crate) fn left_apply_gate(m: &mut ComplexMatrix, g: &GateApp, d: usize) {
    match *g {
        GateApp::Cnot(c, t) => kernels::left_cnot(m, c, t, d),
        _ => {
            let u = gate_entries(g.gate()).expect("single-qubit gate");
            kernels::left_local1(m, &u, g.qubits()[0], d);
        }
    }
}

/// Right-multiply `m` by the adjoint of the matrix of `g`.
pub(crate) fn right_apply_gate_adjoint(m: &mut ComplexMatrix, g: &GateApp, d: usize) {
    match *g {
        GateApp::Cnot(c, t) => kernels::right_cnot(m, c, t, d),
        _ => {
            let u = gate_entries(g.gate()).expect("single-qubit gate");
            kernels::right_local1_adjoint(m, &u, g.qubits()[0], d);
        }
    }
}

/// `⟦c⟧`: the product of gate matrices in reverse list order, or the zero
/// matrix if `c` is ill-typed.
pub fn denote_unitary(c: &Circuit) -> Result<ComplexMatrix, SemanticsError> {
    check_dim(c.dim, MAX_DENOTE_DIM)?;
    let n = 1 << c.dim;
    if !c.well_typed() {
        return Ok(ComplexMatrix::zeros(n, n));
    }
    let mut m = ComplexMatrix::identity(n);
    for g in &c.gates {
        left_apply_gate(&mut m, g, c.dim);
    }
    Ok(m)
}

/// `⟦c⟧|x⟩` for a computational basis state `x`, as a dense amplitude vector.
pub fn apply_to_basis_state(c: &Circuit, x: usize) -> Result<Vec<Complex64>, SemanticsError> {
    check_dim(c.dim, crate::validate::MAX_STATE_DIM)?;
    let n = 1usize << c.dim;
    let mut state = ComplexMatrix::zeros(n, 1);
    if !c.well_typed() {
        return Ok(state.data().to_vec());
    }
    state[(x, 0)] = Complex64::new(1.0, 0.0);
    for g in &c.gates {
        left_apply_gate(&mut state, g, c.dim);
    }
    Ok(state.data().to_vec())
}

fn normalize_phase(theta: f64) -> f64 {
    let mut t = theta % (2.0 * PI);
    if t <= -PI {
        t += 2.0 * PI;
    } else if t > PI {
        t -= 2.0 * PI;
    }
    t
}

/// A θ with `‖a − e^{iθ} b‖∞ ≤ tol`, if one exists.
///
/// θ is read off at the largest-magnitude entry of `b`. Matrices already equal
/// within `tol` report θ = 0.
pub fn equiv_up_to_phase(a: &ComplexMatrix, b: &ComplexMatrix, tol: f64) -> Option<Phase> {
    if a.rows() != b.rows() || a.cols() != b.cols() {
        return None;
    }
    if a.max_abs_diff(b) <= tol {
        return Some(Phase { theta: 0.0 });
    }
    let (i, j) = b.argmax_abs()?;
    let (x, y) = (a[(i, j)], b[(i, j)]);
    if y.norm() == 0.0 || x.norm() == 0.0 {
        return None;
    }
    let theta = normalize_phase((x / y).arg());
    let rotated = b.scale(Complex64::from_polar(1.0, theta));
    (a.max_abs_diff(&rotated) <= tol).then_some(Phase { theta })
}

fn validate_perm(perm: &[usize], dim: usize) -> Result<(), SemanticsError> {
    if perm.len() != dim {
        return Err(SemanticsError::BadPermutation(format!(
            "expected {dim} entries, found {}",
            perm.len()
        )));
    }
    let mut seen = vec![false; dim];
    for &p in perm {
        if p >= dim || std::mem::replace(&mut seen[p], true) {
            return Err(SemanticsError::BadPermutation(format!("{perm:?} is not a bijection")));
        }
    }
    Ok(())
}

/// Relabel basis index `x` so logical bit `l` lands on bit `perm[l]`.
pub(crate) fn permute_index(x: usize, perm: &[usize]) -> usize {
    let d = perm.len();
    let mut y = 0;
    for (l, &p) in perm.iter().enumerate() {
        if x & kernels::mask(l, d) != 0 {
            y |= kernels::mask(p, d);
        }
    }
    y
}

/// Whether `⟦b⟧ = P_out ⟦a⟧ P_in†` within `tol`, with no global phase allowed.
///
/// `input_perm[l]` and `output_perm[l]` give the index in `b`'s register that
/// holds `a`'s qubit `l` before and after the circuit.
pub fn equiv_up_to_permutation(
    a: &Circuit,
    b: &Circuit,
    input_perm: &[usize],
    output_perm: &[usize],
    tol: f64,
) -> Result<bool, SemanticsError> {
    if a.dim != b.dim {
        return Err(SemanticsError::DimensionMismatch(a.dim, b.dim));
    }
    validate_perm(input_perm, a.dim)?;
    validate_perm(output_perm, a.dim)?;
    let ma = denote_unitary(a)?;
    let mb = denote_unitary(b)?;
    let n = 1 << a.dim;
    let pin: Vec<usize> = (0..n).map(|x| permute_index(x, input_perm)).collect();
    let pout: Vec<usize> = (0..n).map(|x| permute_index(x, output_perm)).collect();
    for i in 0..n {
        for j in 0..n {
            if (mb[(pout[i], pin[j])] - ma[(i, j)]).norm() > tol {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ir::{Angle, GateApp::*};
    use proptest::prelude::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    /// Basis-state oracle: the permutation or diagonal action of each gate
    /// computed bit by bit, independently of the Kronecker construction.
    fn oracle_column(g: &GateApp, d: usize, x: usize) -> Vec<Complex64> {
        let bit = |q: usize| (x >> (d - 1 - q)) & 1;
        let flip = |y: usize, q: usize| y ^ (1 << (d - 1 - q));
        let mut v = vec![c(0.0); 1 << d];
        match *g {
            X(q) => v[flip(x, q)] = c(1.0),
            Cnot(a, t) => v[if bit(a) == 1 { flip(x, t) } else { x }] = c(1.0),
            Rz(k, q) => {
                v[x] = if bit(q) == 1 { Complex64::from_polar(1.0, k.radians()) } else { c(1.0) }
            }
            H(q) => {
                let s = std::f64::consts::FRAC_1_SQRT_2;
                let y0 = x & !(1 << (d - 1 - q));
                v[y0] = c(s);
                v[y0 | (1 << (d - 1 - q))] = c(if bit(q) == 1 { -s } else { s });
            }
        }
        v
    }

    #[test]
    fn base_matrix_examples() {
        let id = base_matrix(BaseRotation::new(0.0, 0.0, 0.0));
        assert!(id.approx_eq(&ComplexMatrix::identity(2), 1e-15));
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let h = base_matrix(BaseRotation::new(PI / 2.0, 0.0, PI));
        assert!(h.approx_eq(&ComplexMatrix::from_real(2, 2, &[s, s, s, -s]), 1e-15));
        let x = base_matrix(BaseRotation::new(PI, 0.0, PI));
        assert!(x.approx_eq(&ComplexMatrix::from_real(2, 2, &[0., 1., 1., 0.]), 1e-15));
    }

    #[test]
    fn gate_translation() {
        assert_eq!(gate_to_base(Gate::H), BaseGate::Rotation(BaseRotation::new(PI / 2.0, 0.0, PI)));
        assert_eq!(
            gate_to_base(Gate::Rz(Angle::half())),
            BaseGate::Rotation(BaseRotation::new(0.0, 0.0, PI / 2.0))
        );
        assert_eq!(gate_to_base(Gate::Cnot), BaseGate::Cnot);
        for g in [Gate::H, Gate::X, Gate::Rz(Angle::new(3, 4)), Gate::Rz(Angle::new(3, 2))] {
            let BaseGate::Rotation(r) = gate_to_base(g) else { unreachable!() };
            let exact = to_matrix(&gate_entries(g).unwrap());
            assert!(base_matrix(r).approx_eq(&exact, 1e-15), "{g:?}");
        }
    }

    #[test]
    fn apply1_examples() {
        let x = ComplexMatrix::from_real(2, 2, &[0., 1., 1., 0.]);
        assert_eq!(apply1(&x, 0, 1), x);
        assert_eq!(apply1(&x, 1, 2), ComplexMatrix::identity(2).kron(&x));
        let h = base_matrix(BaseRotation::new(PI / 2.0, 0.0, PI));
        assert_eq!(apply1(&h, 0, 2), h.kron(&ComplexMatrix::identity(2)));
    }

    #[test]
    fn apply2_examples() {
        let cnot01 = ComplexMatrix::from_real(
            4,
            4,
            &[1., 0., 0., 0., 0., 1., 0., 0., 0., 0., 0., 1., 0., 0., 1., 0.],
        );
        assert_eq!(apply2(0, 1, 2), cnot01);
        let cnot10 = ComplexMatrix::from_real(
            4,
            4,
            &[1., 0., 0., 0., 0., 0., 0., 1., 0., 0., 1., 0., 0., 1., 0., 0.],
        );
        assert_eq!(apply2(1, 0, 2), cnot10);
    }

    #[test]
    fn local_matrices_match_basis_oracle() {
        for d in 1..=5 {
            let mut gates = Vec::new();
            for q in 0..d {
                gates.extend([H(q), X(q), Rz(Angle::new(3, 4), q)]);
                for t in (0..d).filter(|&t| t != q) {
                    gates.push(Cnot(q, t));
                }
            }
            for g in &gates {
                let m = gate_matrix(g, d);
                for x in 0..1 << d {
                    let col = oracle_column(g, d, x);
                    for (y, want) in col.iter().enumerate() {
                        assert!((m[(y, x)] - want).norm() < 1e-15, "{g:?} d={d} x={x} y={y}");
                    }
                }
            }
        }
    }

    #[test]
    fn denote_examples() {
        let h = denote_unitary(&Circuit::new(1, vec![H(0)])).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!(h.approx_eq(&ComplexMatrix::from_real(2, 2, &[s, s, s, -s]), 1e-15));
        assert_eq!(denote_unitary(&Circuit::empty(2)).unwrap(), ComplexMatrix::identity(4));
        assert_eq!(
            denote_unitary(&Circuit::new(2, vec![Cnot(0, 0)])).unwrap(),
            ComplexMatrix::zeros(4, 4)
        );
        assert!(matches!(
            denote_unitary(&Circuit::empty(13)),
            Err(SemanticsError::DimensionTooLarge { dim: 13, max: 12 })
        ));
    }

    #[test]
    fn phase_examples() {
        let m = gate_matrix(&H(0), 2);
        assert_eq!(equiv_up_to_phase(&m, &m, 0.0), Some(Phase { theta: 0.0 }));
        let id = ComplexMatrix::identity(2);
        let p = equiv_up_to_phase(&id.scale(c(-1.0)), &id, 1e-12).unwrap();
        assert!((p.theta - PI).abs() < 1e-12);
        let lhs = denote_unitary(&Circuit::new(1, vec![H(0), Rz(Angle::half(), 0), H(0)])).unwrap();
        let rhs = denote_unitary(&Circuit::new(
            1,
            vec![Rz(Angle::three_halves(), 0), H(0), Rz(Angle::three_halves(), 0)],
        ))
        .unwrap();
        let p = equiv_up_to_phase(&lhs, &rhs, 1e-12).unwrap();
        assert!(p.theta.abs() > 1e-3);
        assert_eq!(equiv_up_to_phase(&gate_matrix(&H(0), 1), &id, 1e-9), None);
    }

    #[test]
    fn permutation_examples() {
        let id2 = [0, 1];
        let swap = [1, 0];
        let a = Circuit::new(2, vec![Cnot(0, 1), H(0)]);
        assert!(equiv_up_to_permutation(&a, &a, &id2, &id2, 1e-12).unwrap());
        let a = Circuit::new(2, vec![Cnot(0, 1)]);
        let b = Circuit::new(2, vec![Cnot(1, 0)]);
        assert!(equiv_up_to_permutation(&a, &b, &swap, &swap, 1e-12).unwrap());
        assert!(!equiv_up_to_permutation(&a, &b, &id2, &id2, 1e-12).unwrap());
        let a = Circuit::new(2, vec![H(0)]);
        let b = Circuit::new(2, vec![H(1)]);
        assert!(equiv_up_to_permutation(&a, &b, &swap, &swap, 1e-12).unwrap());
        assert!(equiv_up_to_permutation(&a, &b, &[0, 0], &swap, 1e-12).is_err());
    }

    fn arb_circuit(max_dim: usize, max_len: usize) -> impl Strategy<Value = Circuit> {
        (1..=max_dim).prop_flat_map(move |d| {
            let gate = (0..4u8, 0..d, 0..d, 0..8i64).prop_map(move |(k, a, b, n)| match k {
                0 => H(a),
                1 => X(a),
                2 => Rz(Angle::new(n, 4), a),
                _ if d > 1 => Cnot(a, if a == b { (b + 1) % d } else { b }),
                _ => H(a),
            });
            prop::collection::vec(gate, 0..=max_len).prop_map(move |g| Circuit::new(d, g))
        })
    }

    proptest! {
        #[test]
        fn denotation_is_unitary(c in arb_circuit(6, 30)) {
            prop_assert!(denote_unitary(&c).unwrap().is_unitary(1e-9));
        }

        #[test]
        fn denotation_matches_kron_product(c in arb_circuit(4, 12)) {
            let mut m = ComplexMatrix::identity(1 << c.dim);
            for g in &c.gates {
                m = &gate_matrix(g, c.dim) * &m;
            }
            prop_assert!(denote_unitary(&c).unwrap().approx_eq(&m, 1e-12));
        }

        #[test]
        fn phase_equivalence_composes(
            c in arb_circuit(3, 10), t1 in -3.0f64..3.0, t2 in -3.0f64..3.0,
        ) {
            let a = denote_unitary(&c).unwrap();
            let b = a.scale(Complex64::from_polar(1.0, t1));
            let cc = b.scale(Complex64::from_polar(1.0, t2));
            let ab = equiv_up_to_phase(&a, &b, 1e-9).unwrap().theta;
            let ba = equiv_up_to_phase(&b, &a, 1e-9).unwrap().theta;
            let ac = equiv_up_to_phase(&a, &cc, 1e-9).unwrap().theta;
            let bc = equiv_up_to_phase(&b, &cc, 1e-9).unwrap().theta;
            prop_assert!(normalize_phase(ab + ba).abs() < 1e-9);
            prop_assert!(normalize_phase(ab + bc - ac).abs() < 1e-9);
        }
    }
}
