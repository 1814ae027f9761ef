//! OpenQASM 2.0 subset: parsing, lowering to the gate-list IR, and emission.

mod lexer;
mod parser;

use std::fmt::Write as _;

use thiserror::Error;

use crate::ir::{Angle, Circuit, GateApp};
use crate::nonunitary::{Block, Program};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QasmError {
    #[error("{line}:{col}: syntax error: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("{line}:{col}: unsupported gate `{name}`")]
    UnsupportedGate { name: String, line: usize, col: usize },
    #[error("{line}:{col}: unsupported construct: {what}")]
    Unsupported { what: String, line: usize, col: usize },
    #[error("{line}:{col}: unknown register `{name}`")]
    UnknownRegister { name: String, line: usize, col: usize },
    #[error("{line}:{col}: index {index} out of range for register `{name}` of size {size}")]
    IndexOutOfRange { name: String, index: usize, size: usize, line: usize, col: usize },
    #[error("{line}:{col}: bad angle: {msg}")]
    BadAngle { msg: String, line: usize, col: usize },
    #[error("{line}:{col}: {msg}")]
    Semantic { msg: String, line: usize, col: usize },
    #[error("{line}:{col}: `{what}` is not unitary")]
    NonUnitary { what: String, line: usize, col: usize },
}

impl QasmError {
    /// Whether the input is well-formed but outside the supported subset.
    pub fn is_unsupported(&self) -> bool {
        matches!(
            self,
            QasmError::UnsupportedGate { .. }
                | QasmError::Unsupported { .. }
                | QasmError::BadAngle { .. }
                | QasmError::NonUnitary { .. }
        )
    }
}

/// The gates accepted by the front end.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QasmGate {
    H,
    X,
    Z,
    S,
    Sdg,
    T,
    Tdg,
    Rz,
    Cx,
    Ccx,
    Ccz,
}

impl QasmGate {
    pub fn from_name(name: &str) -> Option<Self> {
        Some(match name {
            "h" => QasmGate::H,
            "x" => QasmGate::X,
            "z" => QasmGate::Z,
            "s" => QasmGate::S,
            "sdg" => QasmGate::Sdg,
            "t" => QasmGate::T,
            "tdg" => QasmGate::Tdg,
            "rz" => QasmGate::Rz,
            "cx" | "CX" => QasmGate::Cx,
            "ccx" => QasmGate::Ccx,
            "ccz" => QasmGate::Ccz,
            _ => return None,
        })
    }

    pub fn arity(&self) -> usize {
        match self {
            QasmGate::Cx => 2,
            QasmGate::Ccx | QasmGate::Ccz => 3,
            _ => 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegisterDecl {
    pub name: String,
    pub size: usize,
    /// Index of the register's first element in the flattened global register.
    pub offset: usize,
}

/// A statement with register arguments resolved to global indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Op {
    /// One entry in `apps` per broadcast application.
    Gate { kind: QasmGate, angle: Option<Angle>, apps: Vec<Vec<usize>> },
    /// (qubit, classical bit) pairs.
    Measure(Vec<(usize, usize)>),
    Reset(Vec<usize>),
    Barrier(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Statement {
    pub op: Op,
    pub line: usize,
    pub col: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct QasmProgram {
    pub qregs: Vec<RegisterDecl>,
    pub cregs: Vec<RegisterDecl>,
    pub statements: Vec<Statement>,
}

impl QasmProgram {
    pub fn num_qubits(&self) -> usize {
        self.qregs.iter().map(|r| r.size).sum()
    }
}

pub fn parse(text: &str) -> Result<QasmProgram, QasmError> {
    parser::Parser::new(text)?.parse()
}

/// The CCZ gate on `a, b, c` as 6 CNOTs and 7 T/T† rotations.
pub fn ccz(a: usize, b: usize, c: usize) -> [GateApp; 13] {
    let t = Angle::quarter();
    let tdg = Angle::new(7, 4);
    use GateApp::{Cnot, Rz};
    [
        Cnot(b, c),
        Rz(tdg, c),
        Cnot(a, c),
        Rz(t, c),
        Cnot(b, c),
        Rz(tdg, c),
        Cnot(a, c),
        Cnot(a, b),
        Rz(tdg, b),
        Cnot(a, b),
        Rz(t, a),
        Rz(t, b),
        Rz(t, c),
    ]
}

/// The Toffoli gate with controls `a, b` and target `c`: CCZ conjugated by H on the target.
pub fn ccx(a: usize, b: usize, c: usize) -> Vec<GateApp> {
    let mut v = vec![GateApp::H(c)];
    v.extend(ccz(a, b, c));
    v.push(GateApp::H(c));
    v
}

fn lower_gate(kind: QasmGate, angle: Option<Angle>, q: &[usize], out: &mut Vec<GateApp>) {
    let rz = |k: Angle| GateApp::Rz(k, q[0]);
    match kind {
        QasmGate::H => out.push(GateApp::H(q[0])),
        QasmGate::X => out.push(GateApp::X(q[0])),
        QasmGate::Z => out.push(rz(Angle::new(1, 1))),
        QasmGate::S => out.push(rz(Angle::half())),
        QasmGate::Sdg => out.push(rz(Angle::three_halves())),
        QasmGate::T => out.push(rz(Angle::quarter())),
        QasmGate::Tdg => out.push(rz(Angle::new(7, 4))),
        QasmGate::Rz => out.push(rz(angle.unwrap_or_default())),
        QasmGate::Cx => out.push(GateApp::Cnot(q[0], q[1])),
        QasmGate::Ccz => out.extend(ccz(q[0], q[1], q[2])),
        QasmGate::Ccx => out.extend(ccx(q[0], q[1], q[2])),
    }
}

/// Lower a measurement-free program to a circuit over the flattened register.
pub fn decompose(p: &QasmProgram) -> Result<Circuit, QasmError> {
    let mut gates = Vec::new();
    for s in &p.statements {
        match &s.op {
            Op::Gate { kind, angle, apps } => {
                for q in apps {
                    lower_gate(*kind, *angle, q, &mut gates);
                }
            }
            Op::Barrier(_) => {}
            Op::Measure(_) => {
                return Err(QasmError::NonUnitary { what: "measure".into(), line: s.line, col: s.col })
            }
            Op::Reset(_) => {
                return Err(QasmError::NonUnitary { what: "reset".into(), line: s.line, col: s.col })
            }
        }
    }
    Ok(Circuit::new(p.num_qubits(), gates))
}

/// Lower a program that may measure or reset qubits. Classical bits are discarded:
/// `measure q` becomes a branch with two empty arms and `reset q` a branch that
/// applies X on the one outcome.
pub fn to_program(p: &QasmProgram) -> Program {
    let mut body: Vec<Block> = Vec::new();
    let mut pending: Vec<GateApp> = Vec::new();
    let flush = |pending: &mut Vec<GateApp>, body: &mut Vec<Block>| {
        if !pending.is_empty() {
            body.push(Block::Unitary(std::mem::take(pending)));
        }
    };
    for s in &p.statements {
        match &s.op {
            Op::Gate { kind, angle, apps } => {
                for q in apps {
                    lower_gate(*kind, *angle, q, &mut pending);
                }
            }
            Op::Barrier(_) => {}
            Op::Measure(pairs) => {
                flush(&mut pending, &mut body);
                for &(q, _) in pairs {
                    body.push(Block::measure(q));
                }
            }
            Op::Reset(qs) => {
                flush(&mut pending, &mut body);
                for &q in qs {
                    body.push(Block::reset(q));
                }
            }
        }
    }
    flush(&mut pending, &mut body);
    Program::new(p.num_qubits(), body)
}

/// Parse and lower in one step.
pub fn parse_circuit(text: &str) -> Result<Circuit, QasmError> {
    decompose(&parse(text)?)
}

fn angle_text(a: Angle) -> String {
    match (a.numer(), a.denom()) {
        (0, _) => "0".into(),
        (1, 1) => "pi".into(),
        (m, 1) => format!("{m}*pi"),
        (m, n) => format!("{m}*pi/{n}"),
    }
}

/// Serialize a circuit as OpenQASM 2.0 over a single register `q`.
pub fn emit(c: &Circuit) -> String {
    let mut s = String::from("OPENQASM 2.0;\ninclude \"qelib1.inc\";\n");
    let _ = writeln!(s, "qreg q[{}];", c.dim);
    for g in &c.gates {
        let _ = match *g {
            GateApp::H(q) => writeln!(s, "h q[{q}];"),
            GateApp::X(q) => writeln!(s, "x q[{q}];"),
            GateApp::Rz(a, q) => writeln!(s, "rz({}) q[{q}];", angle_text(a)),
            GateApp::Cnot(a, b) => writeln!(s, "cx q[{a}],q[{b}];"),
        };
    }
    s
}
