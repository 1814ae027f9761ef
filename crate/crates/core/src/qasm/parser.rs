use num_rational::Rational64;
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, Zero};

use super::lexer::{tokenize, Tok, Token};
use super::{Op, QasmError, QasmGate, QasmProgram, RegisterDecl, Statement};
use crate::ir::Angle;

/// A constant expression `rat + pi·π`.
#[derive(Clone, Copy)]
struct Value {
    rat: Rational64,
    pi: Rational64,
}

enum Operand {
    One(usize),
    Reg { offset: usize, size: usize },
}

impl Operand {
    fn expand(&self, n: usize) -> Vec<usize> {
        match *self {
            Operand::One(q) => vec![q; n],
            Operand::Reg { offset, .. } => (offset..offset + n).collect(),
        }
    }
}

pub(crate) struct Parser {
    toks: Vec<Token>,
    pos: usize,
    prog: QasmProgram,
}

impl Parser {
    pub(crate) fn new(src: &str) -> Result<Self, QasmError> {
        Ok(Parser { toks: tokenize(src)?, pos: 0, prog: QasmProgram::default() })
    }

    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn syntax<T>(&self, t: &Token, msg: impl Into<String>) -> Result<T, QasmError> {
        Err(QasmError::Syntax { line: t.line, col: t.col, msg: msg.into() })
    }

    fn expect_sym(&mut self, s: &str) -> Result<Token, QasmError> {
        let t = self.bump();
        match t.tok {
            Tok::Sym(x) if x == s => Ok(t),
            _ => self.syntax(&t, format!("expected `{s}`, found {}", describe(&t.tok))),
        }
    }

    fn eat_sym(&mut self, s: &str) -> bool {
        if matches!(self.peek().tok, Tok::Sym(x) if x == s) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect_ident(&mut self) -> Result<(String, Token), QasmError> {
        let t = self.bump();
        match &t.tok {
            Tok::Ident(s) => Ok((s.clone(), t)),
            _ => self.syntax(&t, format!("expected identifier, found {}", describe(&t.tok))),
        }
    }

    fn expect_int(&mut self) -> Result<usize, QasmError> {
        let t = self.bump();
        match &t.tok {
            Tok::Int(s) => s.parse().or_else(|_| self.syntax(&t, "integer too large")),
            _ => self.syntax(&t, format!("expected integer, found {}", describe(&t.tok))),
        }
    }

    pub(crate) fn parse(mut self) -> Result<QasmProgram, QasmError> {
        if matches!(&self.peek().tok, Tok::Ident(s) if s == "OPENQASM") {
            self.bump();
            let t = self.bump();
            match &t.tok {
                Tok::Real(v) if v == "2.0" => {}
                Tok::Real(v) | Tok::Int(v) => {
                    return Err(QasmError::Unsupported {
                        what: format!("OpenQASM version {v}"),
                        line: t.line,
                        col: t.col,
                    })
                }
                _ => return self.syntax(&t, "expected version number"),
            }
            self.expect_sym(";")?;
        }
        while self.peek().tok != Tok::Eof {
            self.statement()?;
        }
        Ok(self.prog)
    }

    fn statement(&mut self) -> Result<(), QasmError> {
        let (name, t) = self.expect_ident()?;
        match name.as_str() {
            "include" => {
                let s = self.bump();
                if !matches!(s.tok, Tok::Str(_)) {
                    return self.syntax(&s, "expected file name string");
                }
                self.expect_sym(";")?;
            }
            "qreg" | "creg" => {
                let (reg, rt) = self.expect_ident()?;
                self.expect_sym("[")?;
                let size = self.expect_int()?;
                self.expect_sym("]")?;
                self.expect_sym(";")?;
                if self.prog.qregs.iter().chain(&self.prog.cregs).any(|r| r.name == reg) {
                    return Err(QasmError::Semantic {
                        msg: format!("register `{reg}` declared twice"),
                        line: rt.line,
                        col: rt.col,
                    });
                }
                let list = if name == "qreg" { &mut self.prog.qregs } else { &mut self.prog.cregs };
                let offset = list.iter().map(|r| r.size).sum();
                list.push(RegisterDecl { name: reg, size, offset });
            }
            "gate" | "opaque" | "if" => {
                return Err(QasmError::Unsupported {
                    what: format!("`{name}` statements"),
                    line: t.line,
                    col: t.col,
                })
            }
            "barrier" => {
                let args = self.operand_list(true)?;
                self.expect_sym(";")?;
                let qubits = args.iter().flat_map(|o| self.all_qubits(o)).collect();
                self.push(Op::Barrier(qubits), &t);
            }
            "reset" => {
                let q = self.operand(true)?;
                self.expect_sym(";")?;
                let qubits = self.all_qubits(&q);
                self.push(Op::Reset(qubits), &t);
            }
            "measure" => {
                let q = self.operand(true)?;
                self.expect_sym("->")?;
                let c = self.operand(false)?;
                self.expect_sym(";")?;
                let pairs = self.broadcast(&[q, c], &t)?;
                let pairs = pairs.into_iter().map(|p| (p[0], p[1])).collect();
                self.push(Op::Measure(pairs), &t);
            }
            _ => self.gate(&name, &t)?,
        }
        Ok(())
    }

    fn push(&mut self, op: Op, t: &Token) {
        self.prog.statements.push(Statement { op, line: t.line, col: t.col });
    }

    fn gate(&mut self, name: &str, t: &Token) -> Result<(), QasmError> {
        let kind = QasmGate::from_name(name).ok_or_else(|| QasmError::UnsupportedGate {
            name: name.to_string(),
            line: t.line,
            col: t.col,
        })?;
        let mut params = Vec::new();
        if self.eat_sym("(") && !self.eat_sym(")") {
            loop {
                let pt = self.peek().clone();
                params.push((self.expr()?, pt));
                if self.eat_sym(")") {
                    break;
                }
                self.expect_sym(",")?;
            }
        }
        let want = usize::from(kind == QasmGate::Rz);
        if params.len() != want {
            return Err(QasmError::Semantic {
                msg: format!("`{name}` takes {want} parameter(s), found {}", params.len()),
                line: t.line,
                col: t.col,
            });
        }
        let angle = match params.first() {
            Some((v, pt)) => Some(to_angle(*v, pt)?),
            None => None,
        };
        let args = self.operand_list(true)?;
        self.expect_sym(";")?;
        if args.len() != kind.arity() {
            return Err(QasmError::Semantic {
                msg: format!("`{name}` takes {} qubit argument(s), found {}", kind.arity(), args.len()),
                line: t.line,
                col: t.col,
            });
        }
        let apps = self.broadcast(&args, t)?;
        for app in &apps {
            for (i, q) in app.iter().enumerate() {
                if app[..i].contains(q) {
                    return Err(QasmError::Semantic {
                        msg: format!("qubit {q} used twice in `{name}`"),
                        line: t.line,
                        col: t.col,
                    });
                }
            }
        }
        self.push(Op::Gate { kind, angle, apps }, t);
        Ok(())
    }

    fn all_qubits(&self, o: &Operand) -> Vec<usize> {
        match *o {
            Operand::One(q) => vec![q],
            Operand::Reg { offset, size } => (offset..offset + size).collect(),
        }
    }

    /// Expand register arguments into one application per index.
    fn broadcast(&self, args: &[Operand], t: &Token) -> Result<Vec<Vec<usize>>, QasmError> {
        let mut n = None;
        for a in args {
            if let Operand::Reg { size, .. } = *a {
                if n.is_some_and(|m| m != size) {
                    return Err(QasmError::Semantic {
                        msg: "register arguments differ in size".into(),
                        line: t.line,
                        col: t.col,
                    });
                }
                n = Some(size);
            }
        }
        let n = n.unwrap_or(1);
        let cols: Vec<Vec<usize>> = args.iter().map(|a| a.expand(n)).collect();
        Ok((0..n).map(|i| cols.iter().map(|c| c[i]).collect()).collect())
    }

    fn operand_list(&mut self, quantum: bool) -> Result<Vec<Operand>, QasmError> {
        let mut v = vec![self.operand(quantum)?];
        while self.eat_sym(",") {
            v.push(self.operand(quantum)?);
        }
        Ok(v)
    }

    fn operand(&mut self, quantum: bool) -> Result<Operand, QasmError> {
        let (name, t) = self.expect_ident()?;
        let regs = if quantum { &self.prog.qregs } else { &self.prog.cregs };
        let Some(reg) = regs.iter().find(|r| r.name == name) else {
            return Err(QasmError::UnknownRegister { name, line: t.line, col: t.col });
        };
        let (offset, size) = (reg.offset, reg.size);
        if self.eat_sym("[") {
            let it = self.peek().clone();
            let index = self.expect_int()?;
            self.expect_sym("]")?;
            if index >= size {
                return Err(QasmError::IndexOutOfRange { name, index, size, line: it.line, col: it.col });
            }
            Ok(Operand::One(offset + index))
        } else {
            Ok(Operand::Reg { offset, size })
        }
    }

    fn expr(&mut self) -> Result<Value, QasmError> {
        let mut v = self.term()?;
        loop {
            let t = self.peek().clone();
            let op: fn(&Rational64, &Rational64) -> Option<Rational64> = match t.tok {
                Tok::Sym("+") => CheckedAdd::checked_add,
                Tok::Sym("-") => CheckedSub::checked_sub,
                _ => return Ok(v),
            };
            self.bump();
            let w = self.term()?;
            v = Value { rat: checked(op(&v.rat, &w.rat), &t)?, pi: checked(op(&v.pi, &w.pi), &t)? };
        }
    }

    fn term(&mut self) -> Result<Value, QasmError> {
        let mut v = self.unary()?;
        loop {
            let t = self.peek().clone();
            match t.tok {
                Tok::Sym("*") => {
                    self.bump();
                    let w = self.unary()?;
                    v = multiply(v, w, &t)?;
                }
                Tok::Sym("/") => {
                    self.bump();
                    let w = self.unary()?;
                    if !w.pi.is_zero() || w.rat.is_zero() {
                        return Err(bad_angle(&t, "division must be by a nonzero rational"));
                    }
                    v = Value {
                        rat: checked(v.rat.checked_div(&w.rat), &t)?,
                        pi: checked(v.pi.checked_div(&w.rat), &t)?,
                    };
                }
                _ => return Ok(v),
            }
        }
    }

    fn unary(&mut self) -> Result<Value, QasmError> {
        if self.eat_sym("-") {
            let v = self.unary()?;
            return Ok(Value { rat: -v.rat, pi: -v.pi });
        }
        if self.eat_sym("+") {
            return self.unary();
        }
        let t = self.bump();
        match &t.tok {
            Tok::Ident(s) if s == "pi" => Ok(Value { rat: Rational64::zero(), pi: Rational64::from_integer(1) }),
            Tok::Int(s) | Tok::Real(s) => {
                let rat = parse_decimal(s).ok_or_else(|| bad_angle(&t, format!("cannot represent `{s}` exactly")))?;
                Ok(Value { rat, pi: Rational64::zero() })
            }
            Tok::Sym("(") => {
                let v = self.expr()?;
                self.expect_sym(")")?;
                Ok(v)
            }
            Tok::Ident(s) => Err(bad_angle(&t, format!("`{s}` is not allowed in an angle"))),
            _ => self.syntax(&t, format!("expected expression, found {}", describe(&t.tok))),
        }
    }
}

fn multiply(v: Value, w: Value, t: &Token) -> Result<Value, QasmError> {
    let (scalar, other) = if v.pi.is_zero() {
        (v.rat, w)
    } else if w.pi.is_zero() {
        (w.rat, v)
    } else {
        return Err(bad_angle(t, "product of two multiples of pi"));
    };
    Ok(Value {
        rat: checked(other.rat.checked_mul(&scalar), t)?,
        pi: checked(other.pi.checked_mul(&scalar), t)?,
    })
}

fn checked(v: Option<Rational64>, t: &Token) -> Result<Rational64, QasmError> {
    v.ok_or_else(|| bad_angle(t, "arithmetic overflow"))
}

fn bad_angle(t: &Token, msg: impl Into<String>) -> QasmError {
    QasmError::BadAngle { msg: msg.into(), line: t.line, col: t.col }
}

fn to_angle(v: Value, t: &Token) -> Result<Angle, QasmError> {
    if !v.rat.is_zero() {
        return Err(bad_angle(t, "angle must be a rational multiple of pi"));
    }
    Ok(Angle::from_ratio(v.pi))
}

/// Exact value of a decimal literal such as `12`, `0.25` or `1.5e-2`.
fn parse_decimal(s: &str) -> Option<Rational64> {
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (int, frac) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    let digits = format!("{int}{frac}");
    let numer: i64 = if digits.is_empty() { 0 } else { digits.parse().ok()? };
    let scale = exp - frac.len() as i32;
    let pow = 10i64.checked_pow(scale.unsigned_abs())?;
    if scale >= 0 {
        Some(Rational64::from_integer(numer.checked_mul(pow)?))
    } else {
        Some(Rational64::new(numer, pow))
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Int(s) | Tok::Real(s) => format!("number `{s}`"),
        Tok::Str(s) => format!("string \"{s}\""),
        Tok::Sym(s) => format!("`{s}`"),
        Tok::Eof => "end of input".into(),
    }
}
