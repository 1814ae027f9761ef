//! `qopt`: optimize, map, compare and count OpenQASM circuits.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use qopt_core::ir::{Circuit, GateCounts};
use qopt_core::mapping::{map_circuit, respects_constraints, ArchSpec, Architecture, Layout, MappingError};
use qopt_core::qasm::{self, QasmError};
use qopt_core::semantics::{equiv_up_to_permutation, MAX_DENOTE_DIM};
use qopt_core::unitary_opt::{optimize_with, Schedule};
use qopt_core::validate::{check_equiv, EquivMode, EquivVerdict};

const SCHEMA: &str = "1";

#[derive(Parser, Debug)]
#[command(name = "qopt", version, about = "Optimize and map OpenQASM 2.0 circuits")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the optimization passes and write the result.
    Optimize(OptimizeArgs),
    /// Route a circuit onto a connectivity graph.
    Map(MapArgs),
    /// Check whether two circuits are equivalent.
    CheckEquiv(CheckArgs),
    /// Print gate counts.
    Stats(StatsArgs),
}

#[derive(Args, Debug)]
struct OptimizeArgs {
    input: PathBuf,
    #[arg(short, long)]
    output: PathBuf,
    /// Validate the result by simulation when the circuit has at most this many qubits.
    #[arg(long, value_name = "N")]
    validate_dim: Option<usize>,
    /// Pass schedule as digits: 0 not propagation, 1 Hadamard reduction,
    /// 2 single-qubit cancellation, 3 two-qubit cancellation, 4 rotation merging.
    #[arg(long, default_value = Schedule::DEFAULT)]
    passes: String,
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    /// Write the JSON report here instead of stdout.
    #[arg(long, value_name = "PATH")]
    report: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct MapArgs {
    input: PathBuf,
    /// tenerife, lnn:N, ring:N or grid:RxC.
    #[arg(long)]
    arch: String,
    #[arg(short, long)]
    output: PathBuf,
    /// Write the initial and final layouts as JSON, usable with `check-equiv --perm`.
    #[arg(long, value_name = "FILE")]
    layout_out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct CheckArgs {
    a: PathBuf,
    b: PathBuf,
    #[arg(long, default_value = "matrix")]
    mode: String,
    /// Layout file from `map --layout-out`; `b` is then compared as the mapped form of `a`.
    #[arg(long, value_name = "FILE")]
    perm: Option<PathBuf>,
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
}

#[derive(Args, Debug)]
struct StatsArgs {
    #[arg(required = true)]
    inputs: Vec<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Qasm { path: PathBuf, source: QasmError },
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Unsupported(String),
    #[error("{0}")]
    Validation(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Io { .. } | CliError::Usage(_) => 1,
            CliError::Qasm { source, .. } if source.is_unsupported() => 3,
            CliError::Qasm { .. } => 1,
            CliError::Validation(_) => 2,
            CliError::Unsupported(_) => 3,
        }
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, Copy, PartialEq, Eq)]
struct Counts {
    total: usize,
    h: usize,
    x: usize,
    rz: usize,
    cnot: usize,
    t_count: usize,
    other_rz: usize,
}

impl From<GateCounts> for Counts {
    fn from(c: GateCounts) -> Self {
        Counts { total: c.total, h: c.h, x: c.x, rz: c.rz, cnot: c.cnot, t_count: c.t_count, other_rz: c.other_rz }
    }
}

#[derive(Serialize, Debug)]
struct Validation {
    verdict: String,
    tol: f64,
}

#[derive(Serialize, Debug)]
struct Report {
    schema: &'static str,
    input: String,
    output: String,
    qubits: usize,
    passes: String,
    before: Counts,
    after: Counts,
    validation: Validation,
    duration_ms: f64,
}

#[derive(Serialize, Deserialize, Debug)]
struct LayoutFile {
    schema: String,
    arch: String,
    initial: Vec<usize>,
    #[serde(rename = "final")]
    final_: Vec<usize>,
}

#[derive(Serialize, Debug)]
struct Stats {
    path: String,
    qubits: usize,
    counts: Counts,
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io { path: path.into(), source })
}

fn load(path: &Path) -> Result<Circuit, CliError> {
    qasm::parse_circuit(&read(path)?).map_err(|source| CliError::Qasm { path: path.into(), source })
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("report serializes")
}

fn run_optimize(args: &OptimizeArgs) -> Result<(), CliError> {
    let schedule: Schedule = args.passes.parse().map_err(|e| CliError::Usage(format!("--passes: {e}")))?;
    let c = load(&args.input)?;
    let start = Instant::now();
    let out = optimize_with(&c, &schedule);
    let verdict = match args.validate_dim {
        Some(n) if c.dim <= n.min(MAX_DENOTE_DIM) => {
            let v = check_equiv(&c, &out, EquivMode::Matrix, args.tol)
                .map_err(|e| CliError::Validation(format!("validation error: {e}")))?;
            Some(v)
        }
        _ => None,
    };
    let duration_ms = start.elapsed().as_secs_f64() * 1e3;
    write(&args.output, &qasm::emit(&out))?;
    let report = Report {
        schema: SCHEMA,
        input: args.input.display().to_string(),
        output: args.output.display().to_string(),
        qubits: c.dim,
        passes: schedule.to_string(),
        before: c.counts().into(),
        after: out.counts().into(),
        validation: Validation {
            verdict: verdict.map_or_else(|| "skipped".to_string(), |v| v.to_string()),
            tol: args.tol,
        },
        duration_ms,
    };
    match &args.report {
        Some(p) => write(p, &to_json(&report))?,
        None => println!("{}", to_json(&report)),
    }
    match verdict {
        Some(v @ EquivVerdict::NotEquivalent(_)) => Err(CliError::Validation(format!("optimized circuit is {v}"))),
        _ => Ok(()),
    }
}

fn run_map(args: &MapArgs) -> Result<(), CliError> {
    let spec: ArchSpec = args.arch.parse().map_err(|e: MappingError| CliError::Usage(e.to_string()))?;
    let arch = Architecture::new(spec).map_err(|e| CliError::Usage(e.to_string()))?;
    let mut c = load(&args.input)?;
    if c.dim > arch.num_qubits() {
        return Err(CliError::Unsupported(format!(
            "circuit needs {} qubits but {spec} has {}",
            c.dim,
            arch.num_qubits()
        )));
    }
    c.dim = arch.num_qubits();
    let init = Layout::identity(c.dim);
    let (mapped, fin) = map_circuit(&c, &arch, &init).map_err(|e| CliError::Unsupported(e.to_string()))?;
    debug_assert!(respects_constraints(&mapped, &arch));
    write(&args.output, &qasm::emit(&mapped))?;
    if let Some(p) = &args.layout_out {
        let lf = LayoutFile {
            schema: SCHEMA.into(),
            arch: spec.to_string(),
            initial: init.l2p().to_vec(),
            final_: fin.l2p().to_vec(),
        };
        write(p, &to_json(&lf))?;
    }
    eprintln!("{}: {} gates -> {} gates on {spec}", args.input.display(), c.len(), mapped.len());
    Ok(())
}

fn run_check(args: &CheckArgs) -> Result<(), CliError> {
    let mode: EquivMode = args.mode.parse().map_err(CliError::Usage)?;
    let mut a = load(&args.a)?;
    let mut b = load(&args.b)?;
    let dim = a.dim.max(b.dim);
    a.dim = dim;
    b.dim = dim;
    let equivalent = match &args.perm {
        Some(p) => {
            let lf: LayoutFile =
                serde_json::from_str(&read(p)?).map_err(|e| CliError::Usage(format!("{}: {e}", p.display())))?;
            let ok = equiv_up_to_permutation(&a, &b, &lf.initial, &lf.final_, args.tol)
                .map_err(|e| CliError::Unsupported(e.to_string()))?;
            println!("{}", if ok { "equal up to qubit permutation" } else { "not equivalent" });
            ok
        }
        None => {
            let v = check_equiv(&a, &b, mode, args.tol).map_err(|e| CliError::Unsupported(e.to_string()))?;
            println!("{v}");
            v.is_equivalent()
        }
    };
    if equivalent {
        Ok(())
    } else {
        Err(CliError::Validation("circuits are not equivalent".into()))
    }
}

fn run_stats(args: &StatsArgs) -> Result<(), CliError> {
    let results: Vec<Result<Stats, CliError>> = args
        .inputs
        .par_iter()
        .map(|p| {
            let c = load(p)?;
            Ok(Stats { path: p.display().to_string(), qubits: c.dim, counts: c.counts().into() })
        })
        .collect();
    let stats = results.into_iter().collect::<Result<Vec<_>, _>>()?;
    if args.json {
        println!("{}", to_json(&serde_json::json!({ "schema": SCHEMA, "circuits": stats })));
    } else {
        println!("{:<32} {:>6} {:>7} {:>5} {:>5} {:>6} {:>5} {:>5}", "circuit", "qubits", "total", "h", "x", "cnot", "rz", "t");
        for s in &stats {
            let c = s.counts;
            println!(
                "{:<32} {:>6} {:>7} {:>5} {:>5} {:>6} {:>5} {:>5}",
                s.path, s.qubits, c.total, c.h, c.x, c.cnot, c.rz, c.t_count
            );
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match &cli.command {
        Command::Optimize(a) => run_optimize(a),
        Command::Map(a) => run_map(a),
        Command::CheckEquiv(a) => run_check(a),
        Command::Stats(a) => run_stats(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("qopt: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
