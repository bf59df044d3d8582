//! Command-line front end: build codes from parity checks, list logical
//! qubits, synthesize targeted logical gates, verify circuits, and emit
//! them in portable formats.
//!
//! Exit codes: 0 success, 1 verification failure, 2 bad input or usage.

use crate::codes::{hgp, toric, HgpCode, LogicalQubitLabel};
use crate::gf2core::BitMatrix;
use crate::logicals::{l_matrix, logical_basis, LogicalBasis};
use crate::symplectic::{gate_f, ml_for};
use crate::synth::{
    circuit_from_json, circuit_to_ascii, circuit_to_json, circuit_to_qasm, metrics, synth_gate,
    Circuit, LogicalGateKind, LogicalGateSpec,
};
use crate::verify::{dense_oracle, verify_logical, VerificationReport};
use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

/// Most states a dense statevector check will enumerate before the verifier
/// falls back to tableau-only verification.
const DENSE_LIMIT: usize = 12;

#[derive(Parser)]
#[command(
    name = "hgpsynth",
    about = "Targeted logical Clifford gates for hypergraph product codes",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Inspect a code built from classical parity checks
    Code {
        #[command(subcommand)]
        action: CodeAction,
    },
    /// Inspect the logical qubits of a code
    Logicals {
        #[command(subcommand)]
        action: LogicalsAction,
    },
    /// Synthesize a targeted logical gate as a physical circuit
    Synth {
        #[command(flatten)]
        code: CodeArgs,
        #[command(flatten)]
        gate: GateArgs,
        /// Write the circuit JSON here instead of stdout
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Check a circuit against the targeted gate it claims to implement
    Verify {
        #[command(flatten)]
        code: CodeArgs,
        #[command(flatten)]
        gate: GateArgs,
        /// Circuit JSON produced by synth or emit
        #[arg(long, value_name = "FILE")]
        circuit: PathBuf,
        /// Print the report as JSON instead of text
        #[arg(long)]
        json: bool,
    },
    /// Re-emit a circuit file in another format
    Emit {
        /// Circuit JSON produced by synth
        #[arg(long, value_name = "FILE")]
        circuit: PathBuf,
        #[arg(long, value_enum)]
        format: EmitFormat,
    },
    /// Synthesize and verify all four targeted gates on the distance-L toric code
    ToricDemo {
        #[arg(long = "L", value_name = "L", default_value_t = 3)]
        l: usize,
        /// Directory for the four circuit files
        #[arg(long, value_name = "DIR", default_value = ".")]
        out_dir: PathBuf,
    },
}

#[derive(Subcommand)]
enum CodeAction {
    /// Print the hypergraph product code summary
    Build {
        #[command(flatten)]
        code: CodeArgs,
    },
}

#[derive(Subcommand)]
enum LogicalsAction {
    /// Print one line per logical qubit: label and operator supports
    List {
        #[command(flatten)]
        code: CodeArgs,
    },
}

/// Code selection shared by most subcommands: either two classical
/// parity-check files or the built-in toric family.
#[derive(Args)]
struct CodeArgs {
    /// First classical parity-check file ("rows cols" header, 0/1 rows)
    #[arg(short = 'a', value_name = "FILE", requires = "b")]
    a: Option<PathBuf>,
    /// Second classical parity-check file
    #[arg(short = 'b', value_name = "FILE", requires = "a")]
    b: Option<PathBuf>,
    /// Use the distance-L toric code instead of check files
    #[arg(long, value_name = "L", conflicts_with_all = ["a", "b"])]
    toric: Option<usize>,
}

#[derive(Args)]
struct GateArgs {
    /// Which targeted logical gate to apply
    #[arg(long, value_enum)]
    gate: GateName,
    /// Logical qubit the gate acts on (the target, for cnot)
    #[arg(long, value_name = "LABEL")]
    target: LogicalQubitLabel,
    /// Control logical qubit (cnot) or second qubit (cz)
    #[arg(long, value_name = "LABEL")]
    control: Option<LogicalQubitLabel>,
}

#[derive(Clone, Copy, ValueEnum)]
enum GateName {
    Phase,
    Hadamard,
    Cnot,
    Cz,
}

#[derive(Clone, Copy, ValueEnum)]
enum EmitFormat {
    Qasm,
    Json,
    Ascii,
}

pub fn run(args: Vec<String>) -> i32 {
    let argv = std::iter::once("hgpsynth".to_string()).chain(args);
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let stdout = std::io::stdout();
    match dispatch(cli.command, &mut stdout.lock()) {
        Ok(code) => code,
        Err(e) => {
            // a consumer like `head` closing the pipe is not our error
            if let Some(ioe) = e.downcast_ref::<std::io::Error>() {
                if ioe.kind() == std::io::ErrorKind::BrokenPipe {
                    return 0;
                }
            }
            eprintln!("error: {e:#}");
            2
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> anyhow::Result<i32> {
    match command {
        Command::Code { action: CodeAction::Build { code } } => {
            print_code_summary(&load_code(&code)?, out)?;
            Ok(0)
        }
        Command::Logicals { action: LogicalsAction::List { code } } => {
            let code = load_code(&code)?;
            let basis = logical_basis(&code)?;
            print_logicals(&basis, out)?;
            Ok(0)
        }
        Command::Synth { code, gate, out: out_path } => {
            let code = load_code(&code)?;
            let basis = logical_basis(&code)?;
            let spec = gate.to_spec()?;
            let circuit = synth_gate(&code, &basis, &spec)?;
            let (chi, delta) = metrics(&circuit);
            let json = circuit_to_json(&circuit);
            match out_path {
                Some(path) => {
                    fs::write(&path, &json)
                        .with_context(|| format!("writing {}", path.display()))?;
                    writeln!(
                        out,
                        "{}: {} gates, support {chi}, depth {delta} -> {}",
                        describe_spec(&spec),
                        circuit.len(),
                        path.display()
                    )?;
                }
                None => write!(out, "{json}")?,
            }
            Ok(0)
        }
        Command::Verify { code, gate, circuit, json } => {
            let code = load_code(&code)?;
            let basis = logical_basis(&code)?;
            let spec = gate.to_spec()?;
            let c = read_circuit(&circuit)?;
            if c.n != code.n() {
                bail!("circuit acts on {} qubits but the code has {}", c.n, code.n());
            }
            let (report, dense) = check_circuit(&code, &basis, &spec, &c)?;
            if json {
                writeln!(out, "{}", report_json(&report, dense))?;
            } else {
                writeln!(out, "{report}")?;
                if let Some(d) = dense {
                    writeln!(out, "dense check: {}", if d { "match" } else { "MISMATCH" })?;
                }
            }
            Ok(if report.pass && dense.unwrap_or(true) { 0 } else { 1 })
        }
        Command::Emit { circuit, format } => {
            let c = read_circuit(&circuit)?;
            match format {
                EmitFormat::Qasm => write!(out, "{}", circuit_to_qasm(&c))?,
                EmitFormat::Json => write!(out, "{}", circuit_to_json(&c))?,
                EmitFormat::Ascii => write!(out, "{}", circuit_to_ascii(&c))?,
            }
            Ok(0)
        }
        Command::ToricDemo { l, out_dir } => toric_demo(l, &out_dir, out),
    }
}

fn load_code(args: &CodeArgs) -> anyhow::Result<HgpCode> {
    match (args.toric, &args.a, &args.b) {
        (Some(l), None, None) => Ok(toric(l)?),
        (None, Some(a), Some(b)) => {
            let ha = read_check_matrix(a)?;
            let hb = read_check_matrix(b)?;
            Ok(hgp(ha, hb))
        }
        _ => bail!("select a code: --toric L, or -a FILE -b FILE"),
    }
}

fn read_check_matrix(path: &Path) -> anyhow::Result<BitMatrix> {
    let text =
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    BitMatrix::parse_text(&text).with_context(|| format!("parsing {}", path.display()))
}

fn read_circuit(path: &Path) -> anyhow::Result<Circuit> {
    let text =
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    circuit_from_json(&text).with_context(|| format!("parsing {}", path.display()))
}

impl GateArgs {
    fn to_spec(&self) -> anyhow::Result<LogicalGateSpec> {
        let kind = match self.gate {
            GateName::Phase => LogicalGateKind::Phase,
            GateName::Hadamard => LogicalGateKind::Hadamard,
            GateName::Cnot => LogicalGateKind::Cnot,
            GateName::Cz => LogicalGateKind::Cz,
        };
        let labels = match (kind.arity(), self.control) {
            (1, None) => vec![self.target],
            (1, Some(_)) => bail!("{} takes only --target", kind.name()),
            (2, Some(control)) => vec![control, self.target],
            (2, None) => bail!("{} needs --control and --target", kind.name()),
            _ => unreachable!(),
        };
        Ok(LogicalGateSpec { kind, labels })
    }
}

fn describe_spec(spec: &LogicalGateSpec) -> String {
    let sep = if spec.kind == LogicalGateKind::Cnot { " -> " } else { ", " };
    let labels: Vec<String> = spec.labels.iter().map(|l| l.to_string()).collect();
    format!("{} on {}", spec.kind.name(), labels.join(sep))
}

fn print_code_summary(code: &HgpCode, out: &mut dyn Write) -> anyhow::Result<()> {
    writeln!(out, "[[{}, {}]] hypergraph product code", code.n(), code.k())?;
    writeln!(
        out,
        "sectors: left {}x{} ({} qubits), right {}x{} ({} qubits)",
        code.na,
        code.nb,
        code.na * code.nb,
        code.ma,
        code.mb,
        code.ma * code.mb
    )?;
    let css = code.css();
    writeln!(out, "X checks: {} rows, weights {}", css.hx.rows(), weight_range(&css.hx))?;
    writeln!(out, "Z checks: {} rows, weights {}", css.hz.rows(), weight_range(&css.hz))?;
    if let Some(d) = css.distance() {
        writeln!(out, "distance: {d}")?;
    }
    Ok(())
}

fn weight_range(m: &BitMatrix) -> String {
    let weights: Vec<usize> = (0..m.rows()).map(|r| m.row(r).weight()).collect();
    match (weights.iter().min(), weights.iter().max()) {
        (Some(lo), Some(hi)) if lo == hi => format!("{lo}"),
        (Some(lo), Some(hi)) => format!("{lo}..{hi}"),
        _ => "-".into(),
    }
}

fn print_logicals(basis: &LogicalBasis, out: &mut dyn Write) -> anyhow::Result<()> {
    for (i, label) in basis.labels.iter().enumerate() {
        let fmt_supp = |v: &crate::gf2core::BitVector| {
            let one_based: Vec<String> =
                v.support().iter().map(|q| (q + 1).to_string()).collect();
            format!("{{{}}}", one_based.join(","))
        };
        writeln!(
            out,
            "{label}  X {}  Z {}",
            fmt_supp(&basis.x_ops[i]),
            fmt_supp(&basis.z_ops[i])
        )?;
    }
    Ok(())
}

fn check_circuit(
    code: &HgpCode,
    basis: &LogicalBasis,
    spec: &LogicalGateSpec,
    c: &Circuit,
) -> anyhow::Result<(VerificationReport, Option<bool>)> {
    let l = l_matrix(basis);
    let target = gate_f(basis, spec)?;
    let positions: Vec<usize> = spec
        .labels
        .iter()
        .map(|&lb| basis.position_of(lb))
        .collect::<crate::Result<_>>()?;
    let ml = ml_for(spec.kind, &positions, basis.k())?;
    let report = verify_logical(c, code.css(), &l, &ml, &target);
    let dense = if code.n() <= DENSE_LIMIT {
        Some(dense_oracle(c, code.css(), basis, spec)?)
    } else {
        None
    };
    Ok((report, dense))
}

fn report_json(report: &VerificationReport, dense: Option<bool>) -> String {
    let logicals: Vec<serde_json::Value> = report
        .logical_images
        .iter()
        .map(|li| {
            serde_json::json!({
                "target": li.target.to_string(),
                "achieved": li.achieved.to_string(),
                "sign": li.sign,
                "ok": li.ok,
            })
        })
        .collect();
    let value = serde_json::json!({
        "pass": report.pass,
        "symplectic_ok": report.symplectic_ok,
        "stabilizers_fixed": report.stabilizers_fixed,
        "stabilizer_signs": report.stabilizer_signs,
        "logical_images": logicals,
        "dense_check": dense,
    });
    serde_json::to_string_pretty(&value).expect("plain data serializes")
}

fn toric_demo(l: usize, out_dir: &Path, out: &mut dyn Write) -> anyhow::Result<i32> {
    let code = toric(l)?;
    let basis = logical_basis(&code)?;
    let (left, right) = (basis.labels[0], basis.labels[1]);
    let jobs = [
        ("phase", LogicalGateSpec { kind: LogicalGateKind::Phase, labels: vec![left] }),
        ("hadamard", LogicalGateSpec { kind: LogicalGateKind::Hadamard, labels: vec![left] }),
        ("cnot", LogicalGateSpec { kind: LogicalGateKind::Cnot, labels: vec![left, right] }),
        ("cz", LogicalGateSpec { kind: LogicalGateKind::Cz, labels: vec![left, right] }),
    ];
    fs::create_dir_all(out_dir)
        .with_context(|| format!("creating {}", out_dir.display()))?;
    writeln!(out, "toric code, distance {l}: [[{}, {}]]", code.n(), code.k())?;
    let mut all_pass = true;
    for (name, spec) in jobs {
        let circuit = synth_gate(&code, &basis, &spec)?;
        let path = out_dir.join(format!("{name}.json"));
        fs::write(&path, circuit_to_json(&circuit))
            .with_context(|| format!("writing {}", path.display()))?;
        let (chi, delta) = metrics(&circuit);
        let (report, dense) = check_circuit(&code, &basis, &spec, &circuit)?;
        let ok = report.pass && dense.unwrap_or(true);
        all_pass &= ok;
        writeln!(
            out,
            "{}: {} gates, support {chi}, depth {delta}, {} -> {}",
            describe_spec(&spec),
            circuit.len(),
            if ok { "verified" } else { "FAILED" },
            path.display()
        )?;
    }
    Ok(if all_pass { 0 } else { 1 })
}
