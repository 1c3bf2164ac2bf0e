//! `jetlift`: command-line workbench for exact jet calculus and lifting.

mod commands;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use jetlift::suite::{SuiteConfig, SCHEMA_VERSION};
use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Parser)]
#[command(name = "jetlift", version, about = "Exact jet calculus for time-dependent polynomial vector fields")]
struct Cli {
    /// Write the JSON report to this file instead of standard output.
    #[arg(long, global = true, value_name = "OUT")]
    json: Option<PathBuf>,
    /// Override the degree bound of membership solves.
    #[arg(long, global = true)]
    degree_bound: Option<u32>,
    /// Include wall-clock timing in the report (makes it non-reproducible).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Chart bracket and D-derivative of the first two fields.
    Bracket { file: PathBuf },
    /// Flow jet of the first field.
    Flow {
        #[arg(long, default_value_t = 3)]
        order: usize,
        file: PathBuf,
    },
    /// Difference formula for two fields with equal jets on Y, checked against the flow jets.
    DiffFormula {
        #[arg(long, default_value_t = 1)]
        order: usize,
        file: PathBuf,
    },
    /// Admissibility report of the first field.
    Admissible {
        #[arg(long, default_value_t = 1)]
        order: usize,
        setup: PathBuf,
        file: PathBuf,
    },
    /// Extend an admissible field (first field) by a correction (second field).
    Extend {
        #[arg(long, default_value_t = 1)]
        order: usize,
        setup: PathBuf,
        file: PathBuf,
    },
    /// Lift a first-order deformation to the order given in the problem file.
    Lift { problem: PathBuf },
    /// Cech cocycle of a chart family, its splitting and the glued charts.
    Cech { problem: PathBuf },
    /// Hamiltonian fields of the `poly` lines.
    Ham { file: PathBuf },
    /// Hamiltonian extension of a field along Y.
    ExtendHam { setup: PathBuf, file: PathBuf },
    /// Bracket of the Hamiltonian fields of two `poly` lines lies in the perp module.
    PerpCheck { setup: PathBuf, file: PathBuf },
    /// The flow of a Hamiltonian preserves the symplectic form to the given order.
    OmegaCheck {
        #[arg(long, default_value_t = 3)]
        order: usize,
        file: PathBuf,
    },
    /// Tangency ideal of the foliation along Y.
    Tangency { setup: PathBuf },
    /// Bracket of two foliation fields agreeing on Y lies in the twisted module.
    FolCheck { setup: PathBuf, file: PathBuf },
    /// The flow velocity of a foliation field stays in the foliation, modulo t^order.
    VelocityCheck {
        #[arg(long, default_value_t = 4)]
        order: usize,
        setup: PathBuf,
        file: PathBuf,
    },
    /// Run the full randomized invariant suite.
    VerifyPaper {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Cases per randomized check (defaults per check).
        #[arg(long)]
        cases: Option<usize>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

#[derive(Serialize)]
struct Timing {
    elapsed_ms: f64,
}

#[derive(Serialize)]
struct RunReport {
    schema_version: u32,
    subcommand: String,
    inputs_digest: String,
    ok: bool,
    results: serde_json::Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    timing: Option<Timing>,
}

struct Inputs {
    name: &'static str,
    params: Vec<String>,
    files: Vec<PathBuf>,
}

impl Command {
    fn inputs(&self) -> Inputs {
        use Command::*;
        let p = |v: &[(&str, String)]| v.iter().map(|(k, x)| format!("{k}={x}")).collect::<Vec<_>>();
        let (name, params, files): (&'static str, Vec<String>, Vec<&PathBuf>) = match self {
            Bracket { file } => ("bracket", vec![], vec![file]),
            Flow { order, file } => ("flow", p(&[("order", order.to_string())]), vec![file]),
            DiffFormula { order, file } => ("diff-formula", p(&[("order", order.to_string())]), vec![file]),
            Admissible { order, setup, file } => ("admissible", p(&[("order", order.to_string())]), vec![setup, file]),
            Extend { order, setup, file } => ("extend", p(&[("order", order.to_string())]), vec![setup, file]),
            Lift { problem } => ("lift", vec![], vec![problem]),
            Cech { problem } => ("cech", vec![], vec![problem]),
            Ham { file } => ("ham", vec![], vec![file]),
            ExtendHam { setup, file } => ("extend-ham", vec![], vec![setup, file]),
            PerpCheck { setup, file } => ("perp-check", vec![], vec![setup, file]),
            OmegaCheck { order, file } => ("omega-check", p(&[("order", order.to_string())]), vec![file]),
            Tangency { setup } => ("tangency", vec![], vec![setup]),
            FolCheck { setup, file } => ("fol-check", vec![], vec![setup, file]),
            VelocityCheck { order, setup, file } => ("velocity-check", p(&[("order", order.to_string())]), vec![setup, file]),
            VerifyPaper { seed, cases, .. } => (
                "verify-paper",
                p(&[("seed", seed.to_string()), ("cases", cases.map_or("default".into(), |c| c.to_string()))]),
                vec![],
            ),
        };
        Inputs { name, params, files: files.into_iter().cloned().collect() }
    }
}

/// SHA-256 over the subcommand, its parameters and the contents of every
/// input file; file names do not enter.
fn digest(inputs: &Inputs, degree_bound: Option<u32>) -> Result<String> {
    let mut h = Sha256::new();
    h.update(inputs.name.as_bytes());
    for p in &inputs.params {
        h.update([0]);
        h.update(p.as_bytes());
    }
    h.update([0]);
    h.update(format!("degree_bound={degree_bound:?}").as_bytes());
    for f in &inputs.files {
        h.update([1]);
        h.update(fs::read(f).with_context(|| format!("reading {}", f.display()))?);
    }
    Ok(hex::encode(h.finalize()))
}

fn dispatch(cmd: &Command, bound: Option<u32>) -> Result<commands::Outcome> {
    use Command::*;
    match cmd {
        Bracket { file } => commands::bracket(file),
        Flow { order, file } => commands::flow(file, *order),
        DiffFormula { order, file } => commands::diff_formula(file, *order),
        Admissible { order, setup, file } => commands::admissible(setup, file, *order, bound),
        Extend { order, setup, file } => commands::extend(setup, file, *order, bound),
        Lift { problem } => commands::lift(problem, bound),
        Cech { problem } => commands::cech(problem, bound),
        Ham { file } => commands::ham(file),
        ExtendHam { setup, file } => commands::extend_ham(setup, file, bound),
        PerpCheck { setup, file } => commands::perp_check(setup, file, bound),
        OmegaCheck { order, file } => commands::omega_check(file, *order),
        Tangency { setup } => commands::tangency(setup, bound),
        FolCheck { setup, file } => commands::fol_check(setup, file, bound),
        VelocityCheck { order, setup, file } => commands::velocity_check(setup, file, *order, bound),
        VerifyPaper { seed, cases, jobs } => {
            commands::verify(&SuiteConfig { seed: *seed, cases: *cases, jobs: (*jobs).max(1), degree_bound: bound })
        }
    }
}

fn write_report(report: &RunReport, out: Option<&Path>) -> Result<()> {
    let text = serde_json::to_string_pretty(report)? + "\n";
    match out {
        Some(path) => {
            fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?;
            println!("{}: {} (report written to {})", report.subcommand, if report.ok { "ok" } else { "FAILED" }, path.display());
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<bool> {
    let inputs = cli.command.inputs();
    let inputs_digest = digest(&inputs, cli.degree_bound)?;
    let start = Instant::now();
    let outcome = dispatch(&cli.command, cli.degree_bound).with_context(|| format!("{} failed", inputs.name))?;
    let timing = cli.timing.then(|| Timing { elapsed_ms: start.elapsed().as_secs_f64() * 1e3 });
    let report = RunReport {
        schema_version: SCHEMA_VERSION,
        subcommand: inputs.name.to_string(),
        inputs_digest,
        ok: outcome.ok,
        results: outcome.results,
        timing,
    };
    write_report(&report, cli.json.as_deref())?;
    Ok(report.ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
