//! `cohomolab`: batch driver with JSON reports.

mod commands;
mod scenario;

use anyhow::Result;
use clap::{Args, Parser, Subcommand};
use cohomolab::bar::{BarError, BarOptions};
use cohomolab::chern::ChernError;
use cohomolab::davis::DavisError;
use cohomolab::invariants::InvariantError;
use cohomolab::ringmodel::RingError;
use serde_json::Value;
use std::path::PathBuf;
use std::process::ExitCode;

/// Version of the JSON report layout.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Parser, Debug)]
#[command(name = "cohomolab", version, about = "Exact computations in group cohomology, invariant rings and Davis complexes")]
pub struct Cli {
    /// Boundary-matrix cache directory (overrides COHOMOLAB_CACHE).
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Largest number of bar cells a single degree may use.
    #[arg(long, global = true)]
    pub max_cells: Option<u128>,
    /// Also write the JSON report to this file.
    #[arg(long, global = true)]
    pub json_out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Mod-p and integral cohomology of a finite group from the bar complex.
    Cohomology(commands::CohomologyArgs),
    /// Triple Massey product of degree-1 classes given by presentation coordinates.
    Massey(commands::MasseyArgs),
    /// Chern-class invariants from character tables.
    #[command(subcommand)]
    Chern(commands::ChernCommand),
    /// Fixed points of matrix groups on free graded-commutative algebras.
    #[command(subcommand)]
    Invariants(commands::InvariantsCommand),
    /// Fixed subrings of the cohomology ring model of P_2(p).
    #[command(subcommand)]
    Ringmodel(commands::RingmodelCommand),
    /// Right-angled Coxeter groups, Davis quotients, homology and Euler characteristics.
    #[command(subcommand)]
    Davis(commands::DavisCommand),
    /// Run a scenario file (or a bundled scenario by name).
    Scenario(ScenarioArgs),
}

#[derive(Args, Debug)]
pub struct ScenarioArgs {
    /// Path to a scenario JSON file, or the name of a bundled scenario.
    pub scenario: Option<String>,
    /// List the bundled scenarios.
    #[arg(long)]
    pub list: bool,
    /// Include per-step timings in the report (they make reruns differ).
    #[arg(long)]
    pub timings: bool,
}

/// Process exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass = 0,
    Fail = 1,
    Input = 2,
    Resource = 3,
}

/// A report and whether the checks it carries passed.
pub struct Outcome {
    pub report: Value,
    pub passed: bool,
}

impl Outcome {
    pub fn info(report: Value) -> Self {
        Outcome { report, passed: true }
    }
}

pub struct Context {
    pub bar: BarOptions,
}

impl Context {
    fn from_cli(cli: &Cli) -> Self {
        let mut bar = BarOptions::default();
        if let Some(d) = &cli.cache_dir {
            bar.cache_dir = Some(d.clone());
        }
        if let Some(m) = cli.max_cells {
            bar.max_cells = m;
        }
        Context { bar }
    }
}

/// Exit status for an error from a computation.
pub fn classify(err: &anyhow::Error) -> Status {
    for cause in err.chain() {
        if let Some(BarError::ResourceLimit { .. }) = cause.downcast_ref::<BarError>() {
            return Status::Resource;
        }
        if let Some(InvariantError::Infeasible { .. }) = cause.downcast_ref::<InvariantError>() {
            return Status::Resource;
        }
        if let Some(RingError::Invariant(InvariantError::Infeasible { .. })) = cause.downcast_ref::<RingError>() {
            return Status::Resource;
        }
        if let Some(ChernError::TooLarge { .. }) = cause.downcast_ref::<ChernError>() {
            return Status::Resource;
        }
        if let Some(DavisError::CrossCheck(_)) = cause.downcast_ref::<DavisError>() {
            return Status::Fail;
        }
        if let Some(RingError::Structure(_)) = cause.downcast_ref::<RingError>() {
            return Status::Fail;
        }
    }
    Status::Input
}

/// Runs one non-scenario command.
pub fn execute(cli: &Cli) -> Result<Outcome> {
    let ctx = Context::from_cli(cli);
    let mut out = match &cli.command {
        Command::Cohomology(a) => commands::cohomology(&ctx, a)?,
        Command::Massey(a) => commands::massey(a)?,
        Command::Chern(c) => commands::chern(c)?,
        Command::Invariants(c) => commands::invariants(c)?,
        Command::Ringmodel(c) => commands::ringmodel(c)?,
        Command::Davis(c) => commands::davis(c)?,
        Command::Scenario(_) => anyhow::bail!("scenarios cannot be nested"),
    };
    if let Value::Object(map) = &mut out.report {
        map.insert("schema_version".into(), SCHEMA_VERSION.into());
        map.insert("passed".into(), out.passed.into());
    }
    Ok(out)
}

fn emit(report: &Value, json_out: Option<&PathBuf>) -> Result<()> {
    let text = serde_json::to_string_pretty(report)?;
    println!("{text}");
    if let Some(path) = json_out {
        std::fs::write(path, format!("{text}\n"))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { Status::Input as u8 } else { 0 });
        }
    };
    let result = match &cli.command {
        Command::Scenario(a) => scenario::run(a).map(|(report, status)| (report, status)),
        _ => execute(&cli).map(|o| {
            let status = if o.passed { Status::Pass } else { Status::Fail };
            (o.report, status)
        }),
    };
    match result {
        Ok((report, status)) => {
            if let Err(e) = emit(&report, cli.json_out.as_ref()) {
                eprintln!("error: {e:#}");
                return ExitCode::from(Status::Input as u8);
            }
            ExitCode::from(status as u8)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(classify(&e) as u8)
        }
    }
}
