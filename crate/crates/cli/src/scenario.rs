//! Scenario files: a list of command invocations with expected values at JSON pointers.

use crate::{classify, execute, Cli, ScenarioArgs, Status, SCHEMA_VERSION};
use anyhow::{bail, Context, Result};
use clap::Parser;
use serde::Deserialize;
use serde_json::{json, Value};
use std::time::Instant;

pub const BUNDLED: &[(&str, &str)] = &[
    ("massey", include_str!("../scenarios/massey.json")),
    ("dickson-p3", include_str!("../scenarios/dickson-p3.json")),
    ("shear", include_str!("../scenarios/shear.json")),
    ("bestvina", include_str!("../scenarios/bestvina.json")),
    ("pc", include_str!("../scenarios/pc.json")),
];

const PROVENANCE: &[&str] = &["PAPER", "DERIVED", "TRIVIAL"];

#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub schema_version: u32,
    pub name: String,
    #[serde(default)]
    pub budget: Budget,
    pub steps: Vec<Step>,
}

#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
pub struct Budget {
    pub seconds: f64,
    pub memory_mb: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { seconds: 600.0, memory_mb: 8192 }
    }
}

#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
pub struct Step {
    pub args: Vec<String>,
    pub expect: Vec<Expectation>,
}

#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
pub struct Expectation {
    /// JSON pointer into the step's report.
    pub pointer: String,
    pub equals: Value,
    /// One of PAPER, DERIVED, TRIVIAL.
    pub provenance: String,
    #[serde(default)]
    pub note: Option<String>,
}

pub fn parse(text: &str) -> Result<Scenario> {
    let s: Scenario = serde_json::from_str(text).context("parsing scenario")?;
    if s.schema_version != SCHEMA_VERSION {
        bail!("scenario schema version {} is not {SCHEMA_VERSION}", s.schema_version);
    }
    for (i, step) in s.steps.iter().enumerate() {
        if step.args.first().is_some_and(|a| a == "scenario") {
            bail!("step {i} runs a scenario");
        }
        for e in &step.expect {
            if !PROVENANCE.contains(&e.provenance.as_str()) {
                bail!("step {i}: provenance {:?} is not one of {PROVENANCE:?}", e.provenance);
            }
        }
    }
    Ok(s)
}

fn load(name: &str) -> Result<String> {
    let path = std::path::Path::new(name);
    if path.is_file() {
        return std::fs::read_to_string(path).with_context(|| format!("reading {name}"));
    }
    let key = name.trim_end_matches(".json");
    BUNDLED
        .iter()
        .find(|(n, _)| *n == key)
        .map(|(_, t)| t.to_string())
        .with_context(|| format!("no scenario file or bundled scenario named {name:?}"))
}

/// Peak resident memory in MB, where the platform reports it.
fn peak_memory_mb() -> Option<u64> {
    let status = std::fs::read_to_string("/proc/self/status").ok()?;
    let line = status.lines().find(|l| l.starts_with("VmHWM:"))?;
    let kb: u64 = line.split_whitespace().nth(1)?.parse().ok()?;
    Some(kb / 1024)
}

pub fn run(args: &ScenarioArgs) -> Result<(Value, Status)> {
    if args.list {
        let names: Vec<&str> = BUNDLED.iter().map(|(n, _)| *n).collect();
        return Ok((json!({ "schema_version": SCHEMA_VERSION, "bundled": names }), Status::Pass));
    }
    let Some(name) = &args.scenario else { bail!("give a scenario file or name, or --list") };
    let scenario = parse(&load(name)?)?;
    let start = Instant::now();
    let mut status = Status::Pass;
    let mut steps = Vec::new();
    for step in &scenario.steps {
        let t = Instant::now();
        let mut entry = json!({ "args": step.args });
        let argv = std::iter::once("cohomolab".to_string()).chain(step.args.iter().cloned());
        let result = Cli::try_parse_from(argv).map_err(anyhow::Error::from).and_then(|cli| execute(&cli));
        match result {
            Ok(out) => {
                let checks: Vec<Value> = step
                    .expect
                    .iter()
                    .map(|e| {
                        let actual = out.report.pointer(&e.pointer).cloned().unwrap_or(Value::Null);
                        let ok = actual == e.equals;
                        if !ok {
                            status = Status::Fail;
                        }
                        json!({ "pointer": e.pointer, "expected": e.equals, "actual": actual, "provenance": e.provenance, "note": e.note, "passed": ok })
                    })
                    .collect();
                entry["expectations"] = Value::Array(checks);
            }
            Err(e) => {
                let s = classify(&e);
                status = if s == Status::Resource { Status::Resource } else { Status::Fail };
                entry["error"] = format!("{e:#}").into();
            }
        }
        let secs = t.elapsed().as_secs_f64();
        eprintln!("step {:?}: {secs:.2}s", step.args.first().map(String::as_str).unwrap_or(""));
        if args.timings {
            entry["seconds"] = secs.into();
        }
        steps.push(entry);
        if status == Status::Resource {
            break;
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    let over_time = elapsed > scenario.budget.seconds;
    let over_memory = peak_memory_mb().is_some_and(|m| m > scenario.budget.memory_mb);
    if over_time || over_memory {
        status = Status::Resource;
    }
    let mut report = json!({
        "schema_version": SCHEMA_VERSION,
        "scenario": scenario.name,
        "passed": status == Status::Pass,
        "budget_exceeded": over_time || over_memory || status == Status::Resource,
        "steps": steps,
    });
    if args.timings {
        report["seconds"] = elapsed.into();
    }
    Ok((report, status))
}
