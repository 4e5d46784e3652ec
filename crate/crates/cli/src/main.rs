use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use gcfp::contraction::{verify_condition, verify_monotone};
use gcfp::graph::demo_g_complete_strip;
use gcfp::oracles::{run_lemma_suites, SuiteConfig, SuiteStatus};
use gcfp::real;
use gcfp::scenarios::{builtin, load_scenario, Scenario};
use gcfp::solver::solve;
use gcfp::{Error, Execution, Sampling, ViolationReport};

#[derive(Parser)]
#[command(
    name = "gcfp",
    version,
    about = "Monotone Gregus-Ćirić contractions: checks, oracles and a fixed-point solver"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample edge pairs and check the contraction condition and monotonicity.
    Check {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        sampling: SamplingArgs,
        #[command(flatten)]
        output: Output,
    },
    /// Run the convex-combination solver and emit a certificate and trace.
    Solve {
        #[command(flatten)]
        source: Source,
        #[arg(long = "tol")]
        tolerance: Option<f64>,
        #[arg(long)]
        max_iters: Option<usize>,
        #[arg(long)]
        beta: Option<f64>,
        /// Run even when the parameters fail the strict bounds.
        #[arg(long)]
        force: bool,
        /// Stop when a step's edge attestation fails.
        #[arg(long)]
        assert_edges: bool,
        #[arg(long, env = "GCFP_SEED")]
        seed: Option<u64>,
        #[command(flatten)]
        output: Output,
    },
    /// Run the four oracle suites and print a pass/fail table.
    Lemmas {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        sampling: SamplingArgs,
        #[command(flatten)]
        output: Output,
    },
    /// Certify the strip example: monotone sequences converge inside it, the space is not complete.
    DemoStrip {
        #[arg(long, default_value_t = 1000)]
        terms: usize,
        #[arg(long, env = "GCFP_SEED", default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Source {
    /// halving, shift-counterexample, strip-space or affine-monotone
    #[arg(long)]
    builtin: Option<String>,
    /// Scenario JSON file.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct SamplingArgs {
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long, env = "GCFP_SEED")]
    seed: Option<u64>,
}

#[derive(Args)]
struct Output {
    /// Write the artifact here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Leave the timestamp out of the manifest so reruns are byte-identical.
    #[arg(long)]
    no_timestamp: bool,
}

#[derive(Serialize)]
struct RunManifest {
    subcommand: &'static str,
    scenario_source: String,
    seed: u64,
    timestamp: Option<String>,
    tool_version: String,
}

impl RunManifest {
    fn new(subcommand: &'static str, scenario_source: String, seed: u64, output: &Output) -> Self {
        RunManifest {
            subcommand,
            scenario_source,
            seed,
            timestamp: (!output.no_timestamp)
                .then(|| chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true)),
            tool_version: concat!("gcfp ", env!("CARGO_PKG_VERSION")).to_string(),
        }
    }
}

/// Failures that map to exit 2.
#[derive(Debug)]
struct ConfigError(anyhow::Error);

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:#}", self.0)
    }
}

impl std::error::Error for ConfigError {}

fn config_error(e: impl Into<anyhow::Error>) -> anyhow::Error {
    ConfigError(e.into()).into()
}

fn load(source: &Source) -> Result<(Scenario, String)> {
    match (&source.builtin, &source.config) {
        (Some(name), _) => Ok((builtin(name).map_err(config_error)?, name.clone())),
        (None, Some(path)) => {
            let text = fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))
                .map_err(config_error)?;
            let scenario = load_scenario(&text)
                .with_context(|| format!("loading {}", path.display()))
                .map_err(config_error)?;
            Ok((scenario, path.display().to_string()))
        }
        (None, None) => unreachable!("clap requires a source"),
    }
}

fn emit(output: &Output, body: &impl Serialize) -> Result<()> {
    let text = serde_json::to_string_pretty(body)? + "\n";
    match &output.out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn trace_path(out: &Path) -> PathBuf {
    let mut name = out.as_os_str().to_owned();
    name.push(".trace.jsonl");
    PathBuf::from(name)
}

#[derive(Serialize)]
struct CheckReport<'a> {
    manifest: RunManifest,
    scenario: &'a str,
    passed: bool,
    condition: ViolationReport,
    monotone: ViolationReport,
}

fn cmd_check(source: &Source, args: &SamplingArgs, output: &Output) -> Result<u8> {
    let (s, origin) = load(source)?;
    let sampling = Sampling::new(
        args.samples.unwrap_or(s.verify.samples),
        args.seed.unwrap_or(s.verify.seed),
    );
    let condition =
        verify_condition(&s.graph, &s.map, &s.params, &sampling).map_err(config_error)?;
    let monotone = verify_monotone(&s.graph, &s.map, &sampling).map_err(config_error)?;
    let passed = condition.passed() && monotone.passed();
    for r in [&condition, &monotone] {
        eprintln!(
            "{}: {} checked, {} violations, worst margin {}",
            r.label,
            r.checked,
            r.violations.len(),
            r.worst_margin.map_or("n/a".into(), real::to_text)
        );
    }
    let report = CheckReport {
        manifest: RunManifest::new("check", origin, sampling.seed, output),
        scenario: &s.name,
        passed,
        condition,
        monotone,
    };
    emit(output, &report)?;
    Ok(if passed { 0 } else { 1 })
}

#[derive(Serialize)]
struct SolveReport<'a> {
    manifest: RunManifest,
    scenario: &'a str,
    matches_expected: bool,
    certificate: gcfp::solver::Certificate,
}

#[allow(clippy::too_many_arguments)]
fn cmd_solve(
    source: &Source,
    tolerance: Option<f64>,
    max_iters: Option<usize>,
    beta: Option<f64>,
    force: bool,
    assert_edges: bool,
    seed: Option<u64>,
    output: &Output,
) -> Result<u8> {
    let (s, origin) = load(source)?;
    let mut config = s.solver;
    config.tolerance = tolerance.unwrap_or(config.tolerance);
    config.max_outer_iterations = max_iters.unwrap_or(config.max_outer_iterations);
    config.beta_override = beta.or(config.beta_override);
    config.force_mode |= force;
    config.assert_edges |= assert_edges;
    let cert = match solve(&s.graph, &s.map, &s.params, &s.start, &config) {
        Ok(c) => c,
        Err(e @ (Error::InvalidParams { .. } | Error::NotTransitive | Error::NoStartEdge)) => {
            eprintln!("hypothesis failure: {e}");
            return Ok(1);
        }
        Err(e) => return Err(config_error(e)),
    };
    let manifest = RunManifest::new("solve", origin, seed.unwrap_or(s.verify.seed), output);

    let mut trace = serde_json::to_string(&serde_json::json!({ "manifest": &manifest }))? + "\n";
    for line in cert.trace_lines() {
        trace.push_str(&line);
        trace.push('\n');
    }
    match &output.out {
        Some(out) => {
            let path = trace_path(out);
            fs::write(&path, trace).with_context(|| format!("writing {}", path.display()))?
        }
        None => std::io::stderr().write_all(trace.as_bytes())?,
    }
    eprintln!(
        "{:?} after {} steps, residual {}, omega {}",
        cert.status,
        cert.steps.len(),
        real::to_text(cert.final_residual),
        cert.omega
    );
    let converged = cert.converged();
    let report = SolveReport {
        manifest,
        scenario: &s.name,
        matches_expected: s.matches(&cert),
        certificate: cert,
    };
    emit(output, &report)?;
    Ok(if converged { 0 } else { 1 })
}

#[derive(Serialize)]
struct LemmaReport<'a> {
    manifest: RunManifest,
    scenario: &'a str,
    passed: bool,
    table: gcfp::oracles::LemmaTable,
}

fn cmd_lemmas(source: &Source, args: &SamplingArgs, output: &Output) -> Result<u8> {
    let (s, origin) = load(source)?;
    let seed = args.seed.unwrap_or(s.verify.seed);
    let config = SuiteConfig::new(args.samples.unwrap_or(s.verify.samples), seed);
    let table = run_lemma_suites(&s.graph, &s.map, &s.params, &config, Execution::default())
        .map_err(config_error)?;
    let mut out = std::io::stdout().lock();
    writeln!(
        out,
        "{:<16} {:<7} {:>9} {:>9} {:>11}  {:<24}  note",
        "suite", "status", "samples", "checked", "violations", "worst margin"
    )?;
    for suite in &table.suites {
        let status = match suite.status {
            SuiteStatus::Pass => "pass",
            SuiteStatus::Fail => "FAIL",
            SuiteStatus::Skipped => "skipped",
        };
        writeln!(
            out,
            "{:<16} {:<7} {:>9} {:>9} {:>11}  {:<24}  {}",
            suite.lemma,
            status,
            suite.report.samples_tested,
            suite.report.checked,
            suite.report.violations.len(),
            suite
                .report
                .worst_margin
                .map_or("n/a".into(), real::to_text),
            suite.note
        )?;
    }
    drop(out);
    let passed = table.passed();
    let report = LemmaReport {
        manifest: RunManifest::new("lemmas", origin, seed, output),
        scenario: &s.name,
        passed,
        table,
    };
    if output.out.is_some() {
        emit(output, &report)?;
    }
    Ok(if passed { 0 } else { 1 })
}

#[derive(Serialize)]
struct DemoReport {
    manifest: RunManifest,
    demo: gcfp::graph::GCompleteDemoReport,
}

fn cmd_demo_strip(terms: usize, seed: u64, output: &Output) -> Result<u8> {
    let demo = demo_g_complete_strip(terms).map_err(config_error)?;
    eprintln!(
        "monotone limit {} in X: {}; escaping limit {} in X: {}",
        demo.monotone.limit,
        demo.monotone.limit_in_space,
        demo.escaping.limit,
        demo.escaping.limit_in_space
    );
    let certified = demo.certified;
    let report = DemoReport {
        manifest: RunManifest::new("demo-strip", "strip-space".into(), seed, output),
        demo,
    };
    emit(output, &report)?;
    Ok(if certified { 0 } else { 1 })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Check {
            source,
            sampling,
            output,
        } => cmd_check(source, sampling, output),
        Command::Solve {
            source,
            tolerance,
            max_iters,
            beta,
            force,
            assert_edges,
            seed,
            output,
        } => cmd_solve(
            source,
            *tolerance,
            *max_iters,
            *beta,
            *force,
            *assert_edges,
            *seed,
            output,
        ),
        Command::Lemmas {
            source,
            sampling,
            output,
        } => cmd_lemmas(source, sampling, output),
        Command::DemoStrip {
            terms,
            seed,
            output,
        } => cmd_demo_strip(*terms, *seed, output),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.is::<ConfigError>() {
                ExitCode::from(2)
            } else {
                ExitCode::FAILURE
            }
        }
    }
}
