//! Command-line front end. The binary only parses arguments and calls [`main`].
//!
//! Every subcommand reads one JSON [`ProblemSpec`] (from `--input` or stdin) and
//! writes a JSON report or CSV table to stdout and, with `--out DIR`, to files.
//! Errors go to stderr as `{"error": kind, "message": ..., "exit_code": n}`.

mod golden;
mod spec;

use std::fs;
use std::io::{BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};

pub use golden::{example1_scan, golden, run_example, ExampleReport, GoldenCase, GoldenCheck, GoldenFile};
pub use spec::{OmegaSpec, ProblemSpec};

use crate::criterion::{build_m, verdict, CriterionMatrix, StabilityVerdict};
use crate::error::{Error, Result};
use crate::moment::{d_second_table, moment_constants, omega_threshold, MomentConstants};
use crate::nonlinearity::{hessian_identities_residual, ProportionalRatio};
use crate::simulator::{self, io as simio, HeuristicVerdict, InitialCondition, SimulationConfig, SimulationSettings};
use crate::spectral::{theorem2_report, SpectrumReport};

/// Environment variable capping worker threads.
pub const THREADS_ENV: &str = "BBMSTAB_THREADS";

#[derive(Debug, Parser)]
#[command(name = "bbmstab", version, about = "Orbital stability of proportional BBM solitary waves")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Problem JSON; stdin when omitted or "-".
    #[arg(long, global = true, value_name = "PATH")]
    pub input: Option<PathBuf>,
    /// Directory for report files.
    #[arg(long, global = true, value_name = "DIR")]
    pub out: Option<PathBuf>,
    /// Suppress stdout.
    #[arg(long, global = true)]
    pub quiet: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Ratios, criterion matrix and verdict for every admissible ratio.
    Analyze,
    /// Analytic and numerical spectra of the linearised operators.
    Spectrum,
    /// Table of q(omega) and d''(omega).
    Dprime,
    /// Time-domain run; needs a `sim` block.
    Simulate,
    /// Replay a worked example against its golden values.
    Example {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=4))]
        n: u8,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RatioAnalysis {
    pub ratio: ProportionalRatio,
    pub matrix: Option<CriterionMatrix>,
    pub verdict: StabilityVerdict,
    pub moment: Option<MomentConstants>,
    pub omega_p: Option<f64>,
    /// Euler-identity residuals at `(1, mu)`.
    pub identities_residual: (f64, f64),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub p: u32,
    pub coeffs: Vec<f64>,
    pub bound: f64,
    pub ratios: Vec<RatioAnalysis>,
}

pub fn analyze_ratio(
    h: &crate::nonlinearity::HomogeneousNonlinearity,
    r: &ProportionalRatio,
) -> Result<RatioAnalysis> {
    let p = h.p();
    let identities_residual = hessian_identities_residual(h, r.mu);
    if !r.admissible {
        return Ok(RatioAnalysis {
            ratio: *r,
            matrix: None,
            verdict: StabilityVerdict::not_admissible(p),
            moment: None,
            omega_p: None,
            identities_residual,
        });
    }
    let m = build_m(h, r)?;
    let mc = moment_constants(p, r.mu, r.hu)?;
    let omega_p = omega_threshold(&mc);
    Ok(RatioAnalysis {
        ratio: *r,
        verdict: verdict(&m, p, omega_p)?,
        matrix: Some(m),
        moment: Some(mc),
        omega_p,
        identities_residual,
    })
}

pub fn cmd_analyze(spec: &ProblemSpec) -> Result<AnalysisReport> {
    let h = spec.nonlinearity()?;
    let ratios = spec.ratios(&h)?;
    if !ratios.iter().any(|r| r.admissible) {
        return Err(Error::NoAdmissibleRatio);
    }
    Ok(AnalysisReport {
        p: spec.p,
        coeffs: spec.coeffs.clone(),
        bound: 1.0 / (spec.p as f64 + 1.0),
        ratios: ratios.iter().map(|r| analyze_ratio(&h, r)).collect::<Result<_>>()?,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumOutput {
    pub reports: Vec<SpectrumReport>,
}

pub fn cmd_spectrum(spec: &ProblemSpec) -> Result<SpectrumOutput> {
    let h = spec.nonlinearity()?;
    let omegas = spec.omegas("spectrum")?;
    let mut reports = Vec::new();
    for r in spec.admissible_ratios(&h)? {
        for &w in &omegas {
            reports.push(theorem2_report(&h, &r, w, &spec.grid)?);
        }
    }
    Ok(SpectrumOutput { reports })
}

/// CSV with columns `mu,omega,q,d_second`.
pub fn cmd_dprime(spec: &ProblemSpec) -> Result<String> {
    let h = spec.nonlinearity()?;
    let omegas = spec.omegas("dprime")?;
    let mut csv = String::from("mu,omega,q,d_second\n");
    for r in spec.admissible_ratios(&h)? {
        let mc = moment_constants(h.p(), r.mu, r.hu)?;
        for row in d_second_table(&mc, &omegas)? {
            csv.push_str(&format!("{:?},{:?},{:?},{:?}\n", r.mu, row.omega, row.q, row.d_second));
        }
    }
    Ok(csv)
}

/// Simulation summary without the field snapshots.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationSummary {
    pub mu: f64,
    pub settings: SimulationSettings,
    pub domain_length: f64,
    pub dealias: bool,
    pub cfl: f64,
    pub relative_drift: (f64, f64),
    pub initial_deviation: f64,
    pub max_deviation: f64,
    pub final_deviation: f64,
    pub verdict: Option<HeuristicVerdict>,
    pub snapshots: usize,
}

pub struct SimulateOutput {
    pub summary: SimulationSummary,
    pub run: simulator::SimulationRun,
}

pub fn cmd_simulate(spec: &ProblemSpec) -> Result<SimulateOutput> {
    let h = spec.nonlinearity()?;
    let settings = spec
        .sim
        .clone()
        .ok_or_else(|| Error::Schema("simulate needs a `sim` block".into()))?;
    let ratio = spec.admissible_ratios(&h)?[0];
    let config = SimulationConfig::new(h, ratio.mu, settings.clone());
    let (run, verdict) = match settings.initial {
        InitialCondition::ExactWave { .. } => (simulator::run(&config)?, None),
        _ => {
            let e = simulator::stability_experiment(&config)?;
            (e.run, Some(e.verdict))
        }
    };
    Ok(SimulateOutput {
        summary: SimulationSummary {
            mu: ratio.mu,
            settings,
            domain_length: run.domain_length,
            dealias: run.dealias,
            cfl: run.cfl,
            relative_drift: run.relative_drift(),
            initial_deviation: run.initial_deviation(),
            max_deviation: run.max_deviation(),
            final_deviation: run.final_deviation(),
            verdict,
            snapshots: run.checkpoints.len(),
        },
        run,
    })
}

pub fn cmd_example(n: u8) -> Result<ExampleReport> {
    run_example(n)
}

/// Sizes the global rayon pool from `BBMSTAB_THREADS`, if set.
pub fn configure_threads() -> Result<Option<usize>> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(None);
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n >= 1)
        .ok_or_else(|| Error::InvalidConfig(format!("{THREADS_ENV} = {raw:?} must be a positive integer")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Error::InvalidConfig(e.to_string()))?;
    Ok(Some(n))
}

fn read_spec(input: Option<&Path>) -> Result<ProblemSpec> {
    let mut text = String::new();
    match input {
        Some(p) if p != Path::new("-") => {
            text = fs::read_to_string(p).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?
        }
        _ => {
            std::io::stdin().read_to_string(&mut text)?;
        }
    }
    ProblemSpec::parse(&text)
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| Error::Io(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

struct Sink<'a> {
    out: Option<&'a Path>,
    quiet: bool,
}

impl Sink<'_> {
    fn emit(&self, file: &str, text: &str) -> Result<()> {
        if let Some(dir) = self.out {
            fs::create_dir_all(dir)?;
            fs::write(dir.join(file), text)?;
        }
        if !self.quiet {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
        }
        Ok(())
    }
}

/// Runs a parsed command; returns the process exit code on success paths
/// (0, or 4 for a golden mismatch).
pub fn execute(cli: &Cli) -> Result<i32> {
    let sink = Sink {
        out: cli.out.as_deref(),
        quiet: cli.quiet,
    };
    match cli.command {
        Command::Example { n } => {
            let report = cmd_example(n)?;
            sink.emit(&format!("example_{n}.json"), &to_json(&report)?)?;
            if !report.all_pass {
                let labels: Vec<_> = report.mismatches().iter().map(|c| c.label.clone()).collect();
                return Err(Error::GoldenMismatch(labels.join("; ")));
            }
        }
        Command::Analyze => {
            let spec = read_spec(cli.input.as_deref())?;
            sink.emit("analysis.json", &to_json(&cmd_analyze(&spec)?)?)?;
        }
        Command::Spectrum => {
            let spec = read_spec(cli.input.as_deref())?;
            sink.emit("spectrum.json", &to_json(&cmd_spectrum(&spec)?)?)?;
        }
        Command::Dprime => {
            let spec = read_spec(cli.input.as_deref())?;
            sink.emit("dprime.csv", &cmd_dprime(&spec)?)?;
        }
        Command::Simulate => {
            let spec = read_spec(cli.input.as_deref())?;
            let out = cmd_simulate(&spec)?;
            if let Some(dir) = &cli.out {
                fs::create_dir_all(dir)?;
                simio::write_history_csv(BufWriter::new(fs::File::create(dir.join("history.csv"))?), &out.run)?;
                for (i, snap) in out.run.checkpoints.iter().enumerate() {
                    let f = fs::File::create(dir.join(format!("snapshot_{i:04}.bin")))?;
                    simio::write_snapshot(BufWriter::new(f), snap)?;
                }
            }
            sink.emit("simulation.json", &to_json(&out.summary)?)?;
        }
    }
    Ok(0)
}

/// Machine-readable error line for stderr.
pub fn error_json(e: &Error) -> String {
    serde_json::json!({
        "error": e.kind(),
        "message": e.to_string(),
        "exit_code": e.exit_code(),
    })
    .to_string()
}

/// Entry point used by the binary.
pub fn main() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help / --version
            let _ = e.print();
            return 0;
        }
        Err(e) => {
            let msg = e.render().to_string();
            let line = msg.lines().find(|l| !l.trim().is_empty()).unwrap_or("invalid arguments");
            eprintln!(
                "{}",
                serde_json::json!({ "error": "usage", "message": line.trim_start_matches("error: "), "exit_code": 2 })
            );
            return 2;
        }
    };
    let result = configure_threads().and_then(|_| execute(&cli));
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("{}", error_json(&e));
            e.exit_code()
        }
    }
}
