//! Command-line front end: scenario simulation, gain tuning, controller
//! comparison, and parameter sweeps, all driven by JSON config files.
//!
//! Exit codes: 0 success, 2 configuration error, 3 diverged simulation.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use wristsim::error::Error;
use wristsim::harness::{self, RunRecord};
use wristsim::report;
use wristsim::scenario::{RawScenario, Scenario};
use wristsim::tuning::{self, ControllerKind};

#[derive(Parser)]
#[command(name = "wristsim", version, about = "Soft-wrist closed-loop simulator")]
struct Cli {
    /// Output directory for reports and time series.
    #[arg(long, global = true, default_value = ".")]
    out: PathBuf,

    /// Override the scenario seed.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Time-series output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Run one scenario and emit its time series and summary.
    Simulate { config: PathBuf },
    /// Tune controller gains with the particle swarm.
    Tune { config: PathBuf },
    /// Run several scenarios and tabulate their metrics side by side.
    Compare { config: PathBuf },
    /// Re-run one scenario over a list of values of a named parameter.
    Sweep {
        config: PathBuf,
        #[arg(long)]
        param: String,
        /// Comma-separated numeric values, e.g. 0.7,1.0,1.3
        #[arg(long, value_delimiter = ',')]
        values: Vec<f64>,
    },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct TuneConfig {
    schema_version: u32,
    controller: ControllerKind,
    scenario: RawScenario,
    #[serde(default)]
    lambda: Option<f64>,
    #[serde(default)]
    particles: Option<usize>,
    #[serde(default)]
    iterations: Option<usize>,
    #[serde(default)]
    bounds: Option<Vec<(f64, f64)>>,
    #[serde(default)]
    seed: Option<u64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct CompareConfig {
    schema_version: u32,
    scenarios: Vec<RawScenario>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Simulation(_) | Error::Integration(_) | Error::Stability { .. } => {
                    ExitCode::from(3)
                }
                _ => ExitCode::from(2),
            }
        }
    }
}

fn read_to_string(path: &Path) -> wristsim::Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))
}

fn load_scenario(path: &Path, seed: Option<u64>) -> wristsim::Result<Scenario> {
    let raw = RawScenario::from_json(&read_to_string(path)?)?;
    let mut scenario = raw.resolve()?;
    if let Some(s) = seed {
        scenario.seed = s;
    }
    Ok(scenario)
}

fn stem_of(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "run".to_string())
}

fn emit_run(cli: &Cli, stem: &str, record: &RunRecord) -> wristsim::Result<Vec<PathBuf>> {
    let mut written = Vec::new();
    match cli.format {
        Format::Csv => {
            let csv_path = cli.out.join(format!("{stem}.csv"));
            report::write_text(&csv_path, &report::time_series_csv(record))?;
            written.push(csv_path);
            let json_path = cli.out.join(format!("{stem}.json"));
            report::write_text(&json_path, &report::summary_json(record))?;
            written.push(json_path);
        }
        Format::Json => {
            let json_path = cli.out.join(format!("{stem}.json"));
            report::write_text(&json_path, &report::full_json(record))?;
            written.push(json_path);
        }
    }
    Ok(written)
}

fn dispatch(cli: &Cli) -> wristsim::Result<()> {
    match &cli.command {
        Command::Simulate { config } => {
            let scenario = load_scenario(config, cli.seed)?;
            let record = harness::run(&scenario)?;
            let written = emit_run(cli, &stem_of(config), &record)?;
            let m = &record.metrics;
            println!(
                "rmse = {:.6} rad, settling = {}, steady-state error = {:.6} rad, chattering = {:.4} N/s",
                m.rmse,
                m.settling_time
                    .map(|t| format!("{t:.3} s"))
                    .unwrap_or_else(|| "never".into()),
                m.steady_state_error,
                m.chattering_index,
            );
            for p in written {
                println!("wrote {}", p.display());
            }
            Ok(())
        }
        Command::Tune { config } => {
            let parsed: TuneConfig = serde_json::from_str(&read_to_string(config)?)
                .map_err(|e| Error::Config(format!("tune config parse: {e}")))?;
            if parsed.schema_version != wristsim::scenario::SCHEMA_VERSION {
                return Err(Error::Config(format!(
                    "unsupported schema_version {}",
                    parsed.schema_version
                )));
            }
            let mut scenario = parsed.scenario.resolve()?;
            if let Some(s) = cli.seed {
                scenario.seed = s;
            }
            let mut pso = tuning::default_pso_config(parsed.controller, scenario.seed);
            if let Some(p) = parsed.particles {
                pso.particles = p;
            }
            if let Some(i) = parsed.iterations {
                pso.iterations = i;
            }
            if let Some(b) = parsed.bounds.clone() {
                pso.bounds = b;
            }
            if let Some(s) = parsed.seed {
                pso.seed = s;
            }
            if let Some(s) = cli.seed {
                pso.seed = s;
            }
            let lambda = parsed.lambda.unwrap_or_else(tuning::default_lambda);
            let result = tuning::tune(&scenario, parsed.controller, &pso, lambda)?;
            println!(
                "best gains = [{:.6}, {:.6}, {:.6}], objective = {:.6}",
                result.best_gains[0],
                result.best_gains[1],
                result.best_gains[2],
                result.best_objective
            );
            let record = harness::run(&tuning::with_gains(
                &scenario,
                parsed.controller,
                &result.best_gains,
            )?)?;
            let provenance = record.provenance.clone();
            let rep = tuning::TuningReport {
                controller: parsed.controller,
                lambda,
                pso,
                scenario,
                result,
                provenance,
            };
            let path = cli.out.join(format!("{}_tuning.json", stem_of(config)));
            report::write_text(
                &path,
                &serde_json::to_string_pretty(&rep).expect("report serializes"),
            )?;
            println!("wrote {}", path.display());
            Ok(())
        }
        Command::Compare { config } => {
            let parsed: CompareConfig = serde_json::from_str(&read_to_string(config)?)
                .map_err(|e| Error::Config(format!("compare config parse: {e}")))?;
            if parsed.schema_version != wristsim::scenario::SCHEMA_VERSION {
                return Err(Error::Config(format!(
                    "unsupported schema_version {}",
                    parsed.schema_version
                )));
            }
            let mut scenarios = Vec::with_capacity(parsed.scenarios.len());
            for raw in &parsed.scenarios {
                let mut s = raw.resolve()?;
                if let Some(seed) = cli.seed {
                    s.seed = seed;
                }
                scenarios.push(s);
            }
            let rep = harness::compare(&scenarios)?;
            print!("{}", rep.render_table());
            let path = cli.out.join(format!("{}_compare.json", stem_of(config)));
            report::write_text(
                &path,
                &serde_json::to_string_pretty(&rep).expect("report serializes"),
            )?;
            println!("wrote {}", path.display());
            Ok(())
        }
        Command::Sweep {
            config,
            param,
            values,
        } => {
            let scenario = load_scenario(config, cli.seed)?;
            let records = harness::sweep(&scenario, param, values)?;
            for (value, record) in &records {
                let m = &record.metrics;
                println!(
                    "{param} = {value}: rmse = {:.6}, settling = {}, sse = {:.6}",
                    m.rmse,
                    m.settling_time
                        .map(|t| format!("{t:.3} s"))
                        .unwrap_or_else(|| "never".into()),
                    m.steady_state_error,
                );
                let stem = format!("{}_{}_{}", stem_of(config), param, value);
                emit_run(cli, &stem, record)?;
            }
            Ok(())
        }
    }
}
