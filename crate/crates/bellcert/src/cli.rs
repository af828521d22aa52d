//! Command-line surface: thin argument parsing and JSON/CSV emission over
//! the library.
//!
//! Exit codes: 0 for a positive result, 2 for negative-but-valid verdicts
//! (classical behavior, no violation to certify from, certificate infeasible),
//! 1 for errors. Every command prints one JSON document (or CSV, for curves)
//! to stdout; `--out` additionally persists the command's file artifact.

use crate::efficiency::{bound_via_bisection, BisectionMode, ModelClass};
use crate::error::{Error, Result};
use crate::formats::{self, EtaBoundReport, ValueReport};
use crate::npa::{npa_certificate, npa_max_value, NpaLevel};
use crate::quantum::{
    apply_detection_efficiency, maximally_entangled_state, quantum_behavior, random_directions,
    sample_counts, DetectionModel,
};
use crate::reproduce;
use crate::separation::{find_violated_inequality_with, SeparationStatus};
use crate::tolerances;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use std::path::PathBuf;

/// Seed used by `simulate` when none is given.
pub const DEFAULT_SIMULATION_SEED: u64 = 7;

#[derive(Parser)]
#[command(
    name = "bellcert",
    version,
    about = "Synthesize detection-loophole-free Bell inequalities from observed \
             statistics and certify detector-efficiency lower bounds"
)]
struct Cli {
    /// Base seed for randomized commands (per-command default otherwise).
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads for trial ensembles (0 keeps the runtime default).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    /// Numeric tolerance: violation threshold for find-inequality, bisection
    /// width for eta-bound/eta-curve/reproduce.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Write the command's file artifact here (JSON, or CSV for curves).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Synthesize a violated inequality from an observed behavior file.
    FindInequality {
        /// Behavior JSON ({"n","m","pA","pB","pAB"}).
        #[arg(long)]
        behavior: PathBuf,
        /// Violation threshold (falls back to --tol, then 1e-7).
        #[arg(long)]
        tolerance: Option<f64>,
    },
    /// Simulate random-direction measurements on the maximally entangled
    /// state with lossy detectors; emits counts or the exact behavior.
    Simulate {
        /// Alice's number of measurement settings.
        #[arg(long)]
        n: usize,
        /// Bob's number of measurement settings.
        #[arg(long)]
        m: usize,
        /// Trials per measurement context when sampling counts.
        #[arg(long)]
        trials: u64,
        /// Detection efficiency (both parties unless --eta-b is given).
        #[arg(long)]
        eta: f64,
        /// Bob's detection efficiency, when different from Alice's.
        #[arg(long)]
        eta_b: Option<f64>,
        /// Artifact to emit.
        #[arg(long, value_enum, default_value_t = Emit::Counts)]
        emit: Emit,
    },
    /// Maximize an inequality over behaviors with a moment certificate.
    NpaMax {
        /// Inequality JSON ({"n","m","hA","hB","hAB"}).
        #[arg(long)]
        ineq: PathBuf,
        /// Hierarchy level: a positive integer or "1+ab".
        #[arg(long, default_value = "2")]
        level: String,
    },
    /// Check whether a behavior admits a moment certificate.
    NpaCheck {
        #[arg(long)]
        behavior: PathBuf,
        #[arg(long, default_value = "2")]
        level: String,
    },
    /// Certify a lower bound on detection efficiency for an inequality.
    EtaBound {
        #[arg(long)]
        ineq: PathBuf,
        /// Model class the adversary is allowed to use.
        #[arg(long, value_enum)]
        model: Model,
        /// Hierarchy level (npa model only).
        #[arg(long, default_value = "2")]
        level: String,
        /// Observed value the model must reproduce (default: any violation).
        #[arg(long)]
        q: Option<f64>,
        /// Fix the known (Bob-side) detector here and bound the other side.
        #[arg(long)]
        known_eta: Option<f64>,
    },
    /// Sweep one-sided bounds across known-detector efficiencies (CSV).
    EtaCurve {
        #[arg(long)]
        ineq: PathBuf,
        #[arg(long, value_enum)]
        model: Model,
        #[arg(long, default_value = "2")]
        level: String,
        /// Required observed value (must be positive).
        #[arg(long)]
        q: f64,
        /// Known-detector efficiencies, comma-separated.
        #[arg(
            long,
            value_delimiter = ',',
            default_value = "0.75,0.8,0.85,0.9,0.95,1.0"
        )]
        known_etas: Vec<f64>,
    },
    /// Run a bundled reproduction case and report PASS/FAIL.
    Reproduce {
        /// Case name; see the error message of an unknown name for the list.
        #[arg(long)]
        case: String,
        /// Hierarchy level override for the NPA-based cases.
        #[arg(long)]
        level: Option<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Model {
    Classical,
    Ns,
    Npa,
}

#[derive(Clone, Copy, ValueEnum)]
enum Emit {
    Counts,
    Behavior,
}

/// Parses a hierarchy level: a positive integer or `1+ab`.
pub fn parse_level(text: &str) -> Result<NpaLevel> {
    let normalized = text.trim().to_ascii_lowercase();
    if normalized == "1+ab" {
        return Ok(NpaLevel::OnePlusAb);
    }
    match normalized.parse::<u32>() {
        Ok(k) if k >= 1 => Ok(NpaLevel::Level(k)),
        _ => Err(Error::InvalidInput(format!(
            "level must be a positive integer or \"1+ab\", got {text:?}"
        ))),
    }
}

/// Parses and executes `argv`; returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(err) => {
            // clap's message already includes usage/schema help
            let _ = err.print();
            return 1;
        }
    };
    if cli.threads > 0 {
        // ignore "already initialized" when run() is called twice in-process
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global();
    }
    match execute(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            1
        }
    }
}

fn print_json<T: serde::Serialize>(value: &T) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn execute(cli: Cli) -> Result<i32> {
    let out = cli.out.as_deref();
    match cli.command {
        Command::FindInequality {
            behavior,
            tolerance,
        } => {
            let observed = formats::read_behavior(&behavior)?;
            let threshold = tolerance.or(cli.tol).unwrap_or(tolerances::CERTIFICATE);
            let result = find_violated_inequality_with(&observed, threshold)?;
            match result.status {
                SeparationStatus::Violated => {
                    let ineq = result.inequality.expect("violated result carries it");
                    if let Some(path) = out {
                        formats::write_inequality(path, &ineq)?;
                    }
                    print_json(&json!({
                        "status": "violated",
                        "value": result.quantum_value,
                    }))?;
                    Ok(0)
                }
                SeparationStatus::Classical => {
                    print_json(&json!({ "status": "classical", "value": null }))?;
                    Ok(2)
                }
                SeparationStatus::Inconclusive => Err(Error::SolverFailure(
                    "separation and decomposition disagreed; the input is outside both \
                     certifiable regimes"
                        .into(),
                )),
            }
        }
        Command::Simulate {
            n,
            m,
            trials,
            eta,
            eta_b,
            emit,
        } => {
            let seed = cli.seed.unwrap_or(DEFAULT_SIMULATION_SEED);
            let dirs = random_directions(n + m, seed);
            let (a_dirs, b_dirs) = dirs.split_at(n);
            let ideal = quantum_behavior(&maximally_entangled_state(), a_dirs, b_dirs)?;
            let model = DetectionModel::new(eta, eta_b.unwrap_or(eta))?;
            let degraded = apply_detection_efficiency(&ideal, model);
            match emit {
                Emit::Behavior => {
                    let artifact = formats::BehaviorFile::from_behavior(&degraded);
                    if let Some(path) = out {
                        formats::write_json(path, &artifact)?;
                    }
                    print_json(&artifact)?;
                }
                Emit::Counts => {
                    let counts = sample_counts(&degraded, trials, seed.wrapping_add(1))?;
                    let artifact = formats::CountsFile::from_counts(&counts);
                    if let Some(path) = out {
                        formats::write_json(path, &artifact)?;
                    }
                    print_json(&artifact)?;
                }
            }
            Ok(0)
        }
        Command::NpaMax { ineq, level } => {
            let inequality = formats::read_inequality(&ineq)?;
            let level = parse_level(&level)?;
            let value = npa_max_value(&inequality, level)?;
            let report = ValueReport {
                value,
                status: "optimal".into(),
            };
            if let Some(path) = out {
                formats::write_json(path, &report)?;
            }
            print_json(&report)?;
            Ok(0)
        }
        Command::NpaCheck { behavior, level } => {
            let observed = formats::read_behavior(&behavior)?;
            let level = parse_level(&level)?;
            let certificate = npa_certificate(&observed, level)?;
            let feasible = certificate.is_feasible();
            let report = ValueReport {
                value: certificate.feasibility_margin,
                status: if feasible { "feasible" } else { "infeasible" }.into(),
            };
            if let Some(path) = out {
                formats::write_json(path, &report)?;
            }
            print_json(&report)?;
            Ok(if feasible { 0 } else { 2 })
        }
        Command::EtaBound {
            ineq,
            model,
            level,
            q,
            known_eta,
        } => {
            let inequality = formats::read_inequality(&ineq)?;
            let class = model_class(model, &level)?;
            let mode = match known_eta {
                Some(known_eta) => BisectionMode::OneSided { known_eta },
                None => BisectionMode::Symmetric,
            };
            let tolerance = cli.tol.unwrap_or(tolerances::BISECTION_DEFAULT);
            let required = q.unwrap_or(0.0);
            match bound_via_bisection(&inequality, class, mode, required, tolerance) {
                Ok(bound) => {
                    let report = EtaBoundReport {
                        eta_lower: bound.eta_lower,
                        model_class: class.to_string(),
                        q: bound.used_quantum_value.unwrap_or(0.0),
                    };
                    if let Some(path) = out {
                        formats::write_json(path, &report)?;
                    }
                    print_json(&report)?;
                    Ok(0)
                }
                Err(Error::NeverViolated) => {
                    print_json(&json!({
                        "status": "never-violated",
                        "modelClass": class.to_string(),
                        "q": required,
                    }))?;
                    Ok(2)
                }
                Err(other) => Err(other),
            }
        }
        Command::EtaCurve {
            ineq,
            model,
            level,
            q,
            known_etas,
        } => {
            let inequality = formats::read_inequality(&ineq)?;
            let class = model_class(model, &level)?;
            let tolerance = cli.tol.unwrap_or(tolerances::BISECTION_DEFAULT);
            let points = crate::efficiency::unknown_vs_known_curve(
                &inequality,
                &known_etas,
                q,
                class,
                tolerance,
            )?;
            if let Some(path) = out {
                formats::write_curve_csv(path, &points)?;
            }
            print!("{}", formats::curve_csv_string(&points));
            Ok(0)
        }
        Command::Reproduce { case, level } => {
            let level = level.as_deref().map(parse_level).transpose()?;
            match reproduce::run_case(&case, cli.seed, level, cli.tol) {
                Ok(report) => {
                    if let Some(path) = out {
                        match &report.curve {
                            Some(points) => formats::write_curve_csv(path, points)?,
                            None => formats::write_json(path, &report)?,
                        }
                    }
                    print_json(&report)?;
                    Ok(if report.pass { 0 } else { 1 })
                }
                Err(Error::NotViolated) => {
                    print_json(&json!({ "case": case, "status": "not-violated" }))?;
                    Ok(2)
                }
                Err(other) => Err(other),
            }
        }
    }
}

fn model_class(model: Model, level: &str) -> Result<ModelClass> {
    Ok(match model {
        Model::Classical => ModelClass::Classical,
        Model::Ns => ModelClass::Nonsignalling,
        Model::Npa => ModelClass::QuantumNpa(parse_level(level)?),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn levels_parse_and_reject() {
        assert_eq!(parse_level("1").unwrap(), NpaLevel::Level(1));
        assert_eq!(parse_level("3").unwrap(), NpaLevel::Level(3));
        assert_eq!(parse_level("1+AB").unwrap(), NpaLevel::OnePlusAb);
        assert_eq!(parse_level(" 1+ab ").unwrap(), NpaLevel::OnePlusAb);
        assert!(parse_level("0").is_err());
        assert!(parse_level("two").is_err());
    }

    #[test]
    fn usage_errors_exit_with_one() {
        assert_eq!(run(["bellcert", "no-such-command"]), 1);
        assert_eq!(run(["bellcert", "npa-max"]), 1); // missing --ineq
    }
}
