//! Command-line front end: build, verify, bound and tabulate joint measurements.
//!
//! Exit codes: 0 success, 1 internal failure, 2 POVM validation failure
//! (including malformed POVM files), 3 tightness gap above tolerance,
//! 64 usage error.

pub mod table;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use jmeas::io::{joint_to_json, read_joint, to_canonical_json, write_joint};
use jmeas::steering::{
    specker_classify, specker_window, tightness_report, witness_directions, MubWitness,
    qubit_witness, witness_lambda,
};
use jmeas::{default_catalog, ConfigId, Error, JointObservable, ToleranceConfig};
use serde_json::{json, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_GAP: i32 = 3;
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug, Parser)]
#[command(name = "jmeas", version, about = "Adaptive joint measurements and steering bounds")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    #[command(flatten)]
    pub tolerances: ToleranceArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct ToleranceArgs {
    #[arg(long, global = true)]
    pub psd_tol: Option<f64>,
    #[arg(long, global = true)]
    pub eq_tol: Option<f64>,
    #[arg(long, global = true)]
    pub exact_tol: Option<f64>,
    #[arg(long, global = true)]
    pub dot_tol: Option<f64>,
}

impl ToleranceArgs {
    fn resolve(&self) -> jmeas::Result<ToleranceConfig> {
        let defaults = ToleranceConfig::default();
        let tol = ToleranceConfig {
            psd_tol: self.psd_tol.unwrap_or(defaults.psd_tol),
            eq_tol: self.eq_tol.unwrap_or(defaults.eq_tol),
            exact_tol: self.exact_tol.unwrap_or(defaults.exact_tol),
            dot_tol: self.dot_tol.unwrap_or(defaults.dot_tol),
        };
        tol.validate()?;
        Ok(tol)
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the built-in configuration ids.
    Catalog,
    /// Build the joint observable for a configuration and write it as POVM JSON.
    Construct {
        #[arg(long)]
        config: String,
    },
    /// Check positivity and normalization of a POVM file.
    Verify { file: PathBuf },
    /// Marginal observables of a POVM file or configuration.
    Marginals {
        file: Option<PathBuf>,
        #[arg(long, conflicts_with = "file")]
        config: Option<String>,
    },
    /// Construction and witness noise thresholds (defaults to the whole catalog).
    Threshold {
        #[arg(long)]
        config: Vec<String>,
    },
    /// Steering upper bound on the noise parameter.
    SteeringBound {
        #[arg(long)]
        config: String,
    },
    /// Compare construction and witness thresholds.
    Tightness {
        #[arg(long)]
        config: String,
    },
    /// 4-Specker window, optionally classifying one noise value.
    Specker {
        #[arg(long)]
        lambda: Option<f64>,
    },
}

/// A failed command with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        let code = match err {
            Error::UnknownConfig(_) | Error::InvalidTolerance { .. } => EXIT_USAGE,
            Error::InvalidFormat(_)
            | Error::NotHermitian { .. }
            | Error::DimensionMismatch { .. }
            | Error::IndexOutOfRange { .. }
            | Error::Json(_) => EXIT_INVALID,
            _ => EXIT_FAILURE,
        };
        Self {
            code,
            message: err.to_string(),
        }
    }
}

/// Output text plus the exit code to report after writing it.
struct Outcome {
    text: String,
    code: i32,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Self { text, code: EXIT_OK }
    }
}

fn parse_id(text: &str) -> Result<ConfigId, Failure> {
    text.parse::<ConfigId>().map_err(Failure::from)
}

fn read_povm(path: &Path) -> Result<JointObservable, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
    Ok(read_joint(&text)?)
}

fn canonical(value: &Value) -> Result<String, Failure> {
    Ok(to_canonical_json(value)?)
}

fn execute(cli: &Cli) -> Result<Outcome, Failure> {
    let tol = cli.tolerances.resolve()?;
    match &cli.command {
        Command::Catalog => {
            let ids = default_catalog();
            match cli.format {
                Format::Json => canonical(&Value::Array(
                    ids.iter()
                        .map(|id| json!({"config": id.to_string(), "M_or_d": id.size()}))
                        .collect(),
                ))
                .map(Outcome::ok),
                Format::Csv => {
                    let mut text = String::from("config,M_or_d\n");
                    for id in ids {
                        text.push_str(&format!("{id},{}\n", id.size()));
                    }
                    Ok(Outcome::ok(text))
                }
            }
        }
        Command::Construct { config } => {
            let joint = parse_id(config)?.construct()?;
            Ok(Outcome::ok(write_joint(&joint)?))
        }
        Command::Verify { file } => {
            let joint = read_povm(file)?;
            let report = joint.validate(&tol)?;
            let text = canonical(&serde_json::to_value(&report).map_err(Error::from)?)?;
            Ok(Outcome {
                text,
                code: if report.passed { EXIT_OK } else { EXIT_INVALID },
            })
        }
        Command::Marginals { file, config } => {
            let joint = match (file, config) {
                (Some(path), None) => read_povm(path)?,
                (None, Some(id)) => parse_id(id)?.construct()?,
                _ => return Err(Failure::usage("give either a POVM file or --config")),
            };
            let mut marginals = Vec::with_capacity(joint.num_slots());
            let mut all_valid = true;
            for slot in 0..joint.num_slots() {
                let m = joint.marginal(slot)?;
                all_valid &= m.validate(&tol)?.passed;
                marginals.push(joint_to_json(&JointObservable::from_observable(&m)));
            }
            Ok(Outcome {
                text: canonical(&json!({ "marginals": marginals }))?,
                code: if all_valid { EXIT_OK } else { EXIT_INVALID },
            })
        }
        Command::Threshold { config } => {
            let ids = if config.is_empty() {
                default_catalog()
            } else {
                config
                    .iter()
                    .map(|c| parse_id(c).map_err(|f| Failure::usage(f.message)))
                    .collect::<Result<_, _>>()?
            };
            let rows = table::threshold_table(&ids)?;
            let text = match cli.format {
                Format::Csv => table::to_csv(&rows),
                Format::Json => canonical(&table::to_json(&rows))?,
            };
            Ok(Outcome::ok(text))
        }
        Command::SteeringBound { config } => {
            let id = parse_id(config)?;
            let lambda = witness_lambda(&id)?;
            let mut value = json!({ "config": id.to_string(), "lambda_witness": lambda });
            if let Some(pair) = id.mub_pair()? {
                let (a, b, c) = MubWitness::build(&pair)?.coefficients();
                value["witness"] = json!({"kind": "mub", "a": a, "b": b, "c": c});
            } else if let Some(qc) = id.qubit_config()? {
                let witness = qubit_witness(&witness_directions(&qc)?)?;
                value["witness"] = json!({
                    "kind": "qubit",
                    "bound": witness.bound,
                    "pattern": witness.pattern,
                    "directions": witness.directions.iter().map(|d| d.components().to_vec()).collect::<Vec<_>>(),
                });
            }
            Ok(Outcome::ok(canonical(&value)?))
        }
        Command::Tightness { config } => {
            let report = tightness_report(&parse_id(config)?)?;
            let text = canonical(&serde_json::to_value(&report).map_err(Error::from)?)?;
            Ok(Outcome {
                text,
                code: if report.tight { EXIT_OK } else { EXIT_GAP },
            })
        }
        Command::Specker { lambda } => {
            let (lo, hi) = specker_window();
            let mut value = json!({ "lambda_lo": lo, "lambda_hi": hi });
            if let Some(l) = lambda {
                let class = specker_classify(*l).map_err(|e| Failure::usage(e.to_string()))?;
                value["lambda"] = json!(l);
                value["class"] = json!(class.as_str());
            }
            Ok(Outcome::ok(canonical(&value)?))
        }
    }
}

/// Parse `args` (including the program name) and run, writing to `stdout`/`stderr`.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{err}");
                    return EXIT_OK;
                }
                _ => EXIT_USAGE,
            };
            let _ = write!(stderr, "{err}");
            return code;
        }
    };
    let outcome = match execute(&cli) {
        Ok(outcome) => outcome,
        Err(failure) => {
            let _ = writeln!(stderr, "error: {}", failure.message);
            return failure.code;
        }
    };
    let written = match &cli.out {
        Some(path) => fs::write(path, &outcome.text),
        None => stdout.write_all(outcome.text.as_bytes()),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: cannot write output: {e}");
        return EXIT_FAILURE;
    }
    outcome.code
}
