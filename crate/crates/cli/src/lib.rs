//! Command-line driver: parses arguments, runs one subcommand, writes its
//! result tables and a run manifest.
//!
//! Exit codes: 0 success, 1 a checked invariant failed, 2 usage or input error.

pub mod commands;
pub mod manifest;
pub mod source;
pub mod verify;

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde::Serialize;

use twistlab_core::{Error, ExperimentConfig, ZeroDataset};

use crate::commands::*;
use crate::manifest::RunManifest;
use crate::source::Source;
use crate::verify::{cmd_verify, Suite};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVARIANT: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "twistlab", version, about = "Twisted second-moment experiments and verification suites")]
pub struct Cli {
    /// Worker threads for parallel kernels (results do not depend on it).
    #[arg(long, global = true, env = "TWISTLAB_WORKERS", default_value_t = default_workers())]
    pub workers: usize,

    #[command(subcommand)]
    pub command: Command,
}

fn default_workers() -> usize {
    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run an invariant suite: characters, coefficients, ramare, moments, lfunctions or all.
    Verify {
        suite: String,
        /// Write the JSON report here as well as to stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Moment decay scan over a geometric X grid, driven by a key = value config file.
    MomentScan {
        config: PathBuf,
        /// CSV output (overrides `output_csv` in the config).
        #[arg(long)]
        csv: Option<PathBuf>,
        /// JSON output (overrides `output_json` in the config).
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Central values L(1/2, F x chi) by the approximate functional equation.
    Afe(AfeArgs),
    /// Four-component decomposition of twisted sums for every primitive character mod q.
    Decompose {
        #[arg(long, default_value = "liouville")]
        coefficients: String,
        #[arg(long, default_value_t = 101)]
        q: u64,
        #[arg(long, default_value_t = 50_000)]
        x: u64,
        #[arg(long, default_value_t = 0.0)]
        beta: f64,
        #[arg(long, default_value_t = 1.0)]
        gamma: f64,
        #[arg(long, default_value_t = 0.1)]
        epsilon: f64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Large-sieve ratios for seeded random sequences.
    LargeSieve {
        /// Moduli (or range starts with --range), comma separated.
        #[arg(long, value_delimiter = ',', default_value = "101,997")]
        q: Vec<u64>,
        #[arg(long, value_delimiter = ',', default_value = "1000,10000")]
        x: Vec<u64>,
        #[arg(long, default_value_t = 100)]
        sequences: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Use the family of all primitive characters with Q <= q <= 2Q.
        #[arg(long)]
        range: bool,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Explicit-formula residuals against a zero file (the bundled zeta zeros by default).
    ExplicitFormula {
        #[arg(long)]
        zeros: Option<PathBuf>,
        #[arg(long, default_value = "one")]
        coefficients: String,
        #[arg(long, default_value_t = 1)]
        q: u64,
        #[arg(long, default_value_t = 0)]
        index: u64,
        #[arg(long, value_delimiter = ',', default_value = "100.5,1000.5,10000.5")]
        x: Vec<f64>,
        /// Heights; defaults to the height of the last ordinate.
        #[arg(long, value_delimiter = ',')]
        t: Vec<f64>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Mertens-type prime sums sum_{p <= X} |lambda(p)|^2 / p.
    Mertens {
        #[arg(long, default_value = "liouville")]
        coefficients: String,
        #[arg(long, value_delimiter = ',', default_value = "10000,100000,1000000")]
        x: Vec<u64>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct AfeArgs {
    #[arg(long)]
    pub q: u64,
    /// Character index, or "all-primitive".
    #[arg(long, default_value = "all-primitive")]
    pub character: String,
    /// Real spectral parameters mu_j, comma separated (default: degree-1 Dirichlet data).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub mu: Option<Vec<f64>>,
    /// Spectral parameters for odd characters.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub mu_odd: Option<Vec<f64>>,
    #[arg(long)]
    pub conductor: Option<f64>,
    #[arg(long)]
    pub theta: Option<f64>,
    /// Root number as "re,im".
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, num_args = 2)]
    pub kappa: Option<Vec<f64>>,
    #[arg(long)]
    pub coefficients: Option<String>,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

impl AfeArgs {
    pub fn request(&self) -> Result<AfeRequest, Error> {
        let index = match self.character.as_str() {
            "all-primitive" => None,
            s => Some(
                s.parse()
                    .map_err(|_| Error::InvalidParameters(format!("character must be an index or all-primitive, got '{s}'")))?,
            ),
        };
        Ok(AfeRequest {
            q: self.q,
            index,
            mu: self.mu.clone(),
            mu_odd: self.mu_odd.clone(),
            conductor: self.conductor,
            theta: self.theta,
            kappa: self.kappa.as_ref().map(|k| Complex64::new(k[0], k[1])),
            coefficients: self.coefficients.clone(),
        })
    }
}

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Invariant(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Invariant(_) => EXIT_INVARIANT,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::GrcViolation { .. } | Error::Pole { .. } => Failure::Invariant(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

/// Parse a moment-scan config file.
pub fn load_config(path: &Path) -> Result<ExperimentConfig, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    ExperimentConfig::parse(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serialisable");
    s.push('\n');
    s
}

/// Print `body` and, when requested, write it with a manifest next to it.
fn emit(mut manifest: RunManifest, output: Option<&Path>, body: &str, start: Instant) -> Result<(), Failure> {
    print!("{body}");
    if let Some(path) = output {
        manifest.write_output(path, body)?;
        manifest.wall_clock_secs = start.elapsed().as_secs_f64();
        manifest.finish()?;
    }
    Ok(())
}

fn add_source_input(manifest: &mut RunManifest, source: &Source) -> Result<(), Failure> {
    if let Some(p) = source.file_path() {
        manifest.add_input(p)?;
    }
    Ok(())
}

pub fn run(cli: Cli) -> i32 {
    let workers = cli.workers.max(1);
    match with_workers(workers, || dispatch(cli.command, workers)) {
        Ok(code) => code,
        Err(f) => {
            match &f {
                Failure::Usage(m) => eprintln!("error: {m}"),
                Failure::Invariant(m) => eprintln!("invariant failure: {m}"),
            }
            f.exit_code()
        }
    }
}

fn dispatch(command: Command, workers: usize) -> Result<i32, Failure> {
    let start = Instant::now();
    match command {
        Command::Verify { suite, output } => {
            let suite: Suite = suite.parse()?;
            let report = cmd_verify(suite);
            let manifest = RunManifest::new("verify", serde_json::json!({ "suite": suite }), workers);
            emit(manifest, output.as_deref(), &to_json(&report), start)?;
            Ok(if report.passed { EXIT_OK } else { EXIT_INVARIANT })
        }
        Command::MomentScan { config, csv, json } => {
            let cfg = load_config(&config)?;
            let scan = cmd_moment_scan(&cfg)?;
            let mut manifest = RunManifest::new("moment-scan", serde_json::to_value(&cfg).expect("config"), workers);
            manifest.add_input(&config)?;
            let csv_path = csv.or_else(|| cfg.output_csv.as_ref().map(PathBuf::from));
            let json_path = json.or_else(|| cfg.output_json.as_ref().map(PathBuf::from));
            let text = scan.to_csv();
            print!("{text}");
            if let Some(p) = &csv_path {
                manifest.write_output(p, &text)?;
            }
            if let Some(p) = &json_path {
                let body = to_json(&serde_json::json!({ "config": cfg, "scan": scan }));
                manifest.write_output(p, &body)?;
            }
            manifest.wall_clock_secs = start.elapsed().as_secs_f64();
            manifest.finish()?;
            Ok(EXIT_OK)
        }
        Command::Afe(args) => {
            let req = args.request()?;
            let report = cmd_afe(&req)?;
            let mut manifest = RunManifest::new(
                "afe",
                serde_json::json!({ "q": args.q, "character": args.character, "spec": report.spec }),
                workers,
            );
            if let Some(c) = &args.coefficients {
                add_source_input(&mut manifest, &Source::parse(c)?)?;
            }
            emit(manifest, args.output.as_deref(), &to_json(&report), start)?;
            Ok(EXIT_OK)
        }
        Command::Decompose {
            coefficients,
            q,
            x,
            beta,
            gamma,
            epsilon,
            output,
        } => {
            let source = Source::parse(&coefficients)?;
            let rows = cmd_decompose(&source, q, x, beta, gamma, epsilon)?;
            let worst = rows.iter().map(|r| r.relative_residual).fold(0.0, f64::max);
            let mut manifest = RunManifest::new(
                "decompose",
                serde_json::json!({ "coefficients": coefficients, "q": q, "x": x, "beta": beta, "gamma": gamma, "epsilon": epsilon }),
                workers,
            );
            add_source_input(&mut manifest, &source)?;
            emit(manifest, output.as_deref(), &to_json(&rows), start)?;
            if worst > 1e-9 {
                return Err(Failure::Invariant(format!("reconstruction residual {worst:e} exceeds 1e-9")));
            }
            Ok(EXIT_OK)
        }
        Command::LargeSieve {
            q,
            x,
            sequences,
            seed,
            range,
            output,
        } => {
            let rows = cmd_large_sieve(&q, &x, sequences, seed, range)?;
            let manifest = RunManifest::new(
                "large-sieve",
                serde_json::json!({ "q": q, "x": x, "sequences": sequences, "seed": seed, "range": range }),
                workers,
            );
            emit(manifest, output.as_deref(), &to_json(&rows), start)?;
            Ok(EXIT_OK)
        }
        Command::ExplicitFormula {
            zeros,
            coefficients,
            q,
            index,
            x,
            t,
            output,
        } => {
            let source = Source::parse(&coefficients)?;
            let data = match &zeros {
                Some(p) => ZeroDataset::load(p)?,
                None => bundled_zeta_zeros(),
            };
            let t = if t.is_empty() { vec![data.t_max()] } else { t };
            let rows = cmd_explicit_formula(&data, &source, q, index, &x, &t)?;
            let mut manifest = RunManifest::new(
                "explicit-formula",
                serde_json::json!({ "zeros": data.label(), "coefficients": coefficients, "q": q, "index": index, "x": x, "t": t }),
                workers,
            );
            if let Some(p) = &zeros {
                manifest.add_input(p)?;
            }
            add_source_input(&mut manifest, &source)?;
            emit(manifest, output.as_deref(), &to_json(&rows), start)?;
            Ok(EXIT_OK)
        }
        Command::Mertens { coefficients, x, output } => {
            let source = Source::parse(&coefficients)?;
            let rows = cmd_mertens(&source, &x)?;
            let mut manifest = RunManifest::new(
                "mertens",
                serde_json::json!({ "coefficients": coefficients, "x": x }),
                workers,
            );
            add_source_input(&mut manifest, &source)?;
            emit(manifest, output.as_deref(), &to_json(&rows), start)?;
            Ok(EXIT_OK)
        }
    }
}
