//! `clp`: encode, decode, inspect rate-distortion values and run checks.
//!
//! Exit codes: 0 success, 1 usage or I/O error, 2 corrupt stream, 3 a
//! gating check failed.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use clp_core::codec::{decode_bytes, encode, EncoderOptions, Variant};
use clp_core::harness::{rate_sweep, run_all, run_check, write_reports, write_sweep, ExperimentConfig, CHECKS};
use clp_core::rd_math::{lower_mutual_info, optimal_reproduction_type, rate_distortion};
use clp_core::{BitSequence, DistortionBudget, Error, SourceModel};

#[derive(Parser)]
#[command(name = "clp", version, about = "Lossy binary compression by Codelet Parsing")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compress a file, treating its bytes as a bit string (MSB first).
    Encode {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Distortion budget, e.g. 11/100.
        #[arg(long)]
        distortion: DistortionBudget,
        /// Source bias; omitted means unknown.
        #[arg(long)]
        p: Option<SourceModel>,
        #[arg(long, default_value = "practical")]
        variant: Variant,
        #[arg(long)]
        ell: Option<u32>,
        #[arg(long, default_value_t = 0.01)]
        delta: f64,
        /// Randomizes tie-breaks in the idealized variant.
        #[arg(long)]
        seed: Option<u64>,
        /// Encode only the first N bits of the input.
        #[arg(long)]
        bits: Option<usize>,
    },
    /// Reconstruct the (distorted) bit string; written zero-padded to bytes.
    Decode {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print R(D), the optimal reproduction type and a table of I_m(q).
    Rd {
        #[arg(long)]
        p: SourceModel,
        #[arg(long)]
        distortion: DistortionBudget,
    },
    /// Run lemma checks (or `rate_sweep`) and write a CSV.
    Analyze {
        /// A check name, `rate_sweep`, or `all`.
        #[arg(long)]
        check: String,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum Failure {
    Usage(String),
    Corrupt(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::CorruptStream(_) | Error::BadMagic | Error::UnsupportedVersion(_) => Failure::Corrupt(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

fn io(path: &std::path::Path, e: std::io::Error) -> Failure {
    Failure::Usage(format!("{}: {e}", path.display()))
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Encode {
            input,
            out,
            distortion,
            p,
            variant,
            ell,
            delta,
            seed,
            bits,
        } => {
            let bytes = fs::read(&input).map_err(|e| io(&input, e))?;
            let n = bits.unwrap_or(bytes.len() * 8);
            let x = BitSequence::from_bytes_msb(&bytes, n)?;
            let opts = EncoderOptions {
                variant,
                relation: None,
                source: p,
                ell,
                delta,
                seed,
            };
            let enc = encode(&x, distortion, &opts)?;
            fs::write(&out, enc.stream.to_bytes()).map_err(|e| io(&out, e))?;
            eprintln!(
                "{} bits -> {} payload bytes, rate {:.4} bits/symbol",
                x.len(),
                enc.stream.payload.len(),
                enc.stream.coding_rate()
            );
        }
        Command::Decode { input, out } => {
            let bytes = fs::read(&input).map_err(|e| io(&input, e))?;
            let y = decode_bytes(&bytes)?;
            fs::write(&out, y.to_bytes_msb()).map_err(|e| io(&out, e))?;
        }
        Command::Rd { p, distortion } => {
            println!("R(D) = {:.9}", rate_distortion(p, distortion));
            match optimal_reproduction_type(p, distortion) {
                Ok(q) => println!("q* = {q:.9}"),
                Err(e) => println!("q* undefined: {e}"),
            }
            println!("q\tI_m(q)");
            for i in 0..=20 {
                let q = i as f64 / 20.0;
                match lower_mutual_info(q, p, distortion) {
                    Ok(v) => println!("{q:.2}\t{v:.9}"),
                    Err(_) => println!("{q:.2}\tinfeasible"),
                }
            }
        }
        Command::Analyze { check, config, out } => {
            let mut cfg = match &config {
                Some(path) => ExperimentConfig::load(path)?,
                None => ExperimentConfig::default(),
            };
            if let Some(path) = out {
                cfg.output = Some(path);
            }
            let sink = |cfg: &ExperimentConfig| -> Result<Box<dyn std::io::Write>, Failure> {
                Ok(match &cfg.output {
                    Some(path) => Box::new(fs::File::create(path).map_err(|e| io(path, e))?),
                    None => Box::new(std::io::stdout()),
                })
            };
            if check == "rate_sweep" {
                let rows = rate_sweep(&cfg)?;
                write_sweep(sink(&cfg)?, &rows)?;
                return Ok(());
            }
            let reports = if check == "all" {
                run_all(&cfg)?
            } else if CHECKS.contains(&check.as_str()) {
                run_check(&check, &cfg)?
            } else {
                return Err(Failure::Usage(format!(
                    "unknown check {check:?}; expected all, rate_sweep or one of {}",
                    CHECKS.join(", ")
                )));
            };
            for r in &reports {
                eprintln!("{r}");
            }
            write_reports(sink(&cfg)?, &reports)?;
            let failed: Vec<&str> = reports.iter().filter(|r| r.blocks()).map(|r| r.check.as_str()).collect();
            if !failed.is_empty() {
                return Err(Failure::Check(format!("failed: {}", failed.join(", "))));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Corrupt(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Check(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(3)
        }
    }
}
