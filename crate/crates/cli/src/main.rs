//! `qha`: experiment runner for the finite phase-space laboratory.
//!
//! Exit codes: 0 pass, 1 suite failure or numerical error, 2 usage or config error.

mod commands;
mod config;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::{read_raw, ExperimentConfig, Format, Overrides};

#[derive(Parser)]
#[command(
    name = "qha",
    version,
    about = "Quantum harmonic analysis on a finite phase space"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// JSON config with "schema": 1.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Comma-separated grid sizes, overriding the config.
    #[arg(long, value_delimiter = ',')]
    n: Option<Vec<usize>>,
    /// Output directory for the report files [default: config value, else qha-out].
    #[arg(long)]
    out: Option<PathBuf>,
    /// Report format; JSON is always written, CSV is added alongside.
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Seed of the SplitMix64 generator for random inputs.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Run the exact identity suite (and the trend suite with --full).
    Verify {
        #[command(flatten)]
        common: Common,
        /// Also run the convergence and trend criteria.
        #[arg(long)]
        full: bool,
    },
    /// Tauberian reports per mask and window.
    Tauber(Common),
    /// Compactness-equivalence checks per quantizer.
    Quantize(Common),
    /// Smallest singular values of localization operators.
    Iso(Common),
    /// Sup-profiles of the phase-space STFT.
    Fg(Common),
    /// Berezin transforms of localization operators by two paths.
    Berezin(Common),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (name, common, full) = match &cli.command {
        Command::Verify { common, full } => ("verify", common, *full),
        Command::Tauber(c) => ("tauber", c, false),
        Command::Quantize(c) => ("quantize", c, false),
        Command::Iso(c) => ("iso", c, false),
        Command::Fg(c) => ("fg", c, false),
        Command::Berezin(c) => ("berezin", c, false),
    };
    let raw = match common.config.as_deref().map(read_raw).transpose() {
        Ok(r) => r,
        Err(e) => {
            eprintln!("qha: {e}");
            return ExitCode::from(2);
        }
    };
    let ov = Overrides {
        ns: common.n.clone(),
        seed: common.seed,
        format: common.format,
    };
    let out_dir = common
        .out
        .clone()
        .or_else(|| raw.as_ref().and_then(|r| r.out.clone()).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("qha-out"));
    let cfg = match ExperimentConfig::resolve(name, raw, &ov) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("qha: {e}");
            return ExitCode::from(2);
        }
    };
    let outcome = match name {
        "verify" => commands::verify(&cfg, full),
        "tauber" => commands::tauber(&cfg),
        "quantize" => commands::quantize(&cfg),
        "iso" => commands::iso(&cfg),
        "fg" => commands::fg(&cfg),
        _ => commands::berezin_cmd(&cfg),
    };
    let outcome = match outcome {
        Ok(o) => o,
        Err(e) => {
            eprintln!("qha {name}: {e}");
            return ExitCode::from(1);
        }
    };
    for line in &outcome.summary {
        println!("{line}");
    }
    let pass = outcome.pass;
    match report::write(&out_dir, &cfg, outcome) {
        Ok(paths) => {
            for p in paths {
                println!("wrote {}", p.display());
            }
        }
        Err(e) => {
            eprintln!("qha: cannot write reports to {}: {e}", out_dir.display());
            return ExitCode::from(1);
        }
    }
    if pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
