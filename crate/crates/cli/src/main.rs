//! `cayley`: batch driver for the Cayley-tree spin model engine.
//!
//! Exit status: 0 when every check passes, 1 when a check fails, 2 for a
//! configuration error and 3 when a size budget is exceeded.

mod commands;
mod config;
mod report;

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use cayley_core::Budget;
use clap::{Parser, ValueEnum};

use commands::{Command, Ctx, RunError};
use config::{ConfigError, RunConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "cayley", version, about = "Exact checks and Gibbs computations for spin models on Cayley trees")]
struct Cli {
    /// Command to run; overrides the config's "command".
    #[arg(value_enum)]
    command: Option<Command>,
    /// JSON run configuration.
    #[arg(long)]
    config: PathBuf,
    /// Report destination; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Threads for configuration sweeps.
    #[arg(long)]
    workers: Option<usize>,
    /// Overrides the default tolerance of the command's checks.
    #[arg(long)]
    tolerance: Option<f64>,
}

const EXIT_FAIL: u8 = 1;
const EXIT_CONFIG: u8 = 2;
const EXIT_BUDGET: u8 = 3;

fn config_error(path: &std::path::Path, e: &ConfigError) -> ExitCode {
    match e.line {
        Some(l) => eprintln!("{}:{l}: {}", path.display(), e.message),
        None => eprintln!("{}: {}", path.display(), e.message),
    }
    ExitCode::from(EXIT_CONFIG)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let source = match fs::read_to_string(&cli.config) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("{}: {e}", cli.config.display());
            return ExitCode::from(EXIT_CONFIG);
        }
    };
    let cfg = match RunConfig::parse(&source) {
        Ok(c) => c,
        Err(e) => return config_error(&cli.config, &e),
    };
    let command = match cli.command {
        Some(c) => c,
        None => match cfg.raw.command.as_deref().map(|s| Command::from_str(s, true)) {
            Some(Ok(c)) => c,
            Some(Err(_)) => {
                let e = cfg.error_at("command", format!("unknown command {:?}", cfg.raw.command.as_deref().unwrap()));
                return config_error(&cli.config, &e);
            }
            None => {
                eprintln!("no command given on the command line or in the config");
                return ExitCode::from(EXIT_CONFIG);
            }
        },
    };
    let output = cfg.raw.output.clone();
    let format = match cli.format {
        Some(f) => f,
        None => match output.as_ref().and_then(|o| o.format.as_deref()) {
            None | Some("json") => Format::Json,
            Some("csv") => Format::Csv,
            Some(other) => {
                let e = cfg.error_at("format", format!("unknown format {other:?}"));
                return config_error(&cli.config, &e);
            }
        },
    };
    let out = cli
        .out
        .clone()
        .or_else(|| output.as_ref().and_then(|o| o.path.as_ref()).map(PathBuf::from));
    let workers = cli.workers.or(cfg.raw.workers).unwrap_or(1);
    if workers == 0 {
        eprintln!("--workers must be at least 1");
        return ExitCode::from(EXIT_CONFIG);
    }
    if let Some(t) = cli.tolerance {
        if !(t.is_finite() && t >= 0.0) {
            eprintln!("--tolerance must be finite and >= 0");
            return ExitCode::from(EXIT_CONFIG);
        }
    }
    let mut budget = Budget::default();
    if let Some(m) = cfg.raw.params.max_configurations {
        budget.max_configurations = m;
    }
    let ctx = Ctx {
        cfg: &cfg,
        workers,
        tolerance: cli.tolerance.or(cfg.raw.tolerance),
        budget,
    };
    let report = match commands::run(&ctx, command) {
        Ok(r) => r,
        Err(RunError::Config(e)) => return config_error(&cli.config, &e),
        Err(RunError::Budget(m)) => {
            eprintln!("{m}");
            return ExitCode::from(EXIT_BUDGET);
        }
        Err(RunError::Internal(m)) => {
            eprintln!("{m}");
            return ExitCode::from(EXIT_FAIL);
        }
    };
    let written = match &out {
        Some(path) => fs::File::create(path).and_then(|f| emit(&report, format, io::BufWriter::new(f))),
        None => emit(&report, format, io::stdout().lock()),
    };
    if let Err(e) = written {
        eprintln!("cannot write report: {e}");
        return ExitCode::from(EXIT_FAIL);
    }
    for c in report.checks.iter().filter(|c| c.status == report::Status::Fail) {
        eprintln!("FAIL {}: {}", c.name, c.detail);
    }
    if report.failed() {
        ExitCode::from(EXIT_FAIL)
    } else {
        ExitCode::SUCCESS
    }
}

fn emit(report: &report::Report, format: Format, mut w: impl Write) -> io::Result<()> {
    match format {
        Format::Json => report.write_json(&mut w)?,
        Format::Csv => report.write_csv(&mut w).map_err(io::Error::other)?,
    }
    w.flush()
}
