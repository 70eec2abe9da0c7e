use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use tempocorr_cli::config::ScenarioConfig;
use tempocorr_cli::sweep::{run_sweep, write_output, SweepSpec};
use tempocorr_cli::{nsit_tolerance, read_file, report, selftest, CliError, TOLERANCE_ENV};

/// Temporal correlation witnesses for pseudo-density matrices.
#[derive(Parser)]
#[command(name = "tempocorr", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one scenario and print a JSON report.
    Run {
        config: PathBuf,
        /// Also write the report to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sweep one parameter and write a CSV curve.
    Sweep {
        config: PathBuf,
        sweep: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the golden-matrix and dual-path checks.
    Selftest {
        /// Golden matrix file to use instead of the built-in one.
        #[arg(long)]
        golden: Option<PathBuf>,
    },
}

fn run(command: Command) -> Result<ExitCode, CliError> {
    match command {
        Command::Run { config, out } => {
            let scenario = ScenarioConfig::load(&config)?.build()?;
            let tolerance = nsit_tolerance(std::env::var(TOLERANCE_ENV).ok().as_deref());
            let rep = report::evaluate(&scenario, tolerance)?;
            let text = serde_json::to_string_pretty(&rep).expect("report serializes") + "\n";
            print!("{text}");
            if let Some(path) = out {
                write_output(&path, &text)?;
            }
        }
        Command::Sweep { config, sweep, out } => {
            let base = ScenarioConfig::load(&config)?;
            let spec = SweepSpec::load(&sweep)?;
            write_output(&out, &run_sweep(&base, &spec)?)?;
        }
        Command::Selftest { golden } => {
            let text = match golden {
                Some(path) => read_file(&path)?,
                None => selftest::BUNDLED_GOLDEN.to_string(),
            };
            let summary = selftest::run(&text)?;
            print!("{}", summary.render());
            if !summary.all_passed() {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
