mod audit;
mod error;
mod report;
mod sweep;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::error::CliError;
use crate::sweep::{run_sweep, Scaling, SweepConfig, Target};

/// Error sweeps and summary report for frequency-uniform derivatives and quadrature.
#[derive(Parser)]
#[command(name = "osc-ops", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write one CSV row of errors per frequency.
    Sweep(SweepArgs),
    /// Print the amplitude and envelope summary.
    Report,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, value_enum)]
    target: Target,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    omega_min: f64,
    /// Defaults to 80 for derivatives and 500 for quad.
    #[arg(long, allow_negative_numbers = true)]
    omega_max: Option<f64>,
    #[arg(long, default_value_t = 0.1)]
    omega_step: f64,
    /// Defaults to linear for derivatives and none for quad.
    #[arg(long, value_enum)]
    scaling: Option<Scaling>,
    /// Defaults to `<target>.csv`.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write a gnuplot script next to the CSV.
    #[arg(long)]
    gnuplot: bool,
}

impl SweepArgs {
    fn into_config(self) -> SweepConfig {
        let t = self.target;
        SweepConfig {
            target: t,
            omega_min: self.omega_min,
            omega_max: self.omega_max.unwrap_or(t.default_omega_max()),
            omega_step: self.omega_step,
            scaling: self.scaling.unwrap_or(t.default_scaling()),
            output_path: self.out.unwrap_or_else(|| PathBuf::from(format!("{t}.csv"))),
            emit_gnuplot: self.gnuplot,
        }
    }
}

fn run(cli: Cli) -> Result<bool, CliError> {
    if audit::enabled() {
        audit::dump(&mut std::io::stderr().lock())
            .map_err(|source| CliError::Io { path: "<stderr>".into(), source })?;
    }
    match cli.command {
        Command::Sweep(args) => {
            let cfg = args.into_config();
            let n = run_sweep(&cfg)?;
            eprintln!("wrote {n} rows to {}", cfg.output_path.display());
            if cfg.emit_gnuplot {
                eprintln!("wrote {}", cfg.gnuplot_path().display());
            }
            Ok(true)
        }
        Command::Report => report::run_report(&mut std::io::stdout().lock()),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("osc-ops: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
