use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use skdv::harness::{
    run_blowup_study, run_estimate_audit, run_norms, run_simulate, run_smoothing_study, run_snapshot, ExperimentConfig,
    Report,
};
use skdv::Error;

#[derive(Parser)]
#[command(
    name = "skdv",
    version,
    about = "Pseudo-spectral lab for the coupled Schrödinger / fifth-order KdV system"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// TOML configuration file.
    #[arg(long)]
    config: PathBuf,
    /// Output directory (overrides outputs.directory).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Integrate the configured data and track conserved quantities.
    Simulate(Common),
    /// Grid-convergence study of the nonlinear Duhamel parts.
    Smoothing(Common),
    /// Refinement study of the Hölder quotients at the focusing time.
    Blowup(Common),
    /// Kernel suprema and calculus-inequality audits.
    Audit(Common),
    /// Sobolev, Hölder and spectral-tail diagnostics.
    Norms(Common),
    /// Write binary field snapshots.
    Snapshot(Common),
}

fn run(command: &Command) -> Result<Report, Error> {
    let common = match command {
        Command::Simulate(c)
        | Command::Smoothing(c)
        | Command::Blowup(c)
        | Command::Audit(c)
        | Command::Norms(c)
        | Command::Snapshot(c) => c,
    };
    let cfg = ExperimentConfig::from_path(&common.config).map_err(|e| match e {
        Error::Io { .. } => Error::Config(e.to_string()),
        other => other,
    })?;
    let dir = cfg.output_dir(common.out.as_deref());
    let report = match command {
        Command::Simulate(_) => run_simulate(&cfg)?,
        Command::Smoothing(_) => run_smoothing_study(&cfg)?,
        Command::Blowup(_) => run_blowup_study(&cfg)?,
        Command::Audit(_) => run_estimate_audit(&cfg)?,
        Command::Norms(_) => run_norms(&cfg)?,
        Command::Snapshot(_) => run_snapshot(&cfg, &dir)?,
    };
    write(&report, &dir, &cfg)?;
    Ok(report)
}

fn write(report: &Report, dir: &Path, cfg: &ExperimentConfig) -> Result<(), Error> {
    for path in report.write(dir, &cfg.outputs.formats)? {
        eprintln!("wrote {}", path.display());
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(report) => {
            print!("{}", report.summary_text());
            if report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) if e.is_configuration() => {
            eprintln!("configuration error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
