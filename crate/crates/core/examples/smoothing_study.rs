//! Runs the nonlinear-part convergence study from a config file.
//!
//! `cargo run --release --example smoothing_study -- configs/smoothing.toml`

use skdv::harness::{run_smoothing_study, ExperimentConfig};

fn main() -> skdv::Result<()> {
    let cfg = match std::env::args().nth(1) {
        Some(path) => ExperimentConfig::from_path(path.as_ref())?,
        None => ExperimentConfig::default(),
    };
    let report = run_smoothing_study(&cfg)?;
    print!("{}", report.summary_text());
    Ok(())
}
