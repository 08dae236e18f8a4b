//! Runs the Hölder-quotient refinement study from a config file.
//!
//! `cargo run --release --example blowup_study -- configs/blowup.toml`

use skdv::harness::{run_blowup_study, ExperimentConfig};

fn main() -> skdv::Result<()> {
    let cfg = match std::env::args().nth(1) {
        Some(path) => ExperimentConfig::from_path(path.as_ref())?,
        None => ExperimentConfig::default(),
    };
    let report = run_blowup_study(&cfg)?;
    print!("{}", report.summary_text());
    for series in &report.series {
        print!("{}", series.to_csv());
    }
    Ok(())
}
