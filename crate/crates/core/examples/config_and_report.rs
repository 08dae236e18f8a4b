//! Parses a flat dotted TOML config, runs the norms study and prints the
//! JSON summary and CSV series.

use skdv::harness::{run_norms, ExperimentConfig};

const CONFIG: &str = r#"
grid.n_points = 2048
grid.box_length = 640.0
data.kind = "gaussian"
norms.sobolev_exponents = [0.0, 1.0, 2.0]
"#;

fn main() -> skdv::Result<()> {
    let cfg = ExperimentConfig::from_toml_str(CONFIG)?;
    let report = run_norms(&cfg)?;
    println!("{}", report.summary_json());
    for series in &report.series {
        print!("{}", series.to_csv());
    }

    match ExperimentConfig::from_toml_str("grid.n_point = 64") {
        Err(e) => println!("rejected: {e}"),
        Ok(_) => println!("unexpectedly accepted"),
    }
    Ok(())
}
