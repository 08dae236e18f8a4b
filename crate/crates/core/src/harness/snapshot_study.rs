use std::path::Path;

use super::common::{initial_data, integrate};
use super::config::{ExperimentConfig, Study};
use super::report::{fmt_f64, Relation, Report, Series, Verdict};
use super::snapshot::{load_field, save_field};
use crate::error::Result;
use crate::spectral::Field;

fn bit_identical(a: &Field, b: &Field) -> bool {
    a.grid() == b.grid()
        && a.values()
            .iter()
            .zip(b.values())
            .all(|(x, y)| x.re.to_bits() == y.re.to_bits() && x.im.to_bits() == y.im.to_bits())
}

/// Integrates the configured data and writes `u` and `v` snapshots at the
/// configured times into `dir`, verifying every file by reading it back.
pub fn run_snapshot(cfg: &ExperimentConfig, dir: &Path) -> Result<Report> {
    cfg.validate(Study::Snapshot)?;
    std::fs::create_dir_all(dir).map_err(|e| crate::error::Error::io(dir, e))?;
    let grid = cfg.grid.grid(0)?;
    let (u0, v0) = initial_data(cfg, &grid)?;
    let run = integrate(cfg, cfg.solver.method, &u0, &v0)?;
    let traj = &run.trajectory;

    let mut report = Report::new("snapshot");
    let mut index = Series::new("files", &["file", "t", "n_points", "box_length"]);
    let mut mismatches = 0usize;
    for &target in &cfg.snapshot.times {
        let m = traj.index_near(target);
        let t = traj.times[m];
        for (name, field) in [("u", &traj.u[m]), ("v", &traj.v[m])] {
            let file = format!("{name}_t{t:.6}.dsp");
            let path = dir.join(&file);
            save_field(field, t, &path)?;
            let back = load_field(&path)?;
            if !(bit_identical(&back.field, field) && back.time.to_bits() == t.to_bits()) {
                mismatches += 1;
            }
            index.push(vec![
                file,
                fmt_f64(t),
                grid.n_points().to_string(),
                fmt_f64(grid.box_length()),
            ]);
        }
    }
    report.series.push(index);
    report.verdict(Verdict::new(
        "round_trip_mismatches",
        mismatches as f64,
        Relation::Le,
        0.0,
    ));
    Ok(report)
}
