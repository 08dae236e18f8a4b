use serde::Serialize;

use super::common::{boundary_ratio, initial_data, relative_change};
use super::config::{DataKind, ExperimentConfig, Study};
use super::report::{Relation, Report, Series, Verdict};
use super::snapshot::load_field;
use super::tolerances::BOUNDARY_RATIO;
use crate::error::Result;
use crate::norms::{default_window, holder_estimate, sobolev_norm, tail_regularity, HolderEstimate};
use crate::spectral::Field;

#[derive(Clone, Debug, Serialize)]
pub struct FieldNorms {
    pub label: String,
    pub n_points: usize,
    pub box_length: f64,
    pub sobolev: Vec<(f64, f64)>,
    pub holder: HolderEstimate,
    pub tail_band: [f64; 2],
    pub tail_proxy: Option<f64>,
    pub boundary: f64,
}

fn measure(cfg: &ExperimentConfig, label: &str, f: &Field) -> Result<FieldNorms> {
    let n = &cfg.norms;
    let kmax = f.grid().max_abs_frequency();
    let (lo, hi) = (n.tail_lo_fraction * kmax, n.tail_hi_fraction * kmax);
    Ok(FieldNorms {
        label: label.to_string(),
        n_points: f.grid().n_points(),
        box_length: f.grid().box_length(),
        sobolev: n.sobolev_exponents.iter().map(|&s| (s, sobolev_norm(f, s))).collect(),
        holder: holder_estimate(f, n.holder_order, n.holder_alpha, default_window(f))?,
        tail_band: [lo, hi],
        tail_proxy: tail_regularity(f, lo, hi).ok().map(|t| t.proxy),
        boundary: boundary_ratio(f),
    })
}

/// Sobolev, Hölder and tail diagnostics of a stored snapshot, or of the
/// configured initial data at `N` and `2N` with the refinement changes.
pub fn run_norms(cfg: &ExperimentConfig) -> Result<Report> {
    cfg.validate(Study::Norms)?;
    let mut report = Report::new("norms");
    let mut rows = Vec::new();
    if let Some(path) = &cfg.norms.snapshot {
        let snap = load_field(path)?;
        report.metric("snapshot_time", snap.time);
        let m = measure(cfg, "snapshot", &snap.field)?;
        report.verdict(Verdict::new(
            "boundary_snapshot",
            m.boundary,
            Relation::Le,
            BOUNDARY_RATIO,
        ));
        rows.push(m);
    } else {
        let mut per_level: Vec<(FieldNorms, FieldNorms)> = Vec::new();
        for level in 0..2 {
            let grid = cfg.grid.grid(level)?;
            let (u0, v0) = initial_data(cfg, &grid)?;
            per_level.push((measure(cfg, "u0", &u0)?, measure(cfg, "v0", &v0)?));
        }
        let (a, b) = (&per_level[0], &per_level[1]);
        let mut changes = Vec::new();
        for (i, &(s, _)) in a.0.sobolev.iter().enumerate() {
            changes.push((
                s,
                relative_change(a.0.sobolev[i].1, b.0.sobolev[i].1),
                relative_change(a.1.sobolev[i].1, b.1.sobolev[i].1),
            ));
        }
        report.metric("sobolev_refinement_change_u0_v0", &changes);
        report.verdict(Verdict::new(
            "boundary_u0",
            a.0.boundary.max(b.0.boundary),
            Relation::Le,
            BOUNDARY_RATIO,
        ));
        let mut bv = Verdict::new(
            "boundary_v0",
            a.1.boundary.max(b.1.boundary),
            Relation::Le,
            BOUNDARY_RATIO,
        );
        if cfg.data.kind == DataKind::Blowup {
            bv = bv
                .informational()
                .with_note("backward fifth-order tails of the kink reach the box edge");
        }
        report.verdict(bv);
        for (u, v) in per_level {
            rows.push(u);
            rows.push(v);
        }
    }
    let mut series = Series::new("sobolev", &["field", "n_points", "s", "norm"]);
    for r in &rows {
        for &(s, v) in &r.sobolev {
            series.push(vec![
                r.label.clone(),
                r.n_points.to_string(),
                format!("{s:?}"),
                format!("{v:?}"),
            ]);
        }
    }
    report.series.push(series);
    report.metric("fields", &rows);
    Ok(report)
}
