use serde::Serialize;

use super::common::{boundary_v_verdict, initial_data, integrate, worst_boundary};
use super::config::{ExperimentConfig, Study};
use super::report::{Relation, Report, Series, Verdict};
use super::tolerances::*;
use crate::error::Result;
use crate::norms::{default_window, holder_estimate, HolderEstimate};
use crate::propagators::{apply_group, Dispersion};

/// Hölder quotients of one resolution at one time.
#[derive(Clone, Debug, Serialize)]
pub struct BlowupSample {
    pub n_points: usize,
    pub spacing: f64,
    pub time: f64,
    pub u: HolderEstimate,
    pub v: HolderEstimate,
    pub free_u: HolderEstimate,
    pub free_v: HolderEstimate,
}

fn ratios(values: &[f64]) -> Vec<f64> {
    values.windows(2).map(|w| w[1] / w[0]).collect()
}

fn min_of(v: &[f64]) -> f64 {
    v.iter().copied().fold(f64::INFINITY, f64::min)
}

fn max_spread(v: &[f64]) -> f64 {
    v.iter().map(|&r| r.max(1.0 / r)).fold(0.0, f64::max)
}

/// Refinement study of the difference quotients at `t*/2` and `t*` on
/// `N`, `2N`, `4N`.
pub fn run_blowup_study(cfg: &ExperimentConfig) -> Result<Report> {
    cfg.validate(Study::Blowup)?;
    let params = cfg.blowup.params();
    let t_star = params.t_star();
    let alpha_u = 0.5 + cfg.blowup.holder_epsilon;
    let alpha_v = cfg.blowup.v_alpha;

    let mut report = Report::new("blowup");
    report.metric("t_star", t_star);
    report.metric("alpha_u", alpha_u);
    report.metric("alpha_v", alpha_v);

    let mut half = Vec::new();
    let mut focus = Vec::new();
    let (mut bu, mut bv) = (0.0f64, 0.0f64);
    for level in 0..3 {
        let grid = cfg.grid.grid(level)?;
        let (u0, v0) = initial_data(cfg, &grid)?;
        let run = integrate(cfg, cfg.solver.method, &u0, &v0)?;
        let traj = &run.trajectory;
        bu = bu.max(worst_boundary(&traj.u));
        bv = bv.max(worst_boundary(&traj.v));
        for (target, out) in [(0.5 * t_star, &mut half), (t_star, &mut focus)] {
            let m = traj.index_near(target);
            let t = traj.times[m];
            let w = default_window(&traj.u[m]);
            let free_u = apply_group(Dispersion::Schrodinger, &u0, t)?;
            let free_v = apply_group(Dispersion::FifthOrder, &v0, t)?;
            out.push(BlowupSample {
                n_points: grid.n_points(),
                spacing: grid.spacing(),
                time: t,
                u: holder_estimate(&traj.u[m], 1, alpha_u, w)?,
                v: holder_estimate(&traj.v[m], 1, alpha_v, w)?,
                free_u: holder_estimate(&free_u, 1, alpha_u, w)?,
                free_v: holder_estimate(&free_v, 1, alpha_v, w)?,
            });
        }
    }

    let mut series = Series::new(
        "quotients",
        &[
            "n_points",
            "t",
            "u_quotient",
            "u_argmax",
            "v_quotient",
            "v_argmax",
            "free_u_quotient",
            "free_v_quotient",
        ],
    );
    for s in half.iter().chain(&focus) {
        series.push_f64(&[
            s.n_points as f64,
            s.time,
            s.u.value,
            s.u.argmax_x,
            s.v.value,
            s.v.argmax_x,
            s.free_u.value,
            s.free_v.value,
        ]);
    }
    report.series.push(series);

    let pick = |xs: &[BlowupSample], f: fn(&BlowupSample) -> f64| xs.iter().map(f).collect::<Vec<f64>>();
    let u_focus = ratios(&pick(&focus, |s| s.u.value));
    let u_half = ratios(&pick(&half, |s| s.u.value));
    let v_focus = ratios(&pick(&focus, |s| s.v.value));
    let free_u_focus = ratios(&pick(&focus, |s| s.free_u.value));
    let free_v_focus = ratios(&pick(&focus, |s| s.free_v.value));
    let u_offset = focus
        .iter()
        .map(|s| (s.u.argmax_x - params.x0).abs() / s.spacing)
        .fold(0.0, f64::max);
    let v_offset = focus.iter().map(|s| s.v.argmax_x.abs() / s.spacing).fold(0.0, f64::max);

    report.metric("u_growth_at_t_star", &u_focus);
    report.metric("u_growth_at_half_t_star", &u_half);
    report.metric("v_growth_at_t_star", &v_focus);
    report.metric("free_u_growth_at_t_star", &free_u_focus);
    report.metric("free_v_growth_at_t_star", &free_v_focus);

    report.verdict(
        Verdict::new("u_growth_at_t_star", min_of(&u_focus), Relation::Ge, BLOWUP_GROWTH)
            .with_note("smallest per-doubling growth"),
    );
    report.verdict(Verdict::new(
        "u_argmax_offset_cells",
        u_offset,
        Relation::Le,
        ARGMAX_CELLS,
    ));
    report.verdict(
        Verdict::new(
            "u_growth_at_half_t_star",
            max_spread(&u_half),
            Relation::Le,
            BOUNDED_GROWTH,
        )
        .with_note("largest per-doubling change factor"),
    );
    report.verdict(
        Verdict::new("v_growth_at_t_star", min_of(&v_focus), Relation::Ge, BLOWUP_GROWTH)
            .with_note("smallest per-doubling growth"),
    );
    report.verdict(Verdict::new(
        "v_argmax_offset_cells",
        v_offset,
        Relation::Le,
        ARGMAX_CELLS,
    ));
    report.verdict(
        Verdict::new(
            "free_u_growth_at_t_star",
            min_of(&free_u_focus),
            Relation::Ge,
            BLOWUP_GROWTH,
        )
        .informational(),
    );
    report.verdict(
        Verdict::new(
            "free_v_growth_at_t_star",
            min_of(&free_v_focus),
            Relation::Ge,
            BLOWUP_GROWTH,
        )
        .informational(),
    );
    report.verdict(Verdict::new("boundary_u", bu, Relation::Le, BOUNDARY_RATIO));
    report.verdict(boundary_v_verdict(bv));
    report.metric("half_t_star", &half);
    report.metric("t_star_samples", &focus);
    Ok(report)
}
