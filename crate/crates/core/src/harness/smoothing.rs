use serde::Serialize;

use super::common::{boundary_v_verdict, initial_data, integrate, relative_change, sample_indices, worst_boundary};
use super::config::{ExperimentConfig, Study};
use super::report::{Relation, Report, Series, Verdict};
use super::tolerances::*;
use crate::error::Result;
use crate::norms::{sobolev_norm, tail_regularity};
use crate::propagators::{apply_group, Dispersion};
use crate::spectral::Field;

/// Per-resolution measurements at the focusing time.
#[derive(Clone, Debug, Serialize)]
pub struct SmoothingLevel {
    pub n_points: usize,
    pub time: f64,
    pub u1_norm: f64,
    pub v1_norm: f64,
    pub free_u_norm: f64,
    pub tail_band: [f64; 2],
    pub proxy_u: Option<f64>,
    pub proxy_u1: Option<f64>,
    pub proxy_free_u: Option<f64>,
    pub proxy_v: Option<f64>,
    pub proxy_v1: Option<f64>,
    pub proxy_free_v: Option<f64>,
    pub boundary_u: f64,
    pub boundary_v: f64,
}

fn proxy(f: &Field, lo: f64, hi: f64) -> Option<f64> {
    tail_regularity(f, lo, hi).ok().map(|t| t.proxy)
}

/// Nonlinear-part regularity study: solves at `N` and `2N`, splits off the
/// free evolution, and measures `u₁`, `v₁` at the smoothing exponents and
/// the free part at the rough exponent.
pub fn run_smoothing_study(cfg: &ExperimentConfig) -> Result<Report> {
    cfg.validate(Study::Smoothing)?;
    let budget = cfg.budget.budget()?;
    let (su, sv) = (budget.u1_exponent(), budget.v1_exponent());
    let rough = cfg.smoothing.free_exponent;
    let t_star = cfg.blowup.params().t_star();

    let mut report = Report::new("smoothing");
    report.metric("budget", budget);
    report.metric("u1_exponent", su);
    report.metric("v1_exponent", sv);
    report.metric("free_exponent", rough);
    report.metric("t_star", t_star);

    let mut levels = Vec::new();
    let mut series = Series::new("series", &["n_points", "t", "u1_norm", "v1_norm"]);
    for level in 0..2 {
        let grid = cfg.grid.grid(level)?;
        let (u0, v0) = initial_data(cfg, &grid)?;
        let run = integrate(cfg, cfg.solver.method, &u0, &v0)?;
        let traj = &run.trajectory;

        for m in sample_indices(traj.len(), cfg.simulate.sample_every) {
            let t = traj.times[m];
            let u1 = traj.u[m].sub(&apply_group(Dispersion::Schrodinger, &u0, t)?)?;
            let v1 = traj.v[m].sub(&apply_group(Dispersion::FifthOrder, &v0, t)?)?;
            series.push_f64(&[grid.n_points() as f64, t, sobolev_norm(&u1, su), sobolev_norm(&v1, sv)]);
        }

        let m = traj.index_near(t_star);
        let t = traj.times[m];
        let free_u = apply_group(Dispersion::Schrodinger, &u0, t)?;
        let free_v = apply_group(Dispersion::FifthOrder, &v0, t)?;
        let u1 = traj.u[m].sub(&free_u)?;
        let v1 = traj.v[m].sub(&free_v)?;
        let kmax = grid.max_abs_frequency();
        let (lo, hi) = (
            cfg.smoothing.tail_lo_fraction * kmax,
            cfg.smoothing.tail_hi_fraction * kmax,
        );
        levels.push(SmoothingLevel {
            n_points: grid.n_points(),
            time: t,
            u1_norm: sobolev_norm(&u1, su),
            v1_norm: sobolev_norm(&v1, sv),
            free_u_norm: sobolev_norm(&free_u, rough),
            tail_band: [lo, hi],
            proxy_u: proxy(&traj.u[m], lo, hi),
            proxy_u1: proxy(&u1, lo, hi),
            proxy_free_u: proxy(&free_u, lo, hi),
            proxy_v: proxy(&traj.v[m], lo, hi),
            proxy_v1: proxy(&v1, lo, hi),
            proxy_free_v: proxy(&free_v, lo, hi),
            boundary_u: worst_boundary(&traj.u),
            boundary_v: worst_boundary(&traj.v),
        });
    }
    report.series.push(series);

    let (coarse, fine) = (&levels[0], &levels[1]);
    let trivial = coarse.u1_norm == 0.0 && fine.u1_norm == 0.0;
    let u1_change = relative_change(coarse.u1_norm, fine.u1_norm);
    let v = Verdict::new("u1_grid_change", u1_change, Relation::Lt, U1_CONVERGENCE);
    report.verdict(if trivial {
        v.trivially_passed("nonlinear part vanishes identically")
    } else {
        v
    });
    report.verdict(Verdict::new(
        "free_u_grid_change",
        relative_change(coarse.free_u_norm, fine.free_u_norm),
        Relation::Gt,
        FREE_DIVERGENCE,
    ));
    report.verdict(
        Verdict::new(
            "v1_grid_change",
            relative_change(coarse.v1_norm, fine.v1_norm),
            Relation::Lt,
            U1_CONVERGENCE,
        )
        .informational(),
    );
    let gain = match (fine.proxy_v1, fine.proxy_free_v) {
        (Some(a), Some(b)) => a - b,
        (None, Some(_)) => f64::INFINITY,
        _ => f64::NAN,
    };
    let v = Verdict::new("v1_tail_gain", gain, Relation::Ge, TAIL_GAIN);
    report.verdict(if fine.proxy_v1.is_none() && fine.proxy_free_v.is_some() {
        v.trivially_passed("v1 has no spectral tail in the band")
    } else {
        v
    });
    let bu = levels.iter().map(|l| l.boundary_u).fold(0.0, f64::max);
    let bv = levels.iter().map(|l| l.boundary_v).fold(0.0, f64::max);
    report.verdict(Verdict::new("boundary_u", bu, Relation::Le, BOUNDARY_RATIO));
    report.verdict(boundary_v_verdict(bv));
    report.metric("levels", &levels);
    Ok(report)
}
