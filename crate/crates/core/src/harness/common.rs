use num_complex::Complex64;

use super::config::{DataKind, ExperimentConfig, SolverMethod};
use super::report::{Relation, Verdict};
use super::tolerances::{BOUNDARY_FRACTION, BOUNDARY_RATIO};
use crate::error::Result;
use crate::initial_data::{make_u0, make_v0};
use crate::solver::{picard_solve, splitstep_evolve, Trajectory};
use crate::spectral::{Field, Grid1D};

/// Initial data `(u₀, v₀)` on `grid` as configured.
pub(crate) fn initial_data(cfg: &ExperimentConfig, grid: &Grid1D) -> Result<(Field, Field)> {
    match cfg.data.kind {
        DataKind::Blowup => {
            let p = cfg.blowup.params();
            Ok((make_u0(&p, grid)?, make_v0(&p, grid)?))
        }
        DataKind::Gaussian => {
            let d = &cfg.data;
            let u0 = Field::from_fn(grid, |x| {
                let y = (x - d.u_center) / d.u_width;
                Complex64::from_polar(d.u_amplitude * (-y * y).exp(), d.u_wavenumber * x)
            });
            let v0 = Field::from_real_fn(grid, |x| {
                let y = x / d.v_width;
                d.v_amplitude * (-y * y).exp()
            });
            Ok((u0, v0))
        }
    }
}

/// Result of one integration.
pub(crate) struct Run {
    pub trajectory: Trajectory,
    /// Picard defects per sweep; empty for the split-step integrator.
    pub defects: Vec<f64>,
}

pub(crate) fn integrate(cfg: &ExperimentConfig, method: SolverMethod, u0: &Field, v0: &Field) -> Result<Run> {
    let (t, dt) = (cfg.time.t_final, cfg.time.dt);
    match method {
        SolverMethod::Picard => {
            let out = picard_solve(u0, v0, &cfg.params, t, dt, &cfg.solver.picard_options())?;
            Ok(Run {
                trajectory: out.trajectory,
                defects: out.defects,
            })
        }
        SolverMethod::Splitstep => Ok(Run {
            trajectory: splitstep_evolve(u0, v0, &cfg.params, t, dt)?,
            defects: Vec::new(),
        }),
    }
}

/// Largest magnitude in the outer [`BOUNDARY_FRACTION`] of the box relative
/// to the field's peak (0 for a zero field).
pub fn boundary_ratio(f: &Field) -> f64 {
    let phys = f.clone().into_physical();
    let n = phys.grid().n_points();
    let edge = ((BOUNDARY_FRACTION * 0.5 * n as f64).ceil() as usize).max(1);
    let peak = phys.max_abs();
    if peak == 0.0 {
        return 0.0;
    }
    let outer = phys
        .values()
        .iter()
        .enumerate()
        .filter(|(j, _)| *j < edge || *j >= n - edge)
        .map(|(_, c)| c.norm())
        .fold(0.0, f64::max);
    outer / peak
}

/// Worst boundary ratio over all slices of `fields`.
pub(crate) fn worst_boundary(fields: &[Field]) -> f64 {
    fields.iter().map(boundary_ratio).fold(0.0, f64::max)
}

/// `|b − a| / |a|`, or 0 when both vanish.
pub(crate) fn relative_change(a: f64, b: f64) -> f64 {
    if a == 0.0 && b == 0.0 {
        0.0
    } else {
        (b - a).abs() / a.abs()
    }
}

/// Indices of the CSV sample rows: every `stride`-th slice plus the last.
pub(crate) fn sample_indices(len: usize, stride: usize) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..len).step_by(stride.max(1)).collect();
    if len > 0 && idx.last() != Some(&(len - 1)) {
        idx.push(len - 1);
    }
    idx
}

/// Boundary verdict for `v`, reported but not counted.
pub(crate) fn boundary_v_verdict(value: f64) -> Verdict {
    let v = Verdict::new("boundary_v", value, Relation::Le, BOUNDARY_RATIO).informational();
    if v.pass {
        v
    } else {
        v.with_note("fifth-order radiation reaches the box edge")
    }
}
