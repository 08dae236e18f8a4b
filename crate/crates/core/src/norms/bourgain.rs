//! Discrete surrogate of the `X^{s,b}` / `Y^{s,b}` norms
//! `‖⟨ξ⟩^s ⟨τ + σ(ξ)⟩^b ŵ(ξ, τ)‖_{L²}`.
//!
//! The time lattice is finite, so the value depends on its length; it is a
//! comparative diagnostic, not a reproduction of the whole-plane norm. Time
//! frequencies live in `[−π/dt, π/dt)`, so `|σ(ξ)|` must stay below `π/dt` on
//! the modes that carry the signal.

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftPlanner;

use super::japanese;
use crate::error::{Error, Result};
use crate::propagators::Dispersion;
use crate::spectral::{Field, Grid1D};

/// Relative magnitude allowed at the first and last time slice.
pub const END_SLICE_THRESHOLD: f64 = 1e-8;

/// Samples `w(x_j, t_m)`, `t_m = t₀ + m dt`, tagged with the dispersion whose
/// characteristic weights the norm.
#[derive(Clone, Debug)]
pub struct SpaceTimeField {
    grid: Grid1D,
    dt: f64,
    kind: Dispersion,
    /// Row-major by time: `slices[m][j]`.
    slices: Vec<Vec<Complex64>>,
}

impl SpaceTimeField {
    pub fn new(grid: &Grid1D, dt: f64, kind: Dispersion, slices: Vec<Field>) -> Result<Self> {
        if !(dt.is_finite() && dt > 0.0) {
            return Err(Error::InvalidParameter(format!("time step must be positive, got {dt}")));
        }
        let m = slices.len();
        if m < 8 || !m.is_power_of_two() {
            return Err(Error::InvalidParameter(format!(
                "time lattice length must be a power of two >= 8, got {m}"
            )));
        }
        let mut rows = Vec::with_capacity(m);
        for f in slices {
            if f.grid() != grid {
                return Err(Error::GridMismatch);
            }
            rows.push(f.into_physical().into_values());
        }
        Ok(SpaceTimeField {
            grid: grid.clone(),
            dt,
            kind,
            slices: rows,
        })
    }

    /// Samples `w(x, t_m)` from a closure returning a field per time.
    pub fn from_fn(
        grid: &Grid1D,
        t0: f64,
        dt: f64,
        n_times: usize,
        kind: Dispersion,
        f: impl Fn(f64) -> Result<Field>,
    ) -> Result<Self> {
        let slices = (0..n_times)
            .map(|m| f(t0 + m as f64 * dt))
            .collect::<Result<Vec<_>>>()?;
        Self::new(grid, dt, kind, slices)
    }

    pub fn grid(&self) -> &Grid1D {
        &self.grid
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn n_times(&self) -> usize {
        self.slices.len()
    }

    pub fn dispersion(&self) -> Dispersion {
        self.kind
    }

    /// Time frequencies `τ_m = 2πm/(M dt)` in FFT order.
    pub fn time_frequencies(&self) -> Vec<f64> {
        let m = self.n_times() as i64;
        let scale = std::f64::consts::TAU / (m as f64 * self.dt);
        (0..m)
            .map(|i| if i < m / 2 { i } else { i - m } as f64 * scale)
            .collect()
    }

    /// Unitary 2-D transform, indexed `[spatial slot][time slot]`.
    pub fn transform(&self) -> Vec<Vec<Complex64>> {
        let n = self.grid.n_points();
        let m = self.n_times();
        let spatial: Vec<Vec<Complex64>> = self
            .slices
            .par_iter()
            .map(|row| {
                let mut r = row.clone();
                self.grid.forward_in_place(&mut r);
                r
            })
            .collect();
        let fft = FftPlanner::new().plan_fft_forward(m);
        let scale = 1.0 / (m as f64).sqrt();
        (0..n)
            .into_par_iter()
            .map(|k| {
                let mut col: Vec<Complex64> = spatial.iter().map(|row| row[k]).collect();
                fft.process(&mut col);
                col.iter_mut().for_each(|c| *c *= scale);
                col
            })
            .collect()
    }

    fn end_ratio(&self) -> f64 {
        let max_of = |row: &Vec<Complex64>| row.iter().map(|c| c.norm()).fold(0.0, f64::max);
        let peak = self.slices.iter().map(max_of).fold(0.0, f64::max);
        if peak == 0.0 {
            return 0.0;
        }
        let first = max_of(&self.slices[0]);
        let last = max_of(&self.slices[self.n_times() - 1]);
        first.max(last) / peak
    }
}

/// `(dx dt Σ_{k,m} ⟨ξ_k⟩^{2s} ⟨τ_m + σ(ξ_k)⟩^{2b} |ŵ_{k,m}|²)^{1/2}`.
pub fn bourgain_norm(w: &SpaceTimeField, s: f64, b: f64) -> Result<f64> {
    let ratio = w.end_ratio();
    if ratio > END_SLICE_THRESHOLD {
        return Err(Error::TimeWindow { ratio });
    }
    let taus = w.time_frequencies();
    let spec = w.transform();
    let nyquist = w.grid.nyquist_slot();
    let sum: f64 = spec
        .par_iter()
        .enumerate()
        .map(|(slot, col)| {
            let xi = w.grid.wavenumbers()[slot];
            let sigma = if w.kind.is_odd() && slot == nyquist {
                0.0
            } else {
                w.kind.symbol(xi)
            };
            let space = japanese(xi).powf(2.0 * s);
            col.iter()
                .zip(&taus)
                .map(|(c, &tau)| space * japanese(tau + sigma).powf(2.0 * b) * c.norm_sqr())
                .sum::<f64>()
        })
        .sum();
    Ok((w.grid.spacing() * w.dt * sum).sqrt())
}
