//! Blow-up initial data and the time cutoff.
//!
//! `u₀` is a chirped profile `e^{-iθ(x-x₀)²} / (1+x²)^{5/4}` that the free
//! Schrödinger group focuses at `x₀` at time `t* = 1/(4θ)`. `v₀` is a weighted
//! sum of copies of the kink `φ(x) = e^{-2|x|}` run backward by the fifth-order
//! group, so that forward evolution re-creates the kink at every `j t*`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::propagators::{multiply_spectral, phase_table, Dispersion};
use crate::solver::Trajectory;
use crate::spectral::{Field, Grid1D};

/// Boundary magnitude the blow-up data must fall below on the box.
pub const DECAY_THRESHOLD: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlowupParams {
    /// Chirp rate; the focusing time is `1/(4θ)`.
    pub theta: f64,
    /// Focusing point of `u₀`.
    pub x0: f64,
    /// Number `J` of kink copies in `v₀`.
    pub series_length: usize,
    /// Rate `r` in `α_j = e^{-rj}`; must exceed 4.
    pub coeff_decay: f64,
}

impl Default for BlowupParams {
    fn default() -> Self {
        BlowupParams {
            theta: 5.0,
            x0: 0.0,
            series_length: 28,
            coeff_decay: 5.0,
        }
    }
}

impl BlowupParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.theta.is_finite() && self.theta > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "theta must be positive and finite, got {}",
                self.theta
            )));
        }
        if !self.x0.is_finite() {
            return Err(Error::InvalidParameter(format!("x0 must be finite, got {}", self.x0)));
        }
        if self.series_length < 1 {
            return Err(Error::InvalidParameter("series_length must be at least 1".into()));
        }
        if !(self.coeff_decay.is_finite() && self.coeff_decay > 4.0) {
            return Err(Error::InvalidParameter(format!(
                "coeff_decay must exceed 4 for summability, got {}",
                self.coeff_decay
            )));
        }
        Ok(())
    }

    /// Focusing time `t* = 1/(4θ)`.
    pub fn t_star(&self) -> f64 {
        0.25 / self.theta
    }

    /// `α_j = e^{-rj}`.
    pub fn coefficient(&self, j: usize) -> f64 {
        (-self.coeff_decay * j as f64).exp()
    }

    /// `Σ_{j>J} α_j = e^{-r(J+1)} / (1 - e^{-r})`, the L² truncation bound of
    /// `v₀` relative to `‖φ‖`.
    pub fn truncation_tail(&self) -> f64 {
        let r = self.coeff_decay;
        (-r * (self.series_length + 1) as f64).exp() / (1.0 - (-r).exp())
    }
}

/// The modulus envelope `(1+x²)^{-5/4}` of `u₀`.
pub fn u0_envelope(x: f64) -> f64 {
    (1.0 + x * x).powf(-1.25)
}

/// The kink `φ(x) = e^{-2|x|}`.
pub fn kink(x: f64) -> f64 {
    (-2.0 * x.abs()).exp()
}

fn check_decay(magnitude: f64) -> Result<()> {
    if magnitude >= DECAY_THRESHOLD {
        return Err(Error::InsufficientDecay {
            magnitude,
            threshold: DECAY_THRESHOLD,
        });
    }
    Ok(())
}

/// Chirped blow-up datum, physical representation.
pub fn make_u0(p: &BlowupParams, grid: &Grid1D) -> Result<Field> {
    p.validate()?;
    check_decay(u0_envelope(0.5 * grid.box_length()))?;
    let (theta, x0) = (p.theta, p.x0);
    Ok(Field::from_fn(grid, |x| {
        let d = x - x0;
        Complex64::from_polar(u0_envelope(x), -theta * d * d)
    }))
}

/// The sampled kink `φ` on the grid.
pub fn make_kink(grid: &Grid1D) -> Result<Field> {
    check_decay(kink(0.5 * grid.box_length()))?;
    Ok(Field::from_real_fn(grid, kink))
}

/// The `j`-th summand `α_j V(-j t*) φ` of `v₀`.
pub fn v0_term(p: &BlowupParams, grid: &Grid1D, j: usize) -> Result<Field> {
    p.validate()?;
    let phi = make_kink(grid)?;
    let t = -(j as f64) * p.t_star();
    let mut spec = phi.into_spectral();
    multiply_spectral(spec.values_mut(), &phase_table(Dispersion::FifthOrder, grid, t)?);
    Ok(spec.scaled_real(p.coefficient(j)).into_physical().into_real_part())
}

/// Kink-built blow-up datum `Σ_{j=1}^{J} α_j V(-j t*) φ`, real, physical.
pub fn make_v0(p: &BlowupParams, grid: &Grid1D) -> Result<Field> {
    p.validate()?;
    let phi = make_kink(grid)?.into_spectral();
    let mut acc = vec![Complex64::new(0.0, 0.0); grid.n_points()];
    for j in 1..=p.series_length {
        let table = phase_table(Dispersion::FifthOrder, grid, -(j as f64) * p.t_star())?;
        let alpha = p.coefficient(j);
        for ((a, c), ph) in acc.iter_mut().zip(phi.values()).zip(&table) {
            *a += alpha * c * ph;
        }
    }
    Ok(Field::spectral(grid, acc)?.into_physical().into_real_part())
}

fn psi(r: f64) -> f64 {
    if r > 0.0 {
        (-1.0 / r).exp()
    } else {
        0.0
    }
}

/// Smooth even cutoff: 1 on `[-1/2, 1/2]`, 0 outside `(-1, 1)`.
pub fn bump_eta(t: f64) -> f64 {
    let a = t.abs();
    if a <= 0.5 {
        return 1.0;
    }
    if a >= 1.0 {
        return 0.0;
    }
    let num = psi(2.0 - 2.0 * a);
    num / (num + psi(2.0 * a - 1.0))
}

/// Multiplies every slice of `traj` at time `t` by `η(t / scale)`.
pub fn window_field(traj: &Trajectory, scale: f64) -> Result<Trajectory> {
    if !(scale.is_finite() && scale > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "window scale must be positive, got {scale}"
        )));
    }
    let mut out = traj.clone();
    for (m, &t) in traj.times.iter().enumerate() {
        let w = bump_eta(t / scale);
        out.u[m] = traj.u[m].scaled_real(w);
        out.v[m] = traj.v[m].scaled_real(w);
    }
    Ok(out)
}
