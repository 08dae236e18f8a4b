//! Fixed-point iteration of the time-truncated Duhamel map
//!
//! ```text
//! u(t) = η(t) [ U(t)u₀ − i ∫₀ᵗ U(t−t′) η(t′/2T) N_u(t′) dt′ ]
//! v(t) = η(t) [ V(t)v₀ +   ∫₀ᵗ V(t−t′) η(t′/2T) N_v(t′) dt′ ]
//! ```
//!
//! on the uniform slice lattice. The running integral `D_m = ∫₀^{t_m}` is
//! advanced by a one-step recurrence, so one sweep costs `O(M)` transforms.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{nonlinear_terms_spectral, step_count, SystemParams, Trajectory};
use crate::error::{Error, Result};
use crate::initial_data::bump_eta;
use crate::propagators::{phase_table, Dispersion};
use crate::spectral::{Field, Grid1D};

/// Quadrature for the Duhamel integral over one step.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DuhamelRule {
    /// Trapezoid on exactly propagated samples:
    /// `D_m = G(h) D_{m−1} + h/2 (G(h) F_{m−1} + F_m)`.
    #[default]
    Trapezoid,
    /// Linear interpolation of `F` integrated exactly against the
    /// oscillatory kernel; stays accurate when `h σ(ξ)` is large.
    ExponentialLinear,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PicardOptions {
    pub max_iter: usize,
    /// Absolute stopping threshold on the sup-in-time L² defect.
    pub tol: f64,
    pub rule: DuhamelRule,
}

impl Default for PicardOptions {
    fn default() -> Self {
        PicardOptions {
            max_iter: 60,
            tol: 1e-12,
            rule: DuhamelRule::Trapezoid,
        }
    }
}

#[derive(Clone, Debug)]
pub struct PicardOutcome {
    pub trajectory: Trajectory,
    /// `sup_m ‖Γ(w_k) − w_k‖` for every sweep `k`.
    pub defects: Vec<f64>,
}

impl PicardOutcome {
    /// Ratios of consecutive defects.
    pub fn contraction_ratios(&self) -> Vec<f64> {
        self.defects.windows(2).map(|w| w[1] / w[0]).collect()
    }
}

/// Per-mode step weights `(e^{λh}, w_prev, w_curr)` with
/// `D_m = e^{λh} D_{m−1} + w_prev F_{m−1} + w_curr F_m`.
struct StepWeights {
    decay: Vec<Complex64>,
    prev: Vec<Complex64>,
    curr: Vec<Complex64>,
}

fn phi_functions(z: Complex64, ez: Complex64) -> (Complex64, Complex64) {
    if z.norm() < 0.5 {
        let mut phi1 = Complex64::new(0.0, 0.0);
        let mut phi2 = Complex64::new(0.0, 0.0);
        let mut term = Complex64::new(1.0, 0.0);
        let mut fact = 1.0;
        for k in 0..20 {
            fact *= (k + 1) as f64;
            phi1 += term / fact;
            phi2 += term / (fact * (k + 2) as f64);
            term *= z;
        }
        (phi1, phi2)
    } else {
        let one = Complex64::new(1.0, 0.0);
        ((ez - one) / z, (ez - one - z) / (z * z))
    }
}

fn step_weights(kind: Dispersion, grid: &Grid1D, h: f64, rule: DuhamelRule) -> Result<StepWeights> {
    let decay = phase_table(kind, grid, h)?;
    let half = Complex64::new(0.5 * h, 0.0);
    let (prev, curr) = match rule {
        DuhamelRule::Trapezoid => (decay.iter().map(|e| e * half).collect(), vec![half; decay.len()]),
        DuhamelRule::ExponentialLinear => {
            let nyquist = grid.nyquist_slot();
            let mut prev = Vec::with_capacity(decay.len());
            let mut curr = Vec::with_capacity(decay.len());
            for (slot, (&xi, &e)) in grid.wavenumbers().iter().zip(&decay).enumerate() {
                let sigma = if kind.is_odd() && slot == nyquist {
                    0.0
                } else {
                    kind.symbol(xi)
                };
                let z = Complex64::new(0.0, -sigma * h);
                let (phi1, phi2) = phi_functions(z, e);
                prev.push((phi1 - phi2) * h);
                curr.push(phi2 * h);
            }
            (prev, curr)
        }
    };
    Ok(StepWeights { decay, prev, curr })
}

fn running_integral(weights: &StepWeights, forcing: &[Vec<Complex64>]) -> Vec<Vec<Complex64>> {
    let n = weights.decay.len();
    let mut out = Vec::with_capacity(forcing.len());
    let mut d = vec![Complex64::new(0.0, 0.0); n];
    out.push(d.clone());
    for m in 1..forcing.len() {
        let (fp, fc) = (&forcing[m - 1], &forcing[m]);
        for k in 0..n {
            d[k] = weights.decay[k] * d[k] + weights.prev[k] * fp[k] + weights.curr[k] * fc[k];
        }
        out.push(d.clone());
    }
    out
}

/// Solves the truncated Duhamel system on `[0, T]` by Picard iteration from
/// the free evolution.
pub fn picard_solve(
    u0: &Field,
    v0: &Field,
    params: &SystemParams,
    t_final: f64,
    dt: f64,
    opts: &PicardOptions,
) -> Result<PicardOutcome> {
    params.validate()?;
    u0.check_same_grid(v0)?;
    if t_final > 0.5 {
        return Err(Error::InvalidParameter(format!(
            "Picard horizon T = {t_final} exceeds 1/2"
        )));
    }
    if opts.max_iter == 0 || opts.tol.is_nan() || opts.tol <= 0.0 {
        return Err(Error::InvalidParameter("Picard needs max_iter >= 1 and tol > 0".into()));
    }
    let steps = step_count(t_final, dt)?;
    let grid = u0.grid().clone();
    let times: Vec<f64> = (0..=steps).map(|m| m as f64 * dt).collect();
    let eta: Vec<f64> = times.iter().map(|&t| bump_eta(t)).collect();
    let eta_forcing: Vec<f64> = times.iter().map(|&t| bump_eta(t / (2.0 * t_final))).collect();

    let u0s = u0.clone().into_spectral();
    let v0s = v0.clone().into_spectral();
    let mut free_u = Vec::with_capacity(times.len());
    let mut free_v = Vec::with_capacity(times.len());
    for &t in &times {
        let pu = phase_table(Dispersion::Schrodinger, &grid, t)?;
        let pv = phase_table(Dispersion::FifthOrder, &grid, t)?;
        free_u.push(u0s.values().iter().zip(&pu).map(|(c, p)| c * p).collect::<Vec<_>>());
        free_v.push(v0s.values().iter().zip(&pv).map(|(c, p)| c * p).collect::<Vec<_>>());
    }
    let wu = step_weights(Dispersion::Schrodinger, &grid, dt, opts.rule)?;
    let wv = step_weights(Dispersion::FifthOrder, &grid, dt, opts.rule)?;

    let assemble = |spec: &[Complex64], scale: f64, real: bool| -> Result<Field> {
        let f = Field::spectral(&grid, spec.to_vec())?
            .into_physical()
            .scaled_real(scale);
        Ok(if real { f.into_real_part() } else { f })
    };

    let mut u: Vec<Field> = Vec::with_capacity(times.len());
    let mut v: Vec<Field> = Vec::with_capacity(times.len());
    for m in 0..times.len() {
        u.push(assemble(&free_u[m], eta[m], false)?);
        v.push(assemble(&free_v[m], eta[m], true)?);
    }

    let mut defects = Vec::new();
    loop {
        let mut fu = Vec::with_capacity(times.len());
        let mut fv = Vec::with_capacity(times.len());
        for m in 0..times.len() {
            let (nu, nv) = nonlinear_terms_spectral(&u[m], &v[m], params)?;
            let c = eta_forcing[m];
            fu.push(nu.into_iter().map(|x| x * c).collect::<Vec<_>>());
            fv.push(nv.into_iter().map(|x| x * c).collect::<Vec<_>>());
        }
        let du = running_integral(&wu, &fu);
        let dv = running_integral(&wv, &fv);

        let minus_i = Complex64::new(0.0, -1.0);
        let mut defect: f64 = 0.0;
        let mut next_u = Vec::with_capacity(times.len());
        let mut next_v = Vec::with_capacity(times.len());
        for m in 0..times.len() {
            let su: Vec<Complex64> = free_u[m].iter().zip(&du[m]).map(|(a, d)| a + minus_i * d).collect();
            let sv: Vec<Complex64> = free_v[m].iter().zip(&dv[m]).map(|(a, d)| a + d).collect();
            let nu = assemble(&su, eta[m], false)?;
            let nv = assemble(&sv, eta[m], true)?;
            let e = nu.sub(&u[m])?.l2_norm().hypot(nv.sub(&v[m])?.l2_norm());
            defect = defect.max(e);
            next_u.push(nu);
            next_v.push(nv);
        }
        u = next_u;
        v = next_v;
        defects.push(defect);
        if !defect.is_finite() {
            return Err(Error::NotConverged { defects });
        }
        if defect < opts.tol {
            break;
        }
        if defects.len() >= opts.max_iter {
            return Err(Error::NotConverged { defects });
        }
    }

    Ok(PicardOutcome {
        trajectory: Trajectory {
            grid,
            times,
            u,
            v,
            params: *params,
            dt,
        },
        defects,
    })
}
