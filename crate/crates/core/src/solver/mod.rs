//! Integrators for the coupled system and the free/nonlinear decomposition.
//!
//! Written as first-order evolutions the system reads
//!
//! ```text
//! u_t = i u_xx − i N_u,   N_u = α u v + γ |u|² u
//! v_t = −∂⁵ v + N_v,      N_v = ε ∂(|u|²) − ∂(v²)
//! ```
//!
//! All products are dealiased with the 2/3 rule; the cubic term nests two
//! dealiased quadratic products.

mod picard;
mod splitstep;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::propagators::{apply_group, Dispersion};
use crate::spectral::{Field, Grid1D};

pub use picard::{picard_solve, DuhamelRule, PicardOptions, PicardOutcome};
pub use splitstep::splitstep_evolve;

/// Coupling constants `α`, `γ`, `ε`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SystemParams {
    pub alpha: f64,
    pub gamma: f64,
    pub epsilon: f64,
}

impl Default for SystemParams {
    fn default() -> Self {
        SystemParams {
            alpha: 1.0,
            gamma: 1.0,
            epsilon: 1.0,
        }
    }
}

impl SystemParams {
    pub fn new(alpha: f64, gamma: f64, epsilon: f64) -> Result<Self> {
        let p = SystemParams { alpha, gamma, epsilon };
        p.validate()?;
        Ok(p)
    }

    /// All couplings zero: `u` evolves freely and `v` decouples from `u`.
    pub fn linear() -> Self {
        SystemParams {
            alpha: 0.0,
            gamma: 0.0,
            epsilon: 0.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("alpha", self.alpha), ("gamma", self.gamma), ("epsilon", self.epsilon)] {
            if !v.is_finite() {
                return Err(Error::InvalidParameter(format!("{name} must be finite, got {v}")));
            }
        }
        Ok(())
    }
}

/// Time-sampled solution `(u(t_m), v(t_m))`, `t_m = m·dt`, in physical
/// representation.
#[derive(Clone, Debug)]
pub struct Trajectory {
    pub grid: Grid1D,
    pub times: Vec<f64>,
    pub u: Vec<Field>,
    pub v: Vec<Field>,
    pub params: SystemParams,
    pub dt: f64,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn final_time(&self) -> f64 {
        self.times.last().copied().unwrap_or(0.0)
    }

    /// Index of the stored slice closest to `t`.
    pub fn index_near(&self, t: f64) -> usize {
        let m = (t / self.dt).round().max(0.0) as usize;
        m.min(self.len().saturating_sub(1))
    }

    /// Slices with `t_m <= t_max` (with a half-step allowance).
    pub fn restricted(&self, t_max: f64) -> Trajectory {
        let keep = self.times.iter().take_while(|&&t| t <= t_max + 0.5 * self.dt).count();
        Trajectory {
            grid: self.grid.clone(),
            times: self.times[..keep].to_vec(),
            u: self.u[..keep].to_vec(),
            v: self.v[..keep].to_vec(),
            params: self.params,
            dt: self.dt,
        }
    }
}

/// `max_m sqrt(‖a_u − b_u‖² + ‖a_v − b_v‖²) / max_m sqrt(‖b_u‖² + ‖b_v‖²)`
/// over the common slices.
pub fn sup_relative_difference(a: &Trajectory, b: &Trajectory) -> Result<f64> {
    if a.grid != b.grid {
        return Err(Error::GridMismatch);
    }
    let n = a.len().min(b.len());
    let mut num: f64 = 0.0;
    let mut den: f64 = 0.0;
    for m in 0..n {
        let du = a.u[m].sub(&b.u[m])?.l2_norm();
        let dv = a.v[m].sub(&b.v[m])?.l2_norm();
        num = num.max(du.hypot(dv));
        den = den.max(b.u[m].l2_norm().hypot(b.v[m].l2_norm()));
    }
    if den == 0.0 {
        return Ok(num);
    }
    Ok(num / den)
}

/// Checks a time lattice and returns the number of steps `T/dt`.
pub(crate) fn step_count(t_final: f64, dt: f64) -> Result<usize> {
    if !(t_final.is_finite() && t_final > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "final time must be positive, got {t_final}"
        )));
    }
    if !(dt.is_finite() && dt > 0.0 && dt <= t_final) {
        return Err(Error::InvalidParameter(format!(
            "time step must lie in (0, T], got {dt}"
        )));
    }
    let steps = (t_final / dt).round();
    if ((steps * dt - t_final) / t_final).abs() > 1e-9 {
        return Err(Error::InvalidParameter(format!(
            "dt = {dt} does not divide T = {t_final}"
        )));
    }
    Ok(steps as usize)
}

/// Spectral coefficients of `(N_u, N_v)` for physical or spectral inputs.
pub(crate) fn nonlinear_terms_spectral(
    u: &Field,
    v: &Field,
    p: &SystemParams,
) -> Result<(Vec<Complex64>, Vec<Complex64>)> {
    u.check_same_grid(v)?;
    let grid = u.grid().clone();
    let n = grid.n_points();
    let zero = Complex64::new(0.0, 0.0);

    let to_truncated_physical = |f: &Field| {
        let mut s = f.clone().into_spectral().into_values();
        grid.truncate_in_place(&mut s);
        grid.inverse_in_place(&mut s);
        s
    };
    let project = |mut w: Vec<Complex64>| {
        grid.forward_in_place(&mut w);
        grid.truncate_in_place(&mut w);
        w
    };

    let ud = to_truncated_physical(u);
    let vd = to_truncated_physical(v);

    let mod2 = project(ud.iter().map(|c| Complex64::new(c.norm_sqr(), 0.0)).collect());
    let mut mod2_phys = mod2.clone();
    grid.inverse_in_place(&mut mod2_phys);

    let mut nu = vec![zero; n];
    if p.alpha != 0.0 {
        let uv = project(ud.iter().zip(&vd).map(|(a, b)| a * b).collect());
        nu.iter_mut().zip(&uv).for_each(|(o, x)| *o += p.alpha * x);
    }
    if p.gamma != 0.0 {
        let cubic = project(mod2_phys.iter().zip(&ud).map(|(a, b)| a * b).collect());
        nu.iter_mut().zip(&cubic).for_each(|(o, x)| *o += p.gamma * x);
    }

    let v2 = project(vd.iter().map(|c| c * c).collect());
    let nyquist = grid.nyquist_slot();
    let nv = grid
        .wavenumbers()
        .iter()
        .enumerate()
        .map(|(slot, &xi)| {
            if slot == nyquist {
                return zero;
            }
            Complex64::new(0.0, xi) * (p.epsilon * mod2[slot] - v2[slot])
        })
        .collect();
    Ok((nu, nv))
}

/// `α u v + γ |u|² u`, dealiased, physical.
pub fn nonlinearity_u(u: &Field, v: &Field, p: &SystemParams) -> Result<Field> {
    let (nu, _) = nonlinear_terms_spectral(u, v, p)?;
    Ok(Field::spectral(u.grid(), nu)?.into_physical())
}

/// `ε ∂(|u|²) − ∂(v²)`, dealiased, physical.
pub fn nonlinearity_v(u: &Field, v: &Field, p: &SystemParams) -> Result<Field> {
    let (_, nv) = nonlinear_terms_spectral(u, v, p)?;
    Ok(Field::spectral(u.grid(), nv)?.into_physical())
}

/// The nonlinear Duhamel parts `u₁(t) = u(t) − U(t)u₀`, `v₁(t) = v(t) − V(t)v₀`.
pub fn nonlinear_part(traj: &Trajectory, u0: &Field, v0: &Field) -> Result<(Vec<Field>, Vec<Field>)> {
    if *u0.grid() != traj.grid || *v0.grid() != traj.grid {
        return Err(Error::GridMismatch);
    }
    let mut u1 = Vec::with_capacity(traj.len());
    let mut v1 = Vec::with_capacity(traj.len());
    for (m, &t) in traj.times.iter().enumerate() {
        if t == 0.0 {
            u1.push(traj.u[m].sub(u0)?);
            v1.push(traj.v[m].sub(v0)?);
            continue;
        }
        let free_u = apply_group(Dispersion::Schrodinger, u0, t)?;
        let free_v = apply_group(Dispersion::FifthOrder, v0, t)?;
        u1.push(traj.u[m].sub(&free_u)?.into_physical());
        v1.push(traj.v[m].sub(&free_v)?.into_physical());
    }
    Ok((u1, v1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::{dealiased_product, spectral_derivative};

    fn grid() -> Grid1D {
        Grid1D::new(256, 40.0).unwrap()
    }

    #[test]
    fn zero_u_gives_zero_coupling_terms() {
        let g = grid();
        let u = Field::zeros(&g);
        let v = Field::zeros(&g);
        let p = SystemParams::default();
        assert_eq!(nonlinearity_u(&u, &v, &p).unwrap().max_abs(), 0.0);
        assert_eq!(nonlinearity_v(&u, &v, &p).unwrap().max_abs(), 0.0);
    }

    #[test]
    fn decoupled_u_nonlinearity_vanishes() {
        let g = grid();
        let u = Field::from_fn(&g, |x| Complex64::new((-x * x).exp(), x.sin()));
        let v = Field::from_real_fn(&g, |x| (-0.5 * x * x).exp());
        let p = SystemParams::new(0.0, 0.0, 1.0).unwrap();
        assert_eq!(nonlinearity_u(&u, &v, &p).unwrap().max_abs(), 0.0);
    }

    #[test]
    fn unimodular_profile_is_fixed_by_cubic_term() {
        let g = grid();
        let u = Field::mode(&g, 1);
        let u = u.scaled_real(1.0 / u.max_abs());
        let p = SystemParams::new(0.0, 1.0, 0.0).unwrap();
        let nu = nonlinearity_u(&u, &Field::zeros(&g), &p).unwrap();
        assert!(nu.sub(&u).unwrap().max_abs() < 1e-12);
    }

    #[test]
    fn terms_match_nested_dealiased_products() {
        let g = grid();
        let u = Field::from_fn(&g, |x| Complex64::from_polar((-0.3 * x * x).exp(), 0.7 * x));
        let v = Field::from_real_fn(&g, |x| 1.0 / (1.0 + x * x));
        let p = SystemParams::new(0.7, -1.3, 2.1).unwrap();
        let mod2 = dealiased_product(&u, &u.conj()).unwrap();
        let expected_u = dealiased_product(&u, &v)
            .unwrap()
            .scaled_real(p.alpha)
            .add(&dealiased_product(&mod2, &u).unwrap().scaled_real(p.gamma))
            .unwrap();
        let v2 = dealiased_product(&v, &v).unwrap();
        let expected_v = spectral_derivative(&mod2.scaled_real(p.epsilon).sub(&v2).unwrap(), 1).unwrap();
        let got_u = nonlinearity_u(&u, &v, &p).unwrap();
        let got_v = nonlinearity_v(&u, &v, &p).unwrap();
        assert!(got_u.sub(&expected_u).unwrap().max_abs() < 1e-13);
        assert!(got_v.sub(&expected_v).unwrap().max_abs() < 1e-13);
        assert!(got_v.imaginary_ratio() < 1e-12);
    }

    #[test]
    fn mismatched_grids_rejected() {
        let a = Field::zeros(&grid());
        let b = Field::zeros(&Grid1D::new(128, 40.0).unwrap());
        assert!(matches!(
            nonlinearity_u(&a, &b, &SystemParams::default()),
            Err(Error::GridMismatch)
        ));
    }

    #[test]
    fn step_count_requires_divisible_lattice() {
        assert_eq!(step_count(0.05, 1e-4).unwrap(), 500);
        assert!(step_count(0.05, 0.03).is_err());
        assert!(step_count(-1.0, 0.1).is_err());
        assert!(step_count(1.0, f64::NAN).is_err());
    }
}
