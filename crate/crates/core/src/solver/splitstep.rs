//! Strang splitting: exact half-step linear flow, explicit-midpoint step of
//! the nonlinear system `u_t = −i N_u`, `v_t = N_v`, exact half-step linear
//! flow.

use num_complex::Complex64;

use super::{nonlinear_terms_spectral, step_count, SystemParams, Trajectory};
use crate::error::{Error, Result};
use crate::propagators::{multiply_spectral, phase_table, Dispersion};
use crate::spectral::{Field, Grid1D};

/// Per-step norm growth beyond which the integrator is declared unstable.
pub const INSTABILITY_GROWTH: f64 = 10.0;

fn rhs(grid: &Grid1D, u: &[Complex64], v: &[Complex64], p: &SystemParams) -> Result<(Vec<Complex64>, Vec<Complex64>)> {
    let uf = Field::spectral(grid, u.to_vec())?;
    let vf = Field::spectral(grid, v.to_vec())?;
    let (nu, nv) = nonlinear_terms_spectral(&uf, &vf, p)?;
    let minus_i = Complex64::new(0.0, -1.0);
    Ok((nu.into_iter().map(|x| minus_i * x).collect(), nv))
}

fn norm(values: &[Complex64]) -> f64 {
    values.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

fn axpy(y: &[Complex64], a: f64, x: &[Complex64]) -> Vec<Complex64> {
    y.iter().zip(x).map(|(y, x)| y + a * x).collect()
}

/// Advances `(u₀, v₀)` to `T` with step `dt`, keeping every slice.
pub fn splitstep_evolve(u0: &Field, v0: &Field, params: &SystemParams, t_final: f64, dt: f64) -> Result<Trajectory> {
    params.validate()?;
    u0.check_same_grid(v0)?;
    let steps = step_count(t_final, dt)?;
    let grid = u0.grid().clone();
    let half_u = phase_table(Dispersion::Schrodinger, &grid, 0.5 * dt)?;
    let half_v = phase_table(Dispersion::FifthOrder, &grid, 0.5 * dt)?;
    let linear = params.alpha == 0.0 && params.gamma == 0.0 && params.epsilon == 0.0;

    let mut u = u0.clone().into_spectral().into_values();
    let mut v = v0.clone().into_spectral().into_values();
    let mut times = vec![0.0];
    let mut us = vec![u0.clone().into_physical()];
    let mut vs = vec![v0.clone().into_physical()];

    for m in 1..=steps {
        let (nu_before, nv_before) = (norm(&u), norm(&v));
        multiply_spectral(&mut u, &half_u);
        multiply_spectral(&mut v, &half_v);
        if !linear {
            let (ku, kv) = rhs(&grid, &u, &v, params)?;
            let um = axpy(&u, 0.5 * dt, &ku);
            let vm = axpy(&v, 0.5 * dt, &kv);
            let (ku, kv) = rhs(&grid, &um, &vm, params)?;
            u = axpy(&u, dt, &ku);
            v = axpy(&v, dt, &kv);
        }
        multiply_spectral(&mut u, &half_u);
        multiply_spectral(&mut v, &half_v);

        let t = m as f64 * dt;
        for (before, after) in [(nu_before, norm(&u)), (nv_before, norm(&v))] {
            if !after.is_finite() || (before > 0.0 && after > INSTABILITY_GROWTH * before) {
                return Err(Error::Unstable {
                    time: t,
                    growth: after / before,
                });
            }
        }

        let uf = Field::spectral(&grid, u.clone())?.into_physical();
        let vf = Field::spectral(&grid, v.clone())?.into_physical().into_real_part();
        v = vf.clone().into_spectral().into_values();
        times.push(t);
        us.push(uf);
        vs.push(vf);
    }

    Ok(Trajectory {
        grid,
        times,
        u: us,
        v: vs,
        params: *params,
        dt,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::propagators::apply_group;

    #[test]
    fn linear_splitting_is_the_free_flow() {
        let g = Grid1D::new(256, 50.0).unwrap();
        let u0 = Field::from_fn(&g, |x| Complex64::from_polar((-x * x / 9.0).exp(), 0.5 * x));
        let v0 = Field::from_real_fn(&g, |x| (-x * x / 4.0).exp());
        let traj = splitstep_evolve(&u0, &v0, &SystemParams::linear(), 0.2, 0.01).unwrap();
        let fu = apply_group(Dispersion::Schrodinger, &u0, 0.2).unwrap();
        let fv = apply_group(Dispersion::FifthOrder, &v0, 0.2).unwrap();
        assert!(traj.u.last().unwrap().sub(&fu).unwrap().l2_norm() < 1e-13);
        assert!(traj.v.last().unwrap().sub(&fv).unwrap().l2_norm() < 1e-13);
    }

    #[test]
    fn mass_and_mean_conserved_on_short_runs() {
        let g = Grid1D::new(512, 100.0).unwrap();
        let u0 = Field::from_fn(&g, |x| Complex64::from_polar((-x * x / 16.0).exp(), 0.3 * x));
        let v0 = Field::from_real_fn(&g, |x| 0.5 * (-x * x / 25.0).exp());
        let traj = splitstep_evolve(&u0, &v0, &SystemParams::default(), 0.02, 1e-4).unwrap();
        let m0 = u0.l2_norm();
        let m1 = traj.u.last().unwrap().l2_norm();
        assert!(((m1 - m0) / m0).abs() < 1e-8);
        let i0 = v0.integral().re;
        let i1 = traj.v.last().unwrap().integral().re;
        assert!((i1 - i0).abs() < 1e-10);
    }

    #[test]
    fn blowing_up_step_is_reported() {
        let g = Grid1D::new(128, 20.0).unwrap();
        let u0 = Field::from_real_fn(&g, |x| 50.0 * (-x * x).exp());
        let v0 = Field::zeros(&g);
        let p = SystemParams::new(0.0, -1.0, 0.0).unwrap();
        assert!(matches!(
            splitstep_evolve(&u0, &v0, &p, 0.5, 0.05),
            Err(Error::Unstable { .. })
        ));
    }
}
