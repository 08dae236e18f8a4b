//! The free groups `U(t)` (Schrödinger, symbol `ξ²`) and `V(t)` (fifth-order
//! KdV, symbol `ξ⁵`) as diagonal Fourier multipliers `e^{-itσ(ξ)}`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::dd::DoubleDouble;
use crate::error::{Error, Result};
use crate::spectral::{Field, Grid1D};

/// Largest admissible `|t| * max|σ(ξ)|` before phases lose meaning in f64.
pub const PHASE_BUDGET: f64 = 1e12;

/// Which linear group a multiplier belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Dispersion {
    /// `i u_t + u_xx = 0`, symbol `ξ²`.
    Schrodinger,
    /// `v_t + v_xxxxx = 0`, symbol `ξ⁵`.
    FifthOrder,
}

impl Dispersion {
    fn power(self) -> u32 {
        match self {
            Dispersion::Schrodinger => 2,
            Dispersion::FifthOrder => 5,
        }
    }

    pub fn symbol(self, xi: f64) -> f64 {
        xi.powi(self.power() as i32)
    }

    /// Odd symbols pair `ξ` with `-ξ` conjugately and so preserve real data.
    pub fn is_odd(self) -> bool {
        self.power() % 2 == 1
    }

    /// `e^{-itσ(ξ)}` for a single frequency.
    pub fn phase(self, xi: f64, t: f64) -> Complex64 {
        DoubleDouble::powi(xi, self.power()).mul_f64(t).neg().cis()
    }

    /// Largest `|σ(ξ)|` over the grid's lattice.
    pub fn max_symbol(self, grid: &Grid1D) -> f64 {
        self.symbol(grid.max_abs_frequency()).abs()
    }

    pub fn name(self) -> &'static str {
        match self {
            Dispersion::Schrodinger => "schrodinger",
            Dispersion::FifthOrder => "fifth_order",
        }
    }
}

fn check_time(kind: Dispersion, grid: &Grid1D, t: f64) -> Result<()> {
    if !t.is_finite() {
        return Err(Error::NonFiniteTime(t));
    }
    let load = t.abs() * kind.max_symbol(grid);
    if load > PHASE_BUDGET {
        return Err(Error::PhaseAccuracy(load));
    }
    Ok(())
}

/// Per-slot multipliers `e^{-itσ(ξ_k)}` in FFT order, with `t` given as an
/// unevaluated double-double sum.
///
/// For odd symbols the Nyquist slot has no partner; it is assigned symbol 0 so
/// that the group stays unitary and real-preserving.
pub(crate) fn phase_table_dd(kind: Dispersion, grid: &Grid1D, t: DoubleDouble) -> Result<Vec<Complex64>> {
    check_time(kind, grid, t.value())?;
    let nyquist = grid.nyquist_slot();
    Ok(grid
        .wavenumbers()
        .iter()
        .enumerate()
        .map(|(slot, &xi)| {
            if kind.is_odd() && slot == nyquist {
                return Complex64::new(1.0, 0.0);
            }
            DoubleDouble::powi(xi, kind.power()).mul(t).neg().cis()
        })
        .collect())
}

/// Per-slot multipliers for time `t`.
pub fn phase_table(kind: Dispersion, grid: &Grid1D, t: f64) -> Result<Vec<Complex64>> {
    phase_table_dd(kind, grid, DoubleDouble::from_f64(t))
}

pub(crate) fn multiply_spectral(spec: &mut [Complex64], table: &[Complex64]) {
    spec.iter_mut().zip(table).for_each(|(c, p)| *c *= p);
}

fn apply_with_table(f: &Field, table: &[Complex64]) -> Field {
    if table.iter().all(|p| p.re == 1.0 && p.im == 0.0) {
        return f.clone();
    }
    let repr = f.representation();
    let mut spec = f.clone().into_spectral();
    multiply_spectral(spec.values_mut(), table);
    spec.into_representation(repr)
}

/// Applies `U(t)` or `V(t)`. The output has the input's representation.
pub fn apply_group(kind: Dispersion, f: &Field, t: f64) -> Result<Field> {
    let table = phase_table(kind, f.grid(), t)?;
    Ok(apply_with_table(f, &table))
}

pub(crate) fn apply_group_dd(kind: Dispersion, f: &Field, t: DoubleDouble) -> Result<Field> {
    let table = phase_table_dd(kind, f.grid(), t)?;
    Ok(apply_with_table(f, &table))
}

/// `‖G(t2) G(t1) f − G(t1 + t2) f‖ / ‖f‖`, with `t1 + t2` formed exactly.
pub fn group_law_defect(kind: Dispersion, f: &Field, t1: f64, t2: f64) -> Result<f64> {
    let norm = f.l2_norm();
    if norm == 0.0 {
        return Err(Error::ZeroField);
    }
    let stepped = apply_group(kind, &apply_group(kind, f, t1)?, t2)?;
    let direct = apply_group_dd(kind, f, DoubleDouble::sum(t1, t2))?;
    Ok(stepped.sub(&direct)?.l2_norm() / norm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::TAU;

    fn random_field(grid: &Grid1D, seed: u64, real: bool) -> Field {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let values = (0..grid.n_points())
            .map(|_| {
                let im = if real { 0.0 } else { rng.gen_range(-1.0..1.0) };
                Complex64::new(rng.gen_range(-1.0..1.0), im)
            })
            .collect();
        Field::physical(grid, values).unwrap()
    }

    #[test]
    fn zero_time_is_identity() {
        let g = Grid1D::new(128, 20.0).unwrap();
        let f = random_field(&g, 1, false);
        for kind in [Dispersion::Schrodinger, Dispersion::FifthOrder] {
            let out = apply_group(kind, &f, 0.0).unwrap();
            assert!(out.sub(&f).unwrap().l2_norm() / f.l2_norm() < 1e-14);
        }
    }

    #[test]
    fn single_mode_acquires_exact_phase() {
        let g = Grid1D::new(64, 10.0).unwrap();
        let t = 0.37;
        let xi2 = TAU * 2.0 / 10.0;
        let out = apply_group(Dispersion::Schrodinger, &Field::mode(&g, 2), t).unwrap();
        let expected = Field::mode(&g, 2).scaled(Complex64::from_polar(1.0, -t * xi2 * xi2));
        assert!(out.sub(&expected).unwrap().max_abs() < 1e-13);
    }

    #[test]
    fn dispersed_gaussian_matches_closed_form() {
        let g = Grid1D::new(2048, 100.0).unwrap();
        let t = 0.1;
        let f = Field::from_real_fn(&g, |x| (-x * x).exp());
        let out = apply_group(Dispersion::Schrodinger, &f, t).unwrap();
        let denom = Complex64::new(1.0, 4.0 * t);
        let err = out
            .values()
            .iter()
            .enumerate()
            .map(|(j, c)| {
                let x = g.x(j);
                let exact = (-(x * x) / denom).exp() / denom.sqrt();
                (c - exact).norm()
            })
            .fold(0.0, f64::max);
        assert!(err < 1e-8, "{err}");
    }

    #[test]
    fn group_law_examples() {
        let g = Grid1D::new(1024, 100.0).unwrap();
        let f = random_field(&g, 7, false);
        for kind in [Dispersion::Schrodinger, Dispersion::FifthOrder] {
            assert_eq!(group_law_defect(kind, &f, 0.0, 0.0).unwrap(), 0.0);
            assert!(group_law_defect(kind, &f, 0.3, -0.3).unwrap() <= 1e-12);
            assert!(group_law_defect(kind, &f, 1.7, 2.4).unwrap() <= 1e-12);
        }
    }

    #[test]
    fn zero_field_rejected_by_defect() {
        let g = Grid1D::new(16, 1.0).unwrap();
        assert!(matches!(
            group_law_defect(Dispersion::Schrodinger, &Field::zeros(&g), 1.0, 1.0),
            Err(Error::ZeroField)
        ));
    }

    #[test]
    fn non_finite_and_excessive_times_rejected() {
        let g = Grid1D::new(1024, 10.0).unwrap();
        let f = Field::zeros(&g);
        assert!(matches!(
            apply_group(Dispersion::FifthOrder, &f, f64::NAN),
            Err(Error::NonFiniteTime(_))
        ));
        assert!(matches!(
            apply_group(Dispersion::FifthOrder, &f, f64::INFINITY),
            Err(Error::NonFiniteTime(_))
        ));
        // max |ξ| ≈ 321.7, ξ⁵ ≈ 3.4e12
        assert!(matches!(
            apply_group(Dispersion::FifthOrder, &f, 1.0),
            Err(Error::PhaseAccuracy(_))
        ));
        assert!(apply_group(Dispersion::Schrodinger, &f, 1.0).is_ok());
    }

    #[test]
    fn fifth_order_group_preserves_reality() {
        let g = Grid1D::new(512, 50.0).unwrap();
        let f = random_field(&g, 9, true);
        let out = apply_group(Dispersion::FifthOrder, &f, 0.83).unwrap();
        assert!(out.imaginary_ratio() < 1e-12);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn unitary_for_all_times(seed in 0u64..1000, t in -5.0f64..5.0, odd in any::<bool>()) {
            let g = Grid1D::new(256, 60.0).unwrap();
            let kind = if odd { Dispersion::FifthOrder } else { Dispersion::Schrodinger };
            let f = random_field(&g, seed, false);
            let out = apply_group(kind, &f, t).unwrap();
            prop_assert!((out.l2_norm() - f.l2_norm()).abs() / f.l2_norm() < 1e-12);
        }

        #[test]
        fn group_law_holds(seed in 0u64..1000, t1 in -4.0f64..4.0, t2 in -4.0f64..4.0, odd in any::<bool>()) {
            let g = Grid1D::new(256, 60.0).unwrap();
            let kind = if odd { Dispersion::FifthOrder } else { Dispersion::Schrodinger };
            let f = random_field(&g, seed, false);
            prop_assert!(group_law_defect(kind, &f, t1, t2).unwrap() <= 1e-12);
        }
    }
}
