//! Periodic grids, unitary transforms, spectral derivatives and 2/3-rule
//! dealiasing.
//!
//! The whole line is approximated by a periodic box `[-L/2, L/2)` sampled at
//! `x_j = -L/2 + j L/N`. Spectral coefficients are stored in FFT order
//! (`k = 0, 1, ..., N/2-1, -N/2, ..., -1`) with the unitary normalization
//! `c_k = N^{-1/2} sum_j f_j e^{-2πi jk/N}`, so that the physical norm
//! `(dx sum |f_j|^2)^{1/2}` equals `(dx sum |c_k|^2)^{1/2}` without scale factors.

use std::f64::consts::TAU;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};

struct GridInner {
    n_points: usize,
    box_length: f64,
    wavenumbers: Vec<f64>,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

/// Uniform periodic grid together with its dual frequency lattice.
///
/// Cloning is cheap; FFT plans are shared between clones.
#[derive(Clone)]
pub struct Grid1D {
    inner: Arc<GridInner>,
}

impl fmt::Debug for Grid1D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Grid1D")
            .field("n_points", &self.inner.n_points)
            .field("box_length", &self.inner.box_length)
            .finish()
    }
}

impl PartialEq for Grid1D {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.n_points == other.inner.n_points
                && self.inner.box_length.to_bits() == other.inner.box_length.to_bits())
    }
}

impl Grid1D {
    /// Builds a grid of `n_points` samples on a box of length `box_length`.
    ///
    /// `n_points` must be a power of two and at least 8.
    pub fn new(n_points: usize, box_length: f64) -> Result<Self> {
        if n_points < 8 || !n_points.is_power_of_two() {
            return Err(Error::InvalidGrid(format!(
                "n_points = {n_points} must be a power of two >= 8"
            )));
        }
        if !(box_length.is_finite() && box_length > 0.0) {
            return Err(Error::InvalidGrid(format!(
                "box_length = {box_length} must be finite and positive"
            )));
        }
        let half = n_points / 2;
        let wavenumbers = (0..n_points)
            .map(|slot| {
                let k = if slot < half {
                    slot as f64
                } else {
                    slot as f64 - n_points as f64
                };
                TAU * k / box_length
            })
            .collect();
        let mut planner = FftPlanner::new();
        let forward = planner.plan_fft_forward(n_points);
        let inverse = planner.plan_fft_inverse(n_points);
        Ok(Grid1D {
            inner: Arc::new(GridInner {
                n_points,
                box_length,
                wavenumbers,
                forward,
                inverse,
            }),
        })
    }

    pub fn n_points(&self) -> usize {
        self.inner.n_points
    }

    pub fn box_length(&self) -> f64 {
        self.inner.box_length
    }

    pub fn spacing(&self) -> f64 {
        self.inner.box_length / self.inner.n_points as f64
    }

    /// Position of sample `j`.
    pub fn x(&self, j: usize) -> f64 {
        -0.5 * self.inner.box_length + j as f64 * self.spacing()
    }

    pub fn positions(&self) -> Vec<f64> {
        (0..self.n_points()).map(|j| self.x(j)).collect()
    }

    /// Index of the sample nearest to `x` (periodically wrapped).
    pub fn nearest_index(&self, x: f64) -> usize {
        let n = self.n_points() as f64;
        let j = ((x + 0.5 * self.box_length()) / self.spacing()).round();
        (j.rem_euclid(n)) as usize
    }

    /// Wavenumbers `ξ_k = 2πk/L` in FFT storage order.
    pub fn wavenumbers(&self) -> &[f64] {
        &self.inner.wavenumbers
    }

    /// Signed mode index `k` stored in FFT slot `slot`.
    pub fn mode_index(&self, slot: usize) -> i64 {
        let n = self.n_points() as i64;
        let s = slot as i64;
        if s < n / 2 {
            s
        } else {
            s - n
        }
    }

    /// FFT slot holding signed mode `k`, for `-N/2 <= k < N/2`.
    pub fn slot_of_mode(&self, k: i64) -> usize {
        k.rem_euclid(self.n_points() as i64) as usize
    }

    /// The Nyquist slot `k = -N/2`, which has no conjugate partner.
    pub fn nyquist_slot(&self) -> usize {
        self.n_points() / 2
    }

    /// Frequencies sorted ascending: `ξ_k` for `k = -N/2, ..., N/2 - 1`.
    pub fn frequencies(&self) -> Vec<f64> {
        let n = self.n_points() as i64;
        (-n / 2..n / 2).map(|k| TAU * k as f64 / self.box_length()).collect()
    }

    /// Largest `|ξ|` on the lattice (the Nyquist magnitude `πN/L`).
    pub fn max_abs_frequency(&self) -> f64 {
        std::f64::consts::PI * self.n_points() as f64 / self.box_length()
    }

    /// Largest positive frequency `2π(N/2 - 1)/L`.
    pub fn max_positive_frequency(&self) -> f64 {
        TAU * (self.n_points() / 2 - 1) as f64 / self.box_length()
    }

    /// Modes with `|k|` above this value are removed by [`dealias`].
    pub fn dealias_cutoff(&self) -> i64 {
        self.n_points() as i64 / 3
    }

    pub(crate) fn forward_in_place(&self, data: &mut [Complex64]) {
        self.inner.forward.process(data);
        let scale = 1.0 / (self.n_points() as f64).sqrt();
        data.iter_mut().for_each(|c| *c *= scale);
    }

    pub(crate) fn inverse_in_place(&self, data: &mut [Complex64]) {
        self.inner.inverse.process(data);
        let scale = 1.0 / (self.n_points() as f64).sqrt();
        data.iter_mut().for_each(|c| *c *= scale);
    }

    /// Zeroes every mode with `|k| > N/3`, in place on spectral data.
    pub(crate) fn truncate_in_place(&self, spectral: &mut [Complex64]) {
        let cutoff = self.dealias_cutoff();
        for (slot, c) in spectral.iter_mut().enumerate() {
            if self.mode_index(slot).abs() > cutoff {
                *c = Complex64::new(0.0, 0.0);
            }
        }
    }
}

/// Which basis a [`Field`]'s values are expressed in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Representation {
    Physical,
    Spectral,
}

impl Representation {
    fn name(self) -> &'static str {
        match self {
            Representation::Physical => "physical",
            Representation::Spectral => "spectral",
        }
    }
}

/// Samples of `u` or `v` on a grid at one instant, in either basis.
#[derive(Clone, Debug)]
pub struct Field {
    grid: Grid1D,
    values: Vec<Complex64>,
    repr: Representation,
}

impl Field {
    pub fn new(grid: &Grid1D, values: Vec<Complex64>, repr: Representation) -> Result<Self> {
        if values.len() != grid.n_points() {
            return Err(Error::InvalidGrid(format!(
                "{} values for a grid of {} points",
                values.len(),
                grid.n_points()
            )));
        }
        Ok(Field {
            grid: grid.clone(),
            values,
            repr,
        })
    }

    pub fn physical(grid: &Grid1D, values: Vec<Complex64>) -> Result<Self> {
        Self::new(grid, values, Representation::Physical)
    }

    pub fn spectral(grid: &Grid1D, values: Vec<Complex64>) -> Result<Self> {
        Self::new(grid, values, Representation::Spectral)
    }

    pub fn zeros(grid: &Grid1D) -> Self {
        Field {
            grid: grid.clone(),
            values: vec![Complex64::new(0.0, 0.0); grid.n_points()],
            repr: Representation::Physical,
        }
    }

    pub fn from_fn(grid: &Grid1D, mut f: impl FnMut(f64) -> Complex64) -> Self {
        Field {
            grid: grid.clone(),
            values: (0..grid.n_points()).map(|j| f(grid.x(j))).collect(),
            repr: Representation::Physical,
        }
    }

    pub fn from_real_fn(grid: &Grid1D, mut f: impl FnMut(f64) -> f64) -> Self {
        Self::from_fn(grid, |x| Complex64::new(f(x), 0.0))
    }

    /// A single lattice mode `e^{i ξ_k x}` with unit amplitude.
    pub fn mode(grid: &Grid1D, k: i64) -> Self {
        let xi = TAU * k as f64 / grid.box_length();
        Self::from_fn(grid, |x| Complex64::from_polar(1.0, xi * x))
    }

    pub fn grid(&self) -> &Grid1D {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [Complex64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    pub fn representation(&self) -> Representation {
        self.repr
    }

    pub fn is_spectral(&self) -> bool {
        self.repr == Representation::Spectral
    }

    /// Forward transform; fails if the field is already spectral.
    pub fn to_spectral(&self) -> Result<Field> {
        self.expect(Representation::Physical)?;
        Ok(self.clone().into_spectral())
    }

    /// Inverse transform; fails if the field is already physical.
    pub fn to_physical(&self) -> Result<Field> {
        self.expect(Representation::Spectral)?;
        Ok(self.clone().into_physical())
    }

    /// Converts to spectral if needed.
    pub fn into_spectral(mut self) -> Field {
        if self.repr == Representation::Physical {
            self.grid.forward_in_place(&mut self.values);
            self.repr = Representation::Spectral;
        }
        self
    }

    /// Converts to physical if needed.
    pub fn into_physical(mut self) -> Field {
        if self.repr == Representation::Spectral {
            self.grid.inverse_in_place(&mut self.values);
            self.repr = Representation::Physical;
        }
        self
    }

    pub fn into_representation(self, repr: Representation) -> Field {
        match repr {
            Representation::Physical => self.into_physical(),
            Representation::Spectral => self.into_spectral(),
        }
    }

    fn expect(&self, repr: Representation) -> Result<()> {
        if self.repr == repr {
            Ok(())
        } else {
            Err(Error::RepresentationMismatch {
                expected: repr.name(),
                found: self.repr.name(),
            })
        }
    }

    pub(crate) fn check_same_grid(&self, other: &Field) -> Result<()> {
        if self.grid == other.grid {
            Ok(())
        } else {
            Err(Error::GridMismatch)
        }
    }

    /// Discrete L² norm; identical in both representations.
    pub fn l2_norm(&self) -> f64 {
        (self.grid.spacing() * self.values.iter().map(|c| c.norm_sqr()).sum::<f64>()).sqrt()
    }

    /// `∫ f dx` approximated by the rectangle rule (exact for trigonometric
    /// polynomials on the torus).
    pub fn integral(&self) -> Complex64 {
        let phys = self.clone().into_physical();
        phys.values.iter().sum::<Complex64>() * self.grid.spacing()
    }

    pub fn max_abs(&self) -> f64 {
        let phys = self.clone().into_physical();
        phys.values.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// `max |Im f| / max |f|` in physical space; zero for the zero field.
    pub fn imaginary_ratio(&self) -> f64 {
        let phys = self.clone().into_physical();
        let peak = phys.values.iter().map(|c| c.norm()).fold(0.0, f64::max);
        if peak == 0.0 {
            return 0.0;
        }
        phys.values.iter().map(|c| c.im.abs()).fold(0.0, f64::max) / peak
    }

    /// Drops imaginary parts in physical space.
    pub fn into_real_part(self) -> Field {
        let repr = self.repr;
        let mut phys = self.into_physical();
        phys.values.iter_mut().for_each(|c| c.im = 0.0);
        phys.into_representation(repr)
    }

    pub fn scaled(&self, factor: Complex64) -> Field {
        Field {
            grid: self.grid.clone(),
            values: self.values.iter().map(|c| c * factor).collect(),
            repr: self.repr,
        }
    }

    pub fn scaled_real(&self, factor: f64) -> Field {
        self.scaled(Complex64::new(factor, 0.0))
    }

    /// `self + factor * other`, with `other` converted to `self`'s representation.
    pub fn add_scaled(&self, other: &Field, factor: Complex64) -> Result<Field> {
        self.check_same_grid(other)?;
        let other = other.clone().into_representation(self.repr);
        Ok(Field {
            grid: self.grid.clone(),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a + factor * b)
                .collect(),
            repr: self.repr,
        })
    }

    pub fn add(&self, other: &Field) -> Result<Field> {
        self.add_scaled(other, Complex64::new(1.0, 0.0))
    }

    pub fn sub(&self, other: &Field) -> Result<Field> {
        self.add_scaled(other, Complex64::new(-1.0, 0.0))
    }

    /// Pointwise product in physical space, without dealiasing.
    pub fn pointwise_mul(&self, other: &Field) -> Result<Field> {
        self.check_same_grid(other)?;
        let a = self.clone().into_physical();
        let b = other.clone().into_physical();
        Ok(Field {
            grid: self.grid.clone(),
            values: a.values.iter().zip(&b.values).map(|(x, y)| x * y).collect(),
            repr: Representation::Physical,
        })
    }

    pub fn conj(&self) -> Field {
        let repr = self.repr;
        let mut phys = self.clone().into_physical();
        phys.values.iter_mut().for_each(|c| *c = c.conj());
        phys.into_representation(repr)
    }
}

/// Multiplies spectral coefficients by `(iξ)^order`; the Nyquist mode is
/// zeroed for odd orders so that real fields stay real.
///
/// The result has the same representation as the input.
pub fn spectral_derivative(f: &Field, order: u32) -> Result<Field> {
    if !(1..=5).contains(&order) {
        return Err(Error::UnsupportedOrder(order));
    }
    let repr = f.representation();
    let mut spec = f.clone().into_spectral();
    let grid = spec.grid.clone();
    let nyquist = grid.nyquist_slot();
    for (slot, (c, &xi)) in spec.values.iter_mut().zip(grid.wavenumbers()).enumerate() {
        if order % 2 == 1 && slot == nyquist {
            *c = Complex64::new(0.0, 0.0);
            continue;
        }
        *c *= Complex64::new(0.0, xi).powu(order);
    }
    Ok(spec.into_representation(repr))
}

/// 2/3-rule dealiasing: zeroes modes with `|k| > N/3`.
///
/// Accepts either representation and returns the same one.
pub fn dealias(f: &Field) -> Field {
    let repr = f.representation();
    let mut spec = f.clone().into_spectral();
    let grid = spec.grid.clone();
    grid.truncate_in_place(&mut spec.values);
    spec.into_representation(repr)
}

/// Product of two fields with both factors and the result truncated to
/// `|k| <= N/3`. Returned in physical representation.
///
/// A cubic term is formed by nesting two of these products.
pub fn dealiased_product(a: &Field, b: &Field) -> Result<Field> {
    a.check_same_grid(b)?;
    let a = dealias(a).into_physical();
    let b = dealias(b).into_physical();
    let prod = a.pointwise_mul(&b)?;
    Ok(dealias(&prod).into_physical())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_field(grid: &Grid1D, seed: u64) -> Field {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let values = (0..grid.n_points())
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        Field::physical(grid, values).unwrap()
    }

    fn rel_diff(a: &Field, b: &Field) -> f64 {
        a.sub(b).unwrap().l2_norm() / b.l2_norm()
    }

    #[test]
    fn grid_lattice_on_two_pi_box() {
        let g = Grid1D::new(8, TAU).unwrap();
        let freqs = g.frequencies();
        let expected = [-4.0, -3.0, -2.0, -1.0, 0.0, 1.0, 2.0, 3.0];
        for (f, e) in freqs.iter().zip(expected) {
            assert!((f - e).abs() < 1e-14);
        }
    }

    #[test]
    fn grid_spacing_and_max_frequency() {
        let g = Grid1D::new(16, 100.0).unwrap();
        assert_eq!(g.spacing(), 6.25);
        let g = Grid1D::new(1024, 200.0).unwrap();
        assert!((g.max_positive_frequency() - TAU * 511.0 / 200.0).abs() < 1e-12);
        assert!((g.spacing() * 1024.0 - 200.0).abs() < 1e-12);
    }

    #[test]
    fn grid_rejects_bad_sizes() {
        assert!(matches!(Grid1D::new(12, 1.0), Err(Error::InvalidGrid(_))));
        assert!(matches!(Grid1D::new(4, 1.0), Err(Error::InvalidGrid(_))));
        assert!(matches!(Grid1D::new(16, 0.0), Err(Error::InvalidGrid(_))));
        assert!(matches!(Grid1D::new(16, -3.0), Err(Error::InvalidGrid(_))));
        assert!(matches!(Grid1D::new(16, f64::NAN), Err(Error::InvalidGrid(_))));
    }

    #[test]
    fn frequencies_are_symmetric_except_nyquist() {
        let g = Grid1D::new(64, 13.0).unwrap();
        for k in 1..32 {
            let pos = g.wavenumbers()[g.slot_of_mode(k)];
            let neg = g.wavenumbers()[g.slot_of_mode(-k)];
            assert_eq!(pos, -neg);
        }
    }

    #[test]
    fn constant_field_is_pure_zero_mode() {
        let g = Grid1D::new(32, 10.0).unwrap();
        let spec = Field::from_real_fn(&g, |_| 1.0).to_spectral().unwrap();
        for (slot, c) in spec.values().iter().enumerate() {
            if slot == 0 {
                assert!((c.re - (32f64).sqrt()).abs() < 1e-12);
            } else {
                assert!(c.norm() < 1e-13);
            }
        }
    }

    #[test]
    fn single_mode_has_one_coefficient() {
        let g = Grid1D::new(64, 20.0).unwrap();
        let spec = Field::mode(&g, 3).to_spectral().unwrap();
        let target = g.slot_of_mode(3);
        for (slot, c) in spec.values().iter().enumerate() {
            if slot == target {
                assert!(c.norm() > 1.0);
            } else {
                assert!(c.norm() < 1e-12, "slot {slot}: {c}");
            }
        }
    }

    #[test]
    fn representation_mismatch_is_reported() {
        let g = Grid1D::new(16, 1.0).unwrap();
        let f = Field::zeros(&g);
        assert!(matches!(f.to_physical(), Err(Error::RepresentationMismatch { .. })));
        let s = f.to_spectral().unwrap();
        assert!(matches!(s.to_spectral(), Err(Error::RepresentationMismatch { .. })));
    }

    #[test]
    fn round_trip_and_parseval() {
        let g = Grid1D::new(1024, 100.0).unwrap();
        for seed in 0..4 {
            let f = random_field(&g, seed);
            let spec = f.to_spectral().unwrap();
            let back = spec.to_physical().unwrap();
            assert!(rel_diff(&back, &f) < 1e-12);
            let direct = (g.spacing() * spec.values().iter().map(|c| c.norm_sqr()).sum::<f64>()).sqrt();
            let phys = (g.spacing() * f.values().iter().map(|c| c.norm_sqr()).sum::<f64>()).sqrt();
            assert!((direct - phys).abs() / phys < 1e-12);
        }
    }

    #[test]
    fn transform_is_linear() {
        let g = Grid1D::new(256, 30.0).unwrap();
        let f = random_field(&g, 11);
        let h = random_field(&g, 12);
        let a = Complex64::new(0.3, -1.2);
        let b = Complex64::new(2.0, 0.5);
        let lhs = f.scaled(a).add(&h.scaled(b)).unwrap().into_spectral();
        let rhs = f
            .to_spectral()
            .unwrap()
            .scaled(a)
            .add(&h.to_spectral().unwrap().scaled(b))
            .unwrap();
        assert!(rel_diff(&lhs, &rhs) < 1e-12);
    }

    #[test]
    fn derivative_of_lattice_sine() {
        let g = Grid1D::new(128, 17.0).unwrap();
        let xi1 = TAU / 17.0;
        let f = Field::from_real_fn(&g, |x| (xi1 * x).sin());
        let df = spectral_derivative(&f, 1).unwrap();
        assert_eq!(df.representation(), Representation::Physical);
        for (j, c) in df.values().iter().enumerate() {
            let exact = xi1 * (xi1 * g.x(j)).cos();
            assert!((c.re - exact).abs() < 1e-10 && c.im.abs() < 1e-10);
        }
    }

    #[test]
    fn derivative_of_constant_vanishes() {
        let g = Grid1D::new(64, 5.0).unwrap();
        let f = Field::from_real_fn(&g, |_| 2.5);
        for order in 1..=5 {
            assert!(spectral_derivative(&f, order).unwrap().max_abs() < 1e-12);
        }
    }

    #[test]
    fn second_derivative_of_gaussian() {
        let g = Grid1D::new(1024, 100.0).unwrap();
        let f = Field::from_real_fn(&g, |x| (-x * x).exp());
        let d2 = spectral_derivative(&f, 2).unwrap();
        let err = d2
            .values()
            .iter()
            .enumerate()
            .map(|(j, c)| {
                let x = g.x(j);
                (c - Complex64::new((4.0 * x * x - 2.0) * (-x * x).exp(), 0.0)).norm()
            })
            .fold(0.0, f64::max);
        assert!(err < 1e-8, "{err}");
    }

    #[test]
    fn unsupported_orders_rejected() {
        let g = Grid1D::new(16, 1.0).unwrap();
        let f = Field::zeros(&g);
        assert!(matches!(spectral_derivative(&f, 0), Err(Error::UnsupportedOrder(0))));
        assert!(matches!(spectral_derivative(&f, 6), Err(Error::UnsupportedOrder(6))));
    }

    #[test]
    fn first_derivative_twice_equals_second() {
        let g = Grid1D::new(256, 40.0).unwrap();
        let f = dealias(&random_field(&g, 5));
        let twice = spectral_derivative(&spectral_derivative(&f, 1).unwrap(), 1).unwrap();
        let once = spectral_derivative(&f, 2).unwrap();
        let scale = once.max_abs();
        assert!(twice.sub(&once).unwrap().max_abs() / scale < 1e-10);
    }

    #[test]
    fn odd_derivative_keeps_real_fields_real() {
        let g = Grid1D::new(128, 10.0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let f = Field::from_real_fn(&g, |_| rng_value(&mut rng));
        for order in [1, 3, 5] {
            assert!(spectral_derivative(&f, order).unwrap().imaginary_ratio() < 1e-12);
        }
    }

    fn rng_value(rng: &mut ChaCha8Rng) -> f64 {
        rng.gen_range(-1.0..1.0)
    }

    #[test]
    fn dealias_keeps_low_and_removes_high_modes() {
        let g = Grid1D::new(128, 12.0).unwrap();
        let low = Field::mode(&g, 1);
        assert!(rel_diff(&dealias(&low), &low) < 1e-14);
        let high = Field::mode(&g, g.n_points() as i64 / 2 - 1);
        assert!(dealias(&high).max_abs() < 1e-13);
    }

    #[test]
    fn dealiased_product_matches_fine_grid_oracle() {
        let n = 64;
        let g = Grid1D::new(n, 9.0).unwrap();
        let fine = Grid1D::new(2 * n, 9.0).unwrap();
        let cutoff = g.dealias_cutoff();
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        // band-limited random coefficients on |k| <= N/3
        let coeffs: Vec<(i64, Complex64, Complex64)> = (-cutoff..=cutoff)
            .map(|k| {
                (
                    k,
                    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
                    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
                )
            })
            .collect();
        let synth = |grid: &Grid1D, which: usize| {
            Field::from_fn(grid, |x| {
                coeffs
                    .iter()
                    .map(|&(k, a, b)| {
                        let c = if which == 0 { a } else { b };
                        c * Complex64::from_polar(1.0, TAU * k as f64 * (x + 4.5) / 9.0)
                    })
                    .sum()
            })
        };
        let product = dealiased_product(&synth(&g, 0), &synth(&g, 1)).unwrap();
        // exact product on the fine grid, then restrict to |k| <= N/3
        let exact = synth(&fine, 0).pointwise_mul(&synth(&fine, 1)).unwrap().into_spectral();
        let coarse_spec = product.into_spectral();
        let ratio = (n as f64 / (2 * n) as f64).sqrt();
        let mut err: f64 = 0.0;
        let mut scale: f64 = 0.0;
        for k in -(n as i64) / 2..(n as i64) / 2 {
            let c = coarse_spec.values()[g.slot_of_mode(k)];
            let e = if k.abs() <= cutoff {
                exact.values()[fine.slot_of_mode(k)] * ratio
            } else {
                Complex64::new(0.0, 0.0)
            };
            err = err.max((c - e).norm());
            scale = scale.max(e.norm());
        }
        assert!(err / scale < 1e-12, "{}", err / scale);
    }
}
