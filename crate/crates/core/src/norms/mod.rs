//! Discrete Sobolev, Hölder, Bourgain-space and spectral-tail diagnostics.
//!
//! Throughout, `⟨x⟩ = 1 + |x|`.

mod bourgain;
mod budget;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectral::{spectral_derivative, Field};

pub use bourgain::{bourgain_norm, SpaceTimeField};
pub use budget::{Admissibility, RegularityBudget};

/// `⟨x⟩ = 1 + |x|`.
#[inline]
pub fn japanese(x: f64) -> f64 {
    1.0 + x.abs()
}

/// `‖f‖_{H^s} = (Σ_k ⟨ξ_k⟩^{2s} |f̂(ξ_k)|² 2π/L)^{1/2}` with the unitary
/// continuous Fourier transform.
pub fn sobolev_norm(f: &Field, s: f64) -> f64 {
    let spec = f.clone().into_spectral();
    let dx = f.grid().spacing();
    let sum: f64 = spec
        .values()
        .iter()
        .zip(f.grid().wavenumbers())
        .map(|(c, &xi)| japanese(xi).powf(2.0 * s) * c.norm_sqr())
        .sum();
    (dx * sum).sqrt()
}

/// Largest Hölder difference quotient and where it occurs.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HolderEstimate {
    pub value: f64,
    /// Midpoint of the maximizing pair.
    pub argmax_x: f64,
    /// Lag of the maximizing pair, in grid points.
    pub lag: usize,
}

/// `max_{1 ≤ m ≤ window} max_j |f^{(k)}(x_j + m dx) − f^{(k)}(x_j)| / (m dx)^α`
/// with periodic pairing and a spectral derivative.
pub fn holder_estimate(f: &Field, k: u32, alpha: f64, window: usize) -> Result<HolderEstimate> {
    if k > 1 {
        return Err(Error::InvalidParameter(format!(
            "Hölder order k must be 0 or 1, got {k}"
        )));
    }
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "Hölder exponent must lie in (0, 1], got {alpha}"
        )));
    }
    let grid = f.grid();
    let n = grid.n_points();
    if window == 0 || window >= n / 2 {
        return Err(Error::InvalidParameter(format!(
            "window must lie in 1..{}, got {window}",
            n / 2
        )));
    }
    let g = if k == 1 { spectral_derivative(f, 1)? } else { f.clone() };
    let values = g.into_physical().into_values();
    let dx = grid.spacing();

    let mut best = HolderEstimate {
        value: 0.0,
        argmax_x: grid.x(0),
        lag: 1,
    };
    for m in 1..=window {
        let denom = (m as f64 * dx).powf(alpha);
        let (mut top, mut at) = (0.0, 0);
        for j in 0..n {
            let d = (values[(j + m) % n] - values[j]).norm();
            if d > top {
                top = d;
                at = j;
            }
        }
        let q = top / denom;
        if q > best.value {
            let mid = grid.x(at) + 0.5 * m as f64 * dx;
            let half = 0.5 * grid.box_length();
            best = HolderEstimate {
                value: q,
                argmax_x: (mid + half).rem_euclid(grid.box_length()) - half,
                lag: m,
            };
        }
    }
    Ok(best)
}

/// The Hölder seminorm value alone; see [`holder_estimate`].
pub fn holder_seminorm(f: &Field, k: u32, alpha: f64, window: usize) -> Result<f64> {
    Ok(holder_estimate(f, k, alpha, window)?.value)
}

/// Default Hölder window, `N/8` grid points.
pub fn default_window(f: &Field) -> usize {
    f.grid().n_points() / 8
}

/// Power-law fit `|f̂(ξ)| ~ |ξ|^p` over a frequency band.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TailFit {
    pub slope: f64,
    /// Sobolev-exponent proxy `−p − 1/2`.
    pub proxy: f64,
    /// `(geometric band centre, RMS amplitude)` per sub-band.
    pub bands: Vec<(f64, f64)>,
}

/// Sub-bands per octave used by [`tail_regularity`].
pub const BANDS_PER_OCTAVE: usize = 2;

/// Relative amplitude below which a band counts as empty.
pub const TAIL_FLOOR: f64 = 1e-13;

/// Fits the decay exponent of `|f̂|` on `lo ≤ |ξ| ≤ hi`.
///
/// The band is split into half-octave sub-bands; the RMS amplitude of each is
/// regressed on the log of its geometric centre by least squares.
pub fn tail_regularity(f: &Field, lo: f64, hi: f64) -> Result<TailFit> {
    if !(lo > 0.0 && hi > lo && hi <= f.grid().max_abs_frequency()) {
        return Err(Error::InvalidParameter(format!(
            "band [{lo}, {hi}] must satisfy 0 < lo < hi <= {}",
            f.grid().max_abs_frequency()
        )));
    }
    if hi / lo < 2.0 {
        return Err(Error::BandTooNarrow { lo, hi });
    }
    let spec = f.clone().into_spectral();
    let peak = spec.values().iter().map(|c| c.norm()).fold(0.0, f64::max);
    let count = ((hi / lo).log2() * BANDS_PER_OCTAVE as f64).floor() as usize;
    let ratio = (hi / lo).powf(1.0 / count as f64);

    let mut bands = Vec::with_capacity(count);
    for i in 0..count {
        let a = lo * ratio.powi(i as i32);
        let b = a * ratio;
        let (mut sum, mut n) = (0.0, 0usize);
        for (c, &xi) in spec.values().iter().zip(f.grid().wavenumbers()) {
            let ax = xi.abs();
            let inside = ax >= a && (ax < b || (i + 1 == count && ax <= b));
            if inside {
                sum += c.norm_sqr();
                n += 1;
            }
        }
        if n == 0 {
            return Err(Error::BandTooNarrow { lo, hi });
        }
        let rms = (sum / n as f64).sqrt();
        if peak == 0.0 || rms <= TAIL_FLOOR * peak {
            return Err(Error::NoSpectralTail { lo, hi });
        }
        bands.push(((a * b).sqrt(), rms));
    }

    let pts: Vec<(f64, f64)> = bands.iter().map(|&(c, r)| (c.ln(), r.ln())).collect();
    let m = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / m;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / m;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let slope = sxy / sxx;
    Ok(TailFit {
        slope,
        proxy: -slope - 0.5,
        bands,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::Grid1D;
    use num_complex::Complex64;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn sobolev_zero_is_l2() {
        let g = Grid1D::new(512, 40.0).unwrap();
        let f = Field::from_fn(&g, |x| {
            Complex64::new((-x * x).exp(), (x / 3.0).sin() * (-x * x / 8.0).exp())
        });
        assert!((sobolev_norm(&f, 0.0) - f.l2_norm()).abs() <= 1e-12 * f.l2_norm());
    }

    #[test]
    fn sobolev_single_mode() {
        let g = Grid1D::new(128, 30.0).unwrap();
        let f = Field::mode(&g, 5);
        let xi = std::f64::consts::TAU * 5.0 / 30.0;
        for s in [0.5, 1.0, 2.3] {
            let expected = japanese(xi).powf(s) * f.l2_norm();
            assert!((sobolev_norm(&f, s) - expected).abs() <= 1e-12 * expected);
        }
    }

    #[test]
    fn sobolev_gaussian_matches_quadrature() {
        // ĝ(ξ) = e^{-ξ²/4}/√2 for g = e^{-x²} (unitary transform). The lattice
        // sum has an O((2π/L)²) error from the kink of ⟨ξ⟩ at 0, hence the long box.
        let g = Grid1D::new(8192, 2048.0).unwrap();
        let f = Field::from_real_fn(&g, |x| (-x * x).exp());
        let n = 200_000;
        let h = 40.0 / n as f64;
        let integrand = |xi: f64| (1.0 + xi.abs()).powi(2) * 0.5 * (-xi * xi / 2.0).exp();
        let mut integral = 0.5 * (integrand(-20.0) + integrand(20.0));
        for i in 1..n {
            integral += integrand(-20.0 + i as f64 * h);
        }
        let expected = (integral * h).sqrt();
        assert!((sobolev_norm(&f, 1.0) - expected).abs() < 1e-6);
    }

    #[test]
    fn holder_of_constant_vanishes() {
        let g = Grid1D::new(256, 20.0).unwrap();
        let f = Field::from_real_fn(&g, |_| 3.0);
        for k in [0, 1] {
            for alpha in [0.3, 1.0] {
                assert!(holder_seminorm(&f, k, alpha, 32).unwrap() < 1e-12);
            }
        }
    }

    #[test]
    fn holder_of_hat_is_its_slope() {
        let g = Grid1D::new(2048, 100.0).unwrap();
        let f = Field::from_real_fn(&g, |x| (5.0 - x.abs()).max(0.0));
        let h = holder_seminorm(&f, 0, 1.0, 256).unwrap();
        assert!((h - 1.0).abs() <= 0.02, "{h}");
    }

    #[test]
    fn kink_derivative_diverges_while_gaussian_converges() {
        let quotient = |n: usize, f: fn(f64) -> f64| {
            let g = Grid1D::new(n, 40.0).unwrap();
            let field = Field::from_real_fn(&g, f);
            holder_estimate(&field, 1, 1.0, n / 8).unwrap()
        };
        let kink = |x: f64| (-2.0 * x.abs()).exp();
        let gauss = |x: f64| (-x * x).exp();
        let (k1, k2) = (quotient(1024, kink), quotient(2048, kink));
        let (g1, g2) = (quotient(1024, gauss), quotient(2048, gauss));
        assert!(k2.value / k1.value > 1.8);
        assert!(k2.argmax_x.abs() < 2.0 * 40.0 / 2048.0);
        assert!((g2.value / g1.value - 1.0).abs() < 0.01);
    }

    #[test]
    fn holder_rejects_bad_arguments() {
        let g = Grid1D::new(64, 10.0).unwrap();
        let f = Field::zeros(&g);
        assert!(holder_seminorm(&f, 2, 0.5, 4).is_err());
        assert!(holder_seminorm(&f, 0, 0.0, 4).is_err());
        assert!(holder_seminorm(&f, 0, 1.5, 4).is_err());
        assert!(holder_seminorm(&f, 0, 0.5, 0).is_err());
        assert!(holder_seminorm(&f, 0, 0.5, 32).is_err());
    }

    #[test]
    fn kink_tail_has_slope_minus_two() {
        let g = Grid1D::new(16384, 100.0).unwrap();
        let f = Field::from_real_fn(&g, |x| (-2.0 * x.abs()).exp());
        let fit = tail_regularity(&f, 10.0, 40.0).unwrap();
        assert!((fit.slope + 2.0).abs() < 0.05, "{}", fit.slope);
        assert!((fit.proxy - 1.5).abs() < 0.05);
    }

    #[test]
    fn band_limited_field_has_no_tail() {
        let g = Grid1D::new(256, 20.0).unwrap();
        let f = Field::mode(&g, 3);
        assert!(matches!(
            tail_regularity(&f, 5.0, 30.0),
            Err(Error::NoSpectralTail { .. })
        ));
        assert!(matches!(
            tail_regularity(&f, 5.0, 9.0),
            Err(Error::BandTooNarrow { .. })
        ));
    }

    fn random_field(seed: u64) -> Field {
        let g = Grid1D::new(128, 25.0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Field::physical(
            &g,
            (0..128)
                .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect(),
        )
        .unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn sobolev_monotone_in_s(seed in 0u64..500, s1 in 0.0f64..3.0, ds in 0.0f64..2.0) {
            let f = random_field(seed);
            prop_assert!(sobolev_norm(&f, s1) <= sobolev_norm(&f, s1 + ds) * (1.0 + 1e-14));
        }

        #[test]
        fn holder_is_absolutely_homogeneous(seed in 0u64..500, re in -3.0f64..3.0, im in -3.0f64..3.0, alpha in 0.05f64..1.0) {
            let f = random_field(seed);
            let c = Complex64::new(re, im);
            let lhs = holder_seminorm(&f.scaled(c), 0, alpha, 16).unwrap();
            let rhs = c.norm() * holder_seminorm(&f, 0, alpha, 16).unwrap();
            prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs.max(1e-300));
        }
    }
}
