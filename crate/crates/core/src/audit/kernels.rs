//! Reduced kernel integrals of the two bilinear estimates, their running
//! suprema over a dyadic `(ξ, τ)` lattice, and the unreduced 2-D integrals
//! used to cross-check the reduction.
//!
//! Schrödinger–KdV product (`uv` in `X^{s+a,−b}`):
//!
//! ```text
//! K_S(ξ,τ) = ⟨ξ⟩^{2a} / ⟨τ+ξ²⟩^{2b} ∫ dξ₁ / (⟨τ+(ξ−ξ₁)⁵+ξ₁²⟩^{4b−1} ⟨ξ₁⟩^{2β})
//! ```
//!
//! Derivative product in `Y` (`∂ₓ(u ū)`, `∂ₓ(v²)`):
//!
//! ```text
//! K_V(ξ,τ) = |ξ|²⟨ξ⟩^{2a} / ⟨τ+ξ⁵⟩^{2b}
//!            ∫ dξ₁ / (⟨ξ−ξ₁⟩^{2β} ⟨τ+ξ₁²+(ξ−ξ₁)²⟩^{4b−1} ⟨ξ₁⟩^{2β})
//! ```

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::norms::japanese;
use crate::quadrature::{integrate, integrate_tail, QuadOptions, QuadResult};

/// Relative growth of the running supremum over the last dyadic `|ξ|`-range
/// below which the supremum counts as stabilized.
pub const STABILIZATION_TOL: f64 = 0.01;

/// Smallest `quad_points` a query may request.
pub const MIN_QUAD_POINTS: usize = 64;

/// Which bilinear kernel to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KernelKind {
    Schrodinger,
    Kdv5,
}

impl KernelKind {
    /// Dispersion `σ(ξ)` of the output variable: `ξ²` or `ξ⁵`.
    pub fn output_symbol(self, xi: f64) -> f64 {
        match self {
            KernelKind::Schrodinger => xi * xi,
            KernelKind::Kdv5 => xi.powi(5),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            KernelKind::Schrodinger => "schrodinger",
            KernelKind::Kdv5 => "kdv5",
        }
    }
}

/// Exponents and evaluation lattice of a kernel audit.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KernelQuery {
    pub a: f64,
    pub beta: f64,
    pub b: f64,
    /// Sweep covers `|ξ| ≤ xi_max`.
    pub xi_max: f64,
    /// Smallest nonzero `|ξ|` of the dyadic lattice.
    pub xi_min: f64,
    /// Lattice points per octave in `|ξ|`.
    pub points_per_octave: usize,
    /// `τ = −σ(ξ)(1 + θ)` with `θ ∈ [−theta_range, theta_range]`.
    pub theta_range: f64,
    /// Number of `θ` samples (made odd so that `θ = 0` is included).
    pub theta_points: usize,
    /// Initial panels of the `ξ₁` quadrature window.
    pub quad_points: usize,
    /// Evaluate even when the exponents violate the estimate's hypotheses.
    pub allow_inadmissible: bool,
}

impl KernelQuery {
    pub fn new(a: f64, beta: f64, b: f64) -> Self {
        KernelQuery {
            a,
            beta,
            b,
            xi_max: 50.0,
            xi_min: 0.125,
            points_per_octave: 8,
            theta_range: 0.5,
            theta_points: 11,
            quad_points: MIN_QUAD_POINTS,
            allow_inadmissible: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.quad_points < MIN_QUAD_POINTS {
            return Err(Error::InvalidParameter(format!(
                "quad_points must be at least {MIN_QUAD_POINTS}, got {}",
                self.quad_points
            )));
        }
        let finite = [self.a, self.beta, self.b, self.xi_max, self.xi_min, self.theta_range]
            .iter()
            .all(|x| x.is_finite());
        if !finite || !(self.xi_max > self.xi_min && self.xi_min > 0.0) || self.theta_range < 0.0 {
            return Err(Error::InvalidParameter(
                "kernel lattice ranges must be finite and ordered".into(),
            ));
        }
        if self.points_per_octave == 0 || self.theta_points == 0 {
            return Err(Error::InvalidParameter("lattice point counts must be positive".into()));
        }
        Ok(())
    }

    /// Hypotheses of the estimate behind `kind`, as violated statements.
    pub fn hypothesis_violations(&self, kind: KernelKind) -> Vec<String> {
        let (a, beta, b) = (self.a, self.beta, self.b);
        let mut v = Vec::new();
        match kind {
            KernelKind::Schrodinger => {
                if !(b > 0.45 && b < 0.5) {
                    v.push(format!("9/20 < b < 1/2 violated (b = {b})"));
                }
                if !(beta > 0.5 && beta < a) {
                    v.push(format!("1/2 < beta < a violated (beta = {beta}, a = {a})"));
                }
                let cap = 2.5 * b - 0.625;
                if a > cap + 1e-12 {
                    v.push(format!("a <= 5b/2 - 5/8 = {cap} violated (a = {a})"));
                }
            }
            KernelKind::Kdv5 => {
                if !(b > 0.375 && b < 0.5) {
                    v.push(format!("3/8 < b < 1/2 violated (b = {b})"));
                }
                let cap = 2.0 * b - 0.25;
                if !(beta > 0.5 && beta <= cap + 1e-12) {
                    v.push(format!("1/2 < beta <= 2b - 1/4 = {cap} violated (beta = {beta})"));
                }
                let a_cap = 5.0 * beta - 2.25;
                if !(a >= 0.0 && a <= a_cap + 1e-12) {
                    v.push(format!("0 <= a <= 5 beta - 9/4 = {a_cap} violated (a = {a})"));
                }
            }
        }
        v
    }

    fn gate(&self, kind: KernelKind) -> Result<()> {
        self.validate()?;
        let v = self.hypothesis_violations(kind);
        if !v.is_empty() && !self.allow_inadmissible {
            return Err(Error::Inadmissible(v));
        }
        Ok(())
    }

    fn quad_options(&self) -> QuadOptions {
        QuadOptions {
            abs_tol: 0.0,
            rel_tol: 1e-9,
            max_intervals: 50_000,
            initial_panels: 1,
        }
    }
}

/// Real roots of `p` on `[lo, hi]` located by sign changes on `samples`
/// equal cells and refined by bisection.
pub(crate) fn real_roots(p: impl Fn(f64) -> f64, lo: f64, hi: f64, samples: usize) -> Vec<f64> {
    let h = (hi - lo) / samples as f64;
    let mut roots = Vec::new();
    let mut x0 = lo;
    let mut f0 = p(x0);
    for i in 1..=samples {
        let x1 = lo + i as f64 * h;
        let f1 = p(x1);
        if f0 == 0.0 {
            roots.push(x0);
        } else if f0.signum() != f1.signum() && f1 != 0.0 {
            let (mut a, mut b, mut fa) = (x0, x1, f0);
            for _ in 0..200 {
                let m = 0.5 * (a + b);
                if m <= a || m >= b {
                    break;
                }
                let fm = p(m);
                if fm == 0.0 {
                    a = m;
                    b = m;
                    break;
                }
                if fm.signum() == fa.signum() {
                    a = m;
                    fa = fm;
                } else {
                    b = m;
                }
            }
            roots.push(0.5 * (a + b));
        }
        x0 = x1;
        f0 = f1;
    }
    roots
}

/// `∫_ℝ f` on the window `[−r, r]` pre-split at `breaks` and into
/// `panels` equal pieces, plus log-substituted tails.
fn integrate_window(
    f: &(dyn Fn(f64) -> f64 + Sync),
    r: f64,
    breaks: &[f64],
    panels: usize,
    opts: &QuadOptions,
) -> Result<QuadResult> {
    let mut cuts: Vec<f64> = (0..=panels).map(|i| -r + 2.0 * r * i as f64 / panels as f64).collect();
    cuts.extend(breaks.iter().copied().filter(|x| x.abs() < r));
    let core = integrate(f, -r, r, &cuts, opts)?;
    let right = integrate_tail(f, r, opts)?;
    let left = integrate_tail(|x| f(-x), r, opts)?;
    Ok(QuadResult {
        value: core.value + right.value + left.value,
        error: core.error + right.error + left.error,
        evaluations: core.evaluations + right.evaluations + left.evaluations,
    })
}

fn schrodinger_phase(xi: f64, tau: f64, x1: f64) -> f64 {
    tau + (xi - x1).powi(5) + x1 * x1
}

fn kdv5_phase(xi: f64, tau: f64, x1: f64) -> f64 {
    tau + x1 * x1 + (xi - x1) * (xi - x1)
}

fn prefactor(kind: KernelKind, q: &KernelQuery, xi: f64, tau: f64) -> f64 {
    let resonance = japanese(tau + kind.output_symbol(xi)).powf(-2.0 * q.b);
    match kind {
        KernelKind::Schrodinger => japanese(xi).powf(2.0 * q.a) * resonance,
        KernelKind::Kdv5 => xi * xi * japanese(xi).powf(2.0 * q.a) * resonance,
    }
}

fn window_radius(kind: KernelKind, xi: f64, tau: f64) -> f64 {
    match kind {
        KernelKind::Schrodinger => 2.0 * (xi.abs() + tau.abs().powf(0.2)) + 4.0,
        KernelKind::Kdv5 => 2.0 * (xi.abs() + tau.abs().sqrt()) + 4.0,
    }
}

fn kernel_breaks(kind: KernelKind, xi: f64, tau: f64, r: f64) -> Vec<f64> {
    let mut breaks = match kind {
        KernelKind::Schrodinger => real_roots(|x| schrodinger_phase(xi, tau, x), -r, r, 4096),
        KernelKind::Kdv5 => real_roots(|x| kdv5_phase(xi, tau, x), -r, r, 4096),
    };
    breaks.push(0.0);
    breaks.push(xi);
    breaks
}

/// Reduced kernel value at `(ξ, τ)` without the hypothesis gate.
fn reduced_value(kind: KernelKind, q: &KernelQuery, xi: f64, tau: f64) -> Result<f64> {
    let pre = prefactor(kind, q, xi, tau);
    if pre == 0.0 {
        return Ok(0.0);
    }
    let (b, beta) = (q.b, q.beta);
    let f = move |x1: f64| -> f64 {
        match kind {
            KernelKind::Schrodinger => {
                japanese(schrodinger_phase(xi, tau, x1)).powf(1.0 - 4.0 * b) * japanese(x1).powf(-2.0 * beta)
            }
            KernelKind::Kdv5 => {
                japanese(kdv5_phase(xi, tau, x1)).powf(1.0 - 4.0 * b)
                    * japanese(x1).powf(-2.0 * beta)
                    * japanese(xi - x1).powf(-2.0 * beta)
            }
        }
    };
    let r = window_radius(kind, xi, tau);
    let breaks = kernel_breaks(kind, xi, tau, r);
    let integral = integrate_window(&f, r, &breaks, q.quad_points, &q.quad_options())?;
    Ok(pre * integral.value)
}

/// Reduced Schrödinger-product kernel `K_S(ξ, τ)`.
pub fn schrodinger_kernel(q: &KernelQuery, xi: f64, tau: f64) -> Result<f64> {
    q.gate(KernelKind::Schrodinger)?;
    reduced_value(KernelKind::Schrodinger, q, xi, tau)
}

/// Reduced derivative-product kernel `K_V(ξ, τ)`.
pub fn kdv5_kernel(q: &KernelQuery, xi: f64, tau: f64) -> Result<f64> {
    q.gate(KernelKind::Kdv5)?;
    reduced_value(KernelKind::Kdv5, q, xi, tau)
}

/// Running supremum of a kernel over the audit lattice.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KernelSup {
    pub kind: KernelKind,
    pub sup_value: f64,
    /// `(ξ, τ)` where the supremum is attained.
    pub argmax: (f64, f64),
    /// `(X, sup_{|ξ| ≤ X})` at the dyadic cut points `X = xi_max / 2^j`,
    /// ascending in `X`.
    pub running: Vec<(f64, f64)>,
    /// Relative growth of the running supremum over `[xi_max/2, xi_max]`.
    pub last_range_growth: f64,
    pub lattice_points: usize,
}

impl KernelSup {
    pub fn stabilized(&self, tol: f64) -> bool {
        self.last_range_growth < tol
    }
}

/// `τ` samples attached to a lattice frequency `ξ`.
fn tau_samples(kind: KernelKind, q: &KernelQuery, xi: f64) -> Vec<f64> {
    let sigma = kind.output_symbol(xi);
    let n = if q.theta_points.is_multiple_of(2) {
        q.theta_points + 1
    } else {
        q.theta_points
    };
    let mut taus: Vec<f64> = (0..n)
        .map(|i| {
            let theta = if n == 1 {
                0.0
            } else {
                -q.theta_range + 2.0 * q.theta_range * i as f64 / (n - 1) as f64
            };
            -sigma * (1.0 + theta)
        })
        .collect();
    for d in [-2.0, -1.0, -0.5, 0.5, 1.0, 2.0] {
        taus.push(-sigma + d);
    }
    for far in [-4.0, -2.0, 2.0, 4.0] {
        taus.push(-sigma * (1.0 + far));
    }
    for t in [0.0, -10.0, 10.0] {
        taus.push(t);
    }
    taus
}

/// Nonnegative lattice magnitudes `xi_max·2^{−i/ppo}` down to `xi_min`, and 0.
fn xi_magnitudes(q: &KernelQuery) -> Vec<f64> {
    let mut mags = vec![0.0];
    let mut i = 0;
    loop {
        let x = q.xi_max * 2f64.powf(-(i as f64) / q.points_per_octave as f64);
        if x < q.xi_min {
            break;
        }
        mags.push(x);
        i += 1;
    }
    mags
}

fn kernel_sup(kind: KernelKind, q: &KernelQuery) -> Result<KernelSup> {
    q.gate(kind)?;
    let mut points = Vec::new();
    for m in xi_magnitudes(q) {
        let signs: &[f64] = if m == 0.0 { &[1.0] } else { &[1.0, -1.0] };
        for &s in signs {
            let xi = s * m;
            for tau in tau_samples(kind, q, xi) {
                points.push((xi, tau));
            }
        }
    }
    let values = points
        .par_iter()
        .map(|&(xi, tau)| reduced_value(kind, q, xi, tau))
        .collect::<Result<Vec<f64>>>()?;

    let mut cuts = Vec::new();
    let mut x = q.xi_max;
    while x >= q.xi_min {
        cuts.push(x);
        x *= 0.5;
    }
    cuts.reverse();
    let running: Vec<(f64, f64)> = cuts
        .iter()
        .map(|&cut| {
            let sup = points
                .iter()
                .zip(&values)
                .filter(|((xi, _), _)| xi.abs() <= cut * (1.0 + 1e-12))
                .map(|(_, &v)| v)
                .fold(0.0, f64::max);
            (cut, sup)
        })
        .collect();

    let (best, &sup_value) = values
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .ok_or_else(|| Error::InvalidParameter("empty kernel lattice".into()))?;
    let last_range_growth = if running.len() >= 2 {
        let (prev, last) = (running[running.len() - 2].1, running[running.len() - 1].1);
        if prev > 0.0 {
            (last - prev) / prev
        } else if last > 0.0 {
            f64::INFINITY
        } else {
            0.0
        }
    } else {
        0.0
    };
    Ok(KernelSup {
        kind,
        sup_value,
        argmax: points[best],
        running,
        last_range_growth,
        lattice_points: points.len(),
    })
}

/// Running supremum of `K_S` over the lattice.
pub fn schrodinger_kernel_sup(q: &KernelQuery) -> Result<KernelSup> {
    kernel_sup(KernelKind::Schrodinger, q)
}

/// Running supremum of `K_V` over the lattice.
pub fn kdv5_kernel_sup(q: &KernelQuery) -> Result<KernelSup> {
    kernel_sup(KernelKind::Kdv5, q)
}

/// `∫_ℝ dτ₁ ⟨τ₁ − c₁⟩^{−2b} ⟨τ₁ − c₂⟩^{−2b}`.
///
/// With `d = |c₂ − c₁|` and the reflection `y → d − y` this is
/// `2 (∫_0^{d/2} ⟨y⟩^{−2b} ⟨d − y⟩^{−2b} + ∫_0^∞ ⟨y⟩^{−2b} ⟨d + y⟩^{−2b})`, evaluated in
/// `y = e^u − 1` so that separations of any size stay resolved.
fn tau_integral(c1: f64, c2: f64, b: f64, opts: &QuadOptions) -> Result<f64> {
    let d = (c2 - c1).abs();
    if !d.is_finite() {
        return Ok(0.0);
    }
    let p = -2.0 * b;
    let log_sub = |h: &dyn Fn(f64) -> f64, upper: f64| -> Result<f64> {
        let g = |u: f64| {
            let e = u.exp();
            h(e - 1.0) * e
        };
        Ok(integrate(g, 0.0, upper.ln_1p(), &[], opts)?.value)
    };
    let inner = |y: f64| japanese(y).powf(p) * japanese(d - y).powf(p);
    let outer = |y: f64| japanese(y).powf(p) * japanese(d + y).powf(p);
    let knee = d.max(1.0);
    let near = log_sub(&inner, 0.5 * d)?;
    let far = log_sub(&outer, knee)? + integrate_tail(outer, knee, opts)?.value;
    Ok(2.0 * (near + far))
}

/// Unreduced and reduced values at one `(ξ, τ)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TwoRoute {
    pub xi: f64,
    pub tau: f64,
    pub full: f64,
    pub reduced: f64,
    pub ratio: f64,
}

/// Evaluates the kernel both as the nested `(ξ₁, τ₁)` integral and in
/// reduced form.
pub fn two_route(kind: KernelKind, q: &KernelQuery, xi: f64, tau: f64) -> Result<TwoRoute> {
    q.gate(kind)?;
    let reduced = reduced_value(kind, q, xi, tau)?;
    let pre = prefactor(kind, q, xi, tau);
    let inner_opts = QuadOptions {
        abs_tol: 0.0,
        rel_tol: 1e-8,
        max_intervals: 20_000,
        initial_panels: 1,
    };
    let (b, beta) = (q.b, q.beta);
    let outer = |x1: f64| -> f64 {
        let (c1, c2, weight) = match kind {
            KernelKind::Schrodinger => (-x1 * x1, tau + (xi - x1).powi(5), japanese(x1).powf(-2.0 * beta)),
            KernelKind::Kdv5 => (
                -x1 * x1,
                tau + (xi - x1).powi(2),
                japanese(x1).powf(-2.0 * beta) * japanese(xi - x1).powf(-2.0 * beta),
            ),
        };
        weight * tau_integral(c1, c2, b, &inner_opts).unwrap_or(f64::NAN)
    };
    let r = window_radius(kind, xi, tau);
    let breaks = kernel_breaks(kind, xi, tau, r);
    let outer_opts = QuadOptions {
        rel_tol: 1e-6,
        ..q.quad_options()
    };
    let full = pre * integrate_window(&outer, r, &breaks, q.quad_points, &outer_opts)?.value;
    Ok(TwoRoute {
        xi,
        tau,
        full,
        reduced,
        ratio: full / reduced,
    })
}
