//! Globally adaptive Gauss–Kronrod (7/15) quadrature on finite intervals and
//! on half-lines via the substitution `x = X e^u`.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];

const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_intervals: usize,
    /// Equal panels each user interval is split into before adapting.
    pub initial_panels: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        QuadOptions {
            abs_tol: 1e-14,
            rel_tol: 1e-10,
            max_intervals: 20_000,
            initial_panels: 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub error: f64,
    pub evaluations: usize,
}

struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn kronrod<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Panel {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = WGK[7] * fc;
    let mut g = WG[3] * fc;
    for i in 0..7 {
        let dx = h * XGK[i];
        let s = f(c - dx) + f(c + dx);
        k += WGK[i] * s;
        if i % 2 == 1 {
            g += WG[i / 2] * s;
        }
    }
    Panel {
        a,
        b,
        value: k * h,
        error: ((k - g) * h).abs(),
    }
}

/// `∫_a^b f`, with the interval first split at `breakpoints` (those inside
/// `(a, b)`) and then into `initial_panels` equal pieces each.
pub fn integrate<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    breakpoints: &[f64],
    opts: &QuadOptions,
) -> Result<QuadResult> {
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::Quadrature(format!("non-finite limits [{a}, {b}]")));
    }
    if a == b {
        return Ok(QuadResult {
            value: 0.0,
            error: 0.0,
            evaluations: 0,
        });
    }
    let (lo, hi, sign) = if a < b { (a, b, 1.0) } else { (b, a, -1.0) };
    let mut cuts: Vec<f64> = breakpoints.iter().copied().filter(|&x| x > lo && x < hi).collect();
    cuts.push(lo);
    cuts.push(hi);
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();

    let panels_per = opts.initial_panels.max(1);
    let mut heap = BinaryHeap::new();
    let mut evaluations = 0;
    for w in cuts.windows(2) {
        let step = (w[1] - w[0]) / panels_per as f64;
        for i in 0..panels_per {
            let pa = w[0] + i as f64 * step;
            let pb = if i + 1 == panels_per { w[1] } else { pa + step };
            heap.push(kronrod(&f, pa, pb));
            evaluations += 15;
        }
    }

    let mut value: f64 = heap.iter().map(|p| p.value).sum();
    let mut error: f64 = heap.iter().map(|p| p.error).sum();
    loop {
        if !value.is_finite() || !error.is_finite() {
            return Err(Error::Quadrature("integrand produced a non-finite value".into()));
        }
        if error <= opts.abs_tol.max(opts.rel_tol * value.abs()) {
            return Ok(QuadResult {
                value: sign * value,
                error,
                evaluations,
            });
        }
        if heap.len() >= opts.max_intervals {
            return Err(Error::Quadrature(format!(
                "error estimate {error:.3e} above tolerance after {} intervals",
                heap.len()
            )));
        }
        let worst = heap.pop().expect("nonempty heap");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            return Err(Error::Quadrature("interval collapsed to machine precision".into()));
        }
        let left = kronrod(&f, worst.a, mid);
        let right = kronrod(&f, mid, worst.b);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        evaluations += 30;
        if heap.len() % 256 == 0 {
            value = heap.iter().map(|p| p.value).sum();
            error = heap.iter().map(|p| p.error).sum();
        }
    }
}

/// `∫_X^∞ f` for `X > 0` with `f` decaying at least like a power, through
/// `x = X e^u`; the `u`-range grows in blocks of length 8 until a block
/// contributes below tolerance.
pub fn integrate_tail<F: Fn(f64) -> f64>(f: F, x_start: f64, opts: &QuadOptions) -> Result<QuadResult> {
    if !(x_start > 0.0 && x_start.is_finite()) {
        return Err(Error::Quadrature(format!("tail start must be positive, got {x_start}")));
    }
    let g = |u: f64| {
        let x = x_start * u.exp();
        f(x) * x
    };
    let mut total = QuadResult {
        value: 0.0,
        error: 0.0,
        evaluations: 0,
    };
    let block = 8.0;
    let mut u = 0.0;
    while u < 700.0 {
        let part = integrate(g, u, u + block, &[], opts)?;
        total.value += part.value;
        total.error += part.error;
        total.evaluations += part.evaluations;
        u += block;
        if part.value.abs() <= opts.abs_tol.max(opts.rel_tol * total.value.abs()) {
            return Ok(total);
        }
    }
    Err(Error::Quadrature("tail integral did not decay".into()))
}

/// `∫_ℝ f`: adaptive on `[−X, X]` (split at `breakpoints`) plus both tails.
pub fn integrate_real_line<F: Fn(f64) -> f64>(
    f: F,
    x_cut: f64,
    breakpoints: &[f64],
    opts: &QuadOptions,
) -> Result<QuadResult> {
    let core = integrate(&f, -x_cut, x_cut, breakpoints, opts)?;
    let right = integrate_tail(&f, x_cut, opts)?;
    let left = integrate_tail(|x| f(-x), x_cut, opts)?;
    Ok(QuadResult {
        value: core.value + right.value + left.value,
        error: core.error + right.error + left.error,
        evaluations: core.evaluations + right.evaluations + left.evaluations,
    })
}
