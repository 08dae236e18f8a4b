//! Double-double arithmetic for dispersive phases.
//!
//! A fifth-order symbol reaches `t * xi^5 ~ 1e10` on ordinary grids, where a
//! plain `f64` product has already lost six digits of the phase. Phases are
//! therefore formed as unevaluated sums `hi + lo` and reduced modulo 2π before
//! the trigonometric call, which keeps `U(t1) U(t2) = U(t1 + t2)` at round-off.

use std::f64::consts::TAU;

use num_complex::Complex64;

/// Unevaluated sum `hi + lo` with `|lo| <= ulp(hi) / 2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DoubleDouble {
    pub hi: f64,
    pub lo: f64,
}

const TAU_LO: f64 = 2.449_293_598_294_706_4e-16;

#[inline]
fn two_sum(a: f64, b: f64) -> DoubleDouble {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    DoubleDouble { hi: s, lo: err }
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> DoubleDouble {
    let s = a + b;
    DoubleDouble { hi: s, lo: b - (s - a) }
}

#[inline]
fn two_prod(a: f64, b: f64) -> DoubleDouble {
    let p = a * b;
    DoubleDouble {
        hi: p,
        lo: a.mul_add(b, -p),
    }
}

impl DoubleDouble {
    pub fn from_f64(x: f64) -> Self {
        DoubleDouble { hi: x, lo: 0.0 }
    }

    /// Exact sum of two doubles.
    pub fn sum(a: f64, b: f64) -> Self {
        two_sum(a, b)
    }

    pub fn value(self) -> f64 {
        self.hi + self.lo
    }

    pub fn add(self, other: DoubleDouble) -> Self {
        let s = two_sum(self.hi, other.hi);
        let t = two_sum(self.lo, other.lo);
        let s = quick_two_sum(s.hi, s.lo + t.hi);
        quick_two_sum(s.hi, s.lo + t.lo)
    }

    pub fn neg(self) -> Self {
        DoubleDouble {
            hi: -self.hi,
            lo: -self.lo,
        }
    }

    pub fn mul(self, other: DoubleDouble) -> Self {
        let p = two_prod(self.hi, other.hi);
        let lo = p.lo + (self.hi * other.lo + self.lo * other.hi);
        quick_two_sum(p.hi, lo)
    }

    pub fn mul_f64(self, x: f64) -> Self {
        let p = two_prod(self.hi, x);
        quick_two_sum(p.hi, p.lo + self.lo * x)
    }

    /// Integer power by repeated multiplication; `n` is small here.
    pub fn powi(x: f64, n: u32) -> Self {
        let base = DoubleDouble::from_f64(x);
        let mut acc = DoubleDouble::from_f64(1.0);
        for _ in 0..n {
            acc = acc.mul(base);
        }
        acc
    }

    /// Reduce into `[-π, π]` using a two-word 2π.
    pub fn reduce_angle(self) -> Self {
        let n = (self.hi / TAU).round();
        if n == 0.0 {
            return self;
        }
        let p_hi = two_prod(n, TAU);
        let p = quick_two_sum(p_hi.hi, p_hi.lo + n * TAU_LO);
        self.add(p.neg())
    }

    /// `e^{i * self}` with the low word folded in to first order.
    pub fn cis(self) -> Complex64 {
        let r = self.reduce_angle();
        let (s, c) = r.hi.sin_cos();
        Complex64::new(c - r.lo * s, s + r.lo * c)
    }
}
