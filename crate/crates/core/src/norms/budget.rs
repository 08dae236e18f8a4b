use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Slack for comparing against boundaries formed by decimal arithmetic, so
/// that e.g. `ā = 5b/2 − 5/8 − β` with `b = 0.49, β = 0.55` counts as the
/// endpoint it is meant to be rather than a round-off violation.
const BOUNDARY_SLACK: f64 = 1e-12;

/// Exponents `(s, b, β, ā, a)` of the well-posedness and smoothing results.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegularityBudget {
    pub s: f64,
    pub b: f64,
    pub beta: f64,
    pub abar: f64,
    pub a: f64,
}

/// Outcome of an admissibility check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Admissibility {
    pub admissible: bool,
    /// Human-readable statement of each violated inequality.
    pub violations: Vec<String>,
}

fn lt(x: f64, y: f64) -> bool {
    x < y - BOUNDARY_SLACK
}

fn le(x: f64, y: f64) -> bool {
    x <= y + BOUNDARY_SLACK
}

impl RegularityBudget {
    /// Builds a budget, failing with every violated constraint listed.
    pub fn new(s: f64, b: f64, beta: f64, abar: f64, a: f64) -> Result<Self> {
        let budget = RegularityBudget { s, b, beta, abar, a };
        let check = budget.check();
        if check.admissible {
            Ok(budget)
        } else {
            Err(Error::Inadmissible(check.violations))
        }
    }

    /// `5b/2 − 5/8`, the upper end of the β-interval.
    pub fn beta_ceiling(b: f64) -> f64 {
        2.5 * b - 0.625
    }

    /// Evaluates every constraint:
    ///
    /// * `s ≥ 0`
    /// * `9/20 < b < 1/2`
    /// * `1/2 < β < 5b/2 − 5/8`
    /// * `0 ≤ ā ≤ 5b/2 − 5/8 − β`
    /// * `0 ≤ a ≤ 5β − 9/4`
    pub fn check(&self) -> Admissibility {
        let RegularityBudget { s, b, beta, abar, a } = *self;
        let mut v = Vec::new();
        if [s, b, beta, abar, a].iter().any(|x| !x.is_finite()) {
            v.push("all exponents must be finite".to_string());
            return Admissibility {
                admissible: false,
                violations: v,
            };
        }
        if !le(0.0, s) {
            v.push(format!("s >= 0 violated (s = {s})"));
        }
        if !(lt(0.45, b) && lt(b, 0.5)) {
            v.push(format!("9/20 < b < 1/2 violated (b = {b})"));
        }
        let ceiling = Self::beta_ceiling(b);
        if !le(ceiling, 0.5) {
            if !(lt(0.5, beta) && lt(beta, ceiling)) {
                v.push(format!("1/2 < beta < 5b/2 - 5/8 = {ceiling} violated (beta = {beta})"));
            }
        } else {
            v.push(format!(
                "1/2 < beta < 5b/2 - 5/8 has an empty range for b = {b} (5b/2 - 5/8 = {ceiling}); beta = {beta}"
            ));
        }
        let abar_cap = ceiling - beta;
        if !(le(0.0, abar) && le(abar, abar_cap)) {
            v.push(format!(
                "0 <= abar <= 5b/2 - 5/8 - beta = {abar_cap} violated (abar = {abar})"
            ));
        }
        let a_cap = 5.0 * beta - 2.25;
        if !(le(0.0, a) && le(a, a_cap)) {
            v.push(format!("0 <= a <= 5 beta - 9/4 = {a_cap} violated (a = {a})"));
        }
        Admissibility {
            admissible: v.is_empty(),
            violations: v,
        }
    }

    /// Exponent `s + β + ā` at which the Schrödinger nonlinear part is controlled.
    pub fn u1_exponent(&self) -> f64 {
        self.s + self.beta + self.abar
    }

    /// Exponent `s + a` at which the KdV nonlinear part is controlled.
    pub fn v1_exponent(&self) -> f64 {
        self.s + self.a
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_budget_is_admissible() {
        assert!(RegularityBudget::new(0.0, 0.49, 0.55, 0.05, 0.5).is_ok());
    }

    #[test]
    fn empty_beta_interval() {
        let err = RegularityBudget::new(0.0, 0.45, 0.5, 0.0, 0.0).unwrap_err();
        match err {
            Error::Inadmissible(v) => assert!(v.iter().any(|m| m.contains("9/20 < b"))),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn strict_beta_lower_bound() {
        let c = RegularityBudget {
            s: 0.0,
            b: 0.49,
            beta: 0.5,
            abar: 0.0,
            a: 0.0,
        }
        .check();
        assert!(!c.admissible);
        assert!(c.violations.iter().any(|m| m.contains("1/2 < beta")));
    }

    #[test]
    fn all_violations_are_listed() {
        let c = RegularityBudget {
            s: -1.0,
            b: 0.6,
            beta: 0.4,
            abar: -0.1,
            a: 3.0,
        }
        .check();
        assert_eq!(c.violations.len(), 5);
    }
}
