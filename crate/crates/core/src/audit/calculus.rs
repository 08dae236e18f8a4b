use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::norms::japanese;
use crate::quadrature::{integrate_real_line, QuadOptions};

/// The three-branch growth factor `φ_β`.
pub fn phi_beta(beta: f64, a: f64) -> f64 {
    let ja = japanese(a);
    if beta > 1.0 {
        1.0
    } else if beta == 1.0 {
        (1.0 + ja).ln()
    } else {
        ja.powf(1.0 - beta)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CalculusRatio {
    /// `∫ dx / (⟨x − a₁⟩^β ⟨x − a₂⟩^γ)`.
    pub integral: f64,
    /// `φ_β(a₁ − a₂) / ⟨a₁ − a₂⟩^γ`.
    pub bound: f64,
    pub ratio: f64,
}

/// Integral of `⟨x − a₁⟩^{−β} ⟨x − a₂⟩^{−γ}` over the line, divided by the
/// calculus-inequality bound.
pub fn calculus_bound_ratio(beta: f64, gamma: f64, a1: f64, a2: f64) -> Result<CalculusRatio> {
    if !(beta.is_finite() && gamma.is_finite() && a1.is_finite() && a2.is_finite()) {
        return Err(Error::InvalidParameter(
            "calculus inequality arguments must be finite".into(),
        ));
    }
    if !(beta >= gamma && gamma >= 0.0 && beta + gamma > 1.0) {
        return Err(Error::InvalidParameter(format!(
            "calculus inequality needs beta >= gamma >= 0 and beta + gamma > 1 (beta = {beta}, gamma = {gamma})"
        )));
    }
    let f = |x: f64| japanese(x - a1).powf(-beta) * japanese(x - a2).powf(-gamma);
    let cut = a1.abs().max(a2.abs()) + 1.0;
    let opts = QuadOptions {
        rel_tol: 1e-10,
        abs_tol: 0.0,
        ..QuadOptions::default()
    };
    let integral = integrate_real_line(f, cut, &[a1, a2], &opts)?.value;
    let d = a1 - a2;
    let bound = phi_beta(beta, d) / japanese(d).powf(gamma);
    Ok(CalculusRatio {
        integral,
        bound,
        ratio: integral / bound,
    })
}
