//! Numerical audits of the estimates behind the well-posedness theory: the
//! calculus inequality, the two bilinear kernel suprema, and the exponent
//! admissibility gate.

mod calculus;
mod kernels;

pub use calculus::{calculus_bound_ratio, phi_beta, CalculusRatio};
pub use kernels::{
    kdv5_kernel, kdv5_kernel_sup, schrodinger_kernel, schrodinger_kernel_sup, two_route, KernelKind, KernelQuery,
    KernelSup, TwoRoute, MIN_QUAD_POINTS, STABILIZATION_TOL,
};

use crate::norms::{Admissibility, RegularityBudget};

/// Checks `budget` against the well-posedness and smoothing constraints.
pub fn admissible(budget: &RegularityBudget) -> Admissibility {
    budget.check()
}
