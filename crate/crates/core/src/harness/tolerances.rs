//! Verdict thresholds shared by the studies and the acceptance suite.

/// Unitarity and group-law defect of the free groups.
pub const GROUP_DEFECT: f64 = 1e-12;
/// Sup-norm error of the dispersed Gaussian against its closed form.
pub const GAUSSIAN_CLOSED_FORM: f64 = 1e-8;
/// Relative drift of `‖u‖_{L²}` under the split-step integrator.
pub const MASS_DRIFT: f64 = 1e-8;
/// Absolute drift of `∫ v dx` under the split-step integrator.
pub const MEAN_DRIFT: f64 = 1e-10;
/// Sup-in-time relative distance between the two integrators on `t ≤ T/2`.
pub const INTEGRATOR_AGREEMENT: f64 = 1e-6;
/// Upper bound on the last Picard contraction ratio.
pub const FINAL_CONTRACTION: f64 = 0.5;
/// Grid-convergence bound for `‖u₁(t*)‖` at the smoothing exponent.
pub const U1_CONVERGENCE: f64 = 0.05;
/// Minimum relative change of the free part at the rough exponent.
pub const FREE_DIVERGENCE: f64 = 0.25;
/// Minimum tail-regularity gain of `v₁` over `V(t)v₀`.
pub const TAIL_GAIN: f64 = 0.2;
/// Minimum per-doubling growth of a diverging Hölder quotient.
pub const BLOWUP_GROWTH: f64 = 2.0;
/// Maximum per-doubling change of a bounded Hölder quotient.
pub const BOUNDED_GROWTH: f64 = 1.5;
/// Maximum distance of the quotient argmax from its expected point, in cells.
pub const ARGMAX_CELLS: f64 = 5.0;
/// Maximum spread of calculus-inequality ratios across separations.
pub const CALCULUS_SPREAD: f64 = 10.0;
/// Maximum relative change of a kernel supremum when quad_points doubles.
pub const QUADRATURE_REFINEMENT: f64 = 0.005;
/// Admissible range of the unreduced/reduced kernel ratio.
pub const TWO_ROUTE_LO: f64 = 0.1;
pub const TWO_ROUTE_HI: f64 = 10.0;
/// Growth over the last dyadic range that signals an unbounded kernel.
pub const VIOLATION_GROWTH: f64 = 0.1;
/// Fraction of the box, split evenly between both ends, watched for wraparound.
pub const BOUNDARY_FRACTION: f64 = 0.05;
/// Largest admissible boundary magnitude relative to the field's peak.
pub const BOUNDARY_RATIO: f64 = 1e-6;
