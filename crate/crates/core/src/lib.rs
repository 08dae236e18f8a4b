//! Pseudo-spectral laboratory for the coupled Schrödinger / fifth-order KdV
//! system
//!
//! ```text
//! i u_t + u_xx          = α u v + γ |u|² u
//! v_t + v_xxxxx + (v²)_x = ε (|u|²)_x
//! ```
//!
//! on a large periodic box standing in for the real line.
//!
//! The crate is organised bottom-up:
//!
//! * [`spectral`]: grids, unitary transforms, derivatives, dealiasing;
//! * [`propagators`]: the exact free groups `U(t)` and `V(t)`;
//! * [`initial_data`]: the chirped and kink-built blow-up data and the time cutoff;
//! * [`solver`]: Duhamel–Picard iteration and Strang splitting, plus the
//!   nonlinear (Duhamel) part of a trajectory;
//! * [`norms`]: Sobolev, Hölder, Bourgain-space and spectral-tail diagnostics;
//! * [`audit`]: quadrature audits of the kernel integrals behind the bilinear
//!   estimates, and the exponent admissibility gate;
//! * [`harness`]: configuration, experiment drivers, reports and snapshots.

pub mod audit;
mod dd;
pub mod error;
pub mod harness;
pub mod initial_data;
pub mod norms;
pub mod propagators;
pub mod quadrature;
pub mod solver;
pub mod spectral;

pub use error::{Error, Result};
pub use propagators::{apply_group, group_law_defect, Dispersion};
pub use spectral::{dealias, dealiased_product, spectral_derivative, Field, Grid1D, Representation};
