use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("field is in {found} representation, expected {expected}")]
    RepresentationMismatch {
        expected: &'static str,
        found: &'static str,
    },

    #[error("fields live on different grids")]
    GridMismatch,

    #[error("unsupported derivative order {0} (expected 1..=5)")]
    UnsupportedOrder(u32),

    #[error("non-finite time {0}")]
    NonFiniteTime(f64),

    #[error("phase accuracy lost: |t| * max|symbol| = {0:.3e} exceeds 1e12")]
    PhaseAccuracy(f64),

    #[error("box too small: boundary magnitude {magnitude:.3e} exceeds {threshold:.1e}")]
    InsufficientDecay { magnitude: f64, threshold: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("zero field where a nonzero reference norm is required")]
    ZeroField,

    #[error("Picard iteration did not converge in {} iterations (last defect {:.3e})", .defects.len(), .defects.last().copied().unwrap_or(f64::NAN))]
    NotConverged { defects: Vec<f64> },

    #[error("integrator unstable at t = {time}: norm grew by {growth:.2e} in one step")]
    Unstable { time: f64, growth: f64 },

    #[error("space-time signal not negligible at the time-lattice ends ({ratio:.3e} of peak)")]
    TimeWindow { ratio: f64 },

    #[error("frequency band [{lo}, {hi}] spans less than one octave")]
    BandTooNarrow { lo: f64, hi: f64 },

    #[error("field has no spectral tail on [{lo}, {hi}]")]
    NoSpectralTail { lo: f64, hi: f64 },

    #[error("inadmissible exponents: {}", .0.join("; "))]
    Inadmissible(Vec<String>),

    #[error("quadrature did not converge: {0}")]
    Quadrature(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("corrupt snapshot {path}: {reason}")]
    CorruptSnapshot { path: PathBuf, reason: String },

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// True for errors that stem from a bad configuration rather than a failed run.
    pub fn is_configuration(&self) -> bool {
        matches!(
            self,
            Error::Config(_)
                | Error::Inadmissible(_)
                | Error::InvalidGrid(_)
                | Error::InvalidParameter(_)
                | Error::InsufficientDecay { .. }
        )
    }
}
