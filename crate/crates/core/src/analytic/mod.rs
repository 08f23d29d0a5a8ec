//! Finite-precision `p`-adic analysis: truncated power series with Strassmann
//! counting, the disk criterion for quasiperiodicity, and Mahler
//! interpolation of orbits.

pub mod disk;
pub mod mahler;
pub mod series;

use thiserror::Error;

pub use disk::{is_quasiperiodicity_disk, Disk};
pub use mahler::{certify_vanishing, orbit_interpolate, Chart, MahlerSeries, VanishingVerdict};
pub use series::{strassmann_count, TailBound, TruncatedPadicSeries};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AnalyticError {
    #[error("the maximal coefficient may lie beyond the known terms")]
    InsufficientPrecision,
    #[error("every known coefficient vanishes to its precision")]
    ZeroSeries,
    #[error("the map has a pole in the disk")]
    PoleInDisk,
    #[error("not a quasiperiodicity disk: {0}")]
    NotQuasiperiodic(String),
    #[error("inconsistent or exhausted precision")]
    PrecisionExhausted,
    #[error("map has bad reduction at {0}")]
    BadReduction(u64),
    #[error("polynomial coefficients are not p-integral")]
    NonIntegralCoefficients,
}
