//! Stability analysis of FD-TD schemes for Debye and Lorentz dispersive media.
//!
//! * [`polyloc`] locates polynomial roots relative to the unit circle.
//! * [`schemes`] maps physical parameters to the dimensionless form and builds
//!   amplification matrices and characteristic polynomials.
//! * [`analyzer`] classifies stability per wavenumber and over all wavenumbers.
//! * [`simulator`] time-steps the schemes on periodic grids as an empirical check.

pub mod error;
pub mod polyloc;
pub mod schemes;
pub mod analyzer;
pub mod simulator;

pub use error::{Error, Result};
