//! Lorentz-covariant reduced spin density matrices for massive spin-½
//! particles, relativistic EPR–Bohm correlation functions and classical
//! BMT spin precession.

pub mod bmt;
pub mod check;
pub mod cli;
pub mod density;
pub mod dirac;
pub mod epr;
pub mod error;
pub mod intertwiner;
pub mod linalg;
pub mod lorentz;
pub mod sampling;

pub use error::{Error, Result};

/// Default max-abs threshold for matrix identity residuals.
pub const DEFAULT_TOLERANCE: f64 = 1e-10;
