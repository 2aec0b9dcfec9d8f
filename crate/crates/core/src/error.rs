use thiserror::Error;

/// Errors produced by the relspin library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("mass must be positive and finite, got {0}")]
    InvalidMass(f64),

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("matrix is not unimodular: |det - 1| = {0:e}")]
    NotUnimodular(f64),

    #[error("matrix is not a proper orthochronous Lorentz transformation (residual {0:e})")]
    NotLorentz(f64),

    #[error("rapidity and velocity must describe a subluminal boost, got |v| = {0}")]
    Superluminal(f64),

    #[error("{name} must be a unit vector, |{name}| = {norm}")]
    NotUnitVector { name: &'static str, norm: f64 },

    #[error("Bloch vector length {0} exceeds 1")]
    BlochOutOfRange(f64),

    #[error("ensemble is empty")]
    EmptyEnsemble,

    #[error("ensemble weight {0} is not positive")]
    NonPositiveWeight(f64),

    #[error("ensemble weights sum to {0}, expected 1")]
    WeightsNotNormalized(f64),

    #[error("ensemble entries must share a single mass ({0} vs {1})")]
    MassMismatch(f64, f64),

    #[error("matrix is not Hermitian (residual {0:e})")]
    NotHermitian(f64),

    #[error("matrix is not positive semidefinite (smallest eigenvalue {0:e})")]
    NotPositive(f64),

    #[error("matrix does not have unit trace (trace {0})")]
    NotNormalized(f64),

    #[error("degenerate denominator in {0}")]
    DegenerateDenominator(&'static str),

    #[error("two-particle state has zero norm after projection")]
    ZeroNormState,

    #[error("velocity parameter beta must lie in [0, 1), got {0}")]
    InvalidBeta(f64),

    #[error("slow-motion equations require a vanishing electric field, got |E| = {0}")]
    ElectricFieldPresent(f64),

    #[error("magnetic field gradient must be symmetric and trace-free (residual {0:e})")]
    InvalidGradient(f64),

    #[error("integration diverged at step {step}; last good row {last_good_row}")]
    IntegrationBlowup { step: usize, last_good_row: usize },

    #[error("eigen-solver failed: {0}")]
    EigenSolver(&'static str),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
