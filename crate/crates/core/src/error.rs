use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, LabError>;

#[derive(Debug, Clone, Error)]
pub enum LabError {
    #[error("invalid closed form: {0}")]
    InvalidClosedForm(String),

    #[error("point with modulus {modulus} lies outside the validity disk of radius {r_max}")]
    OutOfValidity { modulus: f64, r_max: f64 },

    #[error("inner function reaches modulus {sup} but the outer series is only valid up to {r_max}")]
    CompositionOutOfRange { sup: f64, r_max: f64 },

    #[error("invalid generator: {0}")]
    InvalidGenerator(String),

    #[error("trajectory from {start} left the disk at t = {t} (|w| = {modulus})")]
    FlowEscape { start: Complex64, t: f64, modulus: f64 },

    #[error("ODE integration failed: {0}")]
    OdeFailure(String),

    #[error("Koenigs function is singular: {0}")]
    KoenigsSingularity(String),

    #[error("operator symbol vanishes on the working disk: {0}")]
    SymbolZero(String),

    #[error("unsupported weight: {0}")]
    UnsupportedWeight(String),

    #[error("the generator is trivial (P ≡ 0)")]
    TrivialSemigroup,

    #[error("invalid space parameters: {0}")]
    InvalidSpace(String),

    #[error("invalid witness: {0}")]
    InvalidWitness(String),

    #[error("norm diverges: {0}")]
    Divergent(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl LabError {
    /// Failures of the numerics, as opposed to rejected inputs.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            LabError::OutOfValidity { .. }
                | LabError::CompositionOutOfRange { .. }
                | LabError::FlowEscape { .. }
                | LabError::OdeFailure(_)
                | LabError::KoenigsSingularity(_)
                | LabError::SymbolZero(_)
                | LabError::Divergent(_)
        )
    }
}
