use thiserror::Error;

/// Errors raised by evaluation, integration and verification routines.
///
/// Positions are reported as `f64` regardless of the scalar type in use.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("singular point at eta = {eta}")]
    SingularPoint { eta: f64 },
    #[error("eta = {eta} outside the half-line domain eta >= 0")]
    DomainError { eta: f64 },
    #[error("trace carries no {order} derivative")]
    MissingDerivative { order: &'static str },
    #[error("lower parameter c = {c} is a pole of 2F1")]
    PoleParameter { c: String },
    #[error("2F1 evaluation did not converge at z = {z}")]
    NoConvergence { z: String },
    #[error("argument z = {z} lies on the branch cut [1, inf)")]
    CutAmbiguity { z: String },
    #[error("branch parameter {what} is a nonpositive integer")]
    BranchConflict { what: &'static str },
    #[error("division by a vanishing function at eta = {eta}")]
    ZeroDivision { eta: f64 },
    #[error("step size underflow at eta = {eta} (h = {h:e})")]
    StepSizeUnderflow { eta: f64, h: f64 },
    #[error("non-finite value encountered at eta = {eta}")]
    NonFinite { eta: f64 },
    #[error("adaptive quadrature exceeded maximum depth on [{a}, {b}]")]
    MaxDepth { a: f64, b: f64 },
    #[error("Wronskian vanishes at the first grid point")]
    DegeneratePair,
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("trace mismatch: {0}")]
    TraceMismatch(String),
}

impl Error {
    /// True for failures of the numerical machinery (as opposed to bad input).
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NoConvergence { .. }
                | Error::StepSizeUnderflow { .. }
                | Error::NonFinite { .. }
                | Error::MaxDepth { .. }
                | Error::SingularPoint { .. }
                | Error::ZeroDivision { .. }
                | Error::PoleParameter { .. }
                | Error::CutAmbiguity { .. }
                | Error::BranchConflict { .. }
                | Error::DegeneratePair
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
