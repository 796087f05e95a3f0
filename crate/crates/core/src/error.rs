use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid scene: {0}")]
    InvalidScene(String),

    #[error("argument out of domain: {0}")]
    Domain(String),

    #[error("evaluation within {distance:e} of a kernel pole at {pole}")]
    PoleProximity { pole: Complex64, distance: f64 },

    #[error("theta = {theta} lies within {distance:e} of critical ray theta{ray}")]
    CriticalRay { theta: f64, ray: u8, distance: f64 },

    #[error("quadrature failed: {reason} (estimate {estimate:e})")]
    Quadrature { reason: String, estimate: f64 },

    #[error("decay assumption violated: {0}")]
    Decay(String),

    #[error("unsupported input: {0}")]
    Unsupported(String),
}

impl Error {
    pub(crate) fn quad(reason: impl Into<String>, estimate: f64) -> Self {
        Error::Quadrature {
            reason: reason.into(),
            estimate,
        }
    }

    /// True for errors caused by sampling inside the critical-ray band.
    pub fn is_critical(&self) -> bool {
        matches!(self, Error::CriticalRay { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
