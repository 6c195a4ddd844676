use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("inadmissible state: {0}")]
    Inadmissible(String),

    #[error("vacuum generated: pressure positivity condition violated ({lhs} <= {du})")]
    VacuumGenerated { lhs: f64, du: f64 },

    #[error("exact Riemann solver did not converge after {iterations} iterations")]
    NoConvergence { iterations: usize },

    #[error("Roe-averaged sound speed is imaginary (H - u^2/2 = {0})")]
    ImaginarySoundSpeed(f64),

    #[error("degenerate wave speeds: S_L = S_R = {0}")]
    DegenerateSpeeds(f64),

    #[error("maximum wave speed is zero")]
    ZeroMaxSpeed,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
