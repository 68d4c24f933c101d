use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension violation: {0}")]
    Dimension(String),

    #[error("invalid system: {0}")]
    InvalidSystem(String),

    #[error(
        "spectral coordinates are not conjugate-symmetric (pair {pair}, deviation {deviation:e})"
    )]
    SymmetryViolation { pair: usize, deviation: f64 },

    #[error("state is not real: imaginary residue {residue:e} exceeds tolerance")]
    NotReal { residue: f64 },

    #[error("degenerate angle: {0}")]
    DegenerateAngle(String),

    #[error("observation vector has zero norm")]
    ZeroObservation,

    #[error("coincident points: distance ratio is undefined")]
    CoincidentPoints,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("condition violated: {0}")]
    Condition(String),

    #[error("config error: {0}")]
    Config(String),

    #[error("eigensolver did not converge after {0} sweeps")]
    NoConvergence(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
