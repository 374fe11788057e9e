use thiserror::Error;

/// Errors raised by the numerics and the sweep engine.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:e})")]
    NotPositiveSemidefinite { min_eigenvalue: f64 },

    #[error("invariant mass {m_inv} is below the pair threshold 2 x {m_top}")]
    BelowThreshold { m_top: f64, m_inv: f64 },

    #[error("degenerate kinematics at beta={beta}, z={z}: denominator {denominator:e}")]
    DegenerateKinematics { beta: f64, z: f64, denominator: f64 },

    #[error("unphysical correlations: {0}")]
    UnphysicalCorrelations(String),

    #[error("formula domain error: {0}")]
    FormulaDomain(String),

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("unknown preset `{0}`")]
    UnknownPreset(String),

    #[error("invalid sweep config: {0}")]
    Config(String),

    #[error("i/o failure: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}
