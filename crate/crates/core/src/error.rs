use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("singular input: eigenvalue {value:e} within {tol:e} of zero")]
    Singular { value: f64, tol: f64 },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("inconsistent representation: {0}")]
    InconsistentRepresentation(String),
    #[error("eigensolver did not converge within {sweeps} sweeps (off-diagonal {off:e})")]
    NotConverged { sweeps: usize, off: f64 },
    #[error("not a representation: {0}")]
    NotARepresentation(String),
    #[error("numerical degeneracy: {0}")]
    NumericalDegeneracy(String),
    #[error("closed-form table unavailable: {0}")]
    OutOfTable(String),
}

pub type Result<T> = std::result::Result<T, Error>;
