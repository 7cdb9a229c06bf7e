use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Failures of the linear-algebra and state-construction layer.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    #[error("matrix is not Hermitian: max |a_ij - conj(a_ji)| = {max_asymmetry:e}")]
    NonHermitianInput { max_asymmetry: f64 },

    #[error("not a density matrix: {reason}")]
    NotADensityMatrix { reason: String },

    #[error("assembled state is not positive semidefinite: min eigenvalue {min_eigenvalue:e}")]
    NotPsd { min_eigenvalue: f64 },

    #[error("measurement axis has zero length")]
    ZeroAxis,

    #[error("invariant mass {m_ttbar} GeV is below the pair threshold {threshold} GeV")]
    BelowThreshold { m_ttbar: f64, threshold: f64 },

    #[error("invalid kinematics: {0}")]
    InvalidKinematics(String),

    #[error("mixture weight {0} outside [0, 1]")]
    InvalidWeight(f64),
}
