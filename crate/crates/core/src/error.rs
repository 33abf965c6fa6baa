use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("invalid calibration: {0}")]
    InvalidCalibration(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("not admissible: {0}")]
    NotAdmissible(String),
    /// The point lies on a wall of the secondary fan; carries the violated equalities.
    #[error("point lies on a wall: {0}")]
    OnWall(String),
    #[error("degenerate path: {0}")]
    DegeneratePath(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    /// Infeasible or degenerate data, as opposed to malformed input.
    pub fn is_infeasible(&self) -> bool {
        matches!(
            self,
            Error::Degenerate(_) | Error::NotAdmissible(_) | Error::OnWall(_) | Error::DegeneratePath(_)
        )
    }
}
