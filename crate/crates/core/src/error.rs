use crate::structures::StructureClass;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("dimension error: {0}")]
    Dimension(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("structure violation: {message} (residual {residual:e})")]
    StructureViolation { message: String, residual: f64 },
    #[error("pairing error: singular value {orphan} has no reciprocal partner and is not 1")]
    Pairing { orphan: f64 },
    #[error("coupling error: entry ({row}, {col}) = {re}{im:+}i breaks the {class} coupling pattern")]
    Coupling {
        class: StructureClass,
        row: usize,
        col: usize,
        re: f64,
        im: f64,
    },
    #[error("operation requires class {expected}, got {got}")]
    Class {
        expected: &'static str,
        got: StructureClass,
    },
    #[error("invalid generator spec: {0}")]
    InvalidSpec(String),
    #[error("numerical error: {0}")]
    Numerical(String),
    #[error("{0} did not converge")]
    NoConvergence(&'static str),
}

impl Error {
    pub(crate) fn violation(message: impl Into<String>, residual: f64) -> Self {
        Error::StructureViolation {
            message: message.into(),
            residual,
        }
    }

    /// Errors that mean the input lacks the requested structure, as opposed
    /// to malformed input or an internal numerical failure.
    pub fn is_structural(&self) -> bool {
        matches!(
            self,
            Error::StructureViolation { .. }
                | Error::Pairing { .. }
                | Error::Coupling { .. }
                | Error::Class { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
