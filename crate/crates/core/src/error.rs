use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Coarse classification used by front-ends to pick an exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorKind {
    /// The input does not describe a valid model or object.
    Input,
    /// The operation is not defined for this class of model.
    Restriction,
    /// A runtime verification failed.
    Consistency,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("enumeration bound exceeded: {count} hyperplanes, at most {max} allowed")]
    BoundExceeded { count: usize, max: usize },
    #[error("induced stratification not cellular: {0}")]
    NotCellular(String),
    #[error("operation not available for this model: {0}")]
    Restriction(String),
    #[error("invalid category: {0}")]
    InvalidCategory(String),
    #[error("window insufficient: {0}")]
    WindowInsufficient(String),
    #[error("face action at face {face} on chamber {chamber} is not unique: candidates {candidates:?}")]
    ActionNotUnique {
        face: usize,
        chamber: usize,
        candidates: Vec<usize>,
    },
    #[error("face action at face {face} on chamber {chamber} has no candidate")]
    ActionMissing { face: usize, chamber: usize },
    #[error("representation violates relator {0}")]
    RelatorViolated(usize),
    #[error("invalid permutation data: {0}")]
    InvalidPermutation(String),
    #[error("complex is disconnected")]
    Disconnected,
    #[error("internal consistency failure: {0}")]
    Consistency(String),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::InvalidModel(_)
            | Error::InvalidCategory(_)
            | Error::InvalidPermutation(_)
            | Error::RelatorViolated(_) => ErrorKind::Input,
            Error::BoundExceeded { .. }
            | Error::NotCellular(_)
            | Error::Restriction(_)
            | Error::Disconnected => ErrorKind::Restriction,
            Error::WindowInsufficient(_)
            | Error::ActionNotUnique { .. }
            | Error::ActionMissing { .. }
            | Error::Consistency(_) => ErrorKind::Consistency,
        }
    }
}
