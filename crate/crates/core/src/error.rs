use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid spec: {0}")]
    InvalidSpec(String),
    #[error("empty data: {0}")]
    EmptyData(String),
    #[error("row {row}: {msg}")]
    CsvRow { row: usize, msg: String },
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("group {0} has no evaluable points")]
    EmptyGroup(usize),
    #[error("contract violation: {0}")]
    Contract(String),
}

impl Error {
    /// True for errors caused by bad inputs rather than by the environment.
    pub fn is_contract(&self) -> bool {
        match self {
            Error::Io(_) => false,
            // malformed file contents are a contract problem; failing reads
            // are not
            Error::Csv(e) => !matches!(e.kind(), csv::ErrorKind::Io(_)),
            _ => true,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
