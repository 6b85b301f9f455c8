use thiserror::Error;

/// Errors raised by dataset loading, threshold computation and mining.
#[derive(Debug, Error)]
pub enum Error {
    #[error("cell at data row {row}, column {col} is not a finite number")]
    ParseError { row: usize, col: usize },
    #[error("dataset needs at least 2 rows and 1 attribute")]
    EmptyDataset,
    #[error("duplicate attribute name '{0}'")]
    DuplicateAttribute(String),
    #[error("attribute name is empty")]
    EmptyAttributeName,
    #[error("attribute index {index} out of range (dataset has {len} attributes)")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("ragged record at data row {row}: expected {expected} fields, got {got}")]
    RaggedRow {
        row: usize,
        expected: usize,
        got: usize,
    },

    #[error("at least {needed} values are required, got {got}")]
    TooFewValues { needed: usize, got: usize },
    #[error("coefficient of variation is undefined for a zero-mean attribute (ZeroMean)")]
    ZeroMean,
    #[error("computed threshold is negative (NegativeSigma)")]
    NegativeSigma,
    #[error("no user threshold supplied for attribute '{0}' (MissingUserThreshold)")]
    MissingUserThreshold(String),
    #[error("user threshold file names unknown attribute '{0}'")]
    UnknownUserAttribute(String),
    #[error("attribute '{attribute}': {source}")]
    Column {
        attribute: String,
        #[source]
        source: Box<Error>,
    },

    #[error("gradual pattern must be non-empty")]
    EmptyPattern,
    #[error("gradual pattern mentions attribute {0} twice")]
    DuplicatePatternAttribute(usize),

    #[error("matrix dimensions differ: {0} vs {1} (DimensionMismatch)")]
    DimensionMismatch(usize, usize),
    #[error("precedence graph contains a cycle (CycleDetected)")]
    CycleDetected,

    #[error("operation requires a temporally ordered dataset (NotTemporal)")]
    NotTemporal,
    #[error("filter '{filter}' is not supported under {semantics} semantics (UnsupportedFilter)")]
    UnsupportedFilter {
        filter: &'static str,
        semantics: &'static str,
    },
    #[error("minimum support must lie in (0, 1], got {0}")]
    InvalidMinSupp(f64),
    #[error("max pattern length must be at least 1")]
    InvalidMaxLen,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("CSV error: {0}")]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
