use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("io error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: row {row}: {message}")]
    Parse {
        path: String,
        row: usize,
        message: String,
    },

    #[error("{path}: no data rows")]
    EmptyFile { path: String },

    #[error("{path}: row {row}: year gap, expected {expected} but found {found}")]
    YearGap {
        path: String,
        row: usize,
        expected: i32,
        found: i32,
    },

    #[error("invalid series: {0}")]
    InvalidSeries(String),

    #[error("requested years {start}-{end} outside available span {first}-{last}")]
    Range {
        start: i32,
        end: i32,
        first: i32,
        last: i32,
    },

    #[error("unknown dataset key `{0}`")]
    UnknownDataset(String),

    #[error("fetch failed: {0}")]
    Network(String),

    #[error("malformed payload: {0}")]
    Payload(String),

    #[error("interior missing observation for year {0}")]
    InteriorGap(i32),

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("series has zero variance")]
    ConstantSeries,

    #[error("design matrix is rank deficient (column {column})")]
    Singular { column: usize },

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("degenerate regression: {0}")]
    Degenerate(String),

    #[error("no differencing order up to {max_d} rejects a unit root")]
    NonStationaryAtMax { max_d: usize },

    #[error("optimizer failed to converge: {0}")]
    NonConvergence(String),

    #[error("estimated {0} polynomial is not stationary/invertible")]
    NonInvertible(&'static str),

    #[error("series `{left}` and `{right}` share no years")]
    EmptyOverlap { left: String, right: String },

    #[error("zero or negative denominator in year {0}")]
    ZeroDenominator(i32),

    #[error("{indicator}: {source}")]
    Indicator {
        indicator: String,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Attaches the indicator name to an error from a pipeline stage.
    pub fn for_indicator(self, indicator: &str) -> Self {
        Error::Indicator {
            indicator: indicator.to_string(),
            source: Box::new(self),
        }
    }
}
