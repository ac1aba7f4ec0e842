use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("field: {0}")]
    Field(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("invalid parameters: {0}")]
    Parameters(String),

    /// An exhaustive loop would exceed its configured budget.
    #[error("{what} budget exceeded: needs {required}, cap is {cap}")]
    Budget {
        what: &'static str,
        required: String,
        cap: u64,
    },

    /// A computed value disagrees with the value a construction promises.
    #[error("mismatch: {0}")]
    Mismatch(String),

    #[error("minimum distance is undefined for the zero code")]
    ZeroCode,

    #[error("format: {0}")]
    Format(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn budget(what: &'static str, required: impl ToString, cap: u64) -> Error {
        Error::Budget {
            what,
            required: required.to_string(),
            cap,
        }
    }

    pub fn is_budget(&self) -> bool {
        matches!(self, Error::Budget { .. })
    }
}
