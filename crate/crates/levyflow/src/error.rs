use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// A parameter is outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A rejection sampler exceeded its iteration cap; the step size is too
    /// large for the requested tempering strength.
    #[error("sampler failure: {0}")]
    Sampler(String),

    /// A run configuration is malformed or violates an invariant.
    #[error("config error: {0}")]
    Config(String),

    /// A regression or calibration step received unusable data.
    #[error("fit error: {0}")]
    Fit(String),

    /// A density/histogram estimate could not be formed.
    #[error("estimation error: {0}")]
    Estimation(String),

    /// A requested record time or key is not present.
    #[error("lookup error: {0}")]
    Lookup(String),

    /// A figure could not be rendered.
    #[error("render error: {0}")]
    Render(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code for the CLI: 2 config, 3 numeric/sampler/other.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) => 2,
            _ => 3,
        }
    }
}
