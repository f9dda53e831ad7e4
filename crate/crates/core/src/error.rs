use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    Argument(String),

    /// The intertwiner (or a closed-form factor) is singular at this parameter.
    #[error("singular parameter: nu = {nu} lies on the excluded lattice at r = {r}")]
    SingularParameter { nu: String, r: i64 },

    #[error("truncation too small: least-squares residual {residual:e} exceeds {limit:e}")]
    TruncationTooSmall { residual: f64, limit: f64 },

    /// A numerical construction disagreed with the combinatorics it must reproduce.
    #[error("internal consistency failure: {0}")]
    Consistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn arg<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Argument(msg.into()))
}
