use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("parameter error: {0}")]
    Parameter(String),

    #[error("augmentation failed: reached size {reached}, target {target}")]
    AugmentationFailed { reached: usize, target: usize },

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("unsupported scale: {what} is {actual}, limit {limit}")]
    UnsupportedScale {
        what: &'static str,
        actual: usize,
        limit: usize,
    },

    #[error("internal error: {0}")]
    Internal(String),

    #[error("format error: {0}")]
    Format(String),
}

impl Error {
    pub(crate) fn guard(what: &'static str, actual: usize, limit: usize) -> Result<()> {
        if actual > limit {
            Err(Error::UnsupportedScale {
                what,
                actual,
                limit,
            })
        } else {
            Ok(())
        }
    }
}
