use alloc::string::String;

/// Failure modes shared by every computation in the crate.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    /// The operation does not apply to this manifold kind (e.g. discretizing a product).
    #[error("invalid kind: {0}")]
    InvalidKind(String),
    #[error("numerical failure: {message} (residual {residual:e})")]
    NumericalFailure { message: String, residual: f64 },
}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}

pub(crate) fn numerical(msg: impl Into<String>, residual: f64) -> Error {
    Error::NumericalFailure {
        message: msg.into(),
        residual,
    }
}
