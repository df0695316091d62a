use thiserror::Error;

/// Error type shared by the UAMO crates.
///
/// The variants are coarse on purpose: the command-line front end maps them
/// onto exit codes (bad input, numerical failure, I/O).
#[derive(Debug, Error, Clone, PartialEq)]
pub enum UamoError {
    /// A parameter is outside its admissible range or inputs are inconsistent.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A matrix that has to be inverted (coin entry, cocycle denominator)
    /// vanishes at the requested point.
    #[error("singular point: {0}")]
    Singular(String),

    /// An iterative procedure did not reach its tolerance.
    #[error("no convergence: {0}")]
    NonConvergence(String),

    /// A finite window is too small to hold the requested evolution exactly.
    #[error("window too small: {0}")]
    Window(String),
}

/// Result alias used throughout the workspace.
pub type Result<T> = std::result::Result<T, UamoError>;

impl UamoError {
    pub fn invalid(msg: impl Into<String>) -> Self {
        UamoError::InvalidParameter(msg.into())
    }

    pub fn singular(msg: impl Into<String>) -> Self {
        UamoError::Singular(msg.into())
    }
}
