use serde_json::json;
use uamo_core::UamoError;

/// Failures of a run, each with its process exit code.
#[derive(Debug)]
pub enum CliError {
    /// Unparseable or out-of-range arguments: exit code 2.
    Usage(String),
    /// A numerical procedure failed or a verification did not hold: exit code 3.
    Numerical(String),
    /// Reading or writing a file failed: exit code 4.
    Io(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::Io(_) => 4,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Numerical(m) | CliError::Io(m) => m,
        }
    }

    /// `{"code": …, "message": …}` on one line.
    pub fn to_json(&self) -> String {
        json!({ "code": self.code(), "message": self.message() }).to_string()
    }
}

impl From<UamoError> for CliError {
    fn from(e: UamoError) -> Self {
        match e {
            UamoError::InvalidParameter(_) | UamoError::Window(_) => CliError::Usage(e.to_string()),
            UamoError::Singular(_) | UamoError::NonConvergence(_) => CliError::Numerical(e.to_string()),
        }
    }
}
