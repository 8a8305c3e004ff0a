use coxeter_hecke::Error;
use serde_json::json;

/// Everything that ends a run early, with its exit status.
#[derive(Debug)]
pub enum CliError {
    Validation(String),
    Engine(Error),
    Verification(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Engine(Error::ResourceLimit { .. }) => 3,
            CliError::Engine(Error::InconsistentRecursion { .. } | Error::NoAscendingChain(_)) => 1,
            CliError::Engine(_) => 2,
            CliError::Verification(_) => 4,
            CliError::Io(_) => 1,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Validation(_) => "validation",
            CliError::Engine(Error::ResourceLimit { .. }) => "resource_limit",
            CliError::Engine(Error::InconsistentRecursion { .. } | Error::NoAscendingChain(_)) => "internal",
            CliError::Engine(_) => "invalid_input",
            CliError::Verification(_) => "verification_failed",
            CliError::Io(_) => "io",
        }
    }

    pub fn message(&self) -> String {
        match self {
            CliError::Validation(m) | CliError::Verification(m) | CliError::Io(m) => m.clone(),
            CliError::Engine(e) => e.to_string(),
        }
    }

    pub fn to_json(&self) -> String {
        json!({"error": {"kind": self.kind(), "message": self.message()}}).to_string()
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Engine(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}
