use std::fmt;

use hsmult_core::Error;
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorKind {
    Parse,
    Caps,
    SearchExhausted,
    Internal,
    Other,
}

impl ErrorKind {
    pub fn exit_code(self) -> i32 {
        match self {
            ErrorKind::Parse => 2,
            ErrorKind::Caps => 3,
            ErrorKind::SearchExhausted => 4,
            ErrorKind::Internal => 5,
            ErrorKind::Other => 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ErrorKind::Parse => "parse",
            ErrorKind::Caps => "cap-exceeded",
            ErrorKind::SearchExhausted => "search-exhausted",
            ErrorKind::Internal => "internal-inconsistency",
            ErrorKind::Other => "error",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliError {
    pub kind: ErrorKind,
    pub message: String,
    pub line: Option<usize>,
    pub column: Option<usize>,
}

impl CliError {
    pub fn new(kind: ErrorKind, message: impl Into<String>) -> Self {
        CliError { kind, message: message.into(), line: None, column: None }
    }

    pub fn parse(line: usize, column: usize, message: String) -> Self {
        CliError { kind: ErrorKind::Parse, message, line: Some(line), column: Some(column) }
    }

    pub fn invalid(message: impl Into<String>) -> Self {
        CliError::new(ErrorKind::Parse, message)
    }

    pub fn exit_code(&self) -> i32 {
        self.kind.exit_code()
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({ "kind": self.kind.name(), "message": self.message, "exit_code": self.exit_code() });
        if let (Some(l), Some(c)) = (self.line, self.column) {
            v["line"] = json!(l);
            v["column"] = json!(c);
        }
        json!({ "error": v })
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.line, self.column) {
            (Some(l), Some(c)) => write!(f, "{} error at line {}, column {}: {}", self.kind.name(), l, c, self.message),
            _ => write!(f, "{} error: {}", self.kind.name(), self.message),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let kind = match &e {
            Error::Parse { line, column, message } => return CliError::parse(*line, *column, message.clone()),
            Error::Invalid(_) | Error::TooFewGenerators { .. } | Error::NonInvertibleDenominator => ErrorKind::Parse,
            Error::CapExceeded(_) => ErrorKind::Caps,
            Error::SearchExhausted(_) => ErrorKind::SearchExhausted,
            Error::InternalInconsistency(_) | Error::UnexpectedNullity(_) => ErrorKind::Internal,
            _ => ErrorKind::Other,
        };
        CliError::new(kind, e.to_string())
    }
}
