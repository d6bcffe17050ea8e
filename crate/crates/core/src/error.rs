use std::fmt;

use thiserror::Error;

/// Every failure the library reports. Validation problems map to CLI exit
/// code 2, exhausted resource caps to exit code 3.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic {0} is not supported: 2 must be invertible")]
    Characteristic(u64),
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("value {value} is not defined in F_{p}")]
    NotInField { value: String, p: u64 },
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(FieldName, FieldName),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("not a complex: d∘d ≠ 0 leaving degree {degree}")]
    NotAComplex { degree: i32 },
    #[error("not a chain map: commutation fails on degree {degree}")]
    NotAChainMap { degree: i32 },
    #[error("graded symmetry violated on basis pair ({left}, {right})")]
    Symmetry { left: String, right: String },
    #[error("chain condition violated on basis pair ({left}, {right})")]
    ChainCondition { left: String, right: String },
    #[error("shift mismatch: {0} vs {1}")]
    ShiftMismatch(i32, i32),
    #[error("homotopy witness rejected: {0}")]
    Witness(String),
    #[error("d² ≠ 0 on generator {generator}: residual {residual}")]
    DSquared { generator: String, residual: String },
    #[error("invalid presentation: {0}")]
    Presentation(String),
    #[error("morphism incompatible with differentials on generator {generator}: {detail}")]
    Morphism { generator: String, detail: String },
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
    #[error("resource cap exceeded: {what} needs {count} basis words, cap is {cap}")]
    Resource { what: String, count: usize, cap: usize },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("{0}")]
    Io(String),
}

impl Error {
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Resource { .. } => 3,
            _ => 2,
        }
    }

    pub(crate) fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            location: location.into(),
            message: message.into(),
        }
    }
}

/// Printable field tag carried inside errors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldName(pub String);

impl fmt::Display for FieldName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

pub type Result<T> = std::result::Result<T, Error>;
