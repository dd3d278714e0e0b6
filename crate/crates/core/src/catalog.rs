//! The fixed error catalog: six fault codes and their display names.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "u8", try_from = "u8")]
#[repr(u8)]
pub enum ErrorCode {
    LvalueRequired = 1,
    IncorrectInheritance = 2,
    Spaghetti = 3,
    InconsistentTypeUsage = 4,
    IllicitFileUsage = 5,
    UndefinedLoop = 6,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("error code {0} is outside 1..=6")]
pub struct InvalidErrorCode(pub u8);

impl ErrorCode {
    pub const ALL: [ErrorCode; 6] = [
        ErrorCode::LvalueRequired,
        ErrorCode::IncorrectInheritance,
        ErrorCode::Spaghetti,
        ErrorCode::InconsistentTypeUsage,
        ErrorCode::IllicitFileUsage,
        ErrorCode::UndefinedLoop,
    ];

    pub fn code(self) -> u8 {
        self as u8
    }

    pub fn name(self) -> &'static str {
        match self {
            ErrorCode::LvalueRequired => "Lvalue required",
            ErrorCode::IncorrectInheritance => "Incorrect inheritance error",
            ErrorCode::Spaghetti => "Spaghetti error",
            ErrorCode::InconsistentTypeUsage => "Inconsistent Type Usage error",
            ErrorCode::IllicitFileUsage => "Illicit file usage exception",
            ErrorCode::UndefinedLoop => "Undefined loop exception",
        }
    }

    pub fn from_name(name: &str) -> Option<ErrorCode> {
        Self::ALL.into_iter().find(|c| c.name() == name)
    }
}

impl TryFrom<u8> for ErrorCode {
    type Error = InvalidErrorCode;

    fn try_from(value: u8) -> Result<Self, Self::Error> {
        ErrorCode::ALL.get(usize::from(value).wrapping_sub(1)).copied().ok_or(InvalidErrorCode(value))
    }
}

impl From<ErrorCode> for u8 {
    fn from(code: ErrorCode) -> u8 {
        code.code()
    }
}

impl fmt::Display for ErrorCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.code())
    }
}

/// Code -> name table as persisted in the result store (`{"1": "Lvalue required", ...}`).
pub fn catalog_dump() -> BTreeMap<String, String> {
    ErrorCode::ALL.iter().map(|c| (c.code().to_string(), c.name().to_string())).collect()
}
