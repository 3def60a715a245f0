//! Frontend error envelope: every failure has a machine-readable code and
//! a process exit class (2 = input error, 3 = resource-bound error).

use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Input,
    Resource,
}

#[derive(Debug)]
pub struct CliError {
    pub class: ErrorClass,
    pub code: String,
    pub message: String,
}

impl CliError {
    pub fn input(code: impl Into<String>, message: impl Into<String>) -> Self {
        CliError {
            class: ErrorClass::Input,
            code: code.into(),
            message: message.into(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self.class {
            ErrorClass::Input => 2,
            ErrorClass::Resource => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", self.code, self.message)
    }
}

impl From<curvedelta::Error> for CliError {
    fn from(e: curvedelta::Error) -> Self {
        CliError {
            class: if e.is_resource() {
                ErrorClass::Resource
            } else {
                ErrorClass::Input
            },
            code: e.code().to_string(),
            message: e.to_string(),
        }
    }
}

impl From<crate::parser::ParseError> for CliError {
    fn from(e: crate::parser::ParseError) -> Self {
        CliError::input("parse-error", e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::input("io-error", e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;
