//! Frontend for the curvedelta library: the ideal-document language,
//! canonical JSON reports, and the command dispatcher.

pub mod commands;
pub mod document;
pub mod error;
pub mod parser;
pub mod report;

pub use commands::run;
