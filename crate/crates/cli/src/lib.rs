//! Scenario files, reports and subcommands for the `torsor` binary.

pub mod build;
pub mod checks;
pub mod commands;
pub mod error;
pub mod format;
pub mod report;
