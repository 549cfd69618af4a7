//! Library surface of the command line: problem file format, report
//! rendering, and the subcommand implementations. The binary in `main.rs`
//! is a thin argument-parsing wrapper.

pub mod commands;
pub mod format;
pub mod report;
