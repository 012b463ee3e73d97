//! Command-line front end for `schouten-core`: input files, reports and
//! constraint-system dumps.

pub mod commands;
pub mod input;
pub mod report;
