//! Instance files, check runners and reports behind the `expow` binary.

pub mod generate;
pub mod instance;
pub mod report;
pub mod run;
pub mod selftest;
