//! Expression parsing, verification suites and deterministic serialization
//! for the qwitt command-line tool.

pub mod parser;
pub mod report;
pub mod suites;
