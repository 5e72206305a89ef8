//! Library side of the `numrange` binary: input parsing, the subcommand
//! implementations and the run-report format. Split out of `main.rs` so the
//! acceptance suite can drive the same code paths directly.

pub mod commands;
pub mod input;
pub mod report;
