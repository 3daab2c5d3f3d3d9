//! Command-line companion to `oakit-core`: text formats, a parallel
//! search driver and the `oakit` commands.

pub mod commands;
pub mod format;
pub mod parallel;

pub use commands::{CommandOutcome, ExitClass};
