//! Experiments over the `pzf-core` engine: table regeneration with golden
//! checks, bound and conjecture scans, simulation reports, and the `pzf`
//! command line that drives them.

pub mod cli;
pub mod commands;
pub mod error;
pub mod exact;
pub mod experiments;
pub mod golden;
pub mod output;
pub mod source;
pub mod tables;

pub use cli::{run, Cli};
pub use error::{CliError, Result, EXIT_INPUT, EXIT_MISMATCH, EXIT_STATE_CAP};
pub use output::{Cell, Format, Report};
