//! File formats, rendering and subcommands of the `dplane` tool.

mod commands;
pub mod format;
pub mod render;

pub use commands::{load_image, run, Cli, CliError, Command, EXIT_BUDGET, EXIT_INPUT, EXIT_VERDICT};
