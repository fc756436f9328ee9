//! File formats, rendering and the command line for `trireg-core`.

pub mod cli;
pub mod commands;
pub mod error;
pub mod render;
pub mod spec;

pub use error::CliError;
pub use spec::RegionSpec;
