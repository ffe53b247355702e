//! File formats, batch commands and the command line for `verma-core`.

pub mod cli;
pub mod commands;
pub mod formats;
