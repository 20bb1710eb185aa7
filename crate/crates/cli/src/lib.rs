//! Command-line front end for `biodilate`: JSON I/O, analysis and dilation
//! reports, the reproduction tables and a seeded randomized property driver.

pub mod commands;
pub mod error;
pub mod io;
pub mod properties;
pub mod report;
pub mod reproduce;

pub use error::{CliError, CliResult};
