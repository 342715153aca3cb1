//! Command-line driver for `gws-fusion`: every subcommand turns a
//! [`RunConfig`] into one CSV [`Table`].

// Negated comparisons are how NaN inputs get rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod config;
pub mod error;
pub mod table;

pub use commands::{run, Command};
pub use config::{Grid, MassSpec, RunConfig, Spacing, XiChoice};
pub use error::{CliError, Result};
pub use table::{Cell, Table};
