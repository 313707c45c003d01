//! Command-line front end: argument parsing and command dispatch.

pub mod args;
pub mod run;
pub mod theta;

pub use args::{parse_args, ArgsError, Command, RunConfig};
pub use run::run;
