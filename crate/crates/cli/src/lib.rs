//! Command-line front end: argument definitions, value grammars and command
//! execution. The `lagquot` binary is a thin wrapper around [`run::run`].

pub mod args;
pub mod parse;
pub mod run;

pub use args::Cli;
pub use run::{run, Output};
