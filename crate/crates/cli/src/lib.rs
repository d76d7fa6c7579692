//! Command-line front end for `qmf-core`: an expression language for
//! (quasi)modular forms and q-series, and the commands behind the `qmf` binary.

pub mod commands;
pub mod elab;
pub mod error;
pub mod expr;

pub use error::CliError;
pub use expr::{parse_expr, Expr, ParseError};
