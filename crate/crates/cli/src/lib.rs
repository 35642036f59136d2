//! Text front end for `hnf_core`: a small language for piecewise interval
//! functions, the `hnf` command dispatcher, and plot emitters.

pub mod commands;
pub mod dsl;
pub mod error;
pub mod format;
pub mod plot;

pub use commands::{load, run_command, Outcome};
pub use dsl::{parse_expr, parse_fn, parse_rational};
pub use error::{CliError, Span};
pub use format::{format_fn, Style};
