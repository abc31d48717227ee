//! apx input, DOT output and the command-line surface.

mod apx;
mod cli;
mod dot;

pub use apx::{emit_apx, parse_apx, ApxDocument, Declaration};
pub use cli::{run_cli, SCHEMA};
pub use dot::emit_dot;
