//! Group file parsing, DOT/JSON lattice emission, and the `sublat` command
//! line surface.

pub mod emit;
pub mod parse;
pub mod run;

pub use emit::{emit_dot, emit_json, DotOptions, EmitMeta};
pub use parse::{parse_group_file, parse_seed_file, render_group_file, GroupFile, ParseError};
pub use run::run_cli;
