//! File format, fixtures and command-line front end for `choiceform-core`.

pub mod cli;
pub mod document;
pub mod fixtures;
pub mod report;

pub use cli::{run_cli, CliRun};
pub use document::{parse_game, serialize_game, Game, GameDocument, LoadedGame};
