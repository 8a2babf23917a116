//! File formats, JSON views, DOT export, corpus runner and CLI for
//! `racg-core`.

pub mod cli;
pub mod corpus;
pub mod dot;
pub mod dto;
pub mod formats;

pub use formats::{parse_graph, serialize_graph, sniff, Format, ParseError};
