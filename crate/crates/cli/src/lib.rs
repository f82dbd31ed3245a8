//! File formats, rendering, and command logic behind the `spg` binary.

pub mod commands;
pub mod document;
pub mod dot;
pub mod records;
