//! File formats, message encoding, experiment harness and CLI for `rankbreak-core`.

pub mod cli;
pub mod encoding;
pub mod harness;
pub mod io;
