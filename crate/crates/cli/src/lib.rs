//! Library half of the `cvqfi` binary: network-file parsing, stable CSV
//! formatting, and the command implementations, exposed so tests can
//! drive them without spawning processes.

pub mod commands;
pub mod format;
pub mod network;
