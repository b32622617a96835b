//! Command implementations behind the `tvnrel` binary.

pub mod bench;
pub mod commands;
