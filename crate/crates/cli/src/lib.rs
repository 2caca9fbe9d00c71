//! Command-line driver for `samba-core`: instance generation, schedule
//! construction, evolution runs, baseline comparisons and circuit export.

pub mod cli;
pub mod commands;
pub mod config;
pub mod error;
pub mod formats;
pub mod qasm;
pub mod tables;
