//! Subcommand implementations. Each returns the lines it reports on stdout.

pub mod compare;
pub mod gen;
pub mod qasm;
pub mod run;
pub mod schedule;

use std::path::Path;

use samba_core::pipeline;
use samba_core::schedule::{SampledGaps, Schedule};

use crate::config::Setup;
use crate::error::{CliResult, Context};
use crate::formats::load_schedule;

/// Loads `schedule` when given, otherwise samples `q` states and builds one.
pub fn obtain_schedule(
    setup: &Setup,
    schedule: Option<&Path>,
    q: usize,
    seed: u64,
) -> CliResult<(Option<SampledGaps>, Schedule)> {
    match schedule {
        Some(path) => Ok((None, load_schedule(path)?)),
        None => {
            let (gaps, sched) = pipeline::build(&setup.prepared, q, seed).context("building schedule")?;
            Ok((Some(gaps), sched))
        }
    }
}
