use std::path::Path;

use samba_core::schedule::{exact_transfer_time, gamma_of_energy, SampledGaps, Schedule};
use serde::{Deserialize, Serialize};

use super::obtain_schedule;
use crate::config::{MixerOptions, Setup};
use crate::error::{CliResult, Context};
use crate::formats::write_json;
use crate::tables::{header, num, write_rows};

/// Largest `n` for which the exact all-edges transfer time is reported.
pub const EXACT_TIME_CAP: usize = 10;

pub const SCHEDULE_FILE: &str = "schedule.json";
pub const META_FILE: &str = "schedule_meta.json";
pub const GAMMA_ENERGY_FILE: &str = "gamma_energy.csv";
pub const GAMMA_NODES_FILE: &str = "gamma_nodes.csv";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScheduleMeta {
    pub family: String,
    pub n: usize,
    pub feasible_count: u64,
    pub q_requested: usize,
    pub q_used: usize,
    /// Every feasible state was requested.
    pub exact: bool,
    pub seed: u64,
    pub maximize: bool,
    pub num_levels: usize,
    pub total_time: f64,
    /// Transfer time summed over all mixer edges, for small `n`.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub exact_transfer_time: Option<f64>,
}

pub fn cmd_schedule(
    instance: &Path,
    mixer: &MixerOptions,
    samples: Option<usize>,
    seed: u64,
    maximize: bool,
    out: &Path,
) -> CliResult<Vec<String>> {
    let setup = Setup::load(instance, mixer, maximize)?;
    let q = setup.samples(samples);
    let (gaps, sched) = obtain_schedule(&setup, None, q, seed)?;
    let gaps = gaps.expect("sampled");
    let meta = describe(&setup, &gaps, &sched, seed, maximize)?;
    write_schedule_files(out, &setup, &gaps, &sched)?;
    write_json(&out.join(META_FILE), &meta)?;
    let mut lines =
        vec![format!("T={} levels={} q_used={}/{}", sched.total_time(), sched.num_segments(), meta.q_used, q)];
    if meta.exact {
        lines.push("exact sampling".to_string());
    }
    Ok(lines)
}

pub fn describe(
    setup: &Setup,
    gaps: &SampledGaps,
    sched: &Schedule,
    seed: u64,
    maximize: bool,
) -> CliResult<ScheduleMeta> {
    let p = &setup.prepared;
    let feasible_count = p.spec.feasible_count();
    let exact_transfer_time = if p.n() <= EXACT_TIME_CAP {
        Some(exact_transfer_time(&p.spectrum, &p.spec).context("exact transfer time")?)
    } else {
        None
    };
    Ok(ScheduleMeta {
        family: setup.instance.family().to_string(),
        n: p.n(),
        feasible_count,
        q_requested: gaps.q_requested,
        q_used: gaps.q_used,
        exact: gaps.q_requested as u64 >= feasible_count,
        seed,
        maximize,
        num_levels: sched.num_segments(),
        total_time: sched.total_time(),
        exact_transfer_time,
    })
}

/// `schedule.json`, the energy-domain rate `Γ(E)` and the time-domain nodes.
pub fn write_schedule_files(out: &Path, setup: &Setup, gaps: &SampledGaps, sched: &Schedule) -> CliResult<()> {
    write_json(&out.join(SCHEDULE_FILE), sched)?;
    let sign = setup.prepared.sense.sign();
    let counts = gaps.entries.iter().map(|e| e.count);
    write_rows(
        &out.join(GAMMA_ENERGY_FILE),
        &header(&["energy", "gamma", "count"]),
        gamma_of_energy(gaps).into_iter().zip(counts).map(|((e, g), c)| vec![num(sign * e), num(g), c.to_string()]),
    )?;
    write_rows(
        &out.join(GAMMA_NODES_FILE),
        &header(&["t", "gamma"]),
        sched.nodes().into_iter().map(|(t, g)| vec![num(t), num(g)]),
    )
}
