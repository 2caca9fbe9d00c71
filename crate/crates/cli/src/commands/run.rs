use std::path::Path;

use rayon::prelude::*;
use samba_core::engine::{best_sampled, evolve_layer_plan, sample_counts, EvolutionTrace, EvolveOptions};
use samba_core::metrics::DEFAULT_TOP_FRACTION;
use samba_core::schedule::{discretize, LayerPlan, Schedule};
use samba_core::{BitString, Spectrum};

use super::obtain_schedule;
use super::schedule::{write_schedule_files, SCHEDULE_FILE};
use crate::config::{RunConfig, Setup};
use crate::error::{CliResult, Context};
use crate::formats::{write_json, BestFound, Summary};
use crate::tables::{header, num, rank_cost, write_distribution, write_rows, write_trace};

pub const CONFIG_FILE: &str = "config.json";
pub const TRACE_FILE: &str = "trace.csv";
pub const DIST_FILE: &str = "final_distribution.csv";
pub const DIST_FULL_FILE: &str = "final_distribution_full.csv";
pub const SUMMARY_FILE: &str = "summary.json";
pub const LAYERS_FILE: &str = "layers.json";
pub const REPEAT_FILE: &str = "repeat_summary.csv";

pub struct RunOutcome {
    pub summary: Summary,
    pub schedule: Schedule,
    pub plan: LayerPlan,
    pub trace: EvolutionTrace,
    pub spectrum: Spectrum,
}

/// Runs one configuration and writes its outputs under `cfg.out`.
pub fn execute(cfg: &RunConfig) -> CliResult<RunOutcome> {
    let setup = Setup::load(&cfg.instance, &cfg.mixer, cfg.maximize)?;
    let p = &setup.prepared;
    let q = setup.samples(cfg.samples);
    let (gaps, schedule) = obtain_schedule(&setup, cfg.schedule.as_deref(), q, cfg.seed)?;
    let plan = discretize(&schedule, &cfg.slices.resolve()).context("discretizing schedule")?;
    let opts = EvolveOptions {
        snapshot_every: cfg.snapshot_every,
        sense: cfg.sense(),
        inner_trotter: cfg.inner_trotter,
        top_fraction: DEFAULT_TOP_FRACTION,
    };
    let initial = p.initial_state().context("initial state")?;
    let trace = evolve_layer_plan(&initial, &plan, &p.spectrum, &p.spec, &opts).context("evolving")?;

    let first = &trace.snapshots[0];
    let last = trace.snapshots.last().expect("final snapshot");
    let best = cfg.shots.map(|shots| {
        let counts = sample_counts(&trace.final_state, shots, cfg.seed);
        let distinct_outcomes = counts.len();
        best_sampled(&counts, &p.spectrum).map(|(index, _)| BestFound {
            shots,
            bitstring: BitString::new(index, p.n()).map(String::from).unwrap_or_default(),
            index,
            cost: p.cost.evaluate_index(index),
            rank: p.spectrum.ranking_of(index as usize),
            count: counts[&index],
            distinct_outcomes,
        })
    });
    let summary = Summary {
        final_quality: last.quality,
        final_pr: last.participation_ratio,
        p0: last.p0(),
        top5: last.top_fraction_prob,
        total_time: schedule.total_time(),
        initial_quality: first.quality,
        feasible_mass: last.feasible_mass,
        n: p.n(),
        layers: plan.len(),
        num_ranks: p.spectrum.num_ranks(),
        q_requested: gaps.as_ref().map_or(0, |g| g.q_requested),
        q_used: gaps.as_ref().map_or(0, |g| g.q_used),
        best: best.flatten(),
    };

    let out = &cfg.out;
    write_json(&out.join(CONFIG_FILE), cfg)?;
    match &gaps {
        Some(g) => write_schedule_files(out, &setup, g, &schedule)?,
        None => write_json(&out.join(SCHEDULE_FILE), &schedule)?,
    }
    write_json(&out.join(LAYERS_FILE), plan.layers())?;
    write_trace(&out.join(TRACE_FILE), &trace, p.spectrum.num_ranks())?;
    write_distribution(&out.join(DIST_FILE), &last.ranking_probs, &p.spectrum, cfg.sense(), true)?;
    write_distribution(&out.join(DIST_FULL_FILE), &last.ranking_probs, &p.spectrum, cfg.sense(), false)?;
    write_json(&out.join(SUMMARY_FILE), &summary)?;
    let spectrum = p.spectrum.clone();
    Ok(RunOutcome { summary, schedule, plan, trace, spectrum })
}

pub fn summary_line(s: &Summary) -> String {
    format!(
        "T={} layers={} quality={:.6} (initial {:.6}) P0={:.6} top5={:.6} PR={:.3e}",
        s.total_time, s.layers, s.final_quality, s.initial_quality, s.p0, s.top5, s.final_pr
    )
}

/// Runs `cfg` with sampler seeds `seed, seed+1, …` in parallel, each in its
/// own `seed_<s>` directory, and tabulates the summaries.
pub fn cmd_run(cfg: &RunConfig, repeat: usize) -> CliResult<Vec<String>> {
    if repeat <= 1 {
        let outcome = execute(cfg)?;
        let mut lines = vec![summary_line(&outcome.summary)];
        if let Some(b) = &outcome.summary.best {
            lines.push(format!("best of {} shots: {} cost={} rank={}", b.shots, b.bitstring, b.cost, b.rank));
        }
        return Ok(lines);
    }
    let configs: Vec<RunConfig> = (0..repeat as u64)
        .map(|i| {
            let seed = cfg.seed.wrapping_add(i);
            RunConfig { seed, out: cfg.out.join(format!("seed_{seed}")), ..cfg.clone() }
        })
        .collect();
    let summaries: Vec<Summary> =
        configs.par_iter().map(|c| execute(c).map(|o| o.summary)).collect::<CliResult<_>>()?;
    write_repeat_table(&cfg.out.join(REPEAT_FILE), &configs, &summaries)?;
    let mut lines: Vec<String> =
        summaries.iter().zip(&configs).map(|(s, c)| format!("seed {}: {}", c.seed, summary_line(s))).collect();
    let mean = |f: fn(&Summary) -> f64| summaries.iter().map(f).sum::<f64>() / summaries.len() as f64;
    lines.push(format!(
        "mean over {repeat}: quality={:.6} P0={:.6} top5={:.6}",
        mean(|s| s.final_quality),
        mean(|s| s.p0),
        mean(|s| s.top5)
    ));
    Ok(lines)
}

fn write_repeat_table(path: &Path, configs: &[RunConfig], summaries: &[Summary]) -> CliResult<()> {
    let rows = configs.iter().zip(summaries).map(|(c, s)| {
        vec![
            c.seed.to_string(),
            num(s.total_time),
            num(s.initial_quality),
            num(s.final_quality),
            num(s.final_pr),
            num(s.p0),
            num(s.top5),
        ]
    });
    write_rows(path, &header(&["seed", "T", "initial_quality", "final_quality", "final_pr", "P0", "top5"]), rows)
}

/// Cost of the most probable rank; used to sanity-check shot results.
pub fn modal_rank_cost(outcome: &RunOutcome, cfg: &RunConfig) -> f64 {
    let probs = &outcome.trace.snapshots.last().expect("final snapshot").ranking_probs;
    let modal = probs.iter().enumerate().max_by(|a, b| a.1.total_cmp(b.1)).map_or(0, |(r, _)| r);
    rank_cost(&outcome.spectrum, cfg.sense(), modal)
}
