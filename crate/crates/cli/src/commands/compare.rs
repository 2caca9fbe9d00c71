use std::path::{Path, PathBuf};

use clap::ValueEnum;
use rayon::prelude::*;
use samba_core::engine::{evolve_layer_plan, EvolutionTrace, EvolveOptions};
use samba_core::metrics::{approx_ratio_tilde, MetricBundle};
use samba_core::optimize::{tune_gqw, tune_qaoa, GqwObjective, GqwTuning, QaoaTuning};
use samba_core::pipeline::{run_samba, SambaSettings};
use samba_core::schedule::{discretize, BezierSchedule, LayerPlan, Schedule};
use serde::{Deserialize, Serialize};

use super::obtain_schedule;
use crate::config::{MixerOptions, Setup, SliceOptions};
use crate::error::{CliResult, Context};
use crate::formats::write_json;
use crate::tables::{header, num, write_distribution, write_rows, write_trace};

pub const DEFAULT_GQW_ITERS: usize = 100;
pub const DEFAULT_QAOA_ITERS: usize = 3000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum CompareMode {
    /// Bézier-rate walk tuned at the same total time.
    Gqw,
    /// QAOA depth sweep.
    Qaoa,
    /// Sampler budgets n, n², n³.
    SamplingStudy,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum ObjectiveChoice {
    Quality,
    P0,
}

impl From<ObjectiveChoice> for GqwObjective {
    fn from(o: ObjectiveChoice) -> Self {
        match o {
            ObjectiveChoice::Quality => GqwObjective::Quality,
            ObjectiveChoice::P0 => GqwObjective::P0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CompareConfig {
    pub instance: PathBuf,
    pub mode: CompareMode,
    #[serde(flatten)]
    pub mixer: MixerOptions,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(default)]
    pub slices: SliceOptions,
    /// Largest QAOA depth in the sweep.
    pub qaoa_p: usize,
    /// Optimizer evaluations; the mode's default when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub opt_iters: Option<usize>,
    pub objective: ObjectiveChoice,
    /// Seeds per sampler budget in the sampling study.
    pub repeat: usize,
    pub seed: u64,
    pub maximize: bool,
    pub out: PathBuf,
}

/// Final metrics of one evolution.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunMetrics {
    pub initial_quality: f64,
    pub final_quality: f64,
    #[serde(rename = "P0")]
    pub p0: f64,
    pub top5: f64,
    pub final_pr: f64,
    #[serde(rename = "T")]
    pub total_time: f64,
    pub layers: usize,
}

impl RunMetrics {
    fn of(trace: &EvolutionTrace, layers: usize) -> Self {
        let (first, last) = (&trace.snapshots[0], trace.snapshots.last().expect("final snapshot"));
        Self {
            initial_quality: first.quality,
            final_quality: last.quality,
            p0: last.p0(),
            top5: last.top_fraction_prob,
            final_pr: last.participation_ratio,
            total_time: last.t,
            layers,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GqwComparison {
    pub samba: RunMetrics,
    pub gqw: RunMetrics,
    pub theta: Vec<f64>,
    pub objective: ObjectiveChoice,
    pub evaluations: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QaoaRow {
    pub p: usize,
    pub depth: usize,
    pub r_tilde: f64,
    pub evaluations: usize,
    /// `[γ1, β1, γ2, β2, …]`.
    pub angles: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QaoaComparison {
    pub samba_r_tilde: f64,
    pub samba_layers: usize,
    pub rows: Vec<QaoaRow>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StudyRow {
    pub label: String,
    pub q: usize,
    pub runs: usize,
    pub mean_total_time: f64,
    pub mean_quality: f64,
    pub mean_p0: f64,
    pub mean_top5: f64,
    pub mean_pr: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Comparison {
    Gqw(GqwComparison),
    Qaoa(QaoaComparison),
    SamplingStudy(Vec<StudyRow>),
}

pub fn cmd_compare(cfg: &CompareConfig) -> CliResult<(Comparison, Vec<String>)> {
    let setup = Setup::load(&cfg.instance, &cfg.mixer, cfg.maximize)?;
    write_json(&cfg.out.join("compare_config.json"), cfg)?;
    match cfg.mode {
        CompareMode::Gqw => {
            let c = compare_gqw(&setup, cfg)?;
            let lines = vec![
                format!("T={} layers={}", c.samba.total_time, c.samba.layers),
                format!(
                    "samba: quality {:.6} -> {:.6}, P0={:.6}",
                    c.samba.initial_quality, c.samba.final_quality, c.samba.p0
                ),
                format!(
                    "gqw:   quality {:.6} -> {:.6}, P0={:.6}",
                    c.gqw.initial_quality, c.gqw.final_quality, c.gqw.p0
                ),
            ];
            Ok((Comparison::Gqw(c), lines))
        }
        CompareMode::Qaoa => {
            let c = compare_qaoa(&setup, cfg)?;
            let mut lines = vec![format!("samba: r~={:.6} with {} layers", c.samba_r_tilde, c.samba_layers)];
            lines.extend(c.rows.iter().map(|r| format!("qaoa p={} depth={}: r~={:.6}", r.p, r.depth, r.r_tilde)));
            Ok((Comparison::Qaoa(c), lines))
        }
        CompareMode::SamplingStudy => {
            let rows = sampling_study(&setup, cfg)?;
            let lines = rows
                .iter()
                .map(|r| {
                    format!(
                        "q={} ({}): quality={:.6} P0={:.6} top5={:.6}",
                        r.label, r.q, r.mean_quality, r.mean_p0, r.mean_top5
                    )
                })
                .collect();
            Ok((Comparison::SamplingStudy(rows), lines))
        }
    }
}

fn samba_trace(setup: &Setup, cfg: &CompareConfig) -> CliResult<(Schedule, LayerPlan, EvolutionTrace)> {
    let (_, schedule) = obtain_schedule(setup, None, setup.samples(cfg.samples), cfg.seed)?;
    let plan = discretize(&schedule, &cfg.slices.resolve()).context("discretizing schedule")?;
    let trace = evolve(setup, &plan)?;
    Ok((schedule, plan, trace))
}

fn evolve(setup: &Setup, plan: &LayerPlan) -> CliResult<EvolutionTrace> {
    let p = &setup.prepared;
    let opts = EvolveOptions { sense: p.sense, ..Default::default() };
    evolve_layer_plan(&p.initial_state().context("initial state")?, plan, &p.spectrum, &p.spec, &opts)
        .context("evolving")
}

/// Tunes the Bézier walk at SamBa's `T` with the same number of layers.
pub fn compare_gqw(setup: &Setup, cfg: &CompareConfig) -> CliResult<GqwComparison> {
    let p = &setup.prepared;
    let (schedule, plan, samba) = samba_trace(setup, cfg)?;
    let t = schedule.total_time();
    let tuning = GqwTuning {
        total_time: t,
        slices: plan.len(),
        max_iter: cfg.opt_iters.unwrap_or(DEFAULT_GQW_ITERS),
        objective: cfg.objective.into(),
        seed: cfg.seed,
        x0: None,
        sense: p.sense,
    };
    let initial = p.initial_state().context("initial state")?;
    let opt = tune_gqw(&p.spectrum, &p.spec, &initial, &tuning).context("tuning GQW")?;
    let theta: [f64; 6] = opt.best_params.clone().try_into().expect("six parameters");
    let gqw_plan = LayerPlan::from_rate(&BezierSchedule::new(theta, t), plan.len()).context("GQW layers")?;
    let gqw = evolve(setup, &gqw_plan)?;

    let out = &cfg.out;
    write_trace(&out.join("samba_trace.csv"), &samba, p.spectrum.num_ranks())?;
    write_trace(&out.join("gqw_trace.csv"), &gqw, p.spectrum.num_ranks())?;
    for (name, trace) in [("samba", &samba), ("gqw", &gqw)] {
        let probs = &trace.snapshots.last().expect("final snapshot").ranking_probs;
        write_distribution(&out.join(format!("{name}_distribution.csv")), probs, &p.spectrum, p.sense, false)?;
    }
    let c = GqwComparison {
        samba: RunMetrics::of(&samba, plan.len()),
        gqw: RunMetrics::of(&gqw, gqw_plan.len()),
        theta: opt.best_params,
        objective: cfg.objective,
        evaluations: opt.history.len(),
    };
    write_json(&out.join("compare_gqw.json"), &c)?;
    Ok(c)
}

/// Sweeps QAOA depth `1..=qaoa_p` and tabulates the SamBa layer angles.
pub fn compare_qaoa(setup: &Setup, cfg: &CompareConfig) -> CliResult<QaoaComparison> {
    let p = &setup.prepared;
    let (_, plan, samba) = samba_trace(setup, cfg)?;
    let initial = p.initial_state().context("initial state")?;
    let samba_r_tilde = approx_ratio_tilde(&samba.final_state, &p.spectrum).context("r~")?;
    let max_iter = cfg.opt_iters.unwrap_or(DEFAULT_QAOA_ITERS);
    let rows: Vec<QaoaRow> = (1..=cfg.qaoa_p)
        .into_par_iter()
        .map(|depth| {
            let opt = tune_qaoa(&p.spectrum, &p.spec, &initial, &QaoaTuning { p: depth, max_iter, seed: cfg.seed })
                .context("tuning QAOA")?;
            Ok(QaoaRow {
                p: depth,
                depth,
                r_tilde: -opt.best_value,
                evaluations: opt.history.len(),
                angles: opt.best_params,
            })
        })
        .collect::<CliResult<_>>()?;

    let out = &cfg.out;
    write_rows(
        &out.join("qaoa_sweep.csv"),
        &header(&["p", "depth", "r_tilde", "evaluations"]),
        rows.iter().map(|r| vec![r.p.to_string(), r.depth.to_string(), num(r.r_tilde), r.evaluations.to_string()]),
    )?;
    write_rows(
        &out.join("qaoa_angles.csv"),
        &header(&["p", "layer", "gamma", "beta"]),
        rows.iter().flat_map(|r| {
            r.angles.chunks(2).enumerate().map(move |(l, a)| vec![r.p.to_string(), l.to_string(), num(a[0]), num(a[1])])
        }),
    )?;
    let ends = plan.end_times();
    write_rows(
        &out.join("samba_angles.csv"),
        &header(&["layer", "t_end", "dt", "theta", "gamma"]),
        plan.layers()
            .iter()
            .zip(ends)
            .enumerate()
            .map(|(l, (layer, t))| vec![l.to_string(), num(t), num(layer.dt), num(layer.theta), num(layer.gamma())]),
    )?;
    let c = QaoaComparison { samba_r_tilde, samba_layers: plan.len(), rows };
    write_json(&out.join("compare_qaoa.json"), &c)?;
    Ok(c)
}

/// Sampler budgets `n, n², n³`, each capped at the feasible count.
pub fn study_budgets(n: usize, feasible: u64) -> Vec<(String, usize)> {
    let cap = |q: u64| q.min(feasible) as usize;
    let n = n as u64;
    vec![("n".into(), cap(n)), ("n^2".into(), cap(n * n)), ("n^3".into(), cap(n * n * n))]
}

/// Average final metrics per sampler budget over `repeat` seeds.
pub fn sampling_study(setup: &Setup, cfg: &CompareConfig) -> CliResult<Vec<StudyRow>> {
    let p = &setup.prepared;
    let budgets = study_budgets(p.n(), p.spec.feasible_count());
    let repeat = cfg.repeat.max(1);
    let jobs: Vec<(usize, u64)> = (0..budgets.len()).flat_map(|b| (0..repeat as u64).map(move |i| (b, i))).collect();
    let results: Vec<(usize, u64, MetricBundle)> = jobs
        .par_iter()
        .map(|&(b, i)| {
            let seed = cfg.seed.wrapping_add(i);
            let mut settings = SambaSettings::new(budgets[b].1, seed, cfg.slices.resolve());
            settings.snapshot_every = 0;
            let run = run_samba(p, &settings).context("sampling study run")?;
            Ok((b, seed, run.trace.snapshots.last().expect("final snapshot").clone()))
        })
        .collect::<CliResult<_>>()?;

    let rows: Vec<StudyRow> = budgets
        .iter()
        .enumerate()
        .map(|(b, (label, q))| {
            let mine: Vec<&MetricBundle> = results.iter().filter(|r| r.0 == b).map(|r| &r.2).collect();
            let mean = |f: &dyn Fn(&MetricBundle) -> f64| mine.iter().map(|m| f(m)).sum::<f64>() / mine.len() as f64;
            StudyRow {
                label: label.clone(),
                q: *q,
                runs: mine.len(),
                mean_total_time: mean(&|m| m.t),
                mean_quality: mean(&|m| m.quality),
                mean_p0: mean(&|m| m.p0()),
                mean_top5: mean(&|m| m.top_fraction_prob),
                mean_pr: mean(&|m| m.participation_ratio),
            }
        })
        .collect();

    let out = &cfg.out;
    write_rows(
        &out.join("sampling_runs.csv"),
        &header(&["q_label", "q", "seed", "T", "quality", "P0", "top5", "participation_ratio"]),
        results.iter().map(|(b, seed, m)| {
            vec![
                budgets[*b].0.clone(),
                budgets[*b].1.to_string(),
                seed.to_string(),
                num(m.t),
                num(m.quality),
                num(m.p0()),
                num(m.top_fraction_prob),
                num(m.participation_ratio),
            ]
        }),
    )?;
    write_rows(
        &out.join("sampling_study.csv"),
        &header(&["q_label", "q", "runs", "T", "quality", "P0", "top5", "participation_ratio"]),
        rows.iter().map(|r| {
            vec![
                r.label.clone(),
                r.q.to_string(),
                r.runs.to_string(),
                num(r.mean_total_time),
                num(r.mean_quality),
                num(r.mean_p0),
                num(r.mean_top5),
                num(r.mean_pr),
            ]
        }),
    )?;
    Ok(rows)
}

/// The CLI defaults for `mode`.
pub fn default_config(instance: &Path, mode: CompareMode, out: &Path) -> CompareConfig {
    CompareConfig {
        instance: instance.to_path_buf(),
        mode,
        mixer: MixerOptions::default(),
        samples: None,
        slices: SliceOptions::default(),
        qaoa_p: 4,
        opt_iters: None,
        objective: ObjectiveChoice::Quality,
        repeat: 5,
        seed: 0,
        maximize: false,
        out: out.to_path_buf(),
    }
}
