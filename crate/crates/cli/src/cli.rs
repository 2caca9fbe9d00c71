//! Argument parsing and dispatch.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use samba_core::engine::DEFAULT_INNER_TROTTER;

use crate::commands::compare::{cmd_compare, CompareConfig, CompareMode, ObjectiveChoice};
use crate::commands::gen::{cmd_gen, GenFamily};
use crate::commands::qasm::cmd_qasm;
use crate::commands::run::cmd_run;
use crate::commands::schedule::cmd_schedule;
use crate::config::{MixerChoice, MixerOptions, RunConfig, SliceOptions};
use crate::error::{CliError, CliResult};
use crate::formats::read_json;

pub const DEFAULT_OUT_DIR: &str = "samba-out";
pub const DEFAULT_QASM_FILE: &str = "circuit.qasm";

#[derive(Debug, Parser)]
#[command(name = "samba", version, about = "Sample-guided quantum walk simulator")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    /// Seed for every random choice (instances, sampler, optimizer, shots).
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Output file (gen, qasm) or directory (schedule, run, compare).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Maximize the cost instead of minimizing it.
    #[arg(long, global = true)]
    pub maximize: bool,
    /// Measure the final state this many times and report the best decision.
    #[arg(long, global = true)]
    pub shots: Option<usize>,
    #[arg(long, global = true, value_enum)]
    pub mixer: Option<MixerChoice>,
    /// Hamming weight preserved by the ring XY mixer.
    #[arg(long, global = true)]
    pub hamming_weight: Option<usize>,
}

impl GlobalArgs {
    fn mixer(&self) -> MixerOptions {
        MixerOptions { mixer: self.mixer, hamming_weight: self.hamming_weight }
    }

    fn out_dir(&self) -> PathBuf {
        self.out.clone().unwrap_or_else(|| PathBuf::from(DEFAULT_OUT_DIR))
    }
}

#[derive(Debug, Clone, Args)]
pub struct SliceArgs {
    /// Slices per schedule segment.
    #[arg(long)]
    pub slices: Option<usize>,
    /// Comma-separated slices for each segment.
    #[arg(long, value_delimiter = ',', conflicts_with = "slices")]
    pub slices_per_segment: Option<Vec<usize>>,
}

impl SliceArgs {
    fn options(&self) -> SliceOptions {
        SliceOptions { uniform: self.slices, per_segment: self.slices_per_segment.clone() }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a problem instance.
    Gen {
        #[command(subcommand)]
        family: GenFamily,
    },
    /// Sample gaps and build the hopping-rate schedule.
    Schedule {
        #[arg(long)]
        instance: PathBuf,
        /// States to sample; n² (capped at the feasible count) by default.
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Evolve the walk and record metrics.
    Run(RunArgs),
    /// Compare against a baseline or across sampler budgets.
    Compare(CompareArgs),
    /// Export the layer plan as an OpenQASM 2.0 circuit.
    Qasm {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        schedule: Option<PathBuf>,
        #[arg(long)]
        samples: Option<usize>,
        #[command(flatten)]
        slices: SliceArgs,
    },
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    #[arg(long, required_unless_present = "config")]
    pub instance: Option<PathBuf>,
    /// Replay a stored config.json; other run flags are ignored.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub schedule: Option<PathBuf>,
    #[arg(long)]
    pub samples: Option<usize>,
    #[command(flatten)]
    pub slices: SliceArgs,
    /// Record metrics every this many layers; 0 keeps only the endpoints.
    #[arg(long, default_value_t = 1)]
    pub snapshot_every: usize,
    /// Bond-splitting steps per XY mixer layer.
    #[arg(long, default_value_t = DEFAULT_INNER_TROTTER)]
    pub inner_trotter: usize,
    /// Independent sampler seeds, run in parallel.
    #[arg(long, default_value_t = 1)]
    pub repeat: usize,
}

#[derive(Debug, Clone, Args)]
pub struct CompareArgs {
    #[arg(long)]
    pub instance: PathBuf,
    #[arg(long, alias = "baseline", value_enum)]
    pub mode: CompareMode,
    #[arg(long)]
    pub samples: Option<usize>,
    #[command(flatten)]
    pub slices: SliceArgs,
    /// Largest QAOA depth swept.
    #[arg(long, default_value_t = 4)]
    pub qaoa_p: usize,
    /// Optimizer evaluations (default 100 for gqw, 3000 for qaoa).
    #[arg(long)]
    pub opt_iters: Option<usize>,
    #[arg(long, value_enum, default_value = "quality")]
    pub objective: ObjectiveChoice,
    /// Seeds per budget in the sampling study.
    #[arg(long, default_value_t = 5)]
    pub repeat: usize,
}

/// Executes a parsed command and returns its report lines.
pub fn dispatch(cli: Cli) -> CliResult<Vec<String>> {
    let g = cli.global;
    match cli.command {
        Command::Gen { family } => Ok(vec![cmd_gen(&family, g.seed, &g.mixer(), g.out.as_deref())?]),
        Command::Schedule { instance, samples } => {
            cmd_schedule(&instance, &g.mixer(), samples, g.seed, g.maximize, &g.out_dir())
        }
        Command::Run(a) => {
            let cfg = match &a.config {
                Some(path) => {
                    let mut cfg: RunConfig = read_json(path)?;
                    if let Some(out) = &g.out {
                        cfg.out = out.clone();
                    }
                    cfg
                }
                None => RunConfig {
                    instance: a.instance.clone().ok_or_else(|| CliError::usage("--instance is required"))?,
                    mixer: g.mixer(),
                    samples: a.samples,
                    schedule: a.schedule.clone(),
                    slices: a.slices.options(),
                    snapshot_every: a.snapshot_every,
                    inner_trotter: a.inner_trotter,
                    seed: g.seed,
                    maximize: g.maximize,
                    shots: g.shots,
                    out: g.out_dir(),
                },
            };
            cmd_run(&cfg, a.repeat)
        }
        Command::Compare(a) => {
            let cfg = CompareConfig {
                instance: a.instance,
                mode: a.mode,
                mixer: g.mixer(),
                samples: a.samples,
                slices: a.slices.options(),
                qaoa_p: a.qaoa_p,
                opt_iters: a.opt_iters,
                objective: a.objective,
                repeat: a.repeat,
                seed: g.seed,
                maximize: g.maximize,
                out: g.out_dir(),
            };
            if cfg.qaoa_p == 0 {
                return Err(CliError::usage("--qaoa-p must be at least 1"));
            }
            cmd_compare(&cfg).map(|(_, lines)| lines)
        }
        Command::Qasm { instance, schedule, samples, slices } => {
            let out = g.out.clone().unwrap_or_else(|| PathBuf::from(DEFAULT_QASM_FILE));
            cmd_qasm(&instance, &g.mixer(), schedule.as_deref(), samples, &slices.options(), g.seed, g.maximize, &out)
        }
    }
}
