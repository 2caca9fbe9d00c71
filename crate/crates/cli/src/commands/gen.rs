use std::path::{Path, PathBuf};

use clap::{Args, Subcommand, ValueEnum};
use samba_core::problems::{
    gen_erdos_renyi, gen_maxksat, gen_portfolio, gen_tsp, gen_unit_disk, PortfolioInstance, Problem,
    UNIT_DISK_HALF_DENSITY_RADIUS,
};

use crate::config::MixerOptions;
use crate::error::{CliError, CliResult, Context};
use crate::formats::{write_json, Instance};

/// Clause density used for 3-SAT when `--alpha` is omitted.
pub const DEFAULT_ALPHA_3SAT: f64 = 4.27;

#[derive(Clone, Debug, Subcommand)]
pub enum GenFamily {
    /// Erdős–Rényi MaxCut.
    Maxcut(MaxcutArgs),
    /// Maximum weighted independent set.
    Mis(MisArgs),
    /// Cardinality-constrained portfolio selection.
    Portfolio(PortfolioArgs),
    /// Low-autocorrelation binary sequences.
    Labs(LabsArgs),
    /// Random MAX-k-SAT.
    Maxksat(SatArgs),
    /// Travelling salesman on a complete graph.
    Tsp(TspArgs),
}

#[derive(Clone, Debug, Args)]
pub struct MaxcutArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 0.5)]
    pub p_edge: f64,
    /// Draw edge weights uniformly from --weight-range.
    #[arg(long)]
    pub weighted: bool,
    #[arg(long, num_args = 2, value_names = ["LO", "HI"], default_values_t = [0.0, 1.0], allow_negative_numbers = true)]
    pub weight_range: Vec<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MisGraph {
    UnitDisk,
    ErdosRenyi,
}

#[derive(Clone, Debug, Args)]
pub struct MisArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum, default_value = "unit-disk")]
    pub graph: MisGraph,
    /// Edge probability for Erdős–Rényi graphs.
    #[arg(long, default_value_t = 0.5)]
    pub p_edge: f64,
    #[arg(long, default_value_t = UNIT_DISK_HALF_DENSITY_RADIUS)]
    pub radius: f64,
    #[arg(long = "box", default_value_t = 1.0)]
    pub box_size: f64,
    /// Edge penalty; defaults to max(w_i + w_j) + 1.
    #[arg(long)]
    pub penalty: Option<f64>,
}

#[derive(Clone, Debug, Args)]
pub struct PortfolioArgs {
    #[arg(long)]
    pub n: usize,
    /// Assets to hold; defaults to n / 2.
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long, default_value_t = 0.5)]
    pub lambda: f64,
    /// Asset table (`i mu` and `i j sigma` lines); n assets are drawn from it.
    #[arg(long)]
    pub assets: Option<PathBuf>,
}

#[derive(Clone, Debug, Args)]
pub struct LabsArgs {
    #[arg(long)]
    pub n: usize,
}

#[derive(Clone, Debug, Args)]
pub struct SatArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 3)]
    pub k: usize,
    /// Clauses per variable; required unless k = 3.
    #[arg(long)]
    pub alpha: Option<f64>,
}

#[derive(Clone, Debug, Args)]
pub struct TspArgs {
    #[arg(long)]
    pub cities: usize,
    #[arg(long, num_args = 2, value_names = ["LO", "HI"], default_values_t = [0.0, 1.0], allow_negative_numbers = true)]
    pub dist_range: Vec<f64>,
    #[arg(long)]
    pub mu: Option<f64>,
    #[arg(long)]
    pub lambda: Option<f64>,
    #[arg(long)]
    pub gamma: Option<f64>,
}

fn pair(v: &[f64]) -> (f64, f64) {
    (v[0], v[1])
}

pub fn generate(family: &GenFamily, seed: u64) -> CliResult<Problem> {
    let problem = match family {
        GenFamily::Maxcut(a) => Problem::Maxcut {
            graph: gen_erdos_renyi(a.n, a.p_edge, a.weighted, pair(&a.weight_range), seed).context("maxcut")?,
        },
        GenFamily::Mis(a) => {
            let graph = match a.graph {
                MisGraph::UnitDisk => gen_unit_disk(a.n, a.radius, a.box_size, seed),
                MisGraph::ErdosRenyi => gen_erdos_renyi(a.n, a.p_edge, false, (1.0, 1.0), seed),
            }
            .context("mis")?;
            Problem::Mis { graph, penalty: a.penalty }
        }
        GenFamily::Portfolio(a) => {
            let k = a.k.unwrap_or(a.n / 2);
            let instance = match &a.assets {
                Some(path) => {
                    let text =
                        std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.clone(), source })?;
                    PortfolioInstance::parse_asset_table(&text, a.lambda, k)
                        .and_then(|full| full.random_subset(a.n, k, seed))
                        .context("portfolio")?
                }
                None => gen_portfolio(a.n, k, a.lambda, seed).context("portfolio")?,
            };
            Problem::Portfolio { instance }
        }
        GenFamily::Labs(a) => Problem::Labs { n: a.n },
        GenFamily::Maxksat(a) => {
            let alpha = match (a.alpha, a.k) {
                (Some(alpha), _) => alpha,
                (None, 3) => DEFAULT_ALPHA_3SAT,
                (None, k) => return Err(CliError::usage(format!("--alpha is required for k = {k}"))),
            };
            Problem::Maxksat { instance: gen_maxksat(a.n, a.k, alpha, seed).context("maxksat")? }
        }
        GenFamily::Tsp(a) => {
            let mut instance = gen_tsp(a.cities, pair(&a.dist_range), seed).context("tsp")?;
            instance.mu = a.mu;
            instance.lambda = a.lambda;
            instance.gamma = a.gamma;
            Problem::Tsp { instance }
        }
    };
    problem.validate().context("generated instance")?;
    Ok(problem)
}

/// Writes the instance to `out` (or stdout) and returns the report line
/// `family=… n=… feasible=…`.
pub fn cmd_gen(family: &GenFamily, seed: u64, mixer: &MixerOptions, out: Option<&Path>) -> CliResult<String> {
    let problem = generate(family, seed)?;
    let instance = Instance::Problem(problem.clone());
    let spec = mixer.resolve(&instance)?;
    let report = format!("family={} n={} feasible={}", problem.family(), problem.num_vars(), spec.feasible_count());
    match out {
        Some(path) => write_json(path, &problem)?,
        None => println!("{}", serde_json::to_string_pretty(&problem).expect("instances serialize")),
    }
    Ok(report)
}
