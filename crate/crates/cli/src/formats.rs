//! JSON file formats: instances, polynomials, schedules, summaries.

use std::fs;
use std::path::Path;

use samba_core::problems::{Compiled, Problem, SymmetryTag};
use samba_core::schedule::Schedule;
use samba_core::{MixerSpec, Polynomial};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult, Context};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermDto {
    pub vars: Vec<usize>,
    pub coeff: f64,
}

/// `{ "n": int, "terms": [ { "vars": [...], "coeff": float } ] }`, terms in
/// canonical order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolynomialDto {
    pub n: usize,
    pub terms: Vec<TermDto>,
}

impl PolynomialDto {
    pub fn from_poly(p: &Polynomial) -> Self {
        let terms = p.sorted_terms().into_iter().map(|(vars, coeff)| TermDto { vars, coeff }).collect();
        Self { n: p.n(), terms }
    }

    pub fn to_poly(&self) -> samba_core::Result<Polynomial> {
        Polynomial::from_terms(self.n, self.terms.iter().map(|t| (t.vars.as_slice(), t.coeff)))
    }
}

/// An instance file: a problem of a known family, or a bare polynomial.
#[derive(Clone, Debug, PartialEq)]
pub enum Instance {
    Problem(Problem),
    Custom(Polynomial),
}

impl Instance {
    pub fn load(path: &Path) -> CliResult<Self> {
        let value: serde_json::Value = read_json(path)?;
        let json_err = |source| CliError::Json { path: path.to_path_buf(), source };
        if value.get("family").is_some() {
            let problem: Problem = serde_json::from_value(value).map_err(json_err)?;
            problem.validate().context("invalid instance")?;
            Ok(Instance::Problem(problem))
        } else if value.get("terms").is_some() {
            let dto: PolynomialDto = serde_json::from_value(value).map_err(json_err)?;
            Ok(Instance::Custom(dto.to_poly().context("invalid polynomial")?))
        } else {
            Err(CliError::usage(format!("{}: expected a \"family\" or \"terms\" field", path.display())))
        }
    }

    pub fn num_vars(&self) -> usize {
        match self {
            Instance::Problem(p) => p.num_vars(),
            Instance::Custom(p) => p.n(),
        }
    }

    pub fn family(&self) -> &'static str {
        match self {
            Instance::Problem(p) => p.family(),
            Instance::Custom(_) => "custom",
        }
    }

    pub fn compile(&self) -> CliResult<Compiled> {
        match self {
            Instance::Problem(p) => p.compile().context("compiling instance"),
            Instance::Custom(p) => Ok(Compiled { poly: p.clone(), symmetry: SymmetryTag::None }),
        }
    }

    pub fn default_mixer(&self) -> CliResult<MixerSpec> {
        match self {
            Instance::Problem(p) => p.default_mixer().context("default mixer"),
            Instance::Custom(p) => MixerSpec::x_hypercube(p.n()).context("default mixer"),
        }
    }
}

/// Written by `run`: `{ "final_quality", "final_pr", "P0", "top5", "T" }`
/// plus bookkeeping.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub final_quality: f64,
    pub final_pr: f64,
    #[serde(rename = "P0")]
    pub p0: f64,
    pub top5: f64,
    #[serde(rename = "T")]
    pub total_time: f64,
    pub initial_quality: f64,
    pub feasible_mass: f64,
    pub n: usize,
    pub layers: usize,
    pub num_ranks: usize,
    pub q_requested: usize,
    pub q_used: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub best: Option<BestFound>,
}

/// Best decision among measurement shots.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BestFound {
    pub shots: usize,
    pub bitstring: String,
    pub index: u64,
    pub cost: f64,
    pub rank: usize,
    pub count: usize,
    pub distinct_outcomes: usize,
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
    serde_json::from_str(&text).map_err(|source| CliError::Json { path: path.to_path_buf(), source })
}

pub fn write_json<T: Serialize + ?Sized>(path: &Path, value: &T) -> CliResult<()> {
    let mut text =
        serde_json::to_string_pretty(value).map_err(|source| CliError::Json { path: path.to_path_buf(), source })?;
    text.push('\n');
    write_text(path, &text)
}

pub fn write_text(path: &Path, text: &str) -> CliResult<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|source| CliError::Io { path: dir.to_path_buf(), source })?;
    }
    fs::write(path, text).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

/// Reads a schedule file and recomputes its node times.
pub fn load_schedule(path: &Path) -> CliResult<Schedule> {
    let s: Schedule = read_json(path)?;
    s.revalidate().context("invalid schedule file")
}
