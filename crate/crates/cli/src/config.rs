//! Run configuration, stored next to every run's outputs.

use std::path::{Path, PathBuf};

use clap::ValueEnum;
use samba_core::engine::{Sense, DEFAULT_INNER_TROTTER};
use samba_core::pipeline::{default_samples, Prepared};
use samba_core::schedule::Slices;
use samba_core::MixerSpec;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult, Context};
use crate::formats::Instance;

/// Uniform slices per segment when none are given.
pub const DEFAULT_SLICES: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum MixerChoice {
    X,
    XyRing,
}

/// Mixer flags; both absent means the family default.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MixerOptions {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mixer: Option<MixerChoice>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hamming_weight: Option<usize>,
}

impl MixerOptions {
    pub fn resolve(&self, instance: &Instance) -> CliResult<MixerSpec> {
        let n = instance.num_vars();
        let default = instance.default_mixer()?;
        let spec = match (self.mixer, self.hamming_weight) {
            (None, None) => default,
            (Some(MixerChoice::X), None) => MixerSpec::x_hypercube(n).context("mixer")?,
            (Some(MixerChoice::X), Some(_)) => {
                return Err(CliError::usage("--hamming-weight requires --mixer xy-ring"));
            }
            (None | Some(MixerChoice::XyRing), Some(k)) => MixerSpec::xy_ring(n, k).context("mixer")?,
            (Some(MixerChoice::XyRing), None) => match default.hamming_weight() {
                Some(k) => MixerSpec::xy_ring(n, k).context("mixer")?,
                None => return Err(CliError::usage("--mixer xy-ring needs --hamming-weight for this family")),
            },
        };
        Ok(spec)
    }
}

/// Slice flags; `per_segment` wins when both are present.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SliceOptions {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub uniform: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub per_segment: Option<Vec<usize>>,
}

impl SliceOptions {
    pub fn resolve(&self) -> Slices {
        match (&self.per_segment, self.uniform) {
            (Some(ps), _) => Slices::PerSegment(ps.clone()),
            (None, Some(p)) => Slices::Uniform(p),
            (None, None) => Slices::Uniform(DEFAULT_SLICES),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub instance: PathBuf,
    #[serde(flatten)]
    pub mixer: MixerOptions,
    /// Sampler budget; `n²` capped at the feasible count when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    /// Precomputed schedule; sampling is skipped when present.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schedule: Option<PathBuf>,
    #[serde(default)]
    pub slices: SliceOptions,
    pub snapshot_every: usize,
    pub inner_trotter: usize,
    pub seed: u64,
    pub maximize: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shots: Option<usize>,
    pub out: PathBuf,
}

impl RunConfig {
    pub fn new(instance: PathBuf, out: PathBuf) -> Self {
        Self {
            instance,
            mixer: MixerOptions::default(),
            samples: None,
            schedule: None,
            slices: SliceOptions::default(),
            snapshot_every: 1,
            inner_trotter: DEFAULT_INNER_TROTTER,
            seed: 0,
            maximize: false,
            shots: None,
            out,
        }
    }

    pub fn sense(&self) -> Sense {
        sense(self.maximize)
    }
}

pub fn sense(maximize: bool) -> Sense {
    if maximize {
        Sense::Maximize
    } else {
        Sense::Minimize
    }
}

/// A loaded instance with its mixer and spectrum.
pub struct Setup {
    pub instance: Instance,
    pub prepared: Prepared,
}

impl Setup {
    pub fn load(path: &Path, mixer: &MixerOptions, maximize: bool) -> CliResult<Self> {
        let instance = Instance::load(path)?;
        Self::from_instance(instance, mixer, maximize)
    }

    pub fn from_instance(instance: Instance, mixer: &MixerOptions, maximize: bool) -> CliResult<Self> {
        let spec = mixer.resolve(&instance)?;
        let prepared = Prepared::new(instance.compile()?, spec, sense(maximize)).context("preparing instance")?;
        Ok(Self { instance, prepared })
    }

    pub fn samples(&self, requested: Option<usize>) -> usize {
        requested.unwrap_or_else(|| default_samples(&self.prepared.spec))
    }
}
