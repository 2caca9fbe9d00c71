use alloc::vec::Vec;

#[cfg(feature = "serde")]
use serde::{Deserialize, Serialize};

use super::{HoppingRate, Schedule};
use crate::error::{invalid, Result};

/// One circuit layer: a cost phase of duration `dt` followed by a mixer
/// step of integrated rate `theta = dt · Γ`.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct Layer {
    pub dt: f64,
    pub theta: f64,
}

impl Layer {
    /// The rate held during the layer.
    pub fn gamma(&self) -> f64 {
        if self.dt == 0.0 {
            0.0
        } else {
            self.theta / self.dt
        }
    }
}

/// Slices per schedule segment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Slices {
    Uniform(usize),
    PerSegment(Vec<usize>),
}

impl Slices {
    fn resolve(&self, segments: usize) -> Result<Vec<usize>> {
        let counts = match self {
            Slices::Uniform(p) => alloc::vec![*p; segments],
            Slices::PerSegment(ps) if ps.len() == segments => ps.clone(),
            Slices::PerSegment(ps) => {
                return Err(invalid(alloc::format!("{} slice counts given for {segments} segments", ps.len())))
            }
        };
        if counts.contains(&0) {
            return Err(invalid("every segment needs at least one slice"));
        }
        Ok(counts)
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct LayerPlan {
    layers: Vec<Layer>,
    slices: Vec<usize>,
}

/// Splits segment `l` of the schedule into `p_l` equal slices, each holding
/// the rate at its midpoint: `Γ_{l,r} = Γ_l - (r + ½)(Γ_l - Γ_{l+1}) / p_l`.
pub fn discretize(sched: &Schedule, slices: &Slices) -> Result<LayerPlan> {
    let counts = slices.resolve(sched.num_segments())?;
    let mut layers = Vec::with_capacity(counts.iter().sum());
    for (l, &p) in counts.iter().enumerate() {
        let (hi, lo) = (sched.node_gamma(l), sched.node_gamma(l + 1));
        let dt = sched.durations()[l] / p as f64;
        for r in 0..p {
            let gamma = hi - (r as f64 + 0.5) * (hi - lo) / p as f64;
            layers.push(Layer { dt, theta: dt * gamma });
        }
    }
    Ok(LayerPlan { layers, slices: counts })
}

impl LayerPlan {
    pub fn from_layers(layers: Vec<Layer>) -> Self {
        let slices = alloc::vec![layers.len()];
        Self { layers, slices }
    }

    /// `slices_per_piece` midpoint slices on each smooth piece of `rate`.
    pub fn from_rate(rate: &dyn HoppingRate, slices_per_piece: usize) -> Result<Self> {
        if slices_per_piece == 0 {
            return Err(invalid("every piece needs at least one slice"));
        }
        let bps = rate.breakpoints();
        let mut layers = Vec::new();
        let mut slices = Vec::new();
        for w in bps.windows(2) {
            let dt = (w[1] - w[0]) / slices_per_piece as f64;
            for r in 0..slices_per_piece {
                let t = w[0] + (r as f64 + 0.5) * dt;
                layers.push(Layer { dt, theta: dt * rate.gamma(t) });
            }
            slices.push(slices_per_piece);
        }
        Ok(Self { layers, slices })
    }

    pub fn layers(&self) -> &[Layer] {
        &self.layers
    }

    /// Slice count of each segment.
    pub fn slices(&self) -> &[usize] {
        &self.slices
    }

    pub fn len(&self) -> usize {
        self.layers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.layers.is_empty()
    }

    pub fn total_time(&self) -> f64 {
        self.layers.iter().map(|l| l.dt).sum()
    }

    /// Physical time at the end of each layer.
    pub fn end_times(&self) -> Vec<f64> {
        self.layers
            .iter()
            .scan(0.0, |t, l| {
                *t += l.dt;
                Some(*t)
            })
            .collect()
    }
}
