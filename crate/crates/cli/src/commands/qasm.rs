use std::path::Path;

use samba_core::circuit::{lower_layer_plan, Circuit};
use samba_core::schedule::{discretize, LayerPlan};
use samba_core::MixerKind;

use super::obtain_schedule;
use crate::config::{MixerOptions, Setup, SliceOptions};
use crate::error::{CliError, CliResult, Context};
use crate::formats::write_text;
use crate::qasm::emit;

pub struct Export {
    pub circuit: Circuit,
    pub plan: LayerPlan,
    pub text: String,
}

/// Lowers the run's layer plan to OpenQASM. Hypercube mixer only.
pub fn export(
    setup: &Setup,
    schedule: Option<&Path>,
    samples: Option<usize>,
    slices: &SliceOptions,
    seed: u64,
) -> CliResult<Export> {
    let p = &setup.prepared;
    if p.spec.kind() != MixerKind::XHypercube {
        return Err(CliError::usage("circuit export supports the x mixer only"));
    }
    let (_, sched) = obtain_schedule(setup, schedule, setup.samples(samples), seed)?;
    let plan = discretize(&sched, &slices.resolve()).context("discretizing schedule")?;
    let circuit = lower_layer_plan(&p.cost, &plan, p.sense).context("lowering circuit")?;
    let text = emit(&circuit, sched.total_time());
    Ok(Export { circuit, plan, text })
}

#[allow(clippy::too_many_arguments)]
pub fn cmd_qasm(
    instance: &Path,
    mixer: &MixerOptions,
    schedule: Option<&Path>,
    samples: Option<usize>,
    slices: &SliceOptions,
    seed: u64,
    maximize: bool,
    out: &Path,
) -> CliResult<Vec<String>> {
    let setup = Setup::load(instance, mixer, maximize)?;
    let e = export(&setup, schedule, samples, slices, seed)?;
    write_text(out, &e.text)?;
    Ok(vec![format!(
        "{}: {} gates, {} layers, depth {}",
        out.display(),
        e.circuit.gates.len(),
        e.circuit.layers,
        e.circuit.depth()
    )])
}
