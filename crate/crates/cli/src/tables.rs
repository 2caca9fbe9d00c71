//! CSV outputs. Numbers are written with Rust's shortest round-trip
//! formatting so that reruns produce identical bytes.

use std::path::Path;

use samba_core::engine::{EvolutionTrace, Sense};
use samba_core::metrics::{displayed_rankings, DISPLAY_THRESHOLD};
use samba_core::Spectrum;

use crate::error::{CliError, CliResult};

pub const TOP_COLUMN: &str = "P_top5pct";

pub fn write_rows(path: &Path, header: &[String], rows: impl IntoIterator<Item = Vec<String>>) -> CliResult<()> {
    let err = |source| CliError::Csv { path: path.to_path_buf(), source };
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|source| CliError::Io { path: dir.to_path_buf(), source })?;
    }
    let mut w = csv::Writer::from_path(path).map_err(err)?;
    w.write_record(header).map_err(err)?;
    for row in rows {
        w.write_record(&row).map_err(err)?;
    }
    w.flush().map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

pub fn header(cols: &[&str]) -> Vec<String> {
    cols.iter().map(|c| c.to_string()).collect()
}

pub fn num(x: f64) -> String {
    format!("{x}")
}

/// `t, quality, participation_ratio, P_rank0, …, P_top5pct`.
pub fn write_trace(path: &Path, trace: &EvolutionTrace, num_ranks: usize) -> CliResult<()> {
    let mut head = header(&["t", "quality", "participation_ratio"]);
    head.extend((0..num_ranks).map(|r| format!("P_rank{r}")));
    head.push(TOP_COLUMN.to_string());
    let rows = trace.snapshots.iter().map(|m| {
        let mut row = vec![num(m.t), num(m.quality), num(m.participation_ratio)];
        row.extend(m.ranking_probs.iter().map(|&p| num(p)));
        row.push(num(m.top_fraction_prob));
        row
    });
    write_rows(path, &head, rows)
}

/// Cost of rank `r` as the user supplied it.
pub fn rank_cost(spectrum: &Spectrum, sense: Sense, r: usize) -> f64 {
    sense.sign() * spectrum.levels()[r]
}

/// `rank, cost, probability`; the filtered form keeps ranks at or above the
/// display threshold.
pub fn write_distribution(
    path: &Path,
    ranking_probs: &[f64],
    spectrum: &Spectrum,
    sense: Sense,
    filtered: bool,
) -> CliResult<()> {
    let rows: Vec<(usize, f64)> = if filtered {
        displayed_rankings(ranking_probs, DISPLAY_THRESHOLD)
    } else {
        ranking_probs.iter().copied().enumerate().collect()
    };
    write_rows(
        path,
        &header(&["rank", "cost", "probability"]),
        rows.into_iter().map(|(r, p)| vec![r.to_string(), num(rank_cost(spectrum, sense, r)), num(p)]),
    )
}
