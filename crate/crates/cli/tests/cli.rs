//! End-to-end runs of the `samba` binary.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use samba_cli::formats::{Instance, Summary};
use samba_cli::qasm::{parse, simulate, KEY_LAYERS};
use samba_core::circuit::Gate;
use serde_json::Value;
use tempfile::TempDir;

fn samba(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_samba")).current_dir(dir).args(args).output().expect("spawn samba")
}

fn ok(dir: &Path, args: &[&str]) -> String {
    let out = samba(dir, args);
    assert!(out.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(path: PathBuf) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

fn csv_rows(path: PathBuf) -> Vec<Vec<String>> {
    fs::read_to_string(path).unwrap().lines().skip(1).map(|l| l.split(',').map(str::to_owned).collect()).collect()
}

fn maxcut(dir: &Path, n: usize, seed: u64) -> &'static str {
    ok(dir, &["gen", "maxcut", "--n", &n.to_string(), "--seed", &seed.to_string(), "--out", "mc.json"]);
    "mc.json"
}

#[test]
fn gen_is_deterministic_and_sized() {
    let d = TempDir::new().unwrap();
    let a = ok(d.path(), &["gen", "labs", "--n", "7"]);
    assert_eq!(a, ok(d.path(), &["gen", "labs", "--n", "7"]));

    ok(d.path(), &["gen", "maxcut", "--n", "12", "--seed", "4", "--out", "a.json"]);
    ok(d.path(), &["gen", "maxcut", "--n", "12", "--seed", "4", "--out", "b.json"]);
    assert_eq!(fs::read(d.path().join("a.json")).unwrap(), fs::read(d.path().join("b.json")).unwrap());
    assert_eq!(json(d.path().join("a.json"))["graph"]["n_vertices"], 12);

    let line = ok(d.path(), &["gen", "tsp", "--cities", "4", "--out", "t.json"]);
    assert!(line.contains("n=8"), "{line}");
}

#[test]
fn schedule_reproducible_and_exact_flag() {
    let d = TempDir::new().unwrap();
    let inst = maxcut(d.path(), 6, 1);
    ok(d.path(), &["schedule", "--instance", inst, "--seed", "3", "--out", "s1"]);
    ok(d.path(), &["schedule", "--instance", inst, "--seed", "3", "--out", "s2"]);
    for f in ["schedule.json", "gamma_energy.csv", "gamma_nodes.csv", "schedule_meta.json"] {
        assert_eq!(
            fs::read(d.path().join("s1").join(f)).unwrap(),
            fs::read(d.path().join("s2").join(f)).unwrap(),
            "{f}"
        );
    }
    let meta = json(d.path().join("s1/schedule_meta.json"));
    assert_eq!(meta["q_requested"], 36);
    assert_eq!(meta["exact"], false);

    ok(d.path(), &["schedule", "--instance", inst, "--samples", "64", "--out", "s3"]);
    let meta = json(d.path().join("s3/schedule_meta.json"));
    assert_eq!(meta["exact"], true);
    // Each draw also retires its complement.
    assert_eq!(meta["q_used"], 32);
}

#[test]
fn run_outputs_are_consistent() {
    let d = TempDir::new().unwrap();
    let inst = maxcut(d.path(), 7, 2);
    ok(d.path(), &["run", "--instance", inst, "--slices", "4", "--shots", "500", "--out", "r"]);
    let summary: Summary = serde_json::from_value(json(d.path().join("r/summary.json"))).unwrap();

    let trace = csv_rows(d.path().join("r/trace.csv"));
    let t_last: f64 = trace.last().unwrap()[0].parse().unwrap();
    assert!((t_last - summary.total_time).abs() < 1e-9);
    assert_eq!(trace.len(), summary.layers + 1);

    // Recompute the top-rank mass from the full distribution.
    let full = csv_rows(d.path().join("r/final_distribution_full.csv"));
    assert_eq!(full.len(), summary.num_ranks);
    let top = (0.05 * summary.num_ranks as f64).ceil().max(1.0) as usize;
    let mass: f64 = full.iter().take(top).map(|r| r[2].parse::<f64>().unwrap()).sum();
    assert!((mass - summary.top5).abs() < 1e-12);
    let total: f64 = full.iter().map(|r| r[2].parse::<f64>().unwrap()).sum();
    assert!((total - 1.0).abs() < 1e-9);

    // The best shot is never worse than the most probable rank.
    let modal = full.iter().max_by(|a, b| a[2].parse::<f64>().unwrap().total_cmp(&b[2].parse().unwrap())).unwrap();
    let best = summary.best.as_ref().unwrap();
    assert!(best.cost <= modal[1].parse::<f64>().unwrap());
    assert_eq!(best.shots, 500);

    ok(d.path(), &["run", "--config", "r/config.json", "--out", "replay"]);
    for f in ["trace.csv", "final_distribution_full.csv", "final_distribution.csv", "summary.json"] {
        assert_eq!(
            fs::read(d.path().join("r").join(f)).unwrap(),
            fs::read(d.path().join("replay").join(f)).unwrap(),
            "{f}"
        );
    }
}

#[test]
fn run_with_stored_schedule_and_repeat() {
    let d = TempDir::new().unwrap();
    let inst = maxcut(d.path(), 5, 3);
    ok(d.path(), &["schedule", "--instance", inst, "--out", "s"]);
    ok(d.path(), &["run", "--instance", inst, "--schedule", "s/schedule.json", "--slices", "2", "--out", "a"]);
    ok(d.path(), &["run", "--instance", inst, "--slices", "2", "--out", "b"]);
    assert_eq!(fs::read(d.path().join("a/trace.csv")).unwrap(), fs::read(d.path().join("b/trace.csv")).unwrap());

    ok(d.path(), &["run", "--instance", inst, "--slices", "2", "--repeat", "3", "--out", "rep"]);
    assert_eq!(csv_rows(d.path().join("rep/repeat_summary.csv")).len(), 3);
    assert!(d.path().join("rep/seed_2/summary.json").exists());
}

#[test]
fn maximize_mirrors_negated_instance() {
    let d = TempDir::new().unwrap();
    ok(d.path(), &["gen", "labs", "--n", "6", "--out", "l.json"]);
    ok(d.path(), &["run", "--instance", "l.json", "--slices", "3", "--maximize", "--out", "max"]);
    let full = csv_rows(d.path().join("max/final_distribution_full.csv"));
    let costs: Vec<f64> = full.iter().map(|r| r[1].parse().unwrap()).collect();
    assert!(costs.windows(2).all(|w| w[0] > w[1]), "rank 0 holds the largest cost: {costs:?}");
}

#[test]
fn qasm_single_edge() {
    let d = TempDir::new().unwrap();
    fs::write(
        d.path().join("edge.json"),
        r#"{"family":"maxcut","graph":{"n_vertices":2,"edges":[{"i":0,"j":1,"weight":1.0}]}}"#,
    )
    .unwrap();
    ok(d.path(), &["qasm", "--instance", "edge.json", "--slices", "1", "--out", "e.qasm"]);
    let text = fs::read_to_string(d.path().join("e.qasm")).unwrap();
    let parsed = parse(&text).unwrap();
    let layers: usize = parsed.header[KEY_LAYERS].parse().unwrap();
    let count = |f: fn(&Gate) -> bool| parsed.gates.iter().filter(|g| f(g)).count();
    assert_eq!(count(|g| matches!(g, Gate::Rx { .. })), 2 * layers);
    assert_eq!(count(|g| matches!(g, Gate::Rz { .. })), layers);
    assert_eq!(count(|g| matches!(g, Gate::Cx { .. })), 2 * layers);
    assert_eq!(count(|g| matches!(g, Gate::H(_))), 2);
}

/// The exported circuit, simulated gate by gate, reproduces the rank
/// distribution that `run` reports for the same plan.
#[test]
fn qasm_matches_run_distribution() {
    let d = TempDir::new().unwrap();
    let inst = maxcut(d.path(), 5, 7);
    ok(d.path(), &["qasm", "--instance", inst, "--slices", "3", "--out", "c.qasm"]);
    ok(d.path(), &["run", "--instance", inst, "--slices", "3", "--out", "r"]);
    let parsed = parse(&fs::read_to_string(d.path().join("c.qasm")).unwrap()).unwrap();
    let summary: Summary = serde_json::from_value(json(d.path().join("r/summary.json"))).unwrap();
    assert_eq!(parsed.header[KEY_LAYERS].parse::<usize>().unwrap(), summary.layers);

    let poly = Instance::load(&d.path().join(inst)).unwrap().compile().unwrap().poly;
    let amps = simulate(parsed.n, &parsed.gates);
    for row in csv_rows(d.path().join("r/final_distribution_full.csv")) {
        let cost: f64 = row[1].parse().unwrap();
        let expected: f64 = row[2].parse().unwrap();
        let mass: f64 = amps
            .iter()
            .enumerate()
            .filter(|&(x, _)| (poly.evaluate_index(x as u64) - cost).abs() < 1e-9)
            .map(|(_, a)| a.norm_sqr())
            .sum();
        assert!((mass - expected).abs() < 1e-9, "cost {cost}: circuit {mass} vs run {expected}");
    }
}

#[test]
fn compare_modes() {
    let d = TempDir::new().unwrap();
    let inst = maxcut(d.path(), 5, 8);
    ok(
        d.path(),
        &["compare", "--instance", inst, "--mode", "qaoa", "--qaoa-p", "2", "--opt-iters", "60", "--out", "q"],
    );
    let sweep = csv_rows(d.path().join("q/qaoa_sweep.csv"));
    assert_eq!(sweep.len(), 2);
    for (i, row) in sweep.iter().enumerate() {
        assert_eq!(row[0], (i + 1).to_string());
        assert_eq!(row[1], row[0]);
    }

    ok(
        d.path(),
        &["compare", "--instance", inst, "--baseline", "gqw", "--slices", "2", "--opt-iters", "20", "--out", "g"],
    );
    let g = json(d.path().join("g/compare_gqw.json"));
    let (ts, tg) = (g["samba"]["T"].as_f64().unwrap(), g["gqw"]["T"].as_f64().unwrap());
    assert!((ts - tg).abs() < 1e-12, "{ts} vs {tg}");

    ok(
        d.path(),
        &["compare", "--instance", inst, "--mode", "sampling-study", "--repeat", "2", "--slices", "2", "--out", "s"],
    );
    assert_eq!(csv_rows(d.path().join("s/sampling_study.csv")).len(), 3);
    assert_eq!(csv_rows(d.path().join("s/sampling_runs.csv")).len(), 6);
}

#[test]
fn exit_codes() {
    let d = TempDir::new().unwrap();
    assert_eq!(samba(d.path(), &["run", "--instance", "missing.json"]).status.code(), Some(2));
    assert_eq!(samba(d.path(), &["frobnicate"]).status.code(), Some(2));
    assert_eq!(samba(d.path(), &["--help"]).status.code(), Some(0));

    ok(d.path(), &["gen", "portfolio", "--n", "4", "--k", "2", "--out", "p.json"]);
    assert_eq!(samba(d.path(), &["qasm", "--instance", "p.json"]).status.code(), Some(2));
    assert_eq!(
        samba(d.path(), &["run", "--instance", "p.json", "--mixer", "x", "--hamming-weight", "2"]).status.code(),
        Some(2)
    );

    ok(d.path(), &["gen", "labs", "--n", "4", "--out", "l.json"]);
    let out = samba(d.path(), &["schedule", "--instance", "l.json", "--samples", "17"]);
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));
}
