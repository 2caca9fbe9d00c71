//! OpenQASM 2.0 export of a lowered layer plan, plus a parser and a small
//! gate-by-gate interpreter used to check the export against the simulator.
//!
//! Qubit `q[i]` holds variable `x_i`, so basis index bit `i` is `q[i]`.
//! `rz` is read as `exp(-i θ Z / 2)`; the qelib1 definition differs by a
//! global phase only.

use std::collections::BTreeMap;

use num_complex::Complex64;
use samba_core::circuit::{Circuit, Gate};

use crate::error::{CliError, CliResult};

/// Header keys written as `// key: value` comment lines.
pub const KEY_LAYERS: &str = "layers";
pub const KEY_COST_DEPTH: &str = "cost_layer_depth";
pub const KEY_DEPTH: &str = "depth";
pub const KEY_GADGETS: &str = "phase_gadgets_per_layer";

pub fn emit(circuit: &Circuit, total_time: f64) -> String {
    let mut out = String::from("OPENQASM 2.0;\ninclude \"qelib1.inc\";\n");
    out += &format!("// {KEY_LAYERS}: {}\n", circuit.layers);
    out += &format!("// {KEY_COST_DEPTH}: {}\n", circuit.cost_layer_depth);
    out += &format!("// {KEY_DEPTH}: {}\n", circuit.depth());
    out += &format!(
        "// depth accounting: 1 (H column) + {} layers x (1 (RX column) + {} (cost layer))\n",
        circuit.layers, circuit.cost_layer_depth
    );
    out += &format!("// {KEY_GADGETS}: {}\n", circuit.gadgets.len());
    out += &format!("// total_time: {total_time}\n");
    out += "// q[i] holds x_i; rz(t) = exp(-i t Z/2), rx(t) = exp(-i t X/2)\n";
    out += &format!("qreg q[{}];\n", circuit.n);
    for g in &circuit.gates {
        out += &match *g {
            Gate::H(q) => format!("h q[{q}];\n"),
            Gate::Cx { control, target } => format!("cx q[{control}],q[{target}];\n"),
            Gate::Rz { qubit, angle } => format!("rz({angle}) q[{qubit}];\n"),
            Gate::Rx { qubit, angle } => format!("rx({angle}) q[{qubit}];\n"),
        };
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct Parsed {
    pub n: usize,
    pub gates: Vec<Gate>,
    pub header: BTreeMap<String, String>,
}

/// Parses the subset of OpenQASM 2.0 that [`emit`] writes.
pub fn parse(text: &str) -> CliResult<Parsed> {
    let mut n = None;
    let mut gates = Vec::new();
    let mut header = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let bad = |what: &str| CliError::usage(format!("qasm line {}: {what}: {raw}", lineno + 1));
        let line = raw.trim();
        if let Some(comment) = line.strip_prefix("//") {
            if let Some((k, v)) = comment.split_once(':') {
                header.insert(k.trim().to_string(), v.trim().to_string());
            }
            continue;
        }
        if line.is_empty() || line.starts_with("OPENQASM") || line.starts_with("include") {
            continue;
        }
        let stmt = line.strip_suffix(';').ok_or_else(|| bad("missing ';'"))?;
        let (op, args) = stmt.split_once(' ').ok_or_else(|| bad("expected 'op args'"))?;
        let qubits: Vec<usize> = args
            .split(',')
            .map(|a| {
                a.trim()
                    .strip_prefix("q[")
                    .and_then(|s| s.strip_suffix(']'))
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| bad("bad qubit operand"))
            })
            .collect::<CliResult<_>>()?;
        let (name, angle) = match op.split_once('(') {
            Some((name, rest)) => {
                let a = rest.strip_suffix(')').and_then(|s| s.parse::<f64>().ok()).ok_or_else(|| bad("bad angle"))?;
                (name, Some(a))
            }
            None => (op, None),
        };
        let gate = match (name, angle, qubits.as_slice()) {
            ("qreg", None, &[size]) => {
                n = Some(size);
                continue;
            }
            ("h", None, &[q]) => Gate::H(q),
            ("cx", None, &[control, target]) if control != target => Gate::Cx { control, target },
            ("rz", Some(angle), &[qubit]) => Gate::Rz { qubit, angle },
            ("rx", Some(angle), &[qubit]) => Gate::Rx { qubit, angle },
            _ => return Err(bad("unsupported statement")),
        };
        gates.push(gate);
    }
    let n = n.ok_or_else(|| CliError::usage("qasm: missing qreg declaration"))?;
    if gates.iter().any(|g| {
        let (a, b) = g.qubits();
        a >= n || b.is_some_and(|b| b >= n)
    }) {
        return Err(CliError::usage("qasm: qubit index out of range"));
    }
    Ok(Parsed { n, gates, header })
}

/// Runs `gates` on `|0…0⟩`.
pub fn simulate(n: usize, gates: &[Gate]) -> Vec<Complex64> {
    let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
    amps[0] = Complex64::new(1.0, 0.0);
    let h = std::f64::consts::FRAC_1_SQRT_2;
    for g in gates {
        match *g {
            Gate::H(q) => pairwise(&mut amps, q, |a, b| ((a + b) * h, (a - b) * h)),
            Gate::Rx { qubit, angle } => {
                let (c, s) = ((angle / 2.0).cos(), (angle / 2.0).sin());
                let mis = Complex64::new(0.0, -s);
                pairwise(&mut amps, qubit, |a, b| (a * c + b * mis, a * mis + b * c))
            }
            Gate::Rz { qubit, angle } => {
                let lo = Complex64::from_polar(1.0, -angle / 2.0);
                let hi = lo.conj();
                pairwise(&mut amps, qubit, |a, b| (a * lo, b * hi))
            }
            Gate::Cx { control, target } => {
                for x in 0..amps.len() {
                    if (x >> control) & 1 == 1 && (x >> target) & 1 == 0 {
                        amps.swap(x, x | (1 << target));
                    }
                }
            }
        }
    }
    amps
}

fn pairwise(amps: &mut [Complex64], q: usize, f: impl Fn(Complex64, Complex64) -> (Complex64, Complex64)) {
    let bit = 1 << q;
    for x in 0..amps.len() {
        if x & bit == 0 {
            let (a, b) = f(amps[x], amps[x | bit]);
            amps[x] = a;
            amps[x | bit] = b;
        }
    }
}

/// `|⟨a|b⟩|²`.
pub fn fidelity(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum::<Complex64>().norm_sqr()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bell_pair() {
        let amps = simulate(2, &[Gate::H(0), Gate::Cx { control: 0, target: 1 }]);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((amps[0].re - h).abs() < 1e-15 && (amps[3].re - h).abs() < 1e-15);
        assert!(amps[1].norm() < 1e-15 && amps[2].norm() < 1e-15);
    }

    #[test]
    fn rotations_match_closed_form() {
        let t = 0.7;
        let rx = simulate(1, &[Gate::Rx { qubit: 0, angle: t }]);
        assert!((rx[0] - Complex64::new((t / 2.0).cos(), 0.0)).norm() < 1e-15);
        assert!((rx[1] - Complex64::new(0.0, -(t / 2.0).sin())).norm() < 1e-15);
        let rz = simulate(1, &[Gate::H(0), Gate::Rz { qubit: 0, angle: t }]);
        assert!((rz[1] / rz[0] - Complex64::from_polar(1.0, t)).norm() < 1e-14);
    }

    #[test]
    fn parse_round_trip() {
        let c = Circuit {
            n: 3,
            gates: vec![
                Gate::H(0),
                Gate::Cx { control: 0, target: 2 },
                Gate::Rz { qubit: 2, angle: -1.25e-7 },
                Gate::Rx { qubit: 1, angle: 0.1 + 0.2 },
            ],
            layers: 1,
            cost_layer_depth: 3,
            gadgets: vec![(vec![0, 2], 0.5)],
        };
        let p = parse(&emit(&c, 2.5)).unwrap();
        assert_eq!(p.n, 3);
        assert_eq!(p.gates, c.gates);
        assert_eq!(p.header[KEY_LAYERS], "1");
        assert_eq!(p.header[KEY_DEPTH], c.depth().to_string());
    }

    #[test]
    fn parse_rejects() {
        assert!(parse("h q[0];").is_err());
        assert!(parse("qreg q[1];\nh q[1];").is_err());
        assert!(parse("qreg q[2];\nswap q[0],q[1];").is_err());
        assert!(parse("qreg q[2];\nrz q[0];").is_err());
    }
}
