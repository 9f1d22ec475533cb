//! Subcommand bodies. Each returns the files it produces as `(name, contents)`
//! pairs so that writing, and therefore every byte of output, stays
//! independent of scheduling.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{json, Value};
use sta_perceptron::evolve::{distance_c, transfer_function};
use sta_perceptron::faquad::{adiabaticity_profile, c_tilde, synthesize_faquad, FaquadConfig};
use sta_perceptron::ie::{synthesize, SynthesisConfig};
use sta_perceptron::model::QubitState;
use sta_perceptron::network::{
    branch_fidelities, hadamard_perceptron, perceptron_gate, phase_correction, RegisterState,
};
use sta_perceptron::optimize::{
    scan_coefficients, scan_y, sweep_omega_f, sweep_tf, time_optimal, Sweep, SweepOptions,
};
use sta_perceptron::pulse::config_hash;
use sta_perceptron::Exec;

use crate::config::{NetworkConfig, Prepare, ScanConfig, SweepConfig, SweepKind, TransferConfig};
use crate::error::{CliError, CliResult};

pub type Outputs = Vec<(String, String)>;

/// Distance range used for standalone FAQUAD runs, in units of `Ω_f`.
const FAQUAD_X_MAX: f64 = 12.0;

fn pretty(v: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn echo(cfg: &impl Serialize) -> (String, String) {
    ("config.json".into(), pretty(cfg))
}

pub fn synth(cfg: &SynthesisConfig) -> CliResult<Outputs> {
    cfg.validate()?;
    let r = synthesize(cfg)?;
    let distance = distance_c(&r.pulse, cfg.x_max)?;
    let mut traj = format!("# config_hash: {}\ntime,theta,beta,omega\n", r.pulse.config_hash);
    for (k, &t) in r.beta.grid.iter().enumerate() {
        let _ = writeln!(traj, "{t},{},{},{}", r.theta.theta(t), r.beta.beta[k], r.pulse.omega[k]);
    }
    let diagnostics = json!({
        "provenance": r.pulse.provenance,
        "config_hash": r.pulse.config_hash,
        "diagnostics": r.diagnostics,
        "boundary": r.boundary,
        "theta_coefficients": r.theta.coeffs,
        "distance": distance,
    });
    Ok(vec![
        echo(cfg),
        ("pulse.csv".into(), r.pulse.to_csv()),
        ("trajectory.csv".into(), traj),
        ("diagnostics.json".into(), pretty(&diagnostics)),
    ])
}

pub fn faquad(cfg: &FaquadConfig) -> CliResult<Outputs> {
    cfg.validate()?;
    let pulse = synthesize_faquad(cfg)?;
    let ct = c_tilde(cfg.x_star, cfg.omega_start, cfg.omega_f)?;
    let mu = adiabaticity_profile(&pulse, cfg.x_star)?;
    let mean = mu.iter().sum::<f64>() / mu.len() as f64;
    let var = mu.iter().map(|m| (m - mean).powi(2)).sum::<f64>() / mu.len() as f64;
    let diagnostics = json!({
        "provenance": pulse.provenance,
        "config_hash": pulse.config_hash,
        "c_tilde": ct,
        "mu_mean": mean,
        "mu_relative_std": var.sqrt() / mean,
        "x_max": FAQUAD_X_MAX,
        "distance": distance_c(&pulse, FAQUAD_X_MAX)?,
    });
    Ok(vec![echo(cfg), ("pulse.csv".into(), pulse.to_csv()), ("diagnostics.json".into(), pretty(&diagnostics))])
}

pub fn transfer(cfg: &TransferConfig) -> CliResult<Outputs> {
    let pulse = cfg.pulse.load()?;
    let grid = cfg.grid.values()?;
    let curve = transfer_function(&pulse, &grid, Exec::Parallel)?;
    let distance = distance_c(&pulse, cfg.x_max)?;
    let table = format!("# provenance: {}\n# config_hash: {}\n{}", pulse.provenance, pulse.config_hash, curve.to_csv());
    let summary = json!({
        "provenance": pulse.provenance,
        "config_hash": pulse.config_hash,
        "distance": distance,
        "p_low": distance.p_low(),
        "p_high": distance.p_high(),
        "sigmoid_shaped": curve.is_sigmoid_shaped(),
    });
    let mut out = vec![echo(cfg), ("transfer.csv".into(), table), ("summary.json".into(), pretty(&summary))];
    if cfg.write_pulse {
        out.push(("pulse.csv".into(), pulse.to_csv()));
    }
    Ok(out)
}

fn file_tag(method: &str) -> String {
    method.to_ascii_lowercase().replace('-', "_")
}

/// One row per grid value, one `C` column per method.
fn combined_table(name: &str, sweeps: &[(String, Sweep)]) -> String {
    let mut out = String::from(name);
    for (m, _) in sweeps {
        let _ = write!(out, ",C_{m}");
    }
    out.push('\n');
    let n = sweeps[0].1.records.len();
    for k in 0..n {
        let _ = write!(out, "{}", sweeps[0].1.records[k].param(name).unwrap_or(f64::NAN));
        for (_, s) in sweeps {
            let _ = write!(out, ",{}", s.records[k].c);
        }
        out.push('\n');
    }
    out
}

pub fn sweep(cfg: &SweepConfig) -> CliResult<Outputs> {
    if cfg.methods.is_empty() {
        return Err(CliError::Config("sweep needs at least one method".into()));
    }
    let grid = cfg.grid.values()?;
    let opts = SweepOptions { exec: Exec::Parallel, search: cfg.search, grid: cfg.coefficients.clone() };
    let mut out = vec![echo(cfg)];
    if cfg.kind == SweepKind::TimeOptimal {
        let tol = cfg.tolerance.ok_or_else(|| CliError::Config("time_optimal needs a tolerance".into()))?;
        let mut summary = serde_json::Map::new();
        for &m in &cfg.methods {
            let r = time_optimal(&cfg.template, &grid, tol, m, &opts)?;
            let tag = file_tag(m.as_str());
            let params: serde_json::Map<String, Value> =
                r.record.params.iter().map(|(n, v)| (n.clone(), json!(v))).collect();
            summary.insert(
                m.as_str().into(),
                json!({
                    "t_f": r.t_f,
                    "C": r.record.c,
                    "params": params,
                    "config_hash": r.record.config_hash,
                    "evaluated_t_f": r.evaluations.iter().map(|e| e.param("t_f")).collect::<Vec<_>>(),
                }),
            );
            out.push((format!("pulse_{tag}.csv"), r.pulse.to_csv()));
        }
        out.push(("time_optimal.json".into(), pretty(&json!({ "tolerance": tol, "methods": summary }))));
        return Ok(out);
    }
    let (name, run): (&str, fn(_, _, _, _) -> _) = match cfg.kind {
        SweepKind::Tf => ("t_f", sweep_tf),
        SweepKind::OmegaF => ("omega_f", sweep_omega_f),
        SweepKind::Y => ("y_over_omega_f", scan_y),
        SweepKind::TimeOptimal => unreachable!(),
    };
    let mut sweeps = Vec::new();
    for &m in &cfg.methods {
        let s: Sweep = run(&cfg.template, &grid, m, &opts)?;
        out.push((format!("sweep_{}.csv", file_tag(m.as_str())), s.to_csv()));
        sweeps.push((m.as_str().to_string(), s));
    }
    let summary: serde_json::Map<String, Value> =
        sweeps.iter().map(|(m, s)| (m.clone(), s.summary_json())).collect();
    out.push(("sweep.csv".into(), combined_table(name, &sweeps)));
    out.push(("summary.json".into(), pretty(&summary)));
    Ok(out)
}

pub fn scan(cfg: &ScanConfig) -> CliResult<Outputs> {
    let grid = cfg.grid()?;
    let template = SynthesisConfig { free_coeffs: vec![0.0; cfg.template.degree.saturating_sub(3)], ..cfg.template.clone() };
    let s = scan_coefficients(&template, &grid, Exec::Parallel)?;
    Ok(vec![echo(cfg), ("scan.csv".into(), s.to_csv()), ("summary.json".into(), pretty(&s.summary_json()))])
}

pub fn network(cfg: &NetworkConfig) -> CliResult<Outputs> {
    cfg.layer.validate()?;
    let pulse = cfg.pulse.load()?;
    let input = match &cfg.state_csv {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            RegisterState::from_csv(&text)?
        }
        None => {
            let inputs = cfg.input_amplitudes();
            match cfg.prepare {
                Prepare::Hadamard => hadamard_perceptron(&RegisterState::product(&inputs, QubitState::zero())?),
                Prepare::Protocol => RegisterState::product(&inputs, pulse.initial_state)?,
            }
        }
    };
    let gate = perceptron_gate(&pulse, &cfg.layer, &input, cfg.x_max, Exec::Parallel)?;
    let corrected = phase_correction(&gate.state);
    let fidelity = branch_fidelities(&corrected, &cfg.layer, pulse.omega_f)?;
    let state = if cfg.phase_correction { corrected } else { gate.state.clone() };
    let mut branches = String::from("config,x,population,excitation,fidelity,out_of_range\n");
    for (c, f) in fidelity.iter().enumerate() {
        let b = state.branch(c);
        let _ = writeln!(
            branches,
            "{c},{},{},{},{f},{}",
            cfg.layer.potential(c),
            b.norm_sqr(),
            b.amp1.norm_sqr(),
            gate.out_of_range.contains(&c) as u8
        );
    }
    let summary = json!({
        "provenance": pulse.provenance,
        "pulse_config_hash": pulse.config_hash,
        "layer_hash": config_hash(&cfg.layer),
        "excitation": state.excitation(),
        "out_of_range": gate.out_of_range,
    });
    Ok(vec![
        echo(cfg),
        ("state.csv".into(), state.to_csv()),
        ("branches.csv".into(), branches),
        ("summary.json".into(), pretty(&summary)),
    ])
}
