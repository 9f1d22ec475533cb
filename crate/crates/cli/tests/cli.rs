use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use sta_perceptron::evolve::{default_transfer_grid, transfer_function};
use sta_perceptron::ie::{synthesize, SynthesisConfig};
use sta_perceptron::Exec;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_sta-perceptron"))
}

fn run(dir: &Path, args: &[&str]) -> Output {
    bin().current_dir(dir).args(args).output().expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    fs::write(dir.join(name), text).unwrap();
    name.to_string()
}

fn read(path: impl AsRef<Path>) -> String {
    fs::read_to_string(path).unwrap()
}

fn json(path: impl AsRef<Path>) -> serde_json::Value {
    serde_json::from_str(&read(path)).unwrap()
}

#[test]
fn synth_reports_reference_initial_field() {
    let tmp = tempfile::tempdir().unwrap();
    let out = run(tmp.path(), &["synth", "--out", "s"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let d = json(tmp.path().join("s/diagnostics.json"));
    let omega0 = d["diagnostics"]["omega_start"].as_f64().unwrap();
    assert!((omega0 - 2000.0).abs() < 20.0, "Ω(0) = {omega0}");
    let echo = json(tmp.path().join("s/config.json"));
    assert_eq!(echo["kappa"], 2000.0);
    assert!(read(tmp.path().join("s/trajectory.csv")).contains("time,theta,beta,omega"));
}

#[test]
fn exit_codes_distinguish_failure_classes() {
    let tmp = tempfile::tempdir().unwrap();
    let d = tmp.path();
    let code = |args: &[&str]| run(d, args).status.code().unwrap();
    let bad = write(d, "bad.json", "{\"t_f\": ");
    assert_eq!(code(&["synth", "--config", &bad]), 3);
    let unknown = write(d, "unknown.json", "{\"t_final\": 1}");
    assert_eq!(code(&["synth", "--config", &unknown]), 3);
    let zero = write(d, "zero.json", "{\"t_f\": 0.0}");
    assert_eq!(code(&["synth", "--config", &zero]), 4);
    assert_eq!(code(&["synth", "--config", "does-not-exist.json"]), 5);
    let empty = write(d, "empty.json", r#"{"kind": "t_f", "grid": [], "methods": ["IE-cubic"]}"#);
    assert_eq!(code(&["sweep", "--config", &empty]), 3);
    assert_eq!(code(&["sweep"]), 3);
    assert_eq!(code(&["preset", "fig9"]), 3);
    fs::write(d.join("blocker"), "").unwrap();
    assert_eq!(code(&["synth", "--out", "blocker/sub"]), 5);
}

#[test]
fn pulse_round_trip_is_bit_exact() {
    let tmp = tempfile::tempdir().unwrap();
    let d = tmp.path();
    let cfg = r#"{"t_f": 0.3, "n_time": 5000}"#;
    let synth_cfg = write(d, "synth.json", cfg);
    assert!(run(d, &["synth", "--config", &synth_cfg, "--out", "s"]).status.success());
    let from_file = write(d, "t1.json", r#"{"pulse": {"pulse_csv": "s/pulse.csv"}}"#);
    let inline = write(d, "t2.json", &format!(r#"{{"pulse": {{"synthesis": {cfg}}}}}"#));
    assert!(run(d, &["transfer", "--config", &from_file, "--out", "a"]).status.success());
    assert!(run(d, &["transfer", "--config", &inline, "--out", "b"]).status.success());
    let a = read(d.join("a/transfer.csv"));
    assert_eq!(a, read(d.join("b/transfer.csv")));
    assert_eq!(read(d.join("a/summary.json")), read(d.join("b/summary.json")));

    // Same numbers as the in-memory computation.
    let pulse = synthesize(&SynthesisConfig { t_f: 0.3, n_time: 5000, ..SynthesisConfig::default() }).unwrap().pulse;
    let curve = transfer_function(&pulse, &default_transfer_grid(12.0), Exec::Sequential).unwrap();
    assert!(a.ends_with(&curve.to_csv()));
}

#[test]
fn output_bytes_do_not_depend_on_thread_count() {
    let tmp = tempfile::tempdir().unwrap();
    let d = tmp.path();
    let sweep = write(
        d,
        "sweep.json",
        r#"{
            "kind": "t_f",
            "template": {"n_time": 2000},
            "grid": {"lo": 0.14, "hi": 0.2, "step": 0.02},
            "methods": ["IE-cubic", "IE-quintic", "FAQUAD"],
            "coefficients": {"a2": [-50, 0, 50], "a3": [-6000, -4000, -2000]},
            "search": "full"
        }"#,
    );
    let network = write(
        d,
        "network.json",
        r#"{
            "layer": {"weights": [6.0, -4.0, 3.0], "bias": 0.5},
            "pulse": {"synthesis": {"t_f": 0.3, "n_time": 2000}}
        }"#,
    );
    for threads in ["1", "3"] {
        let o = run(d, &["sweep", "--config", &sweep, "--out", &format!("sw{threads}"), "--threads", threads]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        let o = run(d, &["network", "--config", &network, "--out", &format!("nw{threads}"), "--threads", threads]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    }
    for (a, b) in [("sw1", "sw3"), ("nw1", "nw3")] {
        let mut names: Vec<_> = fs::read_dir(d.join(a)).unwrap().map(|e| e.unwrap().file_name()).collect();
        names.sort();
        assert!(names.len() >= 4);
        for n in names {
            assert_eq!(fs::read(d.join(a).join(&n)).unwrap(), fs::read(d.join(b).join(&n)).unwrap(), "{n:?}");
        }
    }
    let table = read(d.join("sw1/sweep.csv"));
    assert!(table.starts_with("t_f,C_IE-cubic,C_IE-quintic,C_FAQUAD\n"));
    assert_eq!(table.lines().count(), 5);
}

#[test]
fn network_writes_branch_table() {
    let tmp = tempfile::tempdir().unwrap();
    let d = tmp.path();
    let cfg = write(
        d,
        "n.json",
        r#"{"layer": {"weights": [12.0]}, "pulse": {"synthesis": {"t_f": 1.0}}, "prepare": "protocol"}"#,
    );
    let o = run(d, &["network", "--config", &cfg, "--out", "n"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let branches = read(d.join("n/branches.csv"));
    let rows: Vec<Vec<f64>> = branches
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 2);
    // Branch populations 1/2; excitation follows the transfer curve ends.
    assert!((rows[0][2] - 0.5).abs() < 1e-12 && (rows[1][2] - 0.5).abs() < 1e-12);
    assert!(rows[0][3] < 0.01 && rows[1][3] > 0.49);
    let state = read(d.join("n/state.csv"));
    assert!(state.starts_with("# n_prev: 1\nindex,re,im\n"));

    let mismatch = write(
        d,
        "m.json",
        r#"{"layer": {"weights": [1.0]}, "pulse": {"synthesis": {"t_f": 0.3}}, "inputs": [[1, 0], [0, 0], [0, 0], [0, 0]]}"#,
    );
    assert_eq!(run(d, &["network", "--config", &mismatch]).status.code(), Some(3));
}

#[test]
fn fig5b_preset_reproduces_short_time_transfer_ends() {
    let tmp = tempfile::tempdir().unwrap();
    let d = tmp.path();
    let o = run(d, &["preset", "fig5b", "--out", "p"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let s = |m: &str| json(d.join(format!("p/fig5b/{m}/summary.json")));
    let quintic = s("ie_quintic");
    assert!(quintic["distance"]["c"].as_f64().unwrap() <= 0.02);
    let cubic = s("ie_cubic");
    assert!((cubic["p_low"].as_f64().unwrap() - 0.2).abs() <= 0.05);
    let faquad = s("faquad");
    assert!((faquad["distance"]["c"].as_f64().unwrap() - 0.41).abs() <= 0.05);
    for m in ["ie_cubic", "ie_quintic", "faquad"] {
        assert!(d.join(format!("p/fig5b/{m}/pulse.csv")).exists());
        assert!(d.join(format!("p/fig5b/{m}/config.json")).exists());
    }
}

#[test]
fn scan_command_finds_quartic_minimum() {
    let tmp = tempfile::tempdir().unwrap();
    let d = tmp.path();
    let cfg = write(
        d,
        "scan.json",
        r#"{"template": {"t_f": 0.15, "degree": 4, "free_coeffs": [0]}, "a2": {"lo": -420, "hi": -360, "step": 2}}"#,
    );
    let o = run(d, &["scan", "--config", &cfg, "--out", "sc"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let s = json(d.join("sc/summary.json"));
    assert_eq!(s["records"], 31);
    let a2 = s["argmin"]["params"]["a2"].as_f64().unwrap();
    assert!((a2 + 391.0).abs() <= 25.0, "a2 = {a2}");
    let bad = write(d, "bad.json", r#"{"template": {"degree": 3}}"#);
    assert_eq!(run(d, &["scan", "--config", &bad]).status.code(), Some(3));
}
