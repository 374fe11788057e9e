use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn ttqc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ttqc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn data(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .display()
        .to_string()
}

fn assert_csv_close(got: &str, want: &str) {
    let (got, want): (Vec<_>, Vec<_>) = (got.lines().collect(), want.lines().collect());
    assert_eq!(got.len(), want.len());
    assert_eq!(got[0], want[0]);
    for (g, w) in got.iter().zip(&want).skip(1) {
        for (a, b) in g.split(',').zip(w.split(',')) {
            match (a.parse::<f64>(), b.parse::<f64>()) {
                (Ok(x), Ok(y)) => assert!((x - y).abs() <= 1e-12, "{g}\n{w}"),
                _ => assert_eq!(a, b),
            }
        }
    }
}

#[test]
fn state_prints_singlet_at_gluon_threshold() {
    let doc = stdout_json(&ttqc(&["state", "--channel", "gg", "--beta", "0", "--theta", "1.0"]));
    assert_eq!(doc["channel"], "gg");
    let rho = &doc["density_matrix"];
    assert_eq!(rho[1][2][0].as_f64().unwrap(), -0.5);
    assert_eq!(rho[1][1][0].as_f64().unwrap(), 0.5);
    assert_eq!(rho[0][0][0].as_f64().unwrap(), 0.0);
    let q = &doc["quantifiers"];
    for key in ["bell", "steering", "concurrence"] {
        assert!((q[key].as_f64().unwrap() - 1.0).abs() < 1e-12, "{key}");
    }
    assert!((q["gqd"].as_f64().unwrap() - 0.5).abs() < 1e-12);
}

#[test]
fn state_accepts_negative_theta() {
    let doc = stdout_json(&ttqc(&["state", "--channel", "qq", "--beta", "0.5", "--theta", "-1.0"]));
    let mirrored = stdout_json(&ttqc(&["state", "--channel", "qq", "--beta", "0.5", "--theta", "1.0"]));
    assert_eq!(doc["quantifiers"], mirrored["quantifiers"]);
}

#[test]
fn teleport_through_noisy_resource() {
    let half_pi = std::f64::consts::FRAC_PI_2.to_string();
    let base = ["teleport", "--channel", "gg", "--beta", "0", "--theta", "1.0", "--varphi", &half_pi, "--phi", "0"];
    let clean = stdout_json(&ttqc(&base));
    assert!((clean["fidelity_direct"].as_f64().unwrap() - 1.0).abs() < 1e-12);

    let mut noisy = base.to_vec();
    noisy.extend(["--kind", "PD", "--p", "1"]);
    let doc = stdout_json(&ttqc(&noisy));
    assert!((doc["fidelity_direct"].as_f64().unwrap() - 0.5).abs() < 1e-12);
    assert_eq!(doc["quantifiers"]["concurrence"].as_f64().unwrap(), 0.0);
}

#[test]
fn sweep_matches_reference_output() {
    let out = ttqc(&["sweep", "--config", &data("small_sweep.toml")]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let want = std::fs::read_to_string(data("small_sweep.csv")).unwrap();
    assert_csv_close(&String::from_utf8(out.stdout).unwrap(), &want);
}

#[test]
fn sweep_writes_configured_path() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.json");
    let config = dir.path().join("cfg.toml");
    std::fs::write(
        &config,
        format!(
            "channel = \"qq\"\nbeta = {{ min = 0.5, max = 0.5, steps = 1 }}\n\
             theta = {{ min = 0.0, max = 3.141592653589793, steps = 5 }}\n\
             [output]\nformat = \"json\"\npath = {:?}\n",
            path.display().to_string()
        ),
    )
    .unwrap();
    let out = ttqc(&["sweep", "--config", config.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(out.stdout.is_empty());
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["rows"].as_array().unwrap().len(), 5);
    assert_eq!(doc["config"]["channel"], "qq");
}

#[test]
fn preset_output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.csv"), dir.path().join("b.csv"));
    for path in [&a, &b] {
        let out = ttqc(&["preset", "figQCs1-a", "--out", path.to_str().unwrap()]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    }
    let first = std::fs::read(&a).unwrap();
    assert_eq!(first, std::fs::read(&b).unwrap());
    let text = String::from_utf8(first).unwrap();
    assert!(text.starts_with("channel,beta,theta,z,"));
    assert_eq!(text.lines().count(), 101);
}

#[test]
fn unknown_preset_exits_with_two() {
    let out = ttqc(&["preset", "fig99"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("fig99"));
}

#[test]
fn invalid_config_exits_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("bad.toml");
    std::fs::write(&config, "channel = \"gg\"\nbeta = { min = 0.5, max = 0.1, steps = 3 }\ntheta = { min = 0.0, max = 1.0, steps = 2 }\n").unwrap();
    let out = ttqc(&["sweep", "--config", config.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    std::fs::write(&config, "channel = \"gg\"\nbogus = 1\n").unwrap();
    assert_eq!(ttqc(&["sweep", "--config", config.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn out_of_domain_arguments_exit_with_two() {
    let out = ttqc(&["state", "--channel", "gg", "--beta", "1.5", "--theta", "1.0"]);
    assert_eq!(out.status.code(), Some(2));
    let out = ttqc(&["state", "--channel", "tt", "--beta", "0.5", "--theta", "1.0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn io_failures_exit_with_three() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("nope/out.csv");
    let out = ttqc(&["preset", "figQCs1-a", "--out", missing.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));

    let out = ttqc(&["sweep", "--config", dir.path().join("absent.toml").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
}
