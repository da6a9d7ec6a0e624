use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_subspectra"))
        .current_dir(dir)
        .env_remove("SUBSPECTRA_SEED")
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn json(path: impl AsRef<Path>) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

fn synth_clean(dir: &Path) {
    let o = run(dir, &["synth", "--seed", "2", "--atoms", "20", "--m", "3", "--M", "8", "--out", "inst"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn synth_writes_a_replayable_instance() {
    let t = TempDir::new().unwrap();
    let args = ["synth", "--seed", "7", "--atoms", "12", "--m", "2", "--M", "5", "--noise", "0.3", "--delta", "1e-6"];
    assert_eq!(code(&run(t.path(), &[&args[..], &["--out", "a"]].concat())), 0);
    assert_eq!(code(&run(t.path(), &[&args[..], &["--out", "b"]].concat())), 0);
    for f in ["model.json", "trial.json", "subspace.json", "delta.json"] {
        let a = fs::read(t.path().join("a").join(f)).unwrap();
        let b = fs::read(t.path().join("b").join(f)).unwrap();
        assert_eq!(a, b, "{f} differs between runs");
    }
    assert_eq!(json(t.path().join("a/model.json"))["atoms"].as_array().unwrap().len(), 12);
}

#[test]
fn synth_seed_comes_from_the_environment() {
    let t = TempDir::new().unwrap();
    assert_eq!(code(&run(t.path(), &["synth", "--seed", "11", "--out", "flag"])), 0);
    let o = Command::new(env!("CARGO_BIN_EXE_subspectra"))
        .current_dir(t.path())
        .env("SUBSPECTRA_SEED", "11")
        .args(["synth", "--out", "env"])
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
    assert_eq!(fs::read(t.path().join("flag/model.json")).unwrap(), fs::read(t.path().join("env/model.json")).unwrap());
}

#[test]
fn synth_rejects_an_invalid_spec() {
    let t = TempDir::new().unwrap();
    fs::write(
        t.path().join("spec.json"),
        r#"{"seed":1,"n_atoms":0,"subspace":{"count":1},"trial_M":2,"noise_scale":0.1}"#,
    )
    .unwrap();
    assert_eq!(code(&run(t.path(), &["synth", "--spec", "spec.json"])), 2);
    fs::write(t.path().join("bad.json"), r#"{"seed":1,"bogus":true}"#).unwrap();
    assert_eq!(code(&run(t.path(), &["synth", "--spec", "bad.json"])), 2);
}

#[test]
fn detect_finds_the_subspace_dimension() {
    let t = TempDir::new().unwrap();
    synth_clean(t.path());
    let o = run(t.path(), &["detect", "--instance", "inst", "--threshold", "1e-8"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let d = json(t.path().join("detection.json"));
    assert_eq!(d["m"], 3);
    assert_eq!(d["estimates"].as_array().unwrap().len(), 3);
    assert!(d["M"].as_u64().unwrap() >= 4);
    assert!(d["flags"].as_array().unwrap().is_empty());
}

#[test]
fn detect_with_a_huge_threshold_finds_nothing() {
    let t = TempDir::new().unwrap();
    synth_clean(t.path());
    assert_eq!(code(&run(t.path(), &["detect", "--instance", "inst", "--threshold", "1e9"])), 0);
    let d = json(t.path().join("detection.json"));
    assert_eq!(d["m"], 0);
    assert!(d["estimates"].as_array().unwrap().is_empty());
}

#[test]
fn detect_reports_an_exhausted_budget() {
    let t = TempDir::new().unwrap();
    assert_eq!(
        code(&run(t.path(), &["synth", "--seed", "3", "--m", "3", "--M", "6", "--noise", "0.5", "--out", "inst"])),
        0
    );
    let o = run(t.path(), &["detect", "--instance", "inst", "--threshold", "1e-300", "--m-max", "6"]);
    assert_eq!(code(&o), 4);
    let d = json(t.path().join("detection.json"));
    assert!(d["flags"].as_array().unwrap().iter().any(|f| f == "BudgetExhausted"));
}

#[test]
fn bounds_on_the_one_by_one_example() {
    let t = TempDir::new().unwrap();
    let dir = t.path().join("ex");
    fs::create_dir(&dir).unwrap();
    fs::write(dir.join("model.json"), r#"{"atoms":[0.0,1.0,10.0]}"#).unwrap();
    fs::write(dir.join("trial.json"), r#"{"re":[[0.1],[1.0],[0.2]],"im":[[0.0],[0.0],[0.0]]}"#).unwrap();
    fs::write(dir.join("subspace.json"), r#"{"indices":[1]}"#).unwrap();
    let o = run(t.path(), &["bounds", "--instance", "ex", "--method", "master"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let b = json(t.path().join("bounds.json"));
    let row = &b["rows"][0];
    assert!((row["tilde"].as_f64().unwrap() - 1.4 / 1.05).abs() < 1e-12);
    assert!((row["upper"].as_f64().unwrap() - 0.346667).abs() < 1e-6);
    assert!((row["lower"].as_f64().unwrap() + 0.013333).abs() < 1e-6);
    assert_eq!(row["enclosed"], true);
}

#[test]
fn bounds_vanish_without_noise() {
    let t = TempDir::new().unwrap();
    synth_clean(t.path());
    let o = run(t.path(), &["bounds", "--instance", "inst", "--method", "all"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let reports = json(t.path().join("bounds.json"));
    let reports = reports.as_array().unwrap();
    assert_eq!(reports.len(), 5);
    for r in reports {
        for row in r["rows"].as_array().unwrap() {
            assert_eq!(row["lower"].as_f64().unwrap(), 0.0);
            assert_eq!(row["upper"].as_f64().unwrap(), 0.0);
            assert_eq!(row["enclosed"], true);
        }
    }
}

#[test]
fn bounds_refuse_an_ill_conditioned_pencil() {
    let t = TempDir::new().unwrap();
    let o = run(t.path(), &["synth", "--seed", "1", "--m", "2", "--M", "2", "--noise", "20", "--out", "ill"]);
    assert_eq!(code(&o), 0);
    assert_eq!(code(&run(t.path(), &["bounds", "--instance", "ill", "--method", "master"])), 5);
}

#[test]
fn sweep_on_a_nested_instance_is_monotone() {
    let t = TempDir::new().unwrap();
    assert_eq!(
        code(&run(t.path(), &["synth", "--seed", "5", "--m", "2", "--M", "10", "--noise", "0.2", "--out", "inst"])),
        0
    );
    let o = run(t.path(), &["sweep", "--instance", "inst", "--from", "2", "--to", "10"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let text = fs::read_to_string(t.path().join("sweep.csv")).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("M,lambda_m_BMm,epsilon_M,ratio,detected_m"));
    let lambdas: Vec<f64> = lines.map(|l| l.split(',').nth(1).unwrap().parse().unwrap()).collect();
    assert_eq!(lambdas.len(), 9);
    assert!(lambdas.windows(2).all(|w| w[1] >= w[0] - 1e-12 * w[0].abs().max(1.0)));

    assert_eq!(code(&run(t.path(), &["sweep", "--instance", "inst", "--from", "4", "--to", "4", "--out", "one.csv"])), 0);
    assert_eq!(fs::read_to_string(t.path().join("one.csv")).unwrap().lines().count(), 2);
}

#[test]
fn sweep_refuses_a_resampled_protocol() {
    let t = TempDir::new().unwrap();
    fs::write(
        t.path().join("spec.json"),
        r#"{"seed":4,"n_atoms":10,"subspace":{"count":2},"trial_M":6,"noise_scale":0.1}"#,
    )
    .unwrap();
    assert_eq!(code(&run(t.path(), &["sweep", "--spec", "spec.json", "--from", "2", "--to", "6"])), 0);
    assert_eq!(code(&run(t.path(), &["sweep", "--spec", "spec.json", "--resample", "--from", "2", "--to", "6"])), 6);
}

#[test]
fn verify_runs_selected_suites() {
    let t = TempDir::new().unwrap();
    let o = run(t.path(), &["verify", "--trials", "10", "--criteria", "1,2,5,6"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    let v = json(t.path().join("verify.json"));
    assert_eq!(v["passed"], true);
    assert_eq!(v["suites"].as_array().unwrap().len(), 4);
}

#[test]
fn verify_fails_on_injected_invalid_bounds_unless_allowed() {
    let t = TempDir::new().unwrap();
    let o = run(t.path(), &["verify", "--trials", "20", "--criteria", "6", "--inject-invalid-bounds"]);
    assert_eq!(code(&o), 1);
    let o = run(
        t.path(),
        &["verify", "--trials", "20", "--criteria", "6", "--inject-invalid-bounds", "--allow-invalid-bounds"],
    );
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
}
