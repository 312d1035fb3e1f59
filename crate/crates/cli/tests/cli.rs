use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_infocausal"));
    for var in ["INFOCAUSAL_TOLERANCE", "INFOCAUSAL_GRID_DENSITY", "INFOCAUSAL_SEED", "INFOCAUSAL_FORMAT"] {
        c.env_remove(var);
    }
    c
}

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

#[test]
fn list_shows_registry() {
    let o = run(&["list"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("min-ic3"));
    assert!(text.contains("octagon-ic2"));
    assert!(text.lines().count() >= 9);
}

#[test]
fn run_max_ic3_json() {
    let o = run(&["run", "max-ic3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v = json(&o);
    assert_eq!(v["score"], 3.0);
    assert_eq!(v["pass"], true);
    assert!(v.get("wall_time_ms").is_none());
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["pass"] == true));
}

#[test]
fn run_min_ic3_csv() {
    let o = run(&["run", "min-ic3", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0], "scenario,score_bits,bound_bits,violation,pass");
    let cols: Vec<&str> = lines[1].split(',').collect();
    assert_eq!(cols[0], "min-ic3");
    let score: f64 = cols[1].parse().unwrap();
    assert!((score - 2.188721875540867).abs() < 1e-9);
    assert_eq!(&cols[2..], ["2", "true", "true"]);
}

#[test]
fn unknown_scenario_is_a_usage_error() {
    let o = run(&["run", "no-such"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("min-ic3"));
}

#[test]
fn failed_expectation_exits_one_with_diff() {
    // A tolerance of 1 accepts E1 as a quantum effect.
    let o = run(&["run", "cone-structure", "--tolerance", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("e1_quantum_effect"));
    assert_eq!(json(&o)["pass"], false);
}

#[test]
fn bad_arguments_are_usage_errors() {
    assert_eq!(run(&[]).status.code(), Some(2));
    assert_eq!(run(&["run"]).status.code(), Some(2));
    assert_eq!(run(&["--tolerance", "0", "list"]).status.code(), Some(2));
    assert_eq!(run(&["--grid-density", "4", "list"]).status.code(), Some(2));
    assert_eq!(run(&["--format", "xml", "list"]).status.code(), Some(2));
    assert_eq!(run(&["check", "popt", "/nonexistent.json"]).status.code(), Some(2));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn environment_overrides() {
    let o = bin().args(["run", "min-ic3"]).env("INFOCAUSAL_FORMAT", "csv").output().unwrap();
    assert!(stdout(&o).starts_with("scenario,"));
    let o = bin().args(["list"]).env("INFOCAUSAL_TOLERANCE", "-1").output().unwrap();
    assert_eq!(o.status.code(), Some(2));
    // flags win over the environment
    let o = bin()
        .args(["run", "min-ic3", "--format", "json"])
        .env("INFOCAUSAL_FORMAT", "csv")
        .output()
        .unwrap();
    assert_eq!(json(&o)["scenario"], "min-ic3");
}

#[test]
fn check_popt_partial_transpose_of_bell_state() {
    let path = data("gamma_phi_plus.json");
    let o = run(&["check", "popt", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["member"], true);
    assert!(v["min_value"].as_f64().unwrap().abs() < 1e-9);
}

#[test]
fn check_effect_reports_negative_eigenvalue() {
    let path = data("e1.json");
    let o = run(&["check", "effect", path.to_str().unwrap(), "--rule", "quantum"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["valid"], false);
    assert!((v["min_eigenvalue"].as_f64().unwrap() + 0.5).abs() < 1e-9);

    let path = data("e1_minimal.json");
    let v = json(&run(&["check", "effect", path.to_str().unwrap()]));
    assert_eq!(v["rule"], "minimal");
    assert_eq!(v["valid"], true);
    assert!(v["popt_min"].as_f64().unwrap() > -1e-9);
}

#[test]
fn check_state_needs_certificate_under_minimal() {
    let cert = data("product_state.json");
    let o = run(&["check", "state", cert.to_str().unwrap(), "--rule", "minimal"]);
    assert_eq!(json(&o)["valid"], true);
    let bare = data("gamma_phi_plus.json");
    let o = run(&["check", "state", bare.to_str().unwrap(), "--rule", "minimal"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("certificate"));
    let v = json(&run(&["check", "state", bare.to_str().unwrap(), "--rule", "maximal"]));
    assert_eq!(v["valid"], true);
}

#[test]
fn check_game_documents() {
    let expect = [
        ("min_ic3_game.json", 2.188721875540867, true),
        ("max_ic3_game.json", 3.0, true),
        ("square_game.json", 2.0, true),
        ("octagon_game.json", 1.1275706601435318, true),
        ("quantum_baseline_game.json", 2.0, false),
    ];
    for (file, score, violation) in expect {
        let path = data(file);
        let o = run(&["check", "game", path.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{file}: {}", stderr(&o));
        let v = json(&o);
        assert!((v["score"].as_f64().unwrap() - score).abs() < 1e-9, "{file}");
        assert_eq!(v["violation"], violation, "{file}");
    }
}

#[test]
fn game_strategy_invalid_in_theory() {
    let text = std::fs::read_to_string(data("min_ic3_game.json")).unwrap();
    let quantum = text.replace("\"minimal\"", "\"quantum\"");
    let path = std::env::temp_dir().join(format!("infocausal-cli-{}.json", std::process::id()));
    std::fs::write(&path, quantum).unwrap();
    let o = run(&["check", "game", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("bit 1"), "{}", stderr(&o));
}

#[test]
fn schema_errors_name_the_field() {
    let path = std::env::temp_dir().join(format!("infocausal-schema-{}.json", std::process::id()));
    std::fs::write(&path, r#"{"operator": {"dim": 4, "entries": 3}}"#).unwrap();
    let o = run(&["check", "popt", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("operator.entries"), "{}", stderr(&o));
}

#[test]
fn output_is_byte_identical_across_runs() {
    let a = run(&["run", "--all", "--seed", "11"]);
    let b = run(&["run", "--all", "--seed", "11"]);
    assert_eq!(a.status.code(), Some(0), "{}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);
    let reports = json(&a);
    assert_eq!(reports.as_array().unwrap().len(), 11);
}

#[test]
fn timings_are_opt_in() {
    let v = json(&run(&["run", "capacity-square", "--timings"]));
    assert!(v["wall_time_ms"].as_f64().unwrap() >= 0.0);
}
