//! End-to-end behaviour of the `modrep` binary and the scenario runner.

use std::path::Path;
use std::process::Command;

use modrep_cli::{run_scenario, Cache, FailureClass, RunOptions, Scenario, Task};

fn modrep(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_modrep")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8_lossy(&out.stdout).into_owned())
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn small() -> Scenario {
    let mut s = Scenario::adhoc("S3", Some("C2"), 2, 2, vec![Task::Identification, Task::Scott, Task::MoritaLift]);
    s.expect.verdict = Some("morita".into());
    s
}

#[test]
fn empty_task_list_gives_empty_report_and_exit_zero() {
    let dir = tempfile::tempdir().unwrap();
    let sc = write(dir.path(), "empty.json", r#"{"schema_version": 1, "first": "C2", "prime": 2}"#);
    let report = dir.path().join("r.json");
    let (code, _) = modrep(&["run", &sc, "--report", report.to_str().unwrap()]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(report).unwrap()).unwrap();
    assert_eq!(v["tasks"], serde_json::json!([]));
    assert_eq!(v["passed"], true);
}

#[test]
fn unknown_scenario_field_is_a_schema_error() {
    let dir = tempfile::tempdir().unwrap();
    let sc = write(dir.path(), "bad.json", r#"{"schema_version": 1, "first": "C2", "prime": 2, "colour": 1}"#);
    assert_eq!(modrep(&["run", &sc]).0, 2);
    let sc = write(dir.path(), "bad2.json", r#"{"schema_version": 1, "first": "C2", "prime": 2, "tasks": ["fly"]}"#);
    assert_eq!(modrep(&["run", &sc]).0, 2);
    let sc = write(dir.path(), "bad3.json", r#"{"schema_version": 7, "first": "C2", "prime": 2}"#);
    assert_eq!(modrep(&["run", &sc]).0, 2);
}

#[test]
fn non_isomorphic_sylows_exit_with_identification_code() {
    let (code, out) = modrep(&["check", "gluing", "S4", "S3", "--prime", "2"]);
    assert_eq!(code, 4, "{out}");
}

#[test]
fn mismatched_fusion_exits_with_hypothesis_code() {
    let (code, out) = modrep(&["check", "gluing", "A4", "(1,2);(3,4)", "--prime", "2", "--field-degree", "2"]);
    assert_eq!(code, 3, "{out}");
}

#[test]
fn oversized_sylow_exits_with_cap_code() {
    assert_eq!(modrep(&["fusion", "S8", "--prime", "2"]).0, 5);
}

#[test]
fn exceeded_budget_has_its_own_code() {
    let (code, out) = modrep(&["scott", "S4", "S3", "--prime", "3", "--field-degree", "2", "--budget-secs", "0"]);
    assert_eq!(code, 6, "{out}");
}

#[test]
fn failed_expectation_is_a_mathematical_failure() {
    let mut sc = small();
    sc.expect.verdict = Some("none".into());
    let r = run_scenario(&sc, &RunOptions::default(), None);
    assert_eq!(r.failure.as_ref().unwrap().class, FailureClass::Assertion);
    assert_eq!(r.exit_code(), 1);
}

#[test]
fn reports_are_byte_identical_for_a_fixed_seed() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let (code, _) = modrep(&["check", "morita-lift", "S4", "S3", "--prime", "3", "--field-degree", "2", "--report", p.to_str().unwrap()]);
        assert_eq!(code, 0);
    }
    assert_eq!(std::fs::read(a).unwrap(), std::fs::read(b).unwrap());
}

#[test]
fn cold_and_warm_cache_runs_agree() {
    let dir = tempfile::tempdir().unwrap();
    let cache = Cache::new(dir.path()).unwrap();
    let sc = small();
    let opts = RunOptions::default();
    let cold = run_scenario(&sc, &opts, Some(&cache));
    assert_eq!((cache.hits(), cache.misses()), (0, 1));
    let warm = run_scenario(&sc, &opts, Some(&cache));
    assert_eq!((cache.hits(), cache.misses()), (1, 1));
    let off = run_scenario(&sc, &opts, None);
    assert!(cold.passed);
    assert_eq!(cold.to_json(), warm.to_json());
    assert_eq!(cold.to_json(), off.to_json());
}

#[test]
fn corrupt_cache_entry_is_recomputed() {
    let dir = tempfile::tempdir().unwrap();
    let cache = Cache::new(dir.path()).unwrap();
    let sc = small();
    let opts = RunOptions::default();
    let first = run_scenario(&sc, &opts, Some(&cache));
    let entries: Vec<_> = std::fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().path()).collect();
    assert_eq!(entries.len(), 1);
    let text = std::fs::read_to_string(&entries[0]).unwrap();
    let pos = text.find("\"matrices\":[\"").unwrap() + 13;
    let mut bytes = text.into_bytes();
    bytes[pos] = if bytes[pos] == b'0' { b'1' } else { b'0' };
    std::fs::write(&entries[0], bytes).unwrap();
    let second = run_scenario(&sc, &opts, Some(&cache));
    assert_eq!(cache.misses(), 2);
    assert_eq!(first.to_json(), second.to_json());
    std::fs::write(&entries[0], "not json").unwrap();
    let third = run_scenario(&sc, &opts, Some(&cache));
    assert_eq!(cache.misses(), 3);
    assert_eq!(first.to_json(), third.to_json());
}

#[test]
fn version_bump_recomputes_everything() {
    let dir = tempfile::tempdir().unwrap();
    let sc = small();
    let opts = RunOptions::default();
    let old = Cache::with_version(dir.path(), "0.0.1").unwrap();
    run_scenario(&sc, &opts, Some(&old));
    let new = Cache::with_version(dir.path(), "0.0.2").unwrap();
    run_scenario(&sc, &opts, Some(&new));
    assert_eq!((new.hits(), new.misses()), (0, 1));
}

#[test]
fn explicit_identification_by_generator_images() {
    let text = r#"{
        "schema_version": 1, "first": "S3", "second": "C2", "prime": 2, "field_degree": 2,
        "identification": {"method": "generator-images", "first_sylow": ["(1,2)"], "images": ["(1,2)"]},
        "tasks": ["identification", "morita-lift"],
        "expect": {"verdict": "morita"}
    }"#;
    let r = run_scenario(&Scenario::parse(text).unwrap(), &RunOptions::default(), None);
    assert!(r.passed, "{}", r.summary());
    let bad = text.replace(r#""first_sylow": ["(1,2)"]"#, r#""first_sylow": ["(1,2,3)"]"#);
    let r = run_scenario(&Scenario::parse(&bad).unwrap(), &RunOptions::default(), None);
    assert_eq!(r.exit_code(), 4);
}

#[test]
fn bundled_scenario_matches_its_schema_keys() {
    let schema: serde_json::Value =
        serde_json::from_str(include_str!("../schemas/scenario.schema.json")).unwrap();
    let props = schema["properties"].as_object().unwrap();
    let sc: serde_json::Value = serde_json::to_value(Scenario::sl2_example()).unwrap();
    for key in sc.as_object().unwrap().keys() {
        assert!(props.contains_key(key), "{key} missing from the schema");
    }
    for key in schema["properties"]["expect"]["properties"].as_object().unwrap().keys() {
        let probe = format!(r#"{{"schema_version": 1, "first": "C2", "prime": 2, "expect": {{"{key}": null}}}}"#);
        assert!(Scenario::parse(&probe).is_ok(), "schema lists unknown expectation {key}");
    }
}

#[test]
fn field_too_small_is_escalated() {
    let sc = Scenario::adhoc("C3", None, 2, 1, vec![Task::Blocks]);
    let r = run_scenario(&sc, &RunOptions::default(), None);
    assert!(r.passed, "{}", r.summary());
    assert!(r.field_degree > 1);
    assert_eq!(r.scenario_hash, sc.hash());
}
