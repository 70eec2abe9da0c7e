use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempocorr_cli::config::ScenarioConfig;
use tempocorr_cli::report::REPORT_FIELDS;
use tempocorr_cli::sweep::SweepSpec;

fn dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn scenario(name: &str) -> PathBuf {
    dir().join("scenarios").join(name)
}

fn tempocorr(args: &[&Path]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tempocorr")).args(args).env_remove("TEMPOCORR_TOL").output().unwrap()
}

fn run_report(name: &str) -> Value {
    let out = tempocorr(&[Path::new("run"), &scenario(name)]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn bundled(sub: &str) -> Vec<PathBuf> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir().join(sub))
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "json"))
        .collect();
    files.sort();
    files
}

#[test]
fn bundled_scenarios_report_expected_values() {
    let r = run_report("maximally_mixed_identity.json");
    assert_eq!(r["negativity"], 1.0);
    assert!((r["chsh_max"].as_f64().unwrap() - 2.0 * 2f64.sqrt()).abs() < 1e-12);
    assert_eq!(r["nsit_quantifier"], 0.0);
    assert_eq!(r["entanglement"], "entangled_by_negativity");

    let r = run_report("pure_depolarizing.json");
    assert!((r["nsit_quantifier"].as_f64().unwrap() - 1.0).abs() < 1e-12);

    let r = run_report("rabi_three_step.json");
    assert!((r["k3"].as_f64().unwrap() - 1.5).abs() < 1e-12);
    assert!((r["nsit_quantifier"].as_f64().unwrap() - 0.75).abs() < 1e-12);
    assert_eq!(r["lgi"].as_array().unwrap().len(), 4);
    assert_eq!(r["nsit_conditions"].as_array().unwrap().len(), 5);
}

#[test]
fn report_fields_are_a_closed_set() {
    let expected: BTreeSet<&str> = REPORT_FIELDS.into_iter().collect();
    for path in bundled("scenarios") {
        let out = tempocorr(&[Path::new("run"), &path]);
        let report: Value = serde_json::from_slice(&out.stdout).unwrap();
        let keys: BTreeSet<&str> = report.as_object().unwrap().keys().map(String::as_str).collect();
        assert_eq!(keys, expected, "{}", path.display());
    }
    let three = run_report("three_step_identity.json");
    let subterms: BTreeSet<&str> = three["d_subterms"].as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(subterms, ["d_012bar_02bar", "d_02_012bar", "d_12_012bar", "d_2_12bar"].into_iter().collect());
    assert!(run_report("maximally_mixed_identity.json")["d_subterms"].is_null());
}

#[test]
fn bundled_configs_round_trip() {
    for path in bundled("scenarios") {
        let text = std::fs::read_to_string(&path).unwrap();
        let cfg = ScenarioConfig::from_json(&text).unwrap();
        let again = ScenarioConfig::from_json(&serde_json::to_string(&cfg).unwrap()).unwrap();
        assert_eq!(again, cfg, "{}", path.display());
    }
    for path in bundled("scenarios/sweeps") {
        let spec = SweepSpec::from_json(&std::fs::read_to_string(&path).unwrap()).unwrap();
        let again = SweepSpec::from_json(&serde_json::to_string(&spec).unwrap()).unwrap();
        assert_eq!(again, spec, "{}", path.display());
    }
}

#[test]
fn outputs_are_deterministic() {
    let path = scenario("rabi_three_step.json");
    let a = tempocorr(&[Path::new("run"), &path]);
    let b = tempocorr(&[Path::new("run"), &path]);
    assert_eq!(a.stdout, b.stdout);

    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("report.json");
    let c = tempocorr(&[Path::new("run"), &path, Path::new("--out"), &out]);
    assert!(c.status.success());
    assert_eq!(std::fs::read(&out).unwrap(), a.stdout);

    let s1 = tempocorr(&[Path::new("selftest")]);
    let s2 = tempocorr(&[Path::new("selftest")]);
    assert!(s1.status.success());
    assert_eq!(s1.stdout, s2.stdout);
}

fn write(tmp: &Path, name: &str, text: &str) -> PathBuf {
    let path = tmp.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn validation_errors_exit_2_with_field_path() {
    let tmp = tempfile::tempdir().unwrap();
    let base = std::fs::read_to_string(scenario("maximally_mixed_identity.json")).unwrap();
    let trace = write(
        tmp.path(),
        "trace.json",
        &base.replace(
            r#"{"bloch": [0.0, 0.0, 0.0]}"#,
            r#"{"matrix": [[{"re": 0.45}, {"re": 0.0}], [{"re": 0.0}, {"re": 0.45}]]}"#,
        ),
    );
    let unknown = write(tmp.path(), "unknown.json", &base.replace(r#""steps": 2"#, r#""steps": 2, "seed": 1"#));
    let channel = write(
        tmp.path(),
        "channel.json",
        &base.replace(r#"{"type": "identity"}"#, r#"{"type": "depolarizing", "eta": -0.5}"#),
    );
    let cases = [
        (trace, "initial_state"),
        (unknown, "seed: unknown field"),
        (channel, "channels[0].eta"),
        (tmp.path().join("missing.json"), "missing.json"),
    ];
    for (path, needle) in cases {
        let out = tempocorr(&[Path::new("run"), &path]);
        assert_eq!(out.status.code(), Some(2), "{}", path.display());
        let stderr = String::from_utf8_lossy(&out.stderr);
        assert!(stderr.contains(needle), "{needle}: {stderr}");
        assert!(out.stdout.is_empty());
    }

    let sweep = write(
        tmp.path(),
        "sweep.json",
        r#"{"parameter": "omega_t", "range": {"start": 0, "stop": 1, "count": 3}, "outputs": ["n01"]}"#,
    );
    let csv = tmp.path().join("out.csv");
    let out = tempocorr(&[Path::new("sweep"), &scenario("pure_depolarizing.json"), &sweep, Path::new("--out"), &csv]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("parameter"));
    assert!(!csv.exists());
}

#[test]
fn tolerance_variable_only_tightens() {
    let path = scenario("maximally_mixed_identity.json");
    for (value, want) in [("1e-12", 1e-12), ("1e-3", 1e-9)] {
        let out = Command::new(env!("CARGO_BIN_EXE_tempocorr"))
            .arg("run")
            .arg(&path)
            .env("TEMPOCORR_TOL", value)
            .output()
            .unwrap();
        let report: Value = serde_json::from_slice(&out.stdout).unwrap();
        assert_eq!(report["nsit_tolerance"].as_f64().unwrap(), want);
    }
}

#[test]
fn corrupted_golden_fails_named_check() {
    let text = std::fs::read_to_string(dir().join("golden/matrices.json")).unwrap();
    let mut golden: Value = serde_json::from_str(&text).unwrap();
    let entry = golden.as_array_mut().unwrap().iter_mut().find(|g| g["name"] == "three_step_identity").unwrap();
    entry["matrix"][1][2] = serde_json::json!(0.2);
    let tmp = tempfile::tempdir().unwrap();
    let path = write(tmp.path(), "golden.json", &golden.to_string());
    let out = tempocorr(&[Path::new("selftest"), Path::new("--golden"), &path]);
    assert_eq!(out.status.code(), Some(1));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("FAIL golden/three_step_identity max_deviation=5.000e-2"), "{stdout}");
    assert!(stdout.contains("PASS golden/mixed_identity"));
}

#[test]
fn sweep_writes_expected_header() {
    let tmp = tempfile::tempdir().unwrap();
    let spec = write(
        tmp.path(),
        "tables.json",
        r#"{"parameter": "theta2", "range": {"start": 0, "stop": 3.141592653589793, "count": 5}, "outputs": ["n01", "q_table", "d_table"]}"#,
    );
    let csv = tmp.path().join("tables.csv");
    let out = tempocorr(&[Path::new("sweep"), &scenario("pure_depolarizing.json"), &spec, Path::new("--out"), &csv]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "param,n01,q_0_0,q_0_1,q_1_0,q_1_1,d_0_0,d_0_1,d_1_0,d_1_1");
    assert_eq!(lines.count(), 5);
    assert!(text.ends_with('\n') && !text.contains(",\n"));
}
