use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn planeval(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_planeval")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = planeval(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn path(name: &str) -> String {
    data(name).to_str().unwrap().to_string()
}

fn json(args: &[&str]) -> serde_json::Value {
    serde_json::from_str(&stdout(args)).unwrap()
}

#[test]
fn analyze_cusp() {
    let v = json(&["analyze", "--format", "structured", &path("cusp_s2.json")]);
    assert_eq!(v["invariants"]["beta_bar"], serde_json::json!([2, 3, 6]));
    assert_eq!(v["d_family"]["self_intersections"], serde_json::json!([0, 2, 3]));
    assert!(v.get("verdicts").is_none());
}

#[test]
fn analyze_single_point() {
    let v = json(&["analyze", "--format", "structured", &path("single.json")]);
    assert_eq!(v["invariants"]["beta_bar"], serde_json::json!([1, 1]));
    assert_eq!(v["d_family"]["self_intersections"], serde_json::json!([0]));
}

#[test]
fn decide_family_a4_r4_matches_golden() {
    let out = stdout(&["decide", "--format", "structured", &path("family_a4_r4.json")]);
    let golden = std::fs::read_to_string(data("family_a4_r4.report.json")).unwrap();
    assert_eq!(out, golden);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["d_family"]["d"][18], 16);
    assert_eq!(v["d_family"]["self_intersections"][18], 19);
    for key in [
        "nonpositive",
        "negative",
        "characteristic_cone_closed",
        "cox_finitely_generated",
        "anticanonical_minus_infinity",
    ] {
        assert_eq!(v["verdicts"][key], true, "{key}");
    }
}

#[test]
fn decide_cusp_s1_not_applicable() {
    let v = json(&["decide", "--format", "structured", &path("cusp_s1.json")]);
    assert_eq!(v["verdicts"]["nonpositive"], false);
    assert_eq!(v["verdicts"]["negative"], "not-applicable");
    assert_eq!(v["verdicts"]["cox_finitely_generated"], "not-applicable");
}

#[test]
fn decide_parabola() {
    let v = json(&["decide", "--format", "structured", &path("parabola.json")]);
    assert_eq!(v["verdicts"]["nonpositive"], true);
    assert_eq!(v["verdicts"]["negative"], false);
    assert_eq!(v["verdicts"]["cox_finitely_generated"], true);
}

#[test]
fn dot_matches_golden() {
    let golden = std::fs::read_to_string(data("family_a4_r4.dot")).unwrap();
    for _ in 0..2 {
        assert_eq!(stdout(&["export-dot", &path("family_a4_r4.json")]), golden);
    }
}

#[test]
fn dot_small() {
    let single = stdout(&["export-dot", &path("single.json")]);
    assert!(single.contains("L -- E1;"));
    let cusp = stdout(&["export-dot", &path("cusp_s2.json")]);
    assert!(cusp.contains("E1 -- E3;") && cusp.contains("E2 -- E3;") && cusp.contains("L -- E2;"));
}

#[test]
fn family_skips_by_gcd() {
    let v = json(&["family", "--a", "4", "--r", "4..7", "--format", "structured"]);
    let members: Vec<(u64, u64)> =
        v["members"].as_array().unwrap().iter().map(|m| (m["a"].as_u64().unwrap(), m["r"].as_u64().unwrap())).collect();
    assert_eq!(members, vec![(4, 4), (4, 6)]);
    let skipped: Vec<u64> = v["skipped"].as_array().unwrap().iter().map(|s| s["r"].as_u64().unwrap()).collect();
    assert_eq!(skipped, vec![5, 7]);
    assert!(v["skipped"][0]["reason"].as_str().unwrap().contains("gcd"));
}

#[test]
fn family_single_matches_decide() {
    let v = json(&["family", "--a", "4", "--r", "4", "--format", "structured"]);
    let golden: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(data("family_a4_r4.report.json")).unwrap()).unwrap();
    assert_eq!(v["members"][0]["report"], golden);
}

#[test]
fn empty_range() {
    let v = json(&["sweep", "--a", "5..4", "--r-span", "3", "--format", "structured"]);
    assert_eq!(v, serde_json::json!({"members": [], "skipped": []}));
}

#[test]
fn sweep_is_ordered() {
    let text = stdout(&["sweep", "--a", "4..5", "--r-span", "3"]);
    let first: Vec<&str> = text.lines().map(|l| l.split(':').next().unwrap()).collect();
    assert_eq!(
        first,
        [
            "a = 4, r = 4",
            "a = 4, r = 6",
            "a = 5, r = 5",
            "a = 5, r = 6",
            "a = 5, r = 7",
            "a = 5, r = 8",
            "a = 4, r = 5",
            "a = 4, r = 7"
        ]
    );
}

#[test]
fn eval_parabola() {
    let p = path("parabola.json");
    let v = json(&["eval", &p, "--poly", "x - y^2", "--directions", "0,1,0", "--format", "structured"]);
    assert_eq!(v["value"], 0);
    let w = json(&["eval", &p, "--witness", "zero", "--directions", "0,1,0", "--format", "structured"]);
    assert_eq!(w["witness"]["value"], 0);
    assert_eq!(w["witness"]["f"], "y^2 - x");
}

#[test]
fn eval_cusp_positive_witness() {
    let v = json(&["eval", &path("cusp_s1.json"), "--witness", "positive", "--format", "structured"]);
    assert!(v["witness"]["value"].as_i64().unwrap() > 0);
}

#[test]
fn structured_output_is_deterministic() {
    let p = path("parabola.json");
    let args = ["eval", &p, "--witness", "zero", "--seed", "7", "--format", "structured"];
    assert_eq!(stdout(&args), stdout(&args));
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("r.json");
    let out =
        planeval(&["analyze", &path("cusp_s2.json"), "--format", "structured", "--out", target.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    assert!(std::fs::read_to_string(target).unwrap().contains("\"beta_bar\""));
}

#[test]
fn input_errors_exit_2() {
    for args in [
        vec!["decide".to_string(), path("bad_field.json")],
        vec!["validate".to_string(), path("bad_satellite.json")],
        vec!["analyze".to_string(), path("missing.json")],
        vec!["decide".to_string(), "--field".into(), "prime:8".into(), path("cusp_s2.json")],
        vec!["eval".to_string(), path("cusp_s2.json"), "--poly".into(), "x^".into()],
        vec!["family".to_string(), "--a".into(), "x".into(), "--r".into(), "4".into()],
        vec!["frobnicate".to_string()],
    ] {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let out = planeval(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
    }
    let err = String::from_utf8(planeval(&["decide", &path("bad_field.json")]).stderr).unwrap();
    assert!(err.contains("points[2]"), "{err}");
}

#[test]
fn unsupported_exit_3() {
    // D_m^2 = 0 with a kappa that needs characteristic zero
    let out = planeval(&["decide", "--field", "prime:7", &path("parabola.json")]);
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));
    // more generic directions than non-zero residues
    let out = planeval(&["eval", &path("family_a4_r4.json"), "--field", "prime:5", "--poly", "x"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn validate_structured_is_canonical() {
    let out = stdout(&["validate", "--format", "structured", &path("cusp_s2.json")]);
    let again = {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("c.json");
        std::fs::write(&p, &out).unwrap();
        stdout(&["validate", "--format", "structured", p.to_str().unwrap()])
    };
    assert_eq!(out, again);
}
