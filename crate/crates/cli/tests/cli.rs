use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn pamcpp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pamcpp")).args(args).output().expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let out = pamcpp(args);
    assert!(out.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn golden() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data/golden.pamcpp.json")
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

/// Generates a 3-robot instance and solves it, returning (dir, instance, plan).
fn solved() -> (TempDir, PathBuf, PathBuf) {
    let dir = TempDir::new().unwrap();
    let inst = dir.path().join("i.json");
    let plan = dir.path().join("p.json");
    ok(&["generate", "--seed", "3", "--size", "16x16", "--zones", "3", "--robots", "3", "-o", s(&inst)]);
    ok(&["solve", s(&inst), "--plan", s(&plan), "-o", s(&dir.path().join("r.json"))]);
    (dir, inst, plan)
}

#[test]
fn generate_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    for p in [&a, &b] {
        ok(&["generate", "--seed", "1", "--size", "20x20", "--zones", "4", "--robots", "3", "-o", s(p)]);
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn odd_sizes_are_rejected() {
    let out = pamcpp(&["generate", "--size", "21x20"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("dimensions must be even"));
}

#[test]
fn crowded_maps_fail_placement() {
    let out = pamcpp(&["generate", "--size", "4x4", "--zones", "9"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn uniform_costs_stay_in_range() {
    let doc: Value = serde_json::from_str(&ok(&["generate", "--seed", "2", "--size", "12x12", "--costs", "uniform"])).unwrap();
    let costs = doc["cell_costs"].as_array().unwrap();
    assert!(!costs.is_empty());
    assert!(costs.iter().all(|c| (0.8..=1.2).contains(&c.as_f64().unwrap())));
}

#[test]
fn reports_match_the_schema() {
    let schema: Value =
        serde_json::from_str(include_str!("../schemas/report.schema.json")).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    let report: Value = serde_json::from_str(&ok(&["solve", s(&golden()), "--baseline", "--trace"])).unwrap();
    let errors: Vec<String> = validator.iter_errors(&report).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{errors:?}");
    let stages: Vec<&String> = report["runtime_breakdown"].as_object().unwrap().keys().collect();
    assert_eq!(stages.len(), 4);
    let mut broken = report.clone();
    broken["metrics"]["mmr"] = Value::from(0.5);
    assert!(!validator.is_valid(&broken));
}

#[test]
fn golden_instance_beats_baseline() {
    let report: Value = serde_json::from_str(&ok(&["solve", s(&golden()), "--baseline"])).unwrap();
    let solver = report["metrics"]["weighted_latency"].as_f64().unwrap();
    let baseline = report["metrics_baseline"]["weighted_latency"].as_f64().unwrap();
    assert!(solver <= baseline, "{solver} > {baseline}");
}

#[test]
fn solving_twice_gives_identical_files() {
    let dir = TempDir::new().unwrap();
    let mut files = Vec::new();
    for run in 0..2 {
        let (r, p) = (dir.path().join(format!("r{run}.json")), dir.path().join(format!("p{run}.json")));
        ok(&["solve", s(&golden()), "--baseline", "--trace", "--zero-timings", "--plan", s(&p), "-o", s(&r)]);
        files.push((std::fs::read(r).unwrap(), std::fs::read(p).unwrap()));
    }
    assert_eq!(files[0], files[1]);
}

#[test]
fn longer_search_never_raises_the_surrogate() {
    let surrogate = |n: &str| {
        let r: Value = serde_json::from_str(&ok(&["solve", s(&golden()), "--ls-iterations", n])).unwrap();
        r["surrogate"].as_f64().unwrap()
    };
    assert!(surrogate("2000") <= surrogate("0"));
}

#[test]
fn evaluate_reproduces_solve_metrics() {
    let (dir, inst, plan) = solved();
    let metrics: Value = serde_json::from_str(&ok(&["evaluate", s(&inst), s(&plan)])).unwrap();
    assert_eq!(metrics, json(&dir.path().join("r.json"))["metrics"]);
    let keys: Vec<&String> = metrics.as_object().unwrap().keys().collect();
    assert_eq!(keys, ["makespan", "mmr", "weighted_latency", "zone_times"]);
}

#[test]
fn teleporting_plans_are_rejected() {
    let (dir, inst, plan) = solved();
    let mut doc = json(&plan);
    let path = doc["robots"][2]["path"].as_array_mut().unwrap();
    assert!(path.len() > 17);
    let [x, y] = [path[16][0].as_u64().unwrap(), path[16][1].as_u64().unwrap()];
    // A free cell at least two steps from the previous one.
    let far = if x >= 8 { [x - 4, y] } else { [x + 4, y] };
    path[17] = serde_json::json!(far);
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, doc.to_string()).unwrap();
    let out = pamcpp(&["evaluate", s(&inst), s(&bad)]);
    let err = String::from_utf8_lossy(&out.stderr);
    // The generator may put an obstacle there; either way it is an invalid plan.
    assert_eq!(out.status.code(), Some(4), "{err}");
    assert!(err.contains("robot 2 index 17"), "{err}");
}

#[test]
fn plans_missing_a_cell_are_rejected() {
    let (dir, _, _) = solved();
    let inst = dir.path().join("open.json");
    std::fs::write(
        &inst,
        r#"{"width":2,"height":2,"rows":["..",".."],"zones":[],"robots":[[0,0]]}"#,
    )
    .unwrap();
    let plan = dir.path().join("short.json");
    std::fs::write(&plan, r#"{"robots":[{"path":[[0,0],[1,0],[1,1]],"phase_boundary":1}],"assignment":[[]]}"#).unwrap();
    let out = pamcpp(&["evaluate", s(&inst), s(&plan)]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("coverage incomplete"));
}

#[test]
fn malformed_instances_exit_four() {
    let dir = TempDir::new().unwrap();
    let inst = dir.path().join("bad.json");
    std::fs::write(&inst, r##"{"width":4,"height":4,"rows":["#...","....","....","...."],"zones":[],"robots":[[1,1]]}"##).unwrap();
    let out = pamcpp(&["solve", s(&inst)]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("partially blocked"));
    assert_eq!(pamcpp(&["solve", s(&dir.path().join("missing.json"))]).status.code(), Some(2));
}

#[test]
fn bench_is_reproducible() {
    let args = ["bench", "--size", "12x12", "--zones", "2", "--robots", "2", "--trials", "10", "--json"];
    let a = ok(&args);
    assert_eq!(a, ok(&args));
    let rows: Value = serde_json::from_str(&a).unwrap();
    let row = &rows[0];
    assert_eq!(row["trials"], 10);
    let (sv, bv) = (
        row["weighted_latency"]["solver"]["mean"].as_f64().unwrap(),
        row["weighted_latency"]["baseline"]["mean"].as_f64().unwrap(),
    );
    assert!(sv <= bv);
}

#[test]
fn bench_sweeps_robot_counts() {
    let out = ok(&[
        "bench", "--instance", s(&golden()), "--trials", "3", "--sweep", "robots=2,4,6,8", "--json",
    ]);
    let rows: Value = serde_json::from_str(&out).unwrap();
    let robots: Vec<u64> = rows.as_array().unwrap().iter().map(|r| r["robots"].as_u64().unwrap()).collect();
    assert_eq!(robots, [2, 4, 6, 8]);
    let table = ok(&["bench", "--instance", s(&golden()), "--trials", "2"]);
    assert_eq!(table.lines().count(), 2);
    assert!(table.contains('±'));
}

#[test]
fn render_counts_elements() {
    let (dir, inst, plan) = solved();
    let zones = json(&inst)["zones"].as_array().unwrap().len();
    let bare = ok(&["render", s(&inst)]);
    assert_eq!(bare.matches(r#"class="zone""#).count(), zones);
    assert_eq!(bare.matches("<polyline").count(), 0);
    let with_plan = ok(&["render", s(&inst), "--plan", s(&plan)]);
    assert_eq!(with_plan.matches("<polyline").count(), 3);

    // Zones covering the whole map leave nothing for the residual phase.
    let full = dir.path().join("full.json");
    std::fs::write(
        &full,
        r#"{"width":4,"height":2,"rows":["....","...."],"zones":[{"id":0,"weight":2.0,"cells":[[0,0],[1,0],[0,1],[1,1]]},{"id":1,"weight":1.0,"cells":[[2,0],[3,0],[2,1],[3,1]]}],"robots":[[0,0]]}"#,
    )
    .unwrap();
    let full_plan = dir.path().join("full_plan.json");
    ok(&["solve", s(&full), "--plan", s(&full_plan)]);
    let svg = ok(&["render", s(&full), "--plan", s(&full_plan)]);
    assert_eq!(svg.matches("stroke-dasharray").count(), 0);
    assert!(svg.contains("w=2"));
}
