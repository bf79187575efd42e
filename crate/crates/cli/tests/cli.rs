use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
        .to_str()
        .unwrap()
        .to_owned()
}

fn maxmin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_maxmin")).args(args).output().expect("run maxmin")
}

fn maxmin_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_maxmin"))
        .args(args)
        .env(key, value)
        .output()
        .expect("run maxmin")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn solve_two_private_children() {
    let out = maxmin(&["solve", "--in", &fixture("two_children.json")]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let sol = json(&out);
    assert_eq!(sol["objective"], 100);
    assert_eq!(sol["per_child"]["0"], 100);
    assert_eq!(sol["per_child"]["1"], 100);
}

#[test]
fn child_without_gifts_warns_and_scores_zero() {
    let out = maxmin(&["solve", "--in", &fixture("empty_child.json")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["objective"], 0);
    assert!(stderr(&out).contains("child 1"), "{}", stderr(&out));
}

#[test]
fn malformed_input_exits_one() {
    let out = maxmin(&["solve", "--in", &fixture("garbage.json")]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).starts_with("error:"));
    let missing = maxmin(&["solve", "--in", "/nonexistent/instance.json"]);
    assert_eq!(missing.status.code(), Some(1));
}

#[test]
fn bad_epsilon_exits_one() {
    for eps in ["0", "1/3", "abc", "-1/20"] {
        let out = maxmin(&["solve", "--in", &fixture("two_children.json"), "--epsilon", eps]);
        assert_eq!(out.status.code(), Some(1), "epsilon {eps}");
        let out = maxmin(&["solve", "--in", &fixture("two_children.json"), &format!("--epsilon={eps}")]);
        assert_eq!(out.status.code(), Some(1), "epsilon {eps}");
    }
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(maxmin(&["solve"]).status.code(), Some(1));
    assert_eq!(maxmin(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(maxmin(&["--help"]).status.code(), Some(0));
}

#[test]
fn unreachable_maxmin_target_is_infeasible() {
    let out = maxmin(&["solve", "--in", &fixture("maxmin_small.json"), "--target", "40"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).starts_with("infeasible"), "{}", stderr(&out));
    assert!(out.stdout.is_empty());
}

#[test]
fn maxmin_solution_round_trips_through_verify() {
    let dir = tempfile::tempdir().unwrap();
    let sol = dir.path().join("sol.json");
    let out = maxmin(&["solve", "--in", &fixture("maxmin_small.json"), "--out", sol.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let parsed: Value = serde_json::from_str(&std::fs::read_to_string(&sol).unwrap()).unwrap();
    assert_eq!(parsed["objective"], 5);
    assert_eq!(parsed["basis"], serde_json::json!([0, 1]));

    let ok = maxmin(&["verify", "--in", &fixture("maxmin_small.json"), "--solution", sol.to_str().unwrap()]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&ok.stdout).trim(), "valid");

    // hand resource 4 to both elements
    let mut tampered = parsed.clone();
    tampered["matching"][1]["resources"] = serde_json::json!([4]);
    tampered["matching"][1]["value"] = serde_json::json!(6);
    let bad = write(dir.path(), "bad.json", &tampered.to_string());
    let out = maxmin(&["verify", "--in", &fixture("maxmin_small.json"), "--solution", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("violation"));
}

#[test]
fn santa_solution_round_trips_through_verify() {
    let dir = tempfile::tempdir().unwrap();
    let sol = dir.path().join("sol.json");
    maxmin(&["solve", "--in", &fixture("two_children.json"), "--out", sol.to_str().unwrap()]);
    let ok = maxmin(&["verify", "--in", &fixture("two_children.json"), "--solution", sol.to_str().unwrap()]);
    assert_eq!(ok.status.code(), Some(0), "{}", String::from_utf8_lossy(&ok.stdout));

    // gift 1 is not eligible for child 0
    let mut tampered: Value = serde_json::from_str(&std::fs::read_to_string(&sol).unwrap()).unwrap();
    tampered["assignment"][1]["child"] = serde_json::json!(0);
    let bad = write(dir.path(), "bad.json", &tampered.to_string());
    let out = maxmin(&["verify", "--in", &fixture("two_children.json"), "--solution", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));

    let missing = maxmin(&["verify", "--in", &fixture("two_children.json"), "--solution", "/nonexistent.json"]);
    assert_eq!(missing.status.code(), Some(1));
}

#[test]
fn brute_reports_exact_optima() {
    let santa = maxmin(&["brute", "--in", &fixture("two_children.json")]);
    assert_eq!(santa.status.code(), Some(0));
    assert_eq!(json(&santa)["opt"], 100);
    let mm = maxmin(&["brute", "--in", &fixture("maxmin_small.json")]);
    assert_eq!(json(&mm)["opt"], 9);
}

#[test]
fn brute_refuses_oversized_instances() {
    let dir = tempfile::tempdir().unwrap();
    let gifts: Vec<String> = (0..3).map(|g| format!(r#"{{"id": {g}, "value": 1, "eligible": [0]}}"#)).collect();
    let text = format!(
        r#"{{"kind": "santa", "children": [{}], "gifts": [{}]}}"#,
        (0..9).map(|i| i.to_string()).collect::<Vec<_>>().join(", "),
        gifts.join(", ")
    );
    let path = write(dir.path(), "big.json", &text);
    let out = maxmin(&["brute", "--in", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3), "{}", stderr(&out));
}

#[test]
fn brute_on_an_instance_without_gifts() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "empty.json", r#"{"kind": "santa", "children": [0, 1], "gifts": []}"#);
    let out = maxmin(&["brute", "--in", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert_eq!(json(&out)["opt"], 0);
}

#[test]
fn trace_flag_and_environment_write_jsonl() {
    let dir = tempfile::tempdir().unwrap();
    let trace = dir.path().join("trace.jsonl");
    let out = maxmin(&["solve", "--in", &fixture("maxmin_small.json"), "--trace", trace.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let lines: Vec<Value> = std::fs::read_to_string(&trace)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).expect("each line is JSON"))
        .collect();
    assert!(!lines.is_empty());

    let env = maxmin_env(&["solve", "--in", &fixture("maxmin_small.json")], "MAXMIN_TRACE", "1");
    assert_eq!(env.status.code(), Some(0));
    let traced = stderr(&env);
    assert_eq!(traced.lines().count(), lines.len());
    assert!(traced.lines().all(|l| serde_json::from_str::<Value>(l).is_ok()));

    let sub = maxmin(&["trace", "--in", &fixture("maxmin_small.json")]);
    assert_eq!(String::from_utf8_lossy(&sub.stdout).lines().count(), lines.len());
}

#[test]
fn generate_is_seeded() {
    let a = maxmin(&["generate", "--seed", "3", "--children", "4", "--gifts", "9"]);
    let b = maxmin(&["generate", "--seed", "3", "--children", "4", "--gifts", "9"]);
    let c = maxmin(&["generate", "--seed", "4", "--children", "4", "--gifts", "9"]);
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
    let inst = json(&a);
    assert_eq!(inst["children"].as_array().unwrap().len(), 4);
    assert_eq!(inst["gifts"].as_array().unwrap().len(), 9);
}

#[test]
fn generate_density_extremes() {
    let full = json(&maxmin(&["generate", "--seed", "1", "--children", "5", "--gifts", "6", "--density", "1"]));
    for gift in full["gifts"].as_array().unwrap() {
        assert_eq!(gift["eligible"].as_array().unwrap().len(), 5);
    }
    let out = maxmin(&["generate", "--seed", "1", "--children", "5", "--gifts", "6", "--density", "0"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "sparse.json", &String::from_utf8_lossy(&out.stdout));
    let solved = maxmin(&["solve", "--in", path.to_str().unwrap()]);
    assert_eq!(solved.status.code(), Some(0), "{}", stderr(&solved));
}

#[test]
fn generated_maxmin_instances_solve_or_report_infeasible() {
    let dir = tempfile::tempdir().unwrap();
    for matroid in ["free", "uniform", "partition", "transversal", "dual-transversal", "mixed"] {
        let out = maxmin(&[
            "generate", "--kind", "maxmin", "--matroid", matroid, "--seed", "5", "--children", "4", "--gifts", "8",
            "--values", "uniform:1:4", "--target", "8:16",
        ]);
        assert_eq!(out.status.code(), Some(0), "{matroid}: {}", stderr(&out));
        let path = write(dir.path(), &format!("{matroid}.json"), &String::from_utf8_lossy(&out.stdout));
        let solved = maxmin(&["solve", "--in", path.to_str().unwrap()]);
        assert!(matches!(solved.status.code(), Some(0) | Some(2)), "{matroid}: {}", stderr(&solved));
    }
}

#[test]
fn bench_writes_one_row_per_instance() {
    let dir = tempfile::tempdir().unwrap();
    let suite = dir.path().join("suite");
    std::fs::create_dir(&suite).unwrap();
    for seed in 0..10 {
        let path = suite.join(format!("i{seed:02}.json"));
        let out = maxmin(&["generate", "--seed", &seed.to_string(), "--out", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
    }
    let csv = dir.path().join("bench.csv");
    let out = maxmin(&["bench", "--suite", suite.to_str().unwrap(), "--jobs", "4", "--out", csv.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = std::fs::read_to_string(&csv).unwrap();
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows[0], "instance,kind,status,T,objective,phases,iterations,max_layers,collapses,wall_ms");
    assert_eq!(rows.len(), 11);
    assert!(rows[1].starts_with("i00.json,santa,"));
    assert!(rows[1..].iter().all(|r| !r.ends_with(',')), "timed rows carry wall_ms");

    let capped = maxmin(&["bench", "--suite", suite.to_str().unwrap(), "--assert-iterations", "0", "--no-timing"]);
    assert_eq!(capped.status.code(), Some(4));
}

#[test]
fn bench_on_an_empty_suite_prints_the_header() {
    let dir = tempfile::tempdir().unwrap();
    let out = maxmin(&["bench", "--suite", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        String::from_utf8_lossy(&out.stdout).trim(),
        "instance,kind,status,T,objective,phases,iterations,max_layers,collapses,wall_ms"
    );
}
