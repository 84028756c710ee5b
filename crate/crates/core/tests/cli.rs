use std::path::Path;
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_wsat");

fn wsat(dir: &Path, args: &[&str]) -> Output {
    Command::new(BIN).current_dir(dir).args(args).output().expect("run wsat")
}

fn ok(dir: &Path, args: &[&str]) -> String {
    let out = wsat(dir, args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn exact_and_predict() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert!(ok(d, &["exact", "--host", "kn:5", "--pattern", "ks:3"]).starts_with("wsat = 4 (exhaustive)"));
    let json: serde_json::Value =
        serde_json::from_str(&ok(d, &["exact", "--host", "knl:2,3", "--pattern", "kst:2,2", "--bipartite", "--json"])).unwrap();
    assert_eq!(json["value"], 4);
    assert_eq!(json["optimality"], "exhaustive");
    let json: serde_json::Value =
        serde_json::from_str(&ok(d, &["predict", "--host", "kn:9", "--pattern", "kst:3,3", "--json"])).unwrap();
    assert_eq!(json["lower"], 17);
    assert_eq!(json["upper"], 17);
    assert!(ok(d, &["predict", "--host", "kn:9", "--pattern", "barbell:3"]).starts_with("interval [0, 9]"));
    assert_eq!(ok(d, &["predict", "--host", "knl:3,4", "--pattern", "ks:3"]).trim(), "no prediction");
}

#[test]
fn construct_closure_and_trace_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    ok(d, &["construct", "--family", "lovasz", "--n", "6", "--s", "3", "--out", "f.txt"]);
    assert!(std::fs::read_to_string(d.join("f.txt")).unwrap().starts_with("6 5\n"));
    let msg = ok(d, &["closure", "--host", "kn:6", "--pattern", "ks:3", "--initial", "f.txt", "--out", "c.txt", "--trace", "t.json"]);
    assert!(msg.contains("saturated: true"));
    assert!(ok(d, &["verify-trace", "--host", "kn:6", "--pattern", "ks:3", "--trace", "t.json"]).starts_with("valid"));

    // Shrink the start graph so later witnesses lose edges.
    let mut trace: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(d.join("t.json")).unwrap()).unwrap();
    trace["initial_edges"] = serde_json::json!([[0, 1], [0, 2]]);
    std::fs::write(d.join("bad.json"), trace.to_string()).unwrap();
    let out = wsat(d, &["verify-trace", "--host", "kn:6", "--pattern", "ks:3", "--trace", "bad.json"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("invalid"));

    let s: serde_json::Value =
        serde_json::from_str(&ok(d, &["structure", "find", "--graph", "c.txt", "-t", "3", "--json"])).unwrap();
    assert_eq!(s["core_size"], 3);
    assert_eq!(s["ordering"].as_array().unwrap().len(), 6);
}

#[test]
fn contract_violations_exit_nonzero() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    for args in [
        vec!["exact", "--host", "kn:5", "--pattern", "nope:3"],
        vec!["construct", "--family", "barbell-cliques", "--n", "10", "-t", "3"],
        vec!["experiment", "sweep", "--n", "100", "-t", "3", "--p", "1.5", "--trials", "3"],
        vec!["experiment", "sweep", "--n", "100", "-t", "3", "--p", "0.5", "--trials", "0"],
        vec!["experiment", "threshold", "--n", "500", "-t", "3", "--pmul", "20,40", "--trials", "5"],
        vec!["transfer", "demo", "--pattern", "ks:3", "--n", "201", "--p", "0.5"],
    ] {
        let out = wsat(d, &args);
        assert!(!out.status.success(), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn experiment_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    ok(d, &["experiment", "sweep", "--n", "500", "-t", "3", "--p", "1,0", "--trials", "10", "--seed", "1", "--out", "s.csv"]);
    let csv = std::fs::read_to_string(d.join("s.csv")).unwrap();
    assert_eq!(csv, "n,t,p,multiplier,trials,successes,metric,seed\n500,3,0,,10,0,fast,1\n500,3,1,,10,10,fast,1\n");
    ok(d, &["experiment", "t2", "--n", "200", "--p", "1", "--trials", "3", "--out", "t2.csv"]);
    assert!(std::fs::read_to_string(d.join("t2.csv")).unwrap().ends_with("200,1,3,0,3,0,0,0\n"));
    ok(d, &["experiment", "isolated", "--n", "200", "--p", "0", "--trials", "2", "--out", "i.csv"]);
    assert_eq!(
        std::fs::read_to_string(d.join("i.csv")).unwrap(),
        "n,p,trial,isolated_edges,seed\n200,0,0,0,0\n200,0,1,0,0\n"
    );
}
