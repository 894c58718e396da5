use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn run_env(args: &[&str], env: &[(&str, &str)]) -> (i32, Value, String) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_lazard-lab"));
    cmd.env_remove("LAZARD_MAX_ELEMENTS");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.args(args).output().expect("binary runs");
    let text = String::from_utf8(out.stdout).unwrap();
    let json = serde_json::from_str(&text).unwrap_or_else(|e| panic!("{e}: {text}"));
    (out.status.code().unwrap(), json, text)
}

fn run(args: &[&str]) -> (i32, Value) {
    let (code, json, _) = run_env(args, &[]);
    (code, json)
}

fn path(name: &str) -> String {
    data(name).to_string_lossy().into_owned()
}

#[test]
fn validate_heisenberg() {
    let (code, v) = run(&["validate", &path("heisenberg.toml")]);
    assert_eq!(code, 0);
    assert_eq!(v["ok"], true);
    assert_eq!(v["schema"], "lazard-lab/1");
    assert_eq!(v["result"]["canonical"], true);
    assert_eq!(v["result"]["round_trip"], true);
    assert_eq!(v["input_sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn noncanonical_input_round_trips_to_canonical_text() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("ring.toml");
    std::fs::write(&f, "[ring]\np = 5\nbasis = [\"x\", \"y\", \"z\"]\norders = [5, 5, 5]\n[brackets]\n\"y,x\" = { z = -1 }\n").unwrap();
    let (code, v) = run(&["validate", f.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["canonical"], false);
    let text = v["result"]["text"].as_str().unwrap();
    std::fs::write(&f, text).unwrap();
    let (code, v) = run(&["validate", f.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["canonical"], true);
    assert_eq!(v["result"]["text"].as_str().unwrap(), text);
}

#[test]
fn malformed_input_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("bad.toml");
    std::fs::write(&f, "[ring]\np = 4\nbasis = [\"x\"]\norders = [4]\n").unwrap();
    for cmd in ["validate", "exp", "compare"] {
        let (code, v) = run(&[cmd, f.to_str().unwrap()]);
        assert_eq!(code, 1, "{cmd}");
        assert_eq!(v["status"], "error");
        assert!(v["error"].as_str().unwrap().contains("not a prime"));
    }
}

#[test]
fn abelian_degree_two_compare() {
    let (code, v) = run(&["cohomology", "--degree", "2", "--side", "compare", &path("abelian2.toml")]);
    assert_eq!(code, 0);
    let f = &v["result"]["invariant_factors"];
    assert_eq!(f["lie"]["factors"], serde_json::json!([5, 5, 5]));
    assert_eq!(f["group"]["factors"], serde_json::json!([5, 5, 5]));
    assert_eq!(v["result"]["verdict"], "equal");
}

#[test]
fn heisenberg_h1_both_sides() {
    for side in ["lie", "group"] {
        let (code, v) = run(&["cohomology", "--degree", "1", "--side", side, &path("heisenberg.toml")]);
        assert_eq!(code, 0);
        assert_eq!(v["result"]["invariant_factors"]["factors"], serde_json::json!([5, 5]), "{side}");
    }
}

#[test]
fn exp_and_log() {
    let (code, v) = run(&["exp", &path("heisenberg.toml")]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["order"], 125);
    assert_eq!(v["result"]["gamma_sizes"], serde_json::json!([125, 5, 1]));
    let (code, v) = run(&["log", &path("heisenberg.toml")]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["round_trip"], true);
}

#[test]
fn bch_table_weights() {
    let (code, v) = run(&["bch-table", "--class", "3"]);
    assert_eq!(code, 0);
    let entries = v["result"]["entries"].as_array().unwrap();
    let find = |w: &str| entries.iter().find(|e| e["word"] == w).unwrap();
    assert_eq!((find("xy")["numerator"].as_i64(), find("xy")["denominator"].as_i64()), (Some(1), Some(2)));
    assert_eq!(find("xxy")["denominator"], 12);
}

#[test]
fn refusals_exit_2() {
    let cases: Vec<(Vec<String>, &str)> = vec![
        (vec!["exp".into(), path("filiform5.toml")], "Lazard bound violated"),
        (vec!["cohomology".into(), "--degree".into(), "1".into(), "--side".into(), "compare".into(), path("jordan4.toml")], "d < p - 1"),
        (vec!["cohomology".into(), "--degree".into(), "2".into(), "--side".into(), "compare".into(), path("jordan4.toml")], "c + d < p"),
        (vec!["schur".into(), path("heisenberg3.toml")], "c < p - 1"),
        (vec!["five-term".into(), path("heisenberg3.toml"), "--normal".into(), "z".into()], "c < p - 1"),
        (vec!["crossed".into(), path("adjoint3.toml"), "--op".into(), "exp".into()], "c + d < p"),
    ];
    for (args, needle) in cases {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let (code, v) = run(&args);
        assert_eq!(code, 2, "{args:?}: {v}");
        assert_eq!(v["status"], "refused");
        assert!(v["error"].as_str().unwrap().contains(needle), "{args:?}: {}", v["error"]);
    }
}

#[test]
fn degree_zero_stays_in_scope_for_long_actions() {
    let (code, v) = run(&["cohomology", "--degree", "0", "--side", "compare", &path("jordan4.toml")]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["verdict"], "equal");
}

#[test]
fn size_cap_is_inconclusive() {
    let (code, v, _) =
        run_env(&["cohomology", "--degree", "2", "--side", "group", &path("heisenberg.toml")], &[("LAZARD_MAX_ELEMENTS", "25")]);
    assert_eq!(code, 3);
    assert_eq!(v["status"], "inconclusive");
    let (code, v) = run(&["crossed", &path("heis_extension.toml"), "--op", "equiv", "--bound", "10"]);
    assert_eq!(code, 3);
    assert_eq!(v["result"]["lie"], "undecided");
}

#[test]
fn baer_sums_are_additive() {
    let (code, v) = run(&["baer-sum", &path("abelian2.toml")]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["pairs"].as_array().unwrap().len(), 6);
    let (code, v) = run(&["baer-sum", "--degree", "1", &path("jordan.toml"), "--left", "1", "--right", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["pairs"][0]["lie_sum"], serde_json::json!([4]));
}

#[test]
fn schur_and_five_term() {
    let (code, v) = run(&["schur", "--side", "compare", &path("abelian2.toml")]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["verdict"], "equal");
    assert_eq!(v["result"]["lie"]["stable"]["factors"], serde_json::json!([5]));
    let (code, v) = run(&["five-term", &path("heisenberg.toml"), "--normal", "0,0,1"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["exact"], true);
    assert_eq!(v["result"]["commutes"], true);
    assert_eq!(v["result"]["normal"]["order"], 5);
}

#[test]
fn crossed_operations() {
    for op in ["check", "exp", "log"] {
        let (code, v) = run(&["crossed", &path("center.toml"), "--op", op]);
        assert_eq!(code, 0, "{op}: {v}");
    }
    let (code, v) =
        run(&["crossed", &path("heis_extension.toml"), "--op", "sum", "--other", &path("heis_extension_split.toml")]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["boundary_preserved"], true);
    assert_eq!(v["result"]["log_of_sum_vs_sum_of_logs"], "equivalent");
    let (code, v) = run(&["crossed", &path("heis_extension.toml"), "--op", "equiv"]);
    assert_eq!(code, 0);
    assert_eq!((v["result"]["lie"].as_str(), v["result"]["group"].as_str()), (Some("not_equivalent"), Some("not_equivalent")));
    let (code, _) = run(&["crossed", &path("heisenberg.toml"), "--op", "check"]);
    assert_eq!(code, 1);
}

#[test]
fn reports_are_deterministic_and_written_with_out() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let (_, _, first) = run_env(&["compare", &path("jordan.toml")], &[]);
    let status = Command::new(env!("CARGO_BIN_EXE_lazard-lab"))
        .args(["compare", &path("jordan.toml"), "--out", out.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(status.status.success());
    assert!(status.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&out).unwrap(), first);
    let refused = dir.path().join("refused.json");
    let status = Command::new(env!("CARGO_BIN_EXE_lazard-lab"))
        .args(["exp", &path("filiform5.toml"), "--out", refused.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(2));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&refused).unwrap()).unwrap();
    assert_eq!(v["status"], "refused");
}
