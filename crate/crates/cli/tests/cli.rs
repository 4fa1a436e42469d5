use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn cohconf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cohconf")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn analyze_agl15_on_pairs() {
    let out = cohconf(&["analyze", path(&data("agl15_on_pairs.group"))]);
    assert_eq!(code(&out), 0);
    let r = json(&out);
    assert_eq!(r["rank"], 6);
    assert_eq!(r["valencies"], serde_json::json!([1, 2, 2, 2, 2, 1]));
    assert_eq!(r["flags"]["stratifiable"], false);
    assert!(r.get("timings").is_none());
}

#[test]
fn analyze_sl2_5_is_stratifiable_not_commutative() {
    let r = json(&cohconf(&["analyze", path(&data("sl2_5_on_24.group"))]));
    assert_eq!(r["flags"]["stratifiable"], true);
    assert_eq!(r["flags"]["commutative"], false);
}

#[test]
fn analyze_reports_are_byte_stable() {
    let g = data("sl2_5_on_24.group");
    let a = cohconf(&["analyze", path(&g), "--seed", "3"]);
    let b = cohconf(&["analyze", path(&g), "--seed", "3"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn analyze_exit_codes() {
    assert_eq!(code(&cohconf(&["analyze", path(&data("intransitive.group"))])), 3);
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.group");
    std::fs::write(&bad, "degree 3\n(1,2,4)\n").unwrap();
    assert_eq!(code(&cohconf(&["analyze", path(&bad)])), 2);
    assert_eq!(code(&cohconf(&["analyze", path(&dir.path().join("missing.group"))])), 2);
}

#[test]
fn verify_degree_ten_witness_file() {
    let out = cohconf(&[
        "verify",
        path(&data("alternating_two_subsets_5.group")),
        "--level",
        "spreading",
        path(&data("NonSpreadingWitness_10_1.txt")),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let cert = json(&out);
    assert_eq!(cert["level"], "non-spreading");
    assert_eq!(cert["lambda"], serde_json::json!(["5"]));
    assert_eq!(cert["mode"], "both");
}

#[test]
fn verify_rejects_truncated_multiset() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("w.txt");
    std::fs::write(&f, "[ [ 1, 2, 7, 8, 10 ], [ 1, 5, 5, 6, 6, 7, 7, 8, 9 ] ]\n").unwrap();
    let out = cohconf(&["verify", path(&data("alternating_two_subsets_5.group")), "--level", "spreading", path(&f)]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("rejected"));
}

#[test]
fn verify_conic_clique_and_coclique() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&cohconf(&["construct", "conic-external", "--q", "5", "--out", path(dir.path())])), 0);
    let p = |s: &str| dir.path().join(format!("conic_external_5{s}"));
    let g = p(".group");
    let (clique, coclique) = (p("_clique.txt"), p("_coclique.txt"));
    let out = cohconf(&["verify", path(&g), "--level", "separating", path(&clique), path(&coclique)]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["lambda"], serde_json::json!(["1"]));
    // A single coclique does not partition the points.
    let out = cohconf(&["verify", path(&g), "--level", "synchronising", path(&clique), path(&coclique)]);
    assert_eq!(code(&out), 1);
}

#[test]
fn search_writes_files_that_reverify() {
    let dir = tempfile::tempdir().unwrap();
    let g = data("alternating_two_subsets_5.group");
    let out = cohconf(&["search", path(&g), "--out", path(dir.path()), "--seed", "7"]);
    assert_eq!(code(&out), 0);
    let witness = dir.path().join("NonSpreadingWitness_10_1.txt");
    let text = std::fs::read_to_string(&witness).unwrap();
    assert!(text.starts_with("[ [ ") && text.ends_with(" ] ]\n"));
    assert!(dir.path().join("NonSpreadingWitness_10_1.json").exists());
    assert_eq!(code(&cohconf(&["verify", path(&g), "--level", "spreading", path(&witness)])), 0);

    let again = tempfile::tempdir().unwrap();
    cohconf(&["search", path(&g), "--out", path(again.path()), "--seed", "7", "--threads", "3"]);
    assert_eq!(std::fs::read_to_string(again.path().join("NonSpreadingWitness_10_1.txt")).unwrap(), text);
}

#[test]
fn search_exit_codes() {
    assert_eq!(code(&cohconf(&["search", path(&data("s5_natural.group"))])), 1);
    assert_eq!(code(&cohconf(&["search", path(&data("s5_natural.group")), "--level", "separating"])), 2);
    assert_eq!(code(&cohconf(&["search", path(&data("s5_natural.group")), "--budget-nodes", "0"])), 2);
}

#[test]
fn construct_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let d = path(dir.path());
    assert_eq!(code(&cohconf(&["construct", "two-subsets", "--n", "7", "--out", d])), 0);
    let g = std::fs::read_to_string(dir.path().join("two_subsets_7.group")).unwrap();
    assert!(g.contains("degree 21\n"));
    assert_eq!(code(&cohconf(&["construct", "agl15-fixture", "--out", d])), 0);
    let bundle: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("agl15_fixture.json")).unwrap()).unwrap();
    assert_eq!(bundle["ordering"], "lex");
    assert_eq!(code(&cohconf(&["construct", "conic-external", "--q", "4", "--out", d])), 2);
}
