use cohconf_web::{analyze_text, search_text, verify_text};

const A5_ON_PAIRS: &str = include_str!("../../../data/alternating_two_subsets_5.group");
const WITNESS: &str = include_str!("../../../data/NonSpreadingWitness_10_1.txt");

fn parse(s: &str) -> serde_json::Value {
    serde_json::from_str(s).unwrap()
}

#[test]
fn analyze_reports_rank_and_traces() {
    let r = parse(&analyze_text(A5_ON_PAIRS, 0).unwrap());
    assert_eq!(r["degree"], 10);
    assert_eq!(r["rank"], 3);
    assert!(r.get("timings").is_none());
}

#[test]
fn verify_accepts_and_rejects() {
    let r = parse(&verify_text(A5_ON_PAIRS, "spreading", WITNESS).unwrap());
    assert_eq!(r["accepted"], true);
    assert_eq!(r["certificate"]["lambda"], serde_json::json!(["5"]));
    let r = parse(&verify_text(A5_ON_PAIRS, "non-spreading", "[ [ 1, 2, 7, 8, 10 ], [ 1, 5, 5 ] ]").unwrap());
    assert_eq!(r["accepted"], false);
    assert!(verify_text(A5_ON_PAIRS, "spreading", "[ 1, 2 ]").is_err());
    assert!(verify_text(A5_ON_PAIRS, "sideways", WITNESS).is_err());
}

#[test]
fn search_output_reverifies() {
    let r = parse(&search_text(A5_ON_PAIRS, 1).unwrap());
    assert_eq!(r["outcome"], "found");
    let witness = r["witness"].as_str().unwrap();
    assert_eq!(parse(&verify_text(A5_ON_PAIRS, "spreading", witness).unwrap())["accepted"], true);
}

#[test]
fn intransitive_group_is_an_error() {
    let g = include_str!("../../../data/intransitive.group");
    assert!(analyze_text(g, 0).unwrap_err().contains("transitive"));
}
