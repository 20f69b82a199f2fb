use rankforge_wasm::{analyze_graph6_json, friendship_json, maximal_trees_json};
use serde_json::Value;

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn analyze_reports_rank_and_witness() {
    let k3 = parse(analyze_graph6_json("Bw").unwrap());
    assert_eq!(k3["rank"], 3);
    assert_eq!(k3["maximal"], true);
    assert!(k3["witness"].is_null());

    let p4 = parse(analyze_graph6_json("Ch\n").unwrap());
    assert_eq!(p4["maximal"], false);
    assert!(!p4["witness"].as_array().unwrap().is_empty());

    let p3 = parse(analyze_graph6_json("Bg").unwrap());
    assert_eq!(p3["reduced"], false);
    assert!(p3["maximal"].is_null());
    assert_eq!(p3["edges"].as_array().unwrap().len(), 2);

    assert!(analyze_graph6_json("zz").is_err());
}

#[test]
fn friendship_includes_drawable_witness() {
    let v = parse(friendship_json(3, 3).unwrap());
    assert_eq!(v["maximal"], false);
    assert_eq!(v["n"], 10);
    assert_eq!(v["neighbourhood"].as_array().unwrap().len(), 6);
    let big = parse(friendship_json(15, 100).unwrap());
    assert!(big.get("edges").is_none());
    assert!(friendship_json(1, 3).is_err());
}

#[test]
fn trees_by_rank() {
    let v = parse(maximal_trees_json(8).unwrap());
    assert_eq!(v["trees"].as_array().unwrap().len(), 5);
    assert!(maximal_trees_json(7).is_err());
    assert!(maximal_trees_json(14).is_err());
}
