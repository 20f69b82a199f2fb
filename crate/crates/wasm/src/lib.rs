//! Browser bindings. Each export returns a JSON string; the `*_json`
//! functions hold the logic so they can be tested natively.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use rankforge::codec::{emit_graph6, parse_graph6_str};
use rankforge::extension::maximality_witness;
use rankforge::friendship::{self, GfgInstance};
use rankforge::graph::{adjacency_rank, is_reduced, null_vertices};
use rankforge::trees::generate_maximal_trees;
use rankforge::Graph;

/// Largest tree rank offered by the demo; rank 12 already has dozens.
pub const MAX_TREE_RANK: usize = 12;

fn edges(g: &Graph) -> Value {
    g.edges().into_iter().map(|(u, v)| json!([u, v])).collect()
}

/// Rank, reducedness, null vertices and, for reduced graphs, maximality
/// with a witness neighbourhood.
pub fn analyze_graph6_json(input: &str) -> Result<String, String> {
    let g = parse_graph6_str(input.trim()).map_err(|e| e.to_string())?;
    let reduced = is_reduced(&g);
    let nulls: Vec<usize> = (0..g.order()).filter(|&v| null_vertices(&g) >> v & 1 == 1).collect();
    let (maximal, witness) = if reduced && g.order() > 0 {
        let w = maximality_witness(&g).map_err(|e| e.to_string())?;
        (Some(w.is_none()), w.map(|y| (0..y.len()).filter(|&i| y[i]).collect::<Vec<_>>()))
    } else {
        (None, None)
    };
    Ok(json!({
        "n": g.order(),
        "edges": edges(&g),
        "rank": adjacency_rank(&g),
        "reduced": reduced,
        "null_vertices": nulls,
        "maximal": maximal,
        "witness": witness,
    })
    .to_string())
}

/// Search verdict, theorem verdict and witness for `F(k, m)`; the graph
/// itself is included when small enough to draw.
pub fn friendship_json(k: u32, m: u32) -> Result<String, String> {
    let inst = GfgInstance::new(k as u64, m as u64).map_err(|e| e.to_string())?;
    let verdict = friendship::is_maximal_fkm(inst).map_err(|e| e.to_string())?;
    let mut out = serde_json::to_value(&verdict).map_err(|e| e.to_string())?;
    if let Ok(g) = friendship::build_fkm(inst) {
        out["n"] = g.order().into();
        out["edges"] = edges(&g);
        if let Some(w) = &verdict.witness {
            let y = w.neighbourhood(inst);
            out["neighbourhood"] = (0..y.len()).filter(|&i| y[i]).collect::<Vec<_>>().into();
        }
    }
    Ok(out.to_string())
}

/// All maximal trees of an even rank with their graph6 strings.
pub fn maximal_trees_json(rank: u32) -> Result<String, String> {
    let r = rank as usize;
    if r > MAX_TREE_RANK {
        return Err(format!("rank is limited to {MAX_TREE_RANK} here"));
    }
    let trees = generate_maximal_trees(r).map_err(|e| e.to_string())?;
    let list = trees
        .iter()
        .map(|t| {
            Ok(json!({
                "n": t.order(),
                "edges": edges(t.graph()),
                "graph6": emit_graph6(t.graph()).map_err(|e| e.to_string())?,
            }))
        })
        .collect::<Result<Vec<_>, String>>()?;
    Ok(json!({"rank": r, "trees": list}).to_string())
}

#[wasm_bindgen]
pub fn analyze_graph6(input: &str) -> Result<String, JsError> {
    analyze_graph6_json(input).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn friendship_verdict(k: u32, m: u32) -> Result<String, JsError> {
    friendship_json(k, m).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn maximal_trees(rank: u32) -> Result<String, JsError> {
    maximal_trees_json(rank).map_err(|e| JsError::new(&e))
}
