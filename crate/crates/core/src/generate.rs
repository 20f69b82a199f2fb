//! Exhaustive generation of small graphs up to isomorphism.

use std::collections::HashSet;

use rayon::prelude::*;

use crate::canon::{canonical_form, CanonicalForm};
use crate::error::{Error, Result};
use crate::graph::{add_vertex_mask, Graph};

pub const MAX_GENERATED_ORDER: usize = 10;

/// One representative per isomorphism class of graphs on `n` vertices.
///
/// Built one vertex at a time: every graph on `k + 1` vertices arises by
/// adding a vertex to some graph on `k` vertices, so extending each class
/// representative by every neighbourhood and keeping one copy per canonical
/// form reaches every class. Representatives are canonically labeled and
/// returned in key order.
pub fn generate_all_graphs(n: usize) -> Result<Vec<Graph>> {
    if n == 0 || n > MAX_GENERATED_ORDER {
        return Err(Error::InvalidArgument(format!(
            "graph generation supports 1 <= n <= {MAX_GENERATED_ORDER}, got {n}"
        )));
    }
    let mut layer: Vec<CanonicalForm> = vec![canonical_form(&Graph::empty(1)?)];
    for k in 1..n {
        let children: Vec<Vec<CanonicalForm>> = layer
            .par_iter()
            .map(|f| {
                let g = f.to_graph();
                let mut local = HashSet::new();
                for y in 0..1u64 << k {
                    let h = add_vertex_mask(&g, y).expect("order below cap");
                    local.insert(canonical_form(&h));
                }
                local.into_iter().collect()
            })
            .collect();
        let mut next: HashSet<CanonicalForm> = HashSet::new();
        for c in children {
            next.extend(c);
        }
        layer = next.into_iter().collect();
        layer.sort_unstable();
    }
    Ok(layer.iter().map(CanonicalForm::to_graph).collect())
}
