//! Maximal trees: trees that cannot gain a vertex and stay reduced within
//! the tree family without increasing rank.
//!
//! A reduced tree is maximal exactly when its null vertices are its
//! pre-pendant vertices. Every maximal tree of rank `r >= 4` is grown from a
//! smaller maximal tree `T'` by one of three attachments:
//!
//! 1. an end of a `P2` to a vertex of `T'` (rank `r - 2`) that is neither
//!    pendant nor pre-pendant;
//! 2. an end of a `P3` to a pre-pendant vertex of `T'` (rank `r - 2`);
//! 3. a pre-pendant vertex of a `P5` to a pre-pendant vertex of `T'`
//!    (rank `r - 4`), for `r >= 8`.

use std::collections::{BTreeMap, HashSet};

use crate::error::{Error, Result};
use crate::graph::{adjacency_rank, bits_of, is_reduced, null_vertices, pendant_and_prependant, Graph};

/// A graph certified to be a tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeGraph(Graph);

impl TreeGraph {
    pub fn new(g: Graph) -> Result<TreeGraph> {
        if g.is_tree() {
            Ok(TreeGraph(g))
        } else {
            Err(Error::NotATree)
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.0
    }

    pub fn into_graph(self) -> Graph {
        self.0
    }

    pub fn order(&self) -> usize {
        self.0.order()
    }

    /// Attaches vertex `at` of a fresh path on `len` vertices to `site`.
    fn attach_path(&self, site: usize, len: usize, at: usize) -> TreeGraph {
        let n = self.0.order();
        let mut edges = self.0.edges();
        for i in 1..len {
            edges.push((n + i - 1, n + i));
        }
        edges.push((site, n + at));
        TreeGraph(Graph::from_edges(n + len, &edges).expect("tree stays within order cap"))
    }
}

impl TryFrom<Graph> for TreeGraph {
    type Error = Error;

    fn try_from(g: Graph) -> Result<Self> {
        TreeGraph::new(g)
    }
}

/// Maximum matching size by repeatedly matching a leaf with its neighbour.
pub fn matching_number(t: &TreeGraph) -> usize {
    let g = t.graph();
    let mut alive = crate::graph::low_mask(g.order());
    let mut matched = 0;
    loop {
        let leaf = bits_of(alive).find(|&v| (g.neighbours(v) & alive).count_ones() == 1);
        let Some(u) = leaf else { break };
        let v = (g.neighbours(u) & alive).trailing_zeros() as usize;
        alive &= !(1 << u | 1 << v);
        matched += 1;
    }
    matched
}

pub fn is_maximal_tree(t: &TreeGraph) -> Result<bool> {
    if !is_reduced(t.graph()) {
        return Err(Error::NotReduced);
    }
    let (_, pre) = pendant_and_prependant(t.graph());
    Ok(null_vertices(t.graph()) == pre)
}

/// AHU encoding of the subtree rooted at `v` (parent `p`).
fn ahu(g: &Graph, v: usize, p: Option<usize>) -> String {
    let mut kids: Vec<String> = bits_of(g.neighbours(v))
        .filter(|&w| Some(w) != p)
        .map(|w| ahu(g, w, Some(v)))
        .collect();
    kids.sort_unstable();
    let mut s = String::with_capacity(2 + kids.iter().map(String::len).sum::<usize>());
    s.push('(');
    for k in kids {
        s.push_str(&k);
    }
    s.push(')');
    s
}

/// One or two centres, found by peeling leaves.
fn centres(g: &Graph) -> Vec<usize> {
    let n = g.order();
    if n <= 2 {
        return (0..n).collect();
    }
    let mut alive = crate::graph::low_mask(n);
    while alive.count_ones() > 2 {
        let leaves: u64 = bits_of(alive)
            .filter(|&v| (g.neighbours(v) & alive).count_ones() <= 1)
            .fold(0, |acc, v| acc | 1 << v);
        alive &= !leaves;
    }
    bits_of(alive).collect()
}

/// Canonical string of a free tree: the smaller AHU code over its centres.
pub fn tree_canonical_form(t: &TreeGraph) -> String {
    centres(t.graph())
        .into_iter()
        .map(|c| ahu(t.graph(), c, None))
        .min()
        .unwrap_or_default()
}

/// Maximal trees of rank `r`, one per isomorphism class, sorted by
/// canonical form.
pub fn generate_maximal_trees(r: usize) -> Result<Vec<TreeGraph>> {
    if r % 2 == 1 {
        return Err(Error::OddRank(r));
    }
    if r < 2 {
        return Err(Error::InvalidArgument(format!("rank must be at least 2, got {r}")));
    }
    let mut levels: BTreeMap<usize, Vec<TreeGraph>> = BTreeMap::new();
    levels.insert(2, vec![TreeGraph(Graph::path(2)?)]);
    let mut rank = 4;
    while rank <= r {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        let mut keep = |t: TreeGraph, parent_rank: usize, gain: usize| {
            assert_eq!(adjacency_rank(t.graph()), parent_rank + gain, "attachment changed rank unexpectedly");
            let key = tree_canonical_form(&t);
            if seen.insert(key.clone()) {
                out.push((key, t));
            }
        };
        for parent in &levels[&(rank - 2)] {
            let (pendant, pre) = pendant_and_prependant(parent.graph());
            for site in 0..parent.order() {
                if (pendant | pre) >> site & 1 == 0 {
                    keep(parent.attach_path(site, 2, 0), rank - 2, 2);
                }
            }
            for site in bits_of(pre) {
                keep(parent.attach_path(site, 3, 0), rank - 2, 2);
            }
        }
        if rank >= 8 {
            for parent in &levels[&(rank - 4)] {
                let (_, pre) = pendant_and_prependant(parent.graph());
                for site in bits_of(pre) {
                    keep(parent.attach_path(site, 5, 1), rank - 4, 4);
                }
            }
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        levels.insert(rank, out.into_iter().map(|(_, t)| t).collect());
        rank += 2;
    }
    Ok(levels.remove(&r).expect("level computed"))
}

/// Every free tree on `n` vertices, one per isomorphism class.
pub fn free_trees(n: usize) -> Vec<TreeGraph> {
    if n == 0 {
        return Vec::new();
    }
    let mut layer = vec![TreeGraph(Graph::empty(1).expect("order 1"))];
    for _ in 1..n {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for t in &layer {
            for v in 0..t.order() {
                let child = t.attach_path(v, 1, 0);
                let key = tree_canonical_form(&child);
                if seen.insert(key.clone()) {
                    next.push((key, child));
                }
            }
        }
        next.sort_by(|a, b| a.0.cmp(&b.0));
        layer = next.into_iter().map(|(_, t)| t).collect();
    }
    layer
}

pub const MAX_BRUTE_FORCE_ORDER: usize = 14;

/// Maximal trees of rank `r` among all trees with at most `n_max` vertices.
pub fn brute_force_maximal_trees(r: usize, n_max: usize) -> Result<Vec<TreeGraph>> {
    if n_max > MAX_BRUTE_FORCE_ORDER {
        return Err(Error::InvalidArgument(format!(
            "n_max is limited to {MAX_BRUTE_FORCE_ORDER}, got {n_max}"
        )));
    }
    let mut out = Vec::new();
    for n in 2..=n_max {
        for t in free_trees(n) {
            if is_reduced(t.graph()) && adjacency_rank(t.graph()) == r && is_maximal_tree(&t)? {
                out.push((tree_canonical_form(&t), t));
            }
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out.into_iter().map(|(_, t)| t).collect())
}

/// The 10-vertex maximal tree of rank 8 that needs the `P5` attachment:
/// a path `0..=7` with extra leaves `8` on vertex 3 and `9` on vertex 4.
pub fn p5_attachment_example() -> TreeGraph {
    let mut edges: Vec<(usize, usize)> = (1..8).map(|i| (i - 1, i)).collect();
    edges.push((3, 8));
    edges.push((4, 9));
    TreeGraph(Graph::from_edges(10, &edges).expect("valid tree"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matching_examples() {
        assert_eq!(matching_number(&TreeGraph::new(Graph::path(4).unwrap()).unwrap()), 2);
        assert_eq!(matching_number(&TreeGraph::new(Graph::path(2).unwrap()).unwrap()), 1);
        assert_eq!(matching_number(&p5_attachment_example()), 4);
        assert_eq!(matching_number(&TreeGraph::new(Graph::star(5).unwrap()).unwrap()), 1);
    }

    #[test]
    fn not_a_tree() {
        assert_eq!(TreeGraph::new(Graph::cycle(4).unwrap()), Err(Error::NotATree));
        assert_eq!(TreeGraph::new(Graph::empty(2).unwrap()), Err(Error::NotATree));
    }

    #[test]
    fn maximal_tree_examples() {
        assert!(is_maximal_tree(&TreeGraph::new(Graph::path(2).unwrap()).unwrap()).unwrap());
        assert!(!is_maximal_tree(&TreeGraph::new(Graph::path(4).unwrap()).unwrap()).unwrap());
        assert!(is_maximal_tree(&p5_attachment_example()).unwrap());
        let star = TreeGraph::new(Graph::star(3).unwrap()).unwrap();
        assert_eq!(is_maximal_tree(&star), Err(Error::NotReduced));
    }

    #[test]
    fn generator_counts() {
        let counts: Vec<usize> = [2, 4, 6, 8].iter().map(|&r| generate_maximal_trees(r).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5]);
        assert_eq!(generate_maximal_trees(5), Err(Error::OddRank(5)));
    }

    #[test]
    fn free_tree_counts() {
        let counts: Vec<usize> = (1..=10).map(|n| free_trees(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 3, 6, 11, 23, 47, 106]);
    }

    #[test]
    fn canonical_form_ignores_labels() {
        let t = p5_attachment_example();
        let p = TreeGraph::new(t.graph().permuted(&[9, 8, 7, 6, 5, 4, 3, 2, 1, 0])).unwrap();
        assert_eq!(tree_canonical_form(&t), tree_canonical_form(&p));
        let path = TreeGraph::new(Graph::path(10).unwrap()).unwrap();
        assert_ne!(tree_canonical_form(&t), tree_canonical_form(&path));
    }
}
