mod common;

use std::collections::HashSet;

use rankforge::generate::generate_all_graphs;
use rankforge::graph::{adjacency_rank, is_reduced, null_vertices, pendant_and_prependant};
use rankforge::trees::free_trees;
use rankforge::{canonical_form, Graph};

use common::{graph_rank, labeled_graph};

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Smallest edge code over all relabelings; exponential but independent of
/// the canonizer under test.
fn brute_force_key(n: usize, g: &Graph, perms: &[Vec<usize>]) -> u64 {
    perms
        .iter()
        .map(|p| {
            let mut code = 0u64;
            let mut k = 0;
            for j in 1..n {
                for i in 0..j {
                    if g.has_edge(p[i], p[j]) {
                        code |= 1 << k;
                    }
                    k += 1;
                }
            }
            code
        })
        .min()
        .unwrap()
}

#[test]
fn graph_counts_match_isomorphism_buckets() {
    for n in 1..=6 {
        let perms = permutations(n);
        let pairs = n * (n - 1) / 2;
        let buckets: HashSet<u64> = (0..1u64 << pairs)
            .map(|code| brute_force_key(n, &labeled_graph(n, code), &perms))
            .collect();
        let generated = generate_all_graphs(n).unwrap();
        assert_eq!(generated.len(), buckets.len(), "n = {n}");
        let keys: HashSet<u64> = generated.iter().map(|g| brute_force_key(n, g, &perms)).collect();
        assert_eq!(keys, buckets, "n = {n}");
    }
}

#[test]
fn canonical_forms_separate_exactly_the_isomorphism_classes() {
    for n in 1..=6 {
        let perms = permutations(n);
        let pairs = n * (n - 1) / 2;
        let mut seen = std::collections::HashMap::new();
        for code in 0..1u64 << pairs {
            let g = labeled_graph(n, code);
            let key = brute_force_key(n, &g, &perms);
            let form = canonical_form(&g);
            assert_eq!(*seen.entry(form).or_insert(key), key, "n = {n}, code = {code}");
        }
    }
}

#[test]
fn pendant_deletion_drops_rank_by_two() {
    for n in 2..=9 {
        for t in free_trees(n) {
            let g = t.graph();
            let (pendant, _) = pendant_and_prependant(g);
            for u in (0..n).filter(|&u| pendant >> u & 1 == 1) {
                let v = g.neighbours(u).trailing_zeros() as usize;
                let rest = g.remove_vertices(&[u, v]);
                assert_eq!(adjacency_rank(g), adjacency_rank(&rest) + 2);
                assert_eq!(adjacency_rank(g), graph_rank(g));
            }
        }
    }
}

#[test]
fn prependant_vertices_are_null_vertices() {
    for n in 2..=7 {
        for g in generate_all_graphs(n).unwrap().iter().filter(|g| is_reduced(g)) {
            let (_, pre) = pendant_and_prependant(g);
            assert_eq!(pre & !null_vertices(g), 0, "{g:?}");
        }
    }
}

#[test]
fn generated_graphs_are_pairwise_non_isomorphic() {
    for n in 1..=8 {
        let graphs = generate_all_graphs(n).unwrap();
        let forms: HashSet<_> = graphs.iter().map(canonical_form).collect();
        assert_eq!(forms.len(), graphs.len());
    }
    let counts: Vec<usize> = (1..=8).map(|n| generate_all_graphs(n).unwrap().len()).collect();
    assert_eq!(counts, vec![1, 2, 4, 11, 34, 156, 1044, 12346]);
}
