//! Enumeration of all maximal graphs of a given rank.
//!
//! Start from the reduced graphs whose order equals the rank `r` (these are
//! exactly the nonsingular graphs on `r` vertices) and grow them one vertex
//! at a time through rank-preserving reduced extensions, layer by layer in
//! increasing order. Each layer is deduplicated by canonical form. A graph
//! with no admissible extension is maximal.
//!
//! Every reduced graph `G` of rank `r` contains a nonsingular induced
//! subgraph on some basis `S`, and deleting any vertex outside `S` leaves a
//! reduced graph of the same rank, so the closure reaches every member of the
//! class. The basis of a seed stays a basis of all its descendants, so it is
//! carried along instead of being recomputed.
//!
//! The clique strategy skips the intermediate layers. Fix a seed `B` on the
//! basis `S`. A vertex outside `S` is determined by its row `z` on `S`, which
//! must satisfy `z^T B^-1 z = 0`, and two such vertices are adjacent iff
//! `z1^T B^-1 z2 = 1`, so that value must be 0 or 1. Maximal graphs
//! containing `B` on a basis are then exactly the maximal cliques of this
//! compatibility relation.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::canon::{canonical_labeling, CanonicalForm};
use crate::codec;
use crate::error::{Error, Result};
use crate::extension::{extensions_with_basis, BasisBlock};
use crate::generate::{generate_all_graphs, MAX_GENERATED_ORDER};
use crate::graph::{add_vertex_mask, adjacency_rank, is_reduced, Graph};
use crate::linalg;

/// Largest order of a reduced graph of rank `r` predicted by the
/// Akbari–Cameron–Khosrovshahi conjecture.
pub fn conjectured_max_order(r: usize) -> usize {
    assert!(r >= 2, "defined for r >= 2");
    if r.is_multiple_of(2) {
        2 * (1 << (r / 2)) - 2
    } else {
        5 * (1 << ((r - 3) / 2)) - 2
    }
}

/// Reduced graphs on `r` vertices with rank `r`, one per isomorphism class.
///
/// With `supplied`, the given graphs are filtered instead of generating all
/// graphs on `r` vertices.
pub fn seed_set(r: usize, supplied: Option<&[Graph]>) -> Result<Vec<Graph>> {
    if r < 2 {
        return Err(Error::InvalidArgument(format!("rank must be at least 2, got {r}")));
    }
    let pool = match supplied {
        Some(gs) => gs.to_vec(),
        None if r <= MAX_GENERATED_ORDER => generate_all_graphs(r)?,
        None => return Err(Error::SeedUnavailable(r)),
    };
    let mut seen = HashSet::new();
    let mut out: Vec<(CanonicalForm, Graph)> = pool
        .into_iter()
        .filter(|g| g.order() == r && is_reduced(g) && adjacency_rank(g) == r)
        .filter_map(|g| {
            let (f, lab) = canonical_labeling(&g);
            seen.insert(f.clone()).then(|| (f, g.permuted(&lab)))
        })
        .collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out.into_iter().map(|(_, g)| g).collect())
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Strategy {
    /// Layered closure over the whole reduced class.
    #[default]
    Closure,
    /// Maximal cliques of extension vectors, per seed. Ignores `max_order`
    /// and `checkpoint_dir` and reports no class sizes.
    Cliques,
}

#[derive(Clone, Debug, Default)]
pub struct EnumerationOptions {
    pub strategy: Strategy,
    /// Stop growing past this order; graphs at the cap are not classified.
    pub max_order: Option<usize>,
    /// Seeds to use instead of generating them.
    pub seeds: Option<Vec<Graph>>,
    /// Write per-layer frontier and maximal-graph files here and resume from
    /// the latest frontier found.
    pub checkpoint_dir: Option<PathBuf>,
    /// Number of parents processed per parallel batch.
    pub batch_size: Option<usize>,
    /// Called after each closure layer with the order and layer size.
    pub progress: Option<fn(usize, usize)>,
}

/// A class member: canonically labeled graph plus a carried basis.
#[derive(Clone)]
struct Member {
    graph: Graph,
    basis: Vec<u8>,
    block: Arc<BasisBlock>,
}

impl Member {
    fn from_graph(g: Graph) -> Result<Member> {
        let basis = linalg::row_basis(&g.adjacency_matrix());
        let block = BasisBlock::new(&g, &basis)
            .ok_or_else(|| Error::InvalidArgument("basis block is singular".into()))?;
        Ok(Member {
            graph: g,
            basis: basis.into_iter().map(|v| v as u8).collect(),
            block: Arc::new(block),
        })
    }

    fn extensions(&self) -> Vec<u64> {
        let basis: Vec<usize> = self.basis.iter().map(|&v| v as usize).collect();
        extensions_with_basis(&self.graph, &basis, &self.block)
    }
}

/// Result of one layer: the graphs classified as maximal and the next layer.
struct LayerOutcome {
    maximal: Vec<Graph>,
    next: Vec<Member>,
}

fn expand_layer(layer: &[Member], batch: usize) -> LayerOutcome {
    let mut maximal = Vec::new();
    let mut next: HashMap<CanonicalForm, Member> = HashMap::new();
    for chunk in layer.chunks(batch) {
        let results: Vec<(Option<Graph>, Vec<(CanonicalForm, Member)>)> = chunk
            .par_iter()
            .map(|m| {
                let ys = m.extensions();
                if ys.is_empty() {
                    return (Some(m.graph.clone()), Vec::new());
                }
                let mut local: HashMap<CanonicalForm, Member> = HashMap::with_capacity(ys.len());
                for y in ys {
                    let h = add_vertex_mask(&m.graph, y).expect("order below cap");
                    let (form, lab) = canonical_labeling(&h);
                    if local.contains_key(&form) {
                        continue;
                    }
                    let mut pos = vec![0u8; lab.len()];
                    for (i, &v) in lab.iter().enumerate() {
                        pos[v] = i as u8;
                    }
                    let child = Member {
                        graph: form.to_graph(),
                        basis: m.basis.iter().map(|&v| pos[v as usize]).collect(),
                        block: Arc::clone(&m.block),
                    };
                    local.insert(form, child);
                }
                let mut kids: Vec<_> = local.into_iter().collect();
                kids.sort_unstable_by(|a, b| a.0.cmp(&b.0));
                (None, kids)
            })
            .collect();
        // serialized merge in parent order keeps the kept basis deterministic
        for (max, kids) in results {
            if let Some(g) = max {
                maximal.push(g);
            }
            for (form, child) in kids {
                next.entry(form).or_insert(child);
            }
        }
    }
    let mut next: Vec<(CanonicalForm, Member)> = next.into_iter().collect();
    next.sort_unstable_by(|a, b| a.0.cmp(&b.0));
    LayerOutcome {
        maximal,
        next: next.into_iter().map(|(_, m)| m).collect(),
    }
}

/// Per-order statistics and certificates for one rank.
#[derive(Clone, Debug, Serialize)]
pub struct EnumerationReport {
    pub rank: usize,
    pub total_maximal: usize,
    /// Orders from `rank` up to the largest order reached, zeros included.
    pub by_order: BTreeMap<usize, usize>,
    pub by_order_and_size: BTreeMap<(usize, usize), usize>,
    /// Number of reduced graphs of this rank at each order.
    pub class_sizes: BTreeMap<usize, usize>,
    /// False when a `max_order` cap stopped the closure early.
    pub complete: bool,
    #[serde(skip)]
    pub maximal: Vec<Graph>,
}

impl EnumerationReport {
    pub fn max_order(&self) -> Option<usize> {
        self.by_order.iter().rev().find(|(_, &c)| c > 0).map(|(&n, _)| n)
    }

    pub fn count_at(&self, order: usize) -> usize {
        self.by_order.get(&order).copied().unwrap_or(0)
    }

    pub fn count_at_size(&self, order: usize, size: usize) -> usize {
        self.by_order_and_size.get(&(order, size)).copied().unwrap_or(0)
    }

    /// `{rank, total, by_order, by_order_and_size}` as JSON.
    pub fn to_json(&self) -> serde_json::Value {
        let by_order: serde_json::Map<String, serde_json::Value> = self
            .by_order
            .iter()
            .map(|(n, c)| (n.to_string(), (*c).into()))
            .collect();
        let by_size: Vec<serde_json::Value> = self
            .by_order_and_size
            .iter()
            .map(|(&(n, m), &c)| serde_json::json!({"order": n, "size": m, "count": c}))
            .collect();
        serde_json::json!({
            "rank": self.rank,
            "total": self.total_maximal,
            "complete": self.complete,
            "by_order": by_order,
            "by_order_and_size": by_size,
        })
    }

    /// `order,count` lines with a header.
    pub fn by_order_csv(&self) -> String {
        let mut s = String::from("order,count\n");
        for (n, c) in &self.by_order {
            s.push_str(&format!("{n},{c}\n"));
        }
        s
    }

    pub fn certificates_graph6(&self) -> Result<String> {
        codec::write_graph6_lines(self.maximal.iter())
    }
}

fn frontier_path(dir: &Path, order: usize) -> PathBuf {
    dir.join(format!("frontier_{order:02}.g6"))
}

fn maximal_path(dir: &Path, order: usize) -> PathBuf {
    dir.join(format!("maximal_{order:02}.g6"))
}

fn io_err(e: std::io::Error) -> Error {
    Error::InvalidArgument(format!("checkpoint i/o: {e}"))
}

/// Latest saved frontier and all maximal graphs below it.
fn load_checkpoint(dir: &Path, r: usize) -> Result<Option<(usize, Vec<Member>, Vec<Graph>)>> {
    let Some(order) = (r..=64).rev().find(|&n| frontier_path(dir, n).exists()) else {
        return Ok(None);
    };
    let text = fs::read_to_string(frontier_path(dir, order)).map_err(io_err)?;
    let members = codec::read_graph6_all(&text)?
        .into_iter()
        .map(Member::from_graph)
        .collect::<Result<Vec<_>>>()?;
    let mut maximal = Vec::new();
    for n in r..order {
        if let Ok(t) = fs::read_to_string(maximal_path(dir, n)) {
            maximal.extend(codec::read_graph6_all(&t)?);
        }
    }
    Ok(Some((order, members, maximal)))
}

/// Every reduced graph of rank `r`, grouped by order.
pub fn enumerate_rank_class(r: usize, options: &EnumerationOptions) -> Result<BTreeMap<usize, Vec<Graph>>> {
    let mut out = BTreeMap::new();
    run(r, options, |order, layer| {
        out.insert(order, layer.iter().map(|m| m.graph.clone()).collect());
    })?;
    Ok(out)
}

/// All maximal graphs of rank `r` with their order and size distributions.
pub fn maximal_graphs(r: usize, options: &EnumerationOptions) -> Result<EnumerationReport> {
    match options.strategy {
        Strategy::Closure => run(r, options, |_, _| {}),
        Strategy::Cliques => cliques::maximal_graphs(r, options),
    }
}

fn run(r: usize, options: &EnumerationOptions, mut on_layer: impl FnMut(usize, &[Member])) -> Result<EnumerationReport> {
    let batch = options.batch_size.unwrap_or(4096).max(1);
    let cap = options.max_order.unwrap_or(usize::MAX).min(crate::graph::MAX_ORDER);
    let resumed = match &options.checkpoint_dir {
        Some(dir) => {
            fs::create_dir_all(dir).map_err(io_err)?;
            load_checkpoint(dir, r)?
        }
        None => None,
    };
    let (mut order, mut layer, mut maximal) = match resumed {
        Some(state) => state,
        None => {
            let seeds = seed_set(r, options.seeds.as_deref())?;
            let members = seeds.into_iter().map(Member::from_graph).collect::<Result<Vec<_>>>()?;
            (r, members, Vec::new())
        }
    };
    let mut class_sizes = BTreeMap::new();
    let mut complete = true;
    while !layer.is_empty() {
        class_sizes.insert(order, layer.len());
        if let Some(report) = options.progress {
            report(order, layer.len());
        }
        on_layer(order, &layer);
        if order >= cap {
            complete = false;
            break;
        }
        let outcome = expand_layer(&layer, batch);
        if let Some(dir) = &options.checkpoint_dir {
            let text = codec::write_graph6_lines(outcome.maximal.iter())?;
            fs::write(maximal_path(dir, order), text).map_err(io_err)?;
            let text = codec::write_graph6_lines(outcome.next.iter().map(|m| &m.graph))?;
            fs::write(frontier_path(dir, order + 1), text).map_err(io_err)?;
        }
        maximal.extend(outcome.maximal);
        layer = outcome.next;
        order += 1;
    }
    Ok(build_report(r, maximal, class_sizes, complete))
}

fn build_report(
    r: usize,
    maximal: Vec<Graph>,
    class_sizes: BTreeMap<usize, usize>,
    complete: bool,
) -> EnumerationReport {
    let top = maximal.iter().map(Graph::order).max().unwrap_or(r);
    let mut by_order: BTreeMap<usize, usize> = (r..=top).map(|n| (n, 0)).collect();
    let mut by_order_and_size = BTreeMap::new();
    for g in &maximal {
        *by_order.entry(g.order()).or_insert(0) += 1;
        *by_order_and_size.entry((g.order(), g.size())).or_insert(0) += 1;
    }
    EnumerationReport {
        rank: r,
        total_maximal: maximal.len(),
        by_order,
        by_order_and_size,
        class_sizes,
        complete,
        maximal,
    }
}

mod cliques {
    use super::*;

    const WORDS: usize = 8;

    /// Subset of at most `64 * WORDS` candidates.
    #[derive(Clone, Copy, Default)]
    struct Bits([u64; WORDS]);

    impl Bits {
        fn set(&mut self, i: usize) {
            self.0[i / 64] |= 1 << (i % 64);
        }
        fn clear(&mut self, i: usize) {
            self.0[i / 64] &= !(1 << (i % 64));
        }
        fn and(&self, o: &Bits) -> Bits {
            Bits(std::array::from_fn(|w| self.0[w] & o.0[w]))
        }
        fn and_not(&self, o: &Bits) -> Bits {
            Bits(std::array::from_fn(|w| self.0[w] & !o.0[w]))
        }
        fn or(&self, o: &Bits) -> Bits {
            Bits(std::array::from_fn(|w| self.0[w] | o.0[w]))
        }
        fn is_empty(&self) -> bool {
            self.0.iter().all(|&w| w == 0)
        }
        fn count(&self) -> u32 {
            self.0.iter().map(|w| w.count_ones()).sum()
        }
        fn iter(&self) -> impl Iterator<Item = usize> + '_ {
            (0..WORDS).flat_map(move |w| crate::graph::bits_of(self.0[w]).map(move |b| w * 64 + b))
        }
    }

    struct Compatibility {
        seed: Graph,
        zs: Vec<u64>,
        /// Pairs that may coexist.
        compatible: Vec<Bits>,
        /// Pairs that must be adjacent.
        adjacent: Vec<Bits>,
    }

    impl Compatibility {
        fn new(seed: &Graph) -> Compatibility {
            let r = seed.order();
            let basis: Vec<usize> = (0..r).collect();
            let block = BasisBlock::new(seed, &basis).expect("seed is nonsingular");
            let form = |a: u64, b: u64| -> i64 {
                crate::graph::bits_of(a)
                    .map(|i| crate::graph::bits_of(b).map(|j| block.adj[i][j]).sum::<i64>())
                    .sum()
            };
            let zs: Vec<u64> = (1u64..1 << r)
                .filter(|z| !seed.rows().contains(z) && form(*z, *z) == 0)
                .collect();
            let mut compatible = vec![Bits::default(); zs.len()];
            let mut adjacent = vec![Bits::default(); zs.len()];
            for i in 0..zs.len() {
                for j in i + 1..zs.len() {
                    let v = form(zs[i], zs[j]);
                    if v == 0 || v == block.det {
                        compatible[i].set(j);
                        compatible[j].set(i);
                    }
                    if v == block.det {
                        adjacent[i].set(j);
                        adjacent[j].set(i);
                    }
                }
            }
            Compatibility { seed: seed.clone(), zs, compatible, adjacent }
        }

        fn graph_of(&self, clique: &[usize]) -> Graph {
            let r = self.seed.order();
            let mut g = self.seed.clone();
            for (pos, &i) in clique.iter().enumerate() {
                let mut y = self.zs[i];
                for (q, &j) in clique[..pos].iter().enumerate() {
                    if self.adjacent[i].0[j / 64] >> (j % 64) & 1 == 1 {
                        y |= 1 << (r + q);
                    }
                }
                g = add_vertex_mask(&g, y).expect("order below cap");
            }
            g
        }

        fn maximal_forms(&self) -> HashSet<CanonicalForm> {
            let mut out = HashSet::new();
            let mut all = Bits::default();
            for i in 0..self.zs.len() {
                all.set(i);
            }
            let mut stack = Vec::new();
            self.extend(&mut stack, all, Bits::default(), &mut out);
            out
        }

        /// Bron-Kerbosch with pivoting.
        fn extend(&self, stack: &mut Vec<usize>, mut p: Bits, mut x: Bits, out: &mut HashSet<CanonicalForm>) {
            if p.is_empty() {
                if x.is_empty() {
                    out.insert(crate::canon::canonical_form(&self.graph_of(stack)));
                }
                return;
            }
            let pivot = p
                .or(&x)
                .iter()
                .max_by_key(|&u| p.and(&self.compatible[u]).count())
                .expect("p is nonempty");
            let branch = p.and_not(&self.compatible[pivot]);
            for v in branch.iter() {
                stack.push(v);
                let nbrs = &self.compatible[v];
                self.extend(stack, p.and(nbrs), x.and(nbrs), out);
                stack.pop();
                p.clear(v);
                x.set(v);
            }
        }
    }

    pub(super) fn maximal_graphs(r: usize, options: &EnumerationOptions) -> Result<EnumerationReport> {
        if r > 9 {
            return Err(Error::InvalidArgument(format!(
                "the clique strategy supports rank at most 9, got {r}"
            )));
        }
        let seeds = seed_set(r, options.seeds.as_deref())?;
        let forms: HashSet<CanonicalForm> = seeds
            .par_iter()
            .map(|s| Compatibility::new(s).maximal_forms())
            .reduce(HashSet::new, |mut a, b| {
                a.extend(b);
                a
            });
        let mut forms: Vec<CanonicalForm> = forms.into_iter().collect();
        forms.sort_unstable();
        let maximal = forms.iter().map(CanonicalForm::to_graph).collect();
        Ok(build_report(r, maximal, BTreeMap::new(), true))
    }
}
