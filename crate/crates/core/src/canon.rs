//! Canonical labeling by partition refinement and individualization.
//!
//! The search tree is the usual one: refine the unit partition to an
//! equitable one, individualize each vertex of the first smallest
//! non-singleton cell, refine again, and recurse until the partition is
//! discrete. Every leaf yields a relabeled graph; the canonical form is the
//! least `(refinement trace, packed adjacency)` pair over all leaves.
//! Subtrees are cut when their trace prefix already exceeds the best one,
//! and sibling subtrees equivalent under automorphisms found so far are
//! skipped.

use std::cmp::Ordering;
use std::collections::VecDeque;

use crate::graph::{bits_of, Graph};

/// Isomorphism-invariant key. Two graphs share a key iff they are isomorphic.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct CanonicalForm(Box<[u64]>);

impl CanonicalForm {
    pub fn order(&self) -> usize {
        self.0[0] as usize
    }

    /// Big-endian byte rendering of the key.
    pub fn to_bytes(&self) -> Vec<u8> {
        self.0.iter().flat_map(|w| w.to_be_bytes()).collect()
    }

    /// Rebuilds the canonically labeled graph this key encodes.
    pub fn to_graph(&self) -> Graph {
        let n = self.order();
        let mut rows = vec![0u64; n];
        let mut k = 0usize;
        for i in 0..n {
            for j in i + 1..n {
                if self.0[1 + k / 64] >> (k % 64) & 1 == 1 {
                    rows[i] |= 1 << j;
                    rows[j] |= 1 << i;
                }
                k += 1;
            }
        }
        Graph::from_rows_unchecked(rows)
    }
}

const MAX_GENERATORS: usize = 64;

fn mix(h: u64, x: u64) -> u64 {
    // splitmix-style step; any fixed function of invariant data will do
    let mut z = h ^ x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Refines `cells` until equitable with respect to the splitters in `queue`
/// and every cell created along the way. Returns a trace hash.
fn refine(rows: &[u64], cells: &mut Vec<u64>, mut queue: VecDeque<u64>) -> u64 {
    let n = rows.len();
    let mut h = 0u64;
    let mut buckets: Vec<(u32, u64)> = Vec::with_capacity(n);
    while let Some(w) = queue.pop_front() {
        if cells.len() == n {
            break;
        }
        let mut i = 0;
        while i < cells.len() {
            let x = cells[i];
            if x & (x - 1) == 0 {
                i += 1;
                continue;
            }
            buckets.clear();
            for v in bits_of(x) {
                let c = (rows[v] & w).count_ones();
                match buckets.iter_mut().find(|b| b.0 == c) {
                    Some(b) => b.1 |= 1 << v,
                    None => buckets.push((c, 1 << v)),
                }
            }
            if buckets.len() == 1 {
                i += 1;
                continue;
            }
            buckets.sort_unstable_by_key(|b| b.0);
            h = mix(h, i as u64);
            for &(c, m) in &buckets {
                h = mix(h, (c as u64) << 32 | m.count_ones() as u64);
                queue.push_back(m);
            }
            cells.splice(i..=i, buckets.iter().map(|b| b.1));
            i += buckets.len();
        }
    }
    mix(h, cells.len() as u64)
}

fn pack(rows: &[u64], lab: &[usize]) -> Vec<u64> {
    let n = rows.len();
    let mut pos = [0usize; 64];
    for (i, &v) in lab.iter().enumerate() {
        pos[v] = i;
    }
    let mut perm_rows = [0u64; 64];
    for (i, &v) in lab.iter().enumerate() {
        let mut r = 0u64;
        for w in bits_of(rows[v]) {
            r |= 1 << pos[w];
        }
        perm_rows[i] = r;
    }
    let bits = n * n.saturating_sub(1) / 2;
    let mut key = vec![0u64; 1 + bits.div_ceil(64)];
    key[0] = n as u64;
    let mut k = 0usize;
    for i in 0..n {
        let r = perm_rows[i];
        for j in i + 1..n {
            if r >> j & 1 == 1 {
                key[1 + k / 64] |= 1 << (k % 64);
            }
            k += 1;
        }
    }
    key
}

struct Best {
    trace: Vec<u64>,
    key: Vec<u64>,
    lab: Vec<usize>,
}

struct Search<'a> {
    rows: &'a [u64],
    best: Option<Best>,
    generators: Vec<Vec<u8>>,
    trace: Vec<u64>,
    fixed: Vec<usize>,
}

fn cmp_prefix(cur: &[u64], best: &[u64]) -> Ordering {
    if best.len() >= cur.len() {
        cur.cmp(&best[..cur.len()])
    } else {
        match cur[..best.len()].cmp(best) {
            Ordering::Equal => Ordering::Greater,
            o => o,
        }
    }
}

fn find(parent: &mut [u8; 64], mut x: usize) -> usize {
    while parent[x] as usize != x {
        let p = parent[x] as usize;
        parent[x] = parent[p];
        x = p;
    }
    x
}

impl Search<'_> {
    fn node(&mut self, cells: Vec<u64>) {
        let n = self.rows.len();
        if let Some(best) = &self.best {
            if cmp_prefix(&self.trace, &best.trace) == Ordering::Greater {
                return;
            }
        }
        if cells.len() == n {
            self.leaf(&cells);
            return;
        }
        let (idx, &target) = cells
            .iter()
            .enumerate()
            .filter(|(_, c)| c.count_ones() > 1)
            .min_by_key(|(i, c)| (c.count_ones(), *i))
            .expect("non-discrete partition has a non-trivial cell");
        let mut explored = 0u64;
        for v in bits_of(target) {
            if explored != 0 && self.equivalent_to_explored(v, explored) {
                continue;
            }
            let mut child = cells.clone();
            child.splice(idx..=idx, [1u64 << v, target & !(1 << v)]);
            let mut q = VecDeque::with_capacity(n);
            q.push_back(1u64 << v);
            let t = refine(self.rows, &mut child, q);
            self.trace.push(t);
            self.fixed.push(v);
            self.node(child);
            self.fixed.pop();
            self.trace.pop();
            explored |= 1 << v;
        }
    }

    /// True when `v` shares an orbit with an explored sibling under the
    /// stored automorphisms that fix the current individualized prefix.
    fn equivalent_to_explored(&self, v: usize, explored: u64) -> bool {
        let n = self.rows.len();
        let mut parent = [0u8; 64];
        for (i, p) in parent.iter_mut().enumerate().take(n) {
            *p = i as u8;
        }
        let mut any = false;
        for g in &self.generators {
            if self.fixed.iter().any(|&f| g[f] as usize != f) {
                continue;
            }
            any = true;
            for (i, &gi) in g.iter().enumerate() {
                let a = find(&mut parent, i);
                let b = find(&mut parent, gi as usize);
                if a != b {
                    parent[a] = b as u8;
                }
            }
        }
        if !any {
            return false;
        }
        let root = find(&mut parent, v);
        bits_of(explored).any(|w| find(&mut parent, w) == root)
    }

    fn leaf(&mut self, cells: &[u64]) {
        let lab: Vec<usize> = cells.iter().map(|c| c.trailing_zeros() as usize).collect();
        let key = pack(self.rows, &lab);
        match &self.best {
            None => {
                self.best = Some(Best {
                    trace: self.trace.clone(),
                    key,
                    lab,
                });
            }
            Some(best) => {
                let ord = self.trace.cmp(&best.trace).then_with(|| key.cmp(&best.key));
                match ord {
                    Ordering::Less => {
                        self.best = Some(Best {
                            trace: self.trace.clone(),
                            key,
                            lab,
                        });
                    }
                    Ordering::Equal => {
                        if self.generators.len() < MAX_GENERATORS {
                            let mut g = vec![0u8; lab.len()];
                            for (i, &v) in lab.iter().enumerate() {
                                g[v] = best.lab[i] as u8;
                            }
                            self.generators.push(g);
                        }
                    }
                    Ordering::Greater => {}
                }
            }
        }
    }
}

/// Canonical labeling: `lab[i]` is the vertex placed at position `i`.
pub fn canonical_labeling(g: &Graph) -> (CanonicalForm, Vec<usize>) {
    let n = g.order();
    if n == 0 {
        return (CanonicalForm(vec![0].into_boxed_slice()), Vec::new());
    }
    let rows = g.rows();
    let all = crate::graph::low_mask(n);
    let mut cells = vec![all];
    let mut q = VecDeque::new();
    q.push_back(all);
    let t = refine(rows, &mut cells, q);
    let mut s = Search {
        rows,
        best: None,
        generators: Vec::new(),
        trace: vec![t],
        fixed: Vec::new(),
    };
    s.node(cells);
    let best = s.best.expect("search visits at least one leaf");
    (CanonicalForm(best.key.into_boxed_slice()), best.lab)
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    canonical_labeling(g).0
}

/// The graph relabeled into canonical order.
pub fn canonical_graph(g: &Graph) -> Graph {
    let (_, lab) = canonical_labeling(g);
    g.permuted(&lab)
}

pub fn is_isomorphic(a: &Graph, b: &Graph) -> bool {
    a.order() == b.order() && a.size() == b.size() && canonical_form(a) == canonical_form(b)
}
