//! Simple undirected graphs stored as one adjacency word per vertex.

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{self, int, RankProfile, RationalMatrix};

pub const MAX_ORDER: usize = 64;

/// Undirected simple graph on at most 64 vertices.
///
/// Row `i` holds the neighbourhood of vertex `i` as a bit set. Rows are
/// symmetric and the diagonal is always clear.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    n: usize,
    rows: Vec<u64>,
}

impl Graph {
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_ORDER {
            return Err(Error::TooLarge { n, max: MAX_ORDER });
        }
        Ok(Graph { n, rows: vec![0; n] })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for &(u, v) in edges {
            if u >= n || v >= n || u == v {
                return Err(Error::InvalidArgument(format!("bad edge ({u}, {v}) for order {n}")));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    /// Builds a graph from adjacency rows, validating symmetry and the diagonal.
    pub fn from_rows(rows: Vec<u64>) -> Result<Self> {
        let n = rows.len();
        if n > MAX_ORDER {
            return Err(Error::TooLarge { n, max: MAX_ORDER });
        }
        let mask = low_mask(n);
        for (i, &r) in rows.iter().enumerate() {
            if r & !mask != 0 || r >> i & 1 == 1 {
                return Err(Error::InvalidArgument(format!("row {i} out of range or has a loop")));
            }
            let mut bits = r;
            while bits != 0 {
                let j = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                if rows[j] >> i & 1 == 0 {
                    return Err(Error::InvalidArgument(format!("asymmetric adjacency at ({i}, {j})")));
                }
            }
        }
        Ok(Graph { n, rows })
    }

    pub(crate) fn from_rows_unchecked(rows: Vec<u64>) -> Self {
        Graph { n: rows.len(), rows }
    }

    pub fn complete(n: usize) -> Result<Self> {
        let mut g = Self::empty(n)?;
        let mask = low_mask(n);
        for i in 0..n {
            g.rows[i] = mask & !(1 << i);
        }
        Ok(g)
    }

    pub fn path(n: usize) -> Result<Self> {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_edges(n, &edges)
    }

    pub fn cycle(n: usize) -> Result<Self> {
        let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        if n > 2 {
            edges.push((n - 1, 0));
        }
        Self::from_edges(n, &edges)
    }

    /// Star with `leaves` leaves; the centre is vertex 0.
    pub fn star(leaves: usize) -> Result<Self> {
        let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        Self::from_edges(leaves + 1, &edges)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    pub fn neighbours(&self, v: usize) -> u64 {
        self.rows[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u] >> v & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count_ones() as usize
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && u < self.n && v < self.n);
        self.rows[u] |= 1 << v;
        self.rows[v] |= 1 << u;
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.rows[u] &= !(1 << v);
        self.rows[v] &= !(1 << u);
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            let mut bits = self.rows[u] & !low_mask(u + 1);
            while bits != 0 {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                out.push((u, v));
            }
        }
        out
    }

    /// Relabels so that new vertex `i` is old vertex `order[i]`.
    pub fn permuted(&self, order: &[usize]) -> Graph {
        debug_assert_eq!(order.len(), self.n);
        let mut pos = [0usize; MAX_ORDER];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let rows = order
            .iter()
            .map(|&v| {
                let mut bits = self.rows[v];
                let mut r = 0u64;
                while bits != 0 {
                    let w = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    r |= 1 << pos[w];
                }
                r
            })
            .collect();
        Graph { n: self.n, rows }
    }

    /// Subgraph induced on `keep` (vertices renumbered in the given order).
    pub fn induced(&self, keep: &[usize]) -> Graph {
        let rows = keep
            .iter()
            .map(|&u| {
                keep.iter()
                    .enumerate()
                    .filter(|&(_, &v)| self.has_edge(u, v))
                    .fold(0u64, |acc, (j, _)| acc | 1 << j)
            })
            .collect();
        Graph { n: keep.len(), rows }
    }

    pub fn remove_vertices(&self, drop: &[usize]) -> Graph {
        let keep: Vec<usize> = (0..self.n).filter(|v| !drop.contains(v)).collect();
        self.induced(&keep)
    }

    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let n = self.n + other.n;
        if n > MAX_ORDER {
            return Err(Error::TooLarge { n, max: MAX_ORDER });
        }
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().map(|r| r << self.n));
        Ok(Graph { n, rows })
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = 1u64;
        let mut frontier = 1u64;
        while frontier != 0 {
            let mut next = 0u64;
            let mut bits = frontier;
            while bits != 0 {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                next |= self.rows[v];
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen == low_mask(self.n)
    }

    pub fn is_tree(&self) -> bool {
        self.n >= 1 && self.size() == self.n - 1 && self.is_connected()
    }

    pub fn adjacency_matrix(&self) -> RationalMatrix {
        RationalMatrix::from_fn(self.n, self.n, |i, j| int(self.has_edge(i, j) as i64))
    }

    pub fn adjacency_i64(&self) -> Vec<Vec<i64>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.has_edge(i, j) as i64).collect())
            .collect()
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

pub(crate) fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

pub(crate) fn bits_of(mut set: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if set == 0 {
            None
        } else {
            let v = set.trailing_zeros() as usize;
            set &= set - 1;
            Some(v)
        }
    })
}

/// No isolated vertex and no two vertices with the same open neighbourhood.
pub fn is_reduced(g: &Graph) -> bool {
    if g.rows.contains(&0) {
        return false;
    }
    let mut sorted = g.rows.clone();
    sorted.sort_unstable();
    sorted.windows(2).all(|w| w[0] != w[1])
}

pub fn adjacency_rank(g: &Graph) -> usize {
    linalg::rank_of_integer_rows(&g.adjacency_i64())
}

pub fn rank_profile(g: &Graph) -> RankProfile {
    linalg::rank_profile(&g.adjacency_matrix()).expect("adjacency matrices are symmetric")
}

/// Pendant (degree one) vertices and the vertices adjacent to them.
pub fn pendant_and_prependant(g: &Graph) -> (u64, u64) {
    let mut pendant = 0u64;
    let mut pre = 0u64;
    for v in 0..g.n {
        if g.degree(v) == 1 {
            pendant |= 1 << v;
            pre |= g.rows[v];
        }
    }
    (pendant, pre)
}

/// Vertices where every null vector of the adjacency matrix vanishes.
pub fn null_vertices(g: &Graph) -> u64 {
    null_vertices_from(&rank_profile(g), g.n)
}

pub(crate) fn null_vertices_from(profile: &RankProfile, n: usize) -> u64 {
    (0..n)
        .filter(|&v| profile.null_basis.iter().all(|x| num_traits::Zero::is_zero(&x[v])))
        .fold(0u64, |acc, v| acc | 1 << v)
}

/// Adds a vertex whose neighbourhood is the support of `y`.
pub fn add_vertex(g: &Graph, y: &[bool]) -> Result<Graph> {
    if y.len() != g.n {
        return Err(Error::DimensionMismatch {
            expected: g.n,
            got: y.len(),
        });
    }
    add_vertex_mask(g, mask_of(y))
}

pub fn add_vertex_mask(g: &Graph, y: u64) -> Result<Graph> {
    let n = g.n;
    if n + 1 > MAX_ORDER {
        return Err(Error::TooLarge { n: n + 1, max: MAX_ORDER });
    }
    debug_assert_eq!(y & !low_mask(n), 0);
    let mut rows = g.rows.clone();
    for v in bits_of(y) {
        rows[v] |= 1 << n;
    }
    rows.push(y);
    Ok(Graph { n: n + 1, rows })
}

pub fn mask_of(y: &[bool]) -> u64 {
    y.iter().enumerate().filter(|(_, &b)| b).fold(0, |acc, (i, _)| acc | 1 << i)
}

pub fn bools_of(mask: u64, n: usize) -> Vec<bool> {
    (0..n).map(|i| mask >> i & 1 == 1).collect()
}
