//! One-vertex extensions and their effect on rank.
//!
//! Bordering a symmetric `B` with a column `y` and diagonal entry `b` raises
//! the rank by 2 when `y` is outside the column space of `B`, by 1 when
//! `B x = y` has `y^T x != b`, and leaves it unchanged when `y^T x = b`.
//! Simple graphs always border with `b = 0`.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::graph::{bits_of, is_reduced, mask_of, Graph};
use crate::linalg::{self, int, Rational, RationalMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub enum RankDelta {
    PlusTwo,
    PlusOne,
    Zero,
}

impl RankDelta {
    pub fn value(self) -> usize {
        match self {
            RankDelta::PlusTwo => 2,
            RankDelta::PlusOne => 1,
            RankDelta::Zero => 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionCandidate {
    pub y: Vec<bool>,
    pub delta: RankDelta,
}

/// Rank change from bordering the symmetric matrix `m` by `(y, b)`.
pub(crate) fn classify_bordered(m: &RationalMatrix, y: &[Rational], b: &Rational) -> Result<RankDelta> {
    Ok(match linalg::solve_in_column_space(m, y)? {
        None => RankDelta::PlusTwo,
        Some(x) => {
            if &linalg::quadratic_form(&x, y)? == b {
                RankDelta::Zero
            } else {
                RankDelta::PlusOne
            }
        }
    })
}

/// Classifies adding a vertex adjacent to the support of `y`.
pub fn classify_extension(g: &Graph, y: &[bool]) -> Result<ExtensionCandidate> {
    if y.len() != g.order() {
        return Err(Error::DimensionMismatch {
            expected: g.order(),
            got: y.len(),
        });
    }
    let yv: Vec<Rational> = y.iter().map(|&b| int(b as i64)).collect();
    let delta = classify_bordered(&g.adjacency_matrix(), &yv, &Rational::zero())?;
    Ok(ExtensionCandidate { y: y.to_vec(), delta })
}

/// A nonsingular principal block of an adjacency matrix, prepared for
/// enumerating rank-preserving extensions.
///
/// With `S` the basis vertices and `B = A[S,S]`, every extension that keeps
/// the rank is `y = A[:,S] B^-1 z` for `z = y[S]` with `z^T B^-1 z = 0`.
/// Working with `adj = det(B) B^-1` keeps everything in machine integers.
#[derive(Clone, Debug)]
pub struct BasisBlock {
    pub det: i64,
    pub adj: Vec<Vec<i64>>,
}

impl BasisBlock {
    /// Block for the principal submatrix of `g` on `basis`, in that order.
    pub fn new(g: &Graph, basis: &[usize]) -> Option<BasisBlock> {
        let sub = g.induced(basis);
        let (det, adj) = linalg::integer_adjugate(&sub.adjacency_matrix()).ok()??;
        Some(BasisBlock { det, adj })
    }

    pub fn size(&self) -> usize {
        self.adj.len()
    }
}

/// Every rank-preserving reduced extension of `g`, given a basis `basis`
/// (ordered as in `block`). Returned as sorted neighbourhood masks.
pub fn extensions_with_basis(g: &Graph, basis: &[usize], block: &BasisBlock) -> Vec<u64> {
    let n = g.order();
    let r = basis.len();
    debug_assert_eq!(r, block.size());
    let mut basis_mask = 0u64;
    for &v in basis {
        basis_mask |= 1 << v;
    }
    // S-restriction of each non-basis row, as bits over basis positions.
    let others: Vec<(usize, u32)> = (0..n)
        .filter(|v| basis_mask >> v & 1 == 0)
        .map(|v| {
            let a = basis
                .iter()
                .enumerate()
                .filter(|&(_, &s)| g.has_edge(v, s))
                .fold(0u32, |acc, (j, _)| acc | 1 << j);
            (v, a)
        })
        .collect();
    let rows = g.rows();
    let det = block.det;
    let adj = &block.adj;

    let mut out = Vec::new();
    let mut w = vec![0i64; r];
    let mut q: i64 = 0;
    let mut z: u64 = 0;
    for step in 1u64..1 << r {
        let i = step.trailing_zeros() as usize;
        if z >> i & 1 == 0 {
            q += 2 * w[i] + adj[i][i];
            for (wj, row) in w.iter_mut().zip(adj) {
                *wj += row[i];
            }
        } else {
            q += -2 * w[i] + adj[i][i];
            for (wj, row) in w.iter_mut().zip(adj) {
                *wj -= row[i];
            }
        }
        z ^= 1 << i;
        if q != 0 {
            continue;
        }
        let mut y = 0u64;
        for j in bits_of(z) {
            y |= 1 << basis[j];
        }
        let mut integral = true;
        for &(v, a) in &others {
            let s: i64 = bits_of(a as u64).map(|j| w[j]).sum();
            if s == det {
                y |= 1 << v;
            } else if s != 0 {
                integral = false;
                break;
            }
        }
        if !integral {
            continue;
        }
        // z != 0 so y != 0; a twin is an old vertex with exactly this neighbourhood
        if rows.contains(&y) {
            continue;
        }
        out.push(y);
    }
    out.sort_unstable();
    out
}

fn basis_of(g: &Graph) -> (Vec<usize>, BasisBlock) {
    let basis = linalg::row_basis(&g.adjacency_matrix());
    let block = if basis.is_empty() {
        BasisBlock { det: 1, adj: Vec::new() }
    } else {
        BasisBlock::new(g, &basis).expect("row basis of a symmetric matrix spans a nonsingular block")
    };
    (basis, block)
}

/// All `y` whose addition keeps the rank of `g` and keeps the graph reduced.
pub fn rank_preserving_reduced_extensions(g: &Graph) -> Result<Vec<Vec<bool>>> {
    Ok(extension_masks(g)?
        .into_iter()
        .map(|y| crate::graph::bools_of(y, g.order()))
        .collect())
}

pub fn extension_masks(g: &Graph) -> Result<Vec<u64>> {
    if !is_reduced(g) {
        return Err(Error::NotReduced);
    }
    let (basis, block) = basis_of(g);
    Ok(extensions_with_basis(g, &basis, &block))
}

pub fn is_maximal(g: &Graph) -> Result<bool> {
    Ok(maximality_witness(g)?.is_none())
}

/// First rank-preserving reduced extension, if any.
pub fn maximality_witness(g: &Graph) -> Result<Option<Vec<bool>>> {
    let ys = extension_masks(g)?;
    Ok(ys.first().map(|&y| crate::graph::bools_of(y, g.order())))
}

/// Brute force over all `2^n` neighbourhoods; test oracle only.
pub fn brute_force_extensions(g: &Graph) -> Vec<u64> {
    let n = g.order();
    let r = crate::graph::adjacency_rank(g);
    let mut out = Vec::new();
    for y in 1u64..1 << n {
        let h = crate::graph::add_vertex_mask(g, y).expect("order below cap");
        if is_reduced(&h) && crate::graph::adjacency_rank(&h) == r {
            out.push(y);
        }
    }
    out
}

pub fn mask_from_bools(y: &[bool]) -> u64 {
    mask_of(y)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classify_examples() {
        let k2 = Graph::complete(2).unwrap();
        assert_eq!(classify_extension(&k2, &[true, true]).unwrap().delta, RankDelta::PlusOne);
        assert_eq!(classify_extension(&k2, &[false, false]).unwrap().delta, RankDelta::Zero);
        let p3 = Graph::path(3).unwrap();
        assert_eq!(classify_extension(&p3, &[true, false, true]).unwrap().delta, RankDelta::Zero);
        assert_eq!(classify_extension(&p3, &[true, false, false]).unwrap().delta, RankDelta::PlusTwo);
        assert!(classify_extension(&p3, &[true]).is_err());
    }

    #[test]
    fn maximal_small_graphs() {
        assert!(extension_masks(&Graph::complete(3).unwrap()).unwrap().is_empty());
        assert!(extension_masks(&Graph::complete(2).unwrap()).unwrap().is_empty());
        let two_k2 = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(!extension_masks(&two_k2).unwrap().is_empty());
        let bowtie = Graph::from_edges(5, &[(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)]).unwrap();
        assert!(is_maximal(&bowtie).unwrap());
        assert_eq!(is_maximal(&Graph::cycle(4).unwrap()), Err(Error::NotReduced));
        let p4 = Graph::path(4).unwrap();
        assert!(!is_maximal(&p4).unwrap());
        let y = maximality_witness(&p4).unwrap().unwrap();
        let h = crate::graph::add_vertex(&p4, &y).unwrap();
        assert!(is_reduced(&h));
        assert_eq!(crate::graph::adjacency_rank(&h), 4);
    }

    #[test]
    fn fast_path_matches_brute_force_on_p5() {
        // P5 is singular, so completion of non-basis coordinates is exercised
        let mut g = Graph::path(5).unwrap();
        g.add_edge(0, 4);
        for g in [Graph::path(5).unwrap(), g] {
            if is_reduced(&g) {
                assert_eq!(extension_masks(&g).unwrap(), brute_force_extensions(&g));
            }
        }
    }
}
