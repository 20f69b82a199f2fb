//! Exact linear algebra over the rationals.
//!
//! Rank uses fraction-free (Bareiss) elimination over unbounded integers.
//! Null spaces, solves and inverses fall back to rational Gauss-Jordan,
//! which is fine at the sizes this crate deals with (a few dozen rows).

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;
pub type RationalVector = Vec<Rational>;

/// Dense row-major matrix of exact fractions.
///
/// `BigRational` normalizes on construction, so every stored entry is in
/// lowest terms with a positive denominator.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        RationalMatrix { rows, cols, data }
    }

    /// Builds a matrix from integer rows. All rows must have equal length.
    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    got: r.len(),
                });
            }
        }
        Ok(Self::from_fn(rows.len(), cols, |i, j| int(rows[i][j])))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> RationalVector {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn principal_submatrix(&self, idx: &[usize]) -> Self {
        Self::from_fn(idx.len(), idx.len(), |i, j| self[(idx[i], idx[j])].clone())
    }

    pub fn mul(&self, rhs: &RationalMatrix) -> Result<RationalMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: rhs.rows,
            });
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<RationalVector> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    /// Each row scaled by the lcm of its denominators, so rank is unchanged.
    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| {
                let row = self.row(i);
                let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
                row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
            })
            .collect()
    }
}

impl Index<(usize, usize)> for RationalMatrix {
    type Output = Rational;

    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RationalMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RationalMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Outcome of fraction-free elimination.
struct Elimination {
    rank: usize,
    /// Original indices of the rows chosen as pivots, in pivot order.
    pivot_rows: Vec<usize>,
    /// Last pivot, equal to +-det for a nonsingular square input.
    last_pivot: BigInt,
    swaps: usize,
}

/// Bareiss elimination with first-nonzero pivoting in column order.
///
/// Every intermediate entry is a minor of the input, so the division by the
/// previous pivot is exact.
fn bareiss(mut a: Vec<Vec<BigInt>>, cols: usize) -> Elimination {
    let rows = a.len();
    let mut order: Vec<usize> = (0..rows).collect();
    let mut prev = BigInt::one();
    let mut rank = 0;
    let mut swaps = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        if p != rank {
            a.swap(p, rank);
            order.swap(p, rank);
            swaps += 1;
        }
        let (top, bottom) = a.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        let pivot = pivot_row[col].clone();
        for row in bottom.iter_mut() {
            let factor = row[col].clone();
            for j in col + 1..cols {
                let v = &pivot * &row[j] - &factor * &pivot_row[j];
                row[j] = v / &prev;
            }
            row[col] = BigInt::zero();
        }
        prev = pivot;
        rank += 1;
    }
    Elimination {
        rank,
        pivot_rows: order[..rank].to_vec(),
        last_pivot: prev,
        swaps,
    }
}

/// Rank over the rationals. The empty matrix has rank 0.
pub fn rank_exact(m: &RationalMatrix) -> usize {
    if m.rows == 0 || m.cols == 0 {
        return 0;
    }
    bareiss(m.integer_rows(), m.cols).rank
}

/// Rank of an integer matrix given by rows.
pub fn rank_of_integer_rows(rows: &[Vec<i64>]) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    if rows.is_empty() || cols == 0 {
        return 0;
    }
    let a = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    bareiss(a, cols).rank
}

/// Pivot rows of the elimination (sorted): a maximal set of linearly
/// independent rows.
pub fn row_basis(m: &RationalMatrix) -> Vec<usize> {
    if m.rows == 0 || m.cols == 0 {
        return Vec::new();
    }
    let mut rows = bareiss(m.integer_rows(), m.cols).pivot_rows;
    rows.sort_unstable();
    rows
}

/// Exact determinant of a square matrix.
pub fn determinant(m: &RationalMatrix) -> Result<Rational> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch {
            expected: m.rows,
            got: m.cols,
        });
    }
    if m.rows == 0 {
        return Ok(Rational::one());
    }
    let mut scale = BigInt::one();
    for i in 0..m.rows {
        scale *= m.row(i).iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    }
    let e = bareiss(m.integer_rows(), m.cols);
    if e.rank < m.rows {
        return Ok(Rational::zero());
    }
    let mut det = e.last_pivot;
    if e.swaps % 2 == 1 {
        det = -det;
    }
    Ok(Rational::new(det, scale))
}

/// Reduced row echelon form; returns the reduced matrix and pivot columns.
pub fn rref(m: &RationalMatrix) -> (RationalMatrix, Vec<usize>) {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..a.cols {
        if r == a.rows {
            break;
        }
        let Some(p) = (r..a.rows).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..a.cols {
                a.data.swap(p * a.cols + j, r * a.cols + j);
            }
        }
        let inv = a[(r, c)].recip();
        for j in c..a.cols {
            let v = &a[(r, j)] * &inv;
            a[(r, j)] = v;
        }
        for i in 0..a.rows {
            if i == r || a[(i, c)].is_zero() {
                continue;
            }
            let f = a[(i, c)].clone();
            for j in c..a.cols {
                if a[(r, j)].is_zero() {
                    continue;
                }
                let v = &a[(r, j)] * &f;
                a[(i, j)] -= v;
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

/// Basis of the right null space, one vector per free column.
pub fn null_space(m: &RationalMatrix) -> Vec<RationalVector> {
    let (red, pivots) = rref(m);
    let mut is_pivot = vec![false; m.cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..m.cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![Rational::zero(); m.cols];
            v[free] = Rational::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -red[(r, free)].clone();
            }
            v
        })
        .collect()
}

/// Inverse of a square matrix, or `None` when singular.
pub fn inverse(m: &RationalMatrix) -> Result<Option<RationalMatrix>> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch {
            expected: m.rows,
            got: m.cols,
        });
    }
    let n = m.rows;
    let aug = RationalMatrix::from_fn(n, 2 * n, |i, j| {
        if j < n {
            m[(i, j)].clone()
        } else if j - n == i {
            Rational::one()
        } else {
            Rational::zero()
        }
    });
    let (red, pivots) = rref(&aug);
    if pivots.len() < n || pivots[n - 1] >= n {
        return Ok(None);
    }
    Ok(Some(RationalMatrix::from_fn(n, n, |i, j| red[(i, n + j)].clone())))
}

/// Rank, a row basis and a null-space basis of a symmetric matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankProfile {
    pub rank: usize,
    /// Pivot rows of the elimination. For symmetric input the principal
    /// submatrix on these indices is nonsingular.
    pub basis_rows: Vec<usize>,
    pub null_basis: Vec<RationalVector>,
}

pub fn rank_profile(m: &RationalMatrix) -> Result<RankProfile> {
    if !m.is_symmetric() {
        return Err(Error::NonSymmetric);
    }
    if m.rows == 0 {
        return Ok(RankProfile {
            rank: 0,
            basis_rows: Vec::new(),
            null_basis: Vec::new(),
        });
    }
    let e = bareiss(m.integer_rows(), m.cols);
    let mut basis_rows = e.pivot_rows;
    basis_rows.sort_unstable();
    let principal = m.principal_submatrix(&basis_rows);
    // A row basis of a symmetric matrix always spans a nonsingular principal
    // block; anything else is a bug in the elimination.
    assert!(
        !determinant(&principal)?.is_zero(),
        "row basis {basis_rows:?} has a singular principal submatrix"
    );
    let null_basis = null_space(m);
    debug_assert_eq!(e.rank + null_basis.len(), m.cols);
    Ok(RankProfile {
        rank: e.rank,
        basis_rows,
        null_basis,
    })
}

/// Some `x` with `M x = y` when `y` lies in the column space of `M`.
pub fn solve_in_column_space(m: &RationalMatrix, y: &[Rational]) -> Result<Option<RationalVector>> {
    if y.len() != m.rows {
        return Err(Error::DimensionMismatch {
            expected: m.rows,
            got: y.len(),
        });
    }
    let aug = RationalMatrix::from_fn(m.rows, m.cols + 1, |i, j| {
        if j < m.cols {
            m[(i, j)].clone()
        } else {
            y[i].clone()
        }
    });
    let (red, pivots) = rref(&aug);
    if pivots.last() == Some(&m.cols) {
        return Ok(None);
    }
    let mut x = vec![Rational::zero(); m.cols];
    for (r, &p) in pivots.iter().enumerate() {
        x[p] = red[(r, m.cols)].clone();
    }
    Ok(Some(x))
}

/// `y^T x`.
pub fn quadratic_form(x: &[Rational], y: &[Rational]) -> Result<Rational> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch {
            expected: y.len(),
            got: x.len(),
        });
    }
    Ok(x.iter().zip(y).fold(Rational::zero(), |acc, (a, b)| acc + a * b))
}

/// `det(B)` and the adjugate `det(B) * B^-1` of a nonsingular integer
/// matrix, both as machine integers. `None` when singular or when an entry
/// does not fit.
pub fn integer_adjugate(m: &RationalMatrix) -> Result<Option<(i64, Vec<Vec<i64>>)>> {
    let det = determinant(m)?;
    if det.is_zero() {
        return Ok(None);
    }
    let Some(inv) = inverse(m)? else {
        return Ok(None);
    };
    let to_i64 = |x: &Rational| -> Option<i64> {
        if !x.is_integer() {
            return None;
        }
        i64::try_from(x.to_integer()).ok()
    };
    let Some(d) = to_i64(&det) else {
        return Ok(None);
    };
    let mut adj = vec![vec![0i64; m.cols]; m.rows];
    for (i, row) in adj.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            let v = &inv[(i, j)] * &det;
            match to_i64(&v) {
                Some(x) => *cell = x,
                None => return Ok(None),
            }
        }
    }
    Ok(Some((d, adj)))
}

pub fn is_zero_vector(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn abs_max(v: &[Rational]) -> Rational {
    v.iter().map(|x| x.abs()).max().unwrap_or_else(Rational::zero)
}
