//! Generalized friendship graphs `F(k, m)`: a hub joined to every vertex of
//! `m` disjoint copies of `K_k`.
//!
//! `A(F(k, m))` is invertible, so every 0/1 vector is in its column space and
//! a new vertex with neighbourhood `y` keeps the rank iff `y^T A^-1 y = 0`.
//! By symmetry that quantity depends only on the hub bit `y0` and the number
//! `gamma_i` of ones `y` puts in each clique. Multiplying by
//! `d = mk(k - 1)` gives the integer identity
//!
//! ```text
//! -(k-1)^2 y0 + sum_i (mk g_i^2 - mk(k-1) g_i + 2(k-1) y0 g_i) - (sum_i g_i)^2 = 0
//! ```
//!
//! so `F(k, m)` is maximal iff this has no solution other than the ones
//! coming from `y = 0` and from the columns of `A`.

use std::collections::{BTreeMap, HashSet};

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_ORDER};
use crate::linalg::{Rational, RationalMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GfgInstance {
    pub k: u64,
    pub m: u64,
}

impl GfgInstance {
    pub fn new(k: u64, m: u64) -> Result<GfgInstance> {
        if k < 1 || m < 1 {
            return Err(Error::InvalidArgument(format!("F(k, m) needs k >= 1 and m >= 1, got ({k}, {m})")));
        }
        Ok(GfgInstance { k, m })
    }

    pub fn order(&self) -> u64 {
        self.m * self.k + 1
    }

    fn mk(&self) -> i128 {
        (self.m * self.k) as i128
    }

    fn require_k2(&self) -> Result<()> {
        if self.k < 2 {
            return Err(Error::InvalidArgument(format!("needs k >= 2, got k = {}", self.k)));
        }
        Ok(())
    }
}

/// Hub is vertex 0; clique `i` occupies vertices `1 + i*k .. 1 + (i+1)*k`.
pub fn build_fkm(inst: GfgInstance) -> Result<Graph> {
    let n = inst.order() as usize;
    if n > MAX_ORDER {
        return Err(Error::TooLarge { n, max: MAX_ORDER });
    }
    let k = inst.k as usize;
    let mut g = Graph::empty(n)?;
    for i in 0..inst.m as usize {
        let base = 1 + i * k;
        for a in base..base + k {
            g.add_edge(0, a);
            for b in a + 1..base + k {
                g.add_edge(a, b);
            }
        }
    }
    Ok(g)
}

/// Closed-form inverse of `A(F(k, m))`: with `a = k-1`, `b = mk-1` and
/// `d = mk(k-1)`, it is `1/d` times the block matrix with `-a^2` at the hub,
/// `a` along the hub row and column, `bJ - dI` on diagonal blocks and `-J`
/// off the diagonal.
pub fn fkm_inverse(inst: GfgInstance) -> Result<RationalMatrix> {
    inst.require_k2()?;
    let n = inst.order() as usize;
    if n > MAX_ORDER {
        return Err(Error::TooLarge { n, max: MAX_ORDER });
    }
    let k = inst.k as i64;
    let mk = (inst.m * inst.k) as i64;
    let (a, b, d) = (k - 1, mk - 1, mk * (k - 1));
    let block = |v: usize| (v - 1) / k as usize;
    Ok(RationalMatrix::from_fn(n, n, |i, j| {
        let num = match (i, j) {
            (0, 0) => -a * a,
            (0, _) | (_, 0) => a,
            _ if block(i) == block(j) => b - if i == j { d } else { 0 },
            _ => -1,
        };
        Rational::new(BigInt::from(num), BigInt::from(d))
    }))
}

/// Left-hand side of the gamma identity, exactly.
pub fn gamma_residual(inst: GfgInstance, y0: u8, gamma: &[i64]) -> Result<i128> {
    if gamma.len() as u64 != inst.m {
        return Err(Error::DimensionMismatch {
            expected: inst.m as usize,
            got: gamma.len(),
        });
    }
    if y0 > 1 {
        return Err(Error::InvalidArgument(format!("y0 must be 0 or 1, got {y0}")));
    }
    let k = inst.k as i128;
    if let Some(&g) = gamma.iter().find(|&&g| g < 0 || g as i128 > k) {
        return Err(Error::GammaOutOfRange { value: g, k: inst.k as i64 });
    }
    Ok(residual_unchecked(inst, y0 as i128, gamma))
}

fn residual_unchecked(inst: GfgInstance, y0: i128, gamma: &[i64]) -> i128 {
    let k = inst.k as i128;
    let mk = inst.mk();
    let mut acc = -(k - 1) * (k - 1) * y0 * y0;
    let mut ell = 0i128;
    for &g in gamma {
        let g = g as i128;
        acc += mk * g * g - mk * (k - 1) * g + 2 * (k - 1) * y0 * g;
        ell += g;
    }
    acc - ell * ell
}

/// The `k = 3, y0 = 0` identity in terms of multiplicities `a1, a2, a3` of
/// the values 1, 2, 3:
/// `3m(a1 + 4a2 + 9a3) - 6m(a1 + 2a2 + 3a3) - (a1 + 2a2 + 3a3)^2`.
/// Evaluated as a polynomial, so negative arguments are allowed.
pub fn multiplicity_residual(m: i128, a1: i128, a2: i128, a3: i128) -> i128 {
    let ell = a1 + 2 * a2 + 3 * a3;
    3 * m * (a1 + 4 * a2 + 9 * a3) - 6 * m * ell - ell * ell
}

/// A nontrivial solution of the gamma identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GammaWitness {
    pub y0: u8,
    /// One entry per clique, in non-increasing order.
    pub gamma: Vec<i64>,
    pub ell: i64,
    pub q_sum: i64,
}

impl GammaWitness {
    fn from_counts(y0: u8, counts: &[u64]) -> GammaWitness {
        let mut gamma = Vec::new();
        for (v, &c) in counts.iter().enumerate().rev() {
            gamma.extend(std::iter::repeat_n(v as i64, c as usize));
        }
        let ell = gamma.iter().sum();
        let q_sum = gamma.iter().map(|g| g * g).sum();
        GammaWitness { y0, gamma, ell, q_sum }
    }

    /// True for the solutions coming from `y = 0` and from columns of `A`.
    pub fn is_trivial(&self, k: u64) -> bool {
        let k = k as i64;
        match self.y0 {
            0 => self.gamma.iter().all(|&g| g == 0) || self.gamma.iter().all(|&g| g == k),
            _ => self.ell == k - 1 && self.q_sum == (k - 1) * (k - 1),
        }
    }

    /// A neighbourhood on `F(k, m)` realizing this witness.
    pub fn neighbourhood(&self, inst: GfgInstance) -> Vec<bool> {
        let k = inst.k as usize;
        let mut y = vec![false; inst.order() as usize];
        y[0] = self.y0 == 1;
        for (i, &g) in self.gamma.iter().enumerate() {
            for slot in y.iter_mut().skip(1 + i * k).take(g as usize) {
                *slot = true;
            }
        }
        y
    }
}

fn min_square_sum(sum: u64, count: u64) -> Option<u64> {
    if count == 0 {
        return (sum == 0).then_some(0);
    }
    let q = sum / count;
    let r = sum % count;
    Some(r * (q + 1) * (q + 1) + (count - r) * q * q)
}

fn max_square_sum(sum: u64, count: u64, vmax: u64) -> Option<u64> {
    if sum > count * vmax {
        return None;
    }
    if vmax == 0 {
        return Some(0);
    }
    Some((sum / vmax) * vmax * vmax + (sum % vmax) * (sum % vmax))
}

/// Necessary condition for `count` values in `[0, vmax]` to have the given
/// sum and square sum: parity plus the balanced and greedy extremes.
pub fn interval_feasible(count: u64, vmax: u64, sum: u64, sq: u64) -> bool {
    if sq % 2 != sum % 2 {
        return false;
    }
    match (min_square_sum(sum, count), max_square_sum(sum, count, vmax)) {
        (Some(lo), Some(hi)) => lo <= sq && sq <= hi,
        _ => false,
    }
}

/// Exact search for value multiplicities: `counts[v]` copies of `v` for
/// `v in 0..=vmax`, with `count` values in total.
pub fn exact_multiset(count: u64, vmax: u64, sum: u64, sq: u64) -> Option<Vec<u64>> {
    let mut counts = vec![0u64; vmax as usize + 1];
    let mut dead = HashSet::new();
    if dfs(vmax, count, sum, sq, &mut counts, &mut dead) {
        Some(counts)
    } else {
        None
    }
}

fn dfs(v: u64, count: u64, sum: u64, sq: u64, counts: &mut [u64], dead: &mut HashSet<(u64, u64, u64, u64)>) -> bool {
    if !interval_feasible(count, v, sum, sq) {
        return false;
    }
    if v <= 1 {
        // values are 0/1 now: square sum equals sum, already checked
        counts[1.min(v as usize)] = sum;
        counts[0] = count - sum;
        return true;
    }
    if dead.contains(&(v, count, sum, sq)) {
        return false;
    }
    let vv = v * v;
    let top = count.min(sum / v).min(sq / vv);
    for c in (0..=top).rev() {
        if dfs(v - 1, count - c, sum - c * v, sq - c * vv, counts, dead) {
            counts[v as usize] = c;
            return true;
        }
    }
    dead.insert((v, count, sum, sq));
    false
}

/// Required `sum gamma_i^2` for a given hub bit and `ell`, when integral.
fn required_square_sum(inst: GfgInstance, y0: u8, ell: u64) -> Option<u64> {
    let k = inst.k as i128;
    let mk = inst.mk();
    let shifted = ell as i128 - (k - 1) * y0 as i128;
    let num = shifted * shifted + mk * (k - 1) * ell as i128;
    (num % mk == 0).then(|| (num / mk) as u64)
}

fn is_trivial_ell(inst: GfgInstance, y0: u8, ell: u64) -> bool {
    match y0 {
        0 => ell == 0 || ell == inst.m * inst.k,
        _ => ell == inst.k - 1,
    }
}

/// Search every admissible `(y0, ell)` for a nontrivial solution.
///
/// Integrality of the required square sum forces `mk | (ell - (k-1) y0)^2`,
/// which leaves few `ell` to try. Trivial solutions are the only ones at
/// their `ell`, so those values are skipped outright.
pub fn nontrivial_gamma_solution(inst: GfgInstance) -> Option<GammaWitness> {
    if inst.k < 2 {
        return None;
    }
    let mk = inst.m * inst.k;
    for y0 in [0u8, 1] {
        for ell in 0..=mk {
            if is_trivial_ell(inst, y0, ell) {
                continue;
            }
            let Some(q) = required_square_sum(inst, y0, ell) else {
                continue;
            };
            if !interval_feasible(inst.m, inst.k, ell, q) {
                continue;
            }
            if let Some(counts) = exact_multiset(inst.m, inst.k, ell, q) {
                let w = GammaWitness::from_counts(y0, &counts);
                debug_assert_eq!(residual_unchecked(inst, y0 as i128, &w.gamma), 0);
                debug_assert!(!w.is_trivial(inst.k));
                return Some(w);
            }
        }
    }
    None
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TheoremVerdict {
    MaximalByThm,
    NotMaximalByThm,
    Undecided,
}

pub fn is_square_free(n: u64) -> bool {
    assert!(n >= 1, "square-freeness is defined for n >= 1");
    let mut n = n;
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return false;
            }
        }
        p += 1;
    }
    true
}

/// Divisible by the square of some odd integer greater than 1.
pub fn has_odd_square_factor(n: u64) -> bool {
    let mut odd = n;
    while odd.is_multiple_of(2) && odd > 0 {
        odd /= 2;
    }
    odd > 0 && !is_square_free(odd)
}

/// `mk` divisible by 8 or by an odd square: the complement of the
/// square-free sufficient condition.
pub fn square_free_condition_fails(inst: GfgInstance) -> bool {
    let mk = inst.m * inst.k;
    mk.is_multiple_of(8) || has_odd_square_factor(mk)
}

/// `4k m >= (5k^2 - 19k + 20)^2`.
pub fn meets_large_m_bound(inst: GfgInstance) -> bool {
    let k = inst.k as i128;
    let poly = 5 * k * k - 19 * k + 20;
    4 * k * inst.m as i128 >= poly * poly
}

/// What the known sufficient conditions say, without any search.
pub fn theorem_verdict(inst: GfgInstance) -> TheoremVerdict {
    if inst.k < 2 {
        return TheoremVerdict::Undecided;
    }
    let (k, m) = (inst.k, inst.m);
    let mk = m * k;
    if is_square_free(mk) || (mk % 2 == 0 && is_square_free(mk / 2)) {
        return TheoremVerdict::MaximalByThm;
    }
    if mk % 8 == 0 {
        let q = mk / 8;
        if q % 2 == 1 && is_square_free(q) && m <= 12 && k >= 11 {
            return TheoremVerdict::MaximalByThm;
        }
    }
    // Past this point mk and mk/2 are not square-free, which for k = 2, 3
    // already decides non-maximality.
    if k <= 3 || (square_free_condition_fails(inst) && meets_large_m_bound(inst)) {
        return TheoremVerdict::NotMaximalByThm;
    }
    TheoremVerdict::Undecided
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DecisionPath {
    Theorem,
    Search,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FkmVerdict {
    pub k: u64,
    pub m: u64,
    pub maximal: bool,
    pub witness: Option<GammaWitness>,
    pub theorem_verdict: TheoremVerdict,
    /// `Theorem` when the theorem verdict alone was conclusive.
    pub decided_by: DecisionPath,
}

/// Exact maximality of `F(k, m)` by the gamma search, with the theorem
/// verdict reported alongside.
pub fn is_maximal_fkm(inst: GfgInstance) -> Result<FkmVerdict> {
    inst.require_k2()?;
    let witness = nontrivial_gamma_solution(inst);
    let theorem = theorem_verdict(inst);
    Ok(FkmVerdict {
        k: inst.k,
        m: inst.m,
        maximal: witness.is_none(),
        witness,
        theorem_verdict: theorem,
        decided_by: if theorem == TheoremVerdict::Undecided {
            DecisionPath::Search
        } else {
            DecisionPath::Theorem
        },
    })
}

/// The explicit non-maximality certificate for large `m`: multiplicities
/// `u, v, w, t` of the values `1, 2, k-1, k` with `y0 = 0` and
/// `ell = c q`, where `mk = c q^2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LargeMConstruction {
    pub c: u64,
    pub q: u64,
    pub u: i64,
    pub v: i64,
    pub w: i64,
    pub t: i64,
    pub witness: GammaWitness,
}

/// `(c, q)` with `mk = c q^2` and either `q = 2, c` even or `q` odd > 1.
fn square_splits(mk: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    if mk.is_multiple_of(8) {
        out.push((mk / 4, 2));
    }
    let mut q = 3;
    while q * q <= mk {
        if mk.is_multiple_of(q * q) {
            out.push((mk / (q * q), q));
        }
        q += 2;
    }
    out
}

fn construct(inst: GfgInstance, c: u64, q: u64) -> Option<LargeMConstruction> {
    let k = inst.k as i64;
    let (ci, qi) = (c as i64, q as i64);
    let cq1 = ci * (qi - 1);
    debug_assert!(cq1 % 2 == 0 || k % 2 == 1);
    let (v, u) = if k % 2 == 0 {
        let v = (-(cq1 / 2)).rem_euclid(k - 1);
        let u = (ci / 2 - 3 * v).rem_euclid(k / 2);
        (v, u)
    } else {
        let half_k = (k + 1) / 2; // inverse of 2 mod k
        let v = (-(cq1 / 2)).rem_euclid((k - 1) / 2);
        let c_half = (ci % k * half_k).rem_euclid(k);
        let u = (c_half - 3 * v).rem_euclid(k);
        (v, u)
    };
    let w_num = cq1 - (k - 1) * u - 2 * (k - 2) * v;
    let t_num = ci + (k - 2) * u + 2 * (k - 3) * v;
    if w_num % (k - 1) != 0 || t_num % k != 0 {
        return None;
    }
    let (w, t) = (w_num / (k - 1), t_num / k);
    if w < 0 || t < 0 || (u + v + w + t) as u64 > inst.m {
        return None;
    }
    let mut counts = vec![0u64; k as usize + 1];
    counts[1] += u as u64;
    counts[2] += v as u64;
    counts[k as usize - 1] += w as u64;
    counts[k as usize] += t as u64;
    counts[0] = inst.m - (u + v + w + t) as u64;
    let witness = GammaWitness::from_counts(0, &counts);
    if residual_unchecked(inst, 0, &witness.gamma) != 0 || witness.is_trivial(inst.k) {
        return None;
    }
    Some(LargeMConstruction { c, q, u, v, w, t, witness })
}

/// Builds the explicit certificate when `k >= 4`, `mk` is divisible by 8 or
/// an odd square, and `m` meets the large-`m` bound.
pub fn large_m_witness(inst: GfgInstance) -> Result<LargeMConstruction> {
    if inst.k < 4 {
        return Err(Error::HypothesesNotMet(format!("k = {} < 4", inst.k)));
    }
    if !square_free_condition_fails(inst) {
        return Err(Error::HypothesesNotMet(format!(
            "mk = {} is divisible by neither 8 nor an odd square",
            inst.m * inst.k
        )));
    }
    if !meets_large_m_bound(inst) {
        return Err(Error::HypothesesNotMet(format!("m = {} is below the bound for k = {}", inst.m, inst.k)));
    }
    square_splits(inst.m * inst.k)
        .into_iter()
        .find_map(|(c, q)| construct(inst, c, q))
        .ok_or_else(|| Error::HypothesesNotMet("no split mk = c q^2 yields a valid construction".into()))
}

/// For each `k <= k_max`, every `2 <= m <= m_max` where `mk` is divisible by
/// 8 or an odd square and yet `F(k, m)` is maximal. `m = 1` is skipped:
/// `F(k, 1)` is the complete graph `K_{k+1}`.
pub fn exceptional_scan(k_max: u64, m_max: u64) -> BTreeMap<u64, Vec<u64>> {
    let pairs: Vec<GfgInstance> = (2..=k_max)
        .flat_map(|k| (2..=m_max).map(move |m| GfgInstance { k, m }))
        .filter(|&inst| square_free_condition_fails(inst))
        .collect();
    let hits: Vec<GfgInstance> = pairs
        .par_iter()
        .copied()
        .filter(|&inst| nontrivial_gamma_solution(inst).is_none())
        .collect();
    let mut out: BTreeMap<u64, Vec<u64>> = (2..=k_max).map(|k| (k, Vec::new())).collect();
    for inst in hits {
        out.entry(inst.k).or_default().push(inst.m);
    }
    for ms in out.values_mut() {
        ms.sort_unstable();
    }
    out
}
