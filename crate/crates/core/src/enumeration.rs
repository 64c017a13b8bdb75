//! Brute-force counting of overpartitions on both sides of the identity.
//!
//! Counts are refined by `k`, the number of non-overlined parts, and stored as
//! [`DPoly`] values so that the coefficient of `d^k` is the count for `k`.
//! Nothing here goes through a generating function: every count comes from a
//! depth-first walk over parts in decreasing order.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::alpha_system::{AlphaSystem, SystemSpec};
use crate::series::{bigint_string, DPoly, QLaurent};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumError {
    #[error("malformed overpartition: {0}")]
    MalformedOverpartition(String),
    #[error("series has a negative exponent or is not exact through q^{0}")]
    NotACountSeries(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Part {
    pub size: u64,
    pub overlined: bool,
}

impl Part {
    pub fn plain(size: u64) -> Self {
        Self { size, overlined: false }
    }

    pub fn over(size: u64) -> Self {
        Self { size, overlined: true }
    }
}

impl fmt::Display for Part {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.overlined {
            write!(f, "{}'", self.size)
        } else {
            write!(f, "{}", self.size)
        }
    }
}

/// Parts in weakly decreasing order; within a run of equal sizes at most one
/// copy is overlined and it comes first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Overpartition {
    parts: Vec<Part>,
}

impl Overpartition {
    pub fn new(parts: Vec<Part>) -> Result<Self, EnumError> {
        if parts.iter().any(|p| p.size == 0) {
            return Err(EnumError::MalformedOverpartition("part of size 0".into()));
        }
        for w in parts.windows(2) {
            if w[0].size < w[1].size {
                return Err(EnumError::MalformedOverpartition(format!(
                    "sizes not weakly decreasing: {} before {}",
                    w[0].size, w[1].size
                )));
            }
            if w[0].size == w[1].size && w[1].overlined {
                return Err(EnumError::MalformedOverpartition(format!(
                    "overlined copy of {} is not the first of its run",
                    w[1].size
                )));
            }
        }
        Ok(Self { parts })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn parts(&self) -> &[Part] {
        &self.parts
    }

    pub fn sum(&self) -> u64 {
        self.parts.iter().map(|p| p.size).sum()
    }

    pub fn non_overlined(&self) -> usize {
        self.parts.iter().filter(|p| !p.overlined).count()
    }

    pub fn largest(&self) -> Option<Part> {
        self.parts.first().copied()
    }
}

impl fmt::Display for Overpartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "()");
        }
        let s: Vec<String> = self.parts.iter().map(Part::to_string).collect();
        write!(f, "{}", s.join("+"))
    }
}

/// A `(k, n) -> count` table for `0 <= n <= n_max`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTable {
    n_max: usize,
    rows: Vec<DPoly>,
}

impl CountTable {
    pub fn from_rows(rows: Vec<DPoly>) -> Self {
        Self {
            n_max: rows.len().saturating_sub(1),
            rows,
        }
    }

    /// Reads the coefficient table of a power series through `q^n_max`.
    pub fn from_series(s: &QLaurent, n_max: usize) -> Result<Self, EnumError> {
        if s.min_exp().is_some_and(|e| e < 0) || s.trunc() < n_max as i64 {
            return Err(EnumError::NotACountSeries(n_max));
        }
        Ok(Self::from_rows((0..=n_max).map(|n| s.coeff(n as i64)).collect()))
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn get(&self, k: u32, n: usize) -> BigInt {
        self.rows[n].coeff(k)
    }

    pub fn row(&self, n: usize) -> &DPoly {
        &self.rows[n]
    }

    pub fn rows(&self) -> &[DPoly] {
        &self.rows
    }

    pub fn total(&self, n: usize) -> BigInt {
        self.rows[n].coeffs().iter().sum()
    }

    pub fn max_k(&self) -> Option<u32> {
        self.rows.iter().filter_map(DPoly::degree).max()
    }

    /// First cell `(n, k)` at which the tables differ, comparing up to the
    /// smaller `n_max`.
    pub fn first_mismatch(&self, other: &Self) -> Option<Mismatch> {
        let n_max = self.n_max.min(other.n_max);
        for n in 0..=n_max {
            let (a, b) = (&self.rows[n], &other.rows[n]);
            if a != b {
                let top = a.degree().max(b.degree()).unwrap_or(0);
                let k = (0..=top).find(|&k| a.coeff(k) != b.coeff(k)).unwrap_or(0);
                return Some(Mismatch {
                    n,
                    k,
                    left: a.coeff(k),
                    right: b.coeff(k),
                });
            }
        }
        None
    }

    /// Entrywise `self <= other`.
    pub fn dominated_by(&self, other: &Self) -> bool {
        self.rows.iter().zip(&other.rows).all(|(a, b)| {
            let top = a.degree().max(b.degree()).unwrap_or(0);
            (0..=top).all(|k| a.coeff(k) <= b.coeff(k))
        })
    }

    pub fn to_wire(&self, system: &AlphaSystem, side: &str) -> CountTableJson {
        CountTableJson {
            n_max: self.n_max,
            rows: self
                .rows
                .iter()
                .enumerate()
                .map(|(n, p)| RowJson {
                    by_k: p.coeffs().to_vec(),
                    n,
                })
                .collect(),
            side: side.to_string(),
            system: system.spec(),
        }
    }

    /// `{"n_max": .., "rows": [{"by_k": ["1","2","1"], "n": 8}, ..], "side": "G", "system": {"N": 7, "a": [1,2,4]}}`
    pub fn to_json(&self, system: &AlphaSystem, side: &str) -> String {
        serde_json::to_string(&self.to_wire(system, side)).expect("table serialisation cannot fail")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub n: usize,
    pub k: u32,
    #[serde(with = "bigint_string")]
    pub left: BigInt,
    #[serde(with = "bigint_string")]
    pub right: BigInt,
}

#[derive(Debug, Clone, Serialize)]
pub struct CountTableJson {
    pub n_max: usize,
    pub rows: Vec<RowJson>,
    pub side: String,
    pub system: SystemSpec,
}

#[derive(Debug, Clone, Serialize)]
pub struct RowJson {
    #[serde(serialize_with = "bigints_as_strings")]
    pub by_k: Vec<BigInt>,
    pub n: usize,
}

fn bigints_as_strings<S: serde::Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(BigInt::to_string))
}

/// Unrestricted overpartitions of `n`, refined by non-overlined part count.
pub fn count_all_overpartitions(n_max: usize) -> CountTable {
    let sizes: Vec<u64> = (1..=n_max as u64).rev().collect();
    count_by_sizes(&sizes, n_max)
}

/// `F(-A_N; k, n)`: overpartitions into parts congruent to some `-a(i)` mod `N`.
pub fn count_f(sys: &AlphaSystem, n_max: usize) -> CountTable {
    let sizes: Vec<u64> = (1..=n_max as u64)
        .rev()
        .filter(|&s| sys.generators().contains(&sys.beta(-(s as i64))))
        .collect();
    count_by_sizes(&sizes, n_max)
}

/// Overpartitions with parts drawn from `sizes` (descending), no other condition.
fn count_by_sizes(sizes: &[u64], n_max: usize) -> CountTable {
    struct Walk<'a> {
        sizes: &'a [u64],
        memo: HashMap<(u64, usize), DPoly>,
    }
    impl Walk<'_> {
        // Ways to write `rem` with sizes[idx..], each size used any number of
        // times with its first copy optionally overlined.
        fn go(&mut self, rem: u64, idx: usize) -> DPoly {
            if rem == 0 {
                return DPoly::one();
            }
            if idx == self.sizes.len() {
                return DPoly::zero();
            }
            if let Some(hit) = self.memo.get(&(rem, idx)) {
                return hit.clone();
            }
            let s = self.sizes[idx];
            let mut out = self.go(rem, idx + 1);
            let mut copies = 1u32;
            while u64::from(copies) * s <= rem {
                let tail = self.go(rem - u64::from(copies) * s, idx + 1);
                // copies - 1 plain parts plus one overlined, or all plain
                out += &tail.shift(copies - 1);
                out += &tail.shift(copies);
                copies += 1;
            }
            self.memo.insert((rem, idx), out.clone());
            out
        }
    }
    let mut walk = Walk {
        sizes,
        memo: HashMap::new(),
    };
    CountTable::from_rows((0..=n_max as u64).map(|n| walk.go(n, 0)).collect())
}

fn gap_bound(sys: &AlphaSystem, larger: u64, smaller_overlined: bool) -> i64 {
    let alpha = sys.beta(-(larger as i64));
    let w = sys.w(alpha).expect("part residue lies in A'") as i64;
    let v = sys.v(alpha).expect("part residue lies in A'") as i64;
    let n = sys.modulus() as i64;
    n * (w - 1 + i64::from(smaller_overlined)) + v - alpha as i64
}

fn admissible_part(sys: &AlphaSystem, size: u64) -> bool {
    size > 0 && sys.contains(sys.beta(-(size as i64)))
}

fn smallest_part_ok(sys: &AlphaSystem, size: u64) -> bool {
    let w = sys.w(sys.beta(-(size as i64))).expect("part residue lies in A'") as u64;
    size >= sys.modulus() * (w - 1)
}

/// Whether `op` is counted by `G(-A'_N; k, n)`.
///
/// Parts must be congruent to some `-alpha` mod `N`, the smallest part `l_s`
/// needs `l_s >= N (w(alpha_s) - 1)`, and each consecutive pair
/// `l_i >= l_{i+1}` with `alpha_i = beta_N(-l_i)` needs
/// `l_i - l_{i+1} >= N (w(alpha_i) - 1 + [l_{i+1} overlined]) + v(alpha_i) - alpha_i`.
pub fn check_g_conditions(sys: &AlphaSystem, op: &Overpartition) -> bool {
    let parts = op.parts();
    if parts.iter().any(|p| !admissible_part(sys, p.size)) {
        return false;
    }
    if let Some(last) = parts.last() {
        if !smallest_part_ok(sys, last.size) {
            return false;
        }
    }
    parts
        .windows(2)
        .all(|w| (w[0].size - w[1].size) as i64 >= gap_bound(sys, w[0].size, w[1].overlined))
}

/// Restriction on the largest part for [`count_g`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct LargestPart {
    pub bound: Option<u64>,
    pub overlined: Option<bool>,
}

impl LargestPart {
    pub fn none() -> Self {
        Self::default()
    }

    pub fn at_most(bound: u64) -> Self {
        Self {
            bound: Some(bound),
            overlined: None,
        }
    }

    /// `pi_m`: largest part at most `m` and overlined.
    pub fn pi(m: u64) -> Self {
        Self {
            bound: Some(m),
            overlined: Some(true),
        }
    }

    /// `phi_m`: largest part at most `m` and not overlined.
    pub fn phi(m: u64) -> Self {
        Self {
            bound: Some(m),
            overlined: Some(false),
        }
    }
}

/// Memoised walk for the difference-condition side.
pub struct GWalker<'a> {
    sys: &'a AlphaSystem,
    parts: Vec<u64>,
    memo: HashMap<(u64, u64), DPoly>,
}

impl<'a> GWalker<'a> {
    pub fn new(sys: &'a AlphaSystem, n_max: usize) -> Self {
        Self {
            sys,
            parts: (1..=n_max as u64).filter(|&s| admissible_part(sys, s)).collect(),
            memo: HashMap::new(),
        }
    }

    // Completions below a larger part `prev` summing to `rem`. The larger
    // part's own flag never enters the conditions, so it is not in the key.
    fn tail(&mut self, rem: u64, prev: u64) -> DPoly {
        if rem == 0 {
            return if smallest_part_ok(self.sys, prev) {
                DPoly::one()
            } else {
                DPoly::zero()
            };
        }
        if let Some(hit) = self.memo.get(&(rem, prev)) {
            return hit.clone();
        }
        let mut out = DPoly::zero();
        let candidates: Vec<u64> = self.parts.iter().copied().filter(|&m| m <= rem && m <= prev).collect();
        for mu in candidates {
            for overlined in [true, false] {
                if (prev - mu) as i64 >= gap_bound(self.sys, prev, overlined) {
                    let t = self.tail(rem - mu, mu);
                    out += &t.shift(u32::from(!overlined));
                }
            }
        }
        self.memo.insert((rem, prev), out.clone());
        out
    }

    /// Counts for a single `n`.
    pub fn count(&mut self, n: u64, largest: LargestPart) -> DPoly {
        if n == 0 {
            return DPoly::one();
        }
        let bound = largest.bound.unwrap_or(n).min(n);
        let firsts: Vec<u64> = self.parts.iter().copied().filter(|&l| l <= bound).collect();
        let mut out = DPoly::zero();
        for lam in firsts {
            let t = self.tail(n - lam, lam);
            for overlined in [true, false] {
                if largest.overlined.is_none_or(|want| want == overlined) {
                    out += &t.shift(u32::from(!overlined));
                }
            }
        }
        out
    }

    pub fn table(&mut self, n_max: usize, largest: LargestPart) -> CountTable {
        CountTable::from_rows((0..=n_max as u64).map(|n| self.count(n, largest)).collect())
    }
}

/// `G(-A'_N; k, n)`, optionally restricted on the largest part (giving
/// `pi_m`, `phi_m`, `psi_m`). Row `n = 0` is the empty overpartition.
pub fn count_g(sys: &AlphaSystem, n_max: usize, largest: LargestPart) -> CountTable {
    GWalker::new(sys, n_max).table(n_max, largest)
}

/// Ordinary partitions satisfying `l_i - l_{i+1} >= N w(alpha) + v(alpha) - alpha`
/// with `alpha = beta_N(-l_i)`, and the same smallest-part bound.
pub fn count_g_andrews_k0(sys: &AlphaSystem, n_max: usize) -> Vec<BigInt> {
    let parts: Vec<u64> = (1..=n_max as u64).filter(|&s| admissible_part(sys, s)).collect();
    let n = sys.modulus() as i64;
    let bound = |larger: u64| {
        let alpha = sys.beta(-(larger as i64));
        let w = sys.w(alpha).expect("admissible") as i64;
        let v = sys.v(alpha).expect("admissible") as i64;
        n * w + v - alpha as i64
    };
    let mut memo: HashMap<(u64, u64), BigInt> = HashMap::new();
    fn tail(
        rem: u64,
        prev: u64,
        parts: &[u64],
        sys: &AlphaSystem,
        bound: &dyn Fn(u64) -> i64,
        memo: &mut HashMap<(u64, u64), BigInt>,
    ) -> BigInt {
        if rem == 0 {
            return if smallest_part_ok(sys, prev) {
                BigInt::one()
            } else {
                BigInt::zero()
            };
        }
        if let Some(hit) = memo.get(&(rem, prev)) {
            return hit.clone();
        }
        let mut out = BigInt::zero();
        for &mu in parts.iter().filter(|&&m| m <= rem && m <= prev) {
            if (prev - mu) as i64 >= bound(prev) {
                out += tail(rem - mu, mu, parts, sys, bound, memo);
            }
        }
        memo.insert((rem, prev), out.clone());
        out
    }
    (0..=n_max as u64)
        .map(|total| {
            if total == 0 {
                return BigInt::one();
            }
            parts
                .iter()
                .filter(|&&l| l <= total)
                .map(|&l| tail(total - l, l, &parts, sys, &bound, &mut memo))
                .sum()
        })
        .collect()
}

/// Every overpartition of `n`. Exponential; meant for small `n`.
pub fn all_overpartitions(n: u64) -> Vec<Overpartition> {
    fn partitions(rem: u64, max: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if rem == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=max.min(rem)).rev() {
            cur.push(p);
            partitions(rem - p, p, cur, out);
            cur.pop();
        }
    }
    let mut plain = Vec::new();
    partitions(n, n, &mut Vec::new(), &mut plain);
    let mut out = Vec::new();
    for parts in plain {
        // first index of every run
        let heads: Vec<usize> = (0..parts.len())
            .filter(|&i| i == 0 || parts[i - 1] != parts[i])
            .collect();
        for mask in 0u64..(1u64 << heads.len()) {
            let mut op: Vec<Part> = parts.iter().map(|&s| Part::plain(s)).collect();
            for (bit, &h) in heads.iter().enumerate() {
                op[h].overlined = mask >> bit & 1 == 1;
            }
            out.push(Overpartition { parts: op });
        }
    }
    out
}

/// The overpartitions of `n` passing [`check_g_conditions`], by exhaustive filtering.
pub fn list_g(sys: &AlphaSystem, n: u64) -> Vec<Overpartition> {
    all_overpartitions(n)
        .into_iter()
        .filter(|op| check_g_conditions(sys, op))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n7() -> AlphaSystem {
        AlphaSystem::new(&[1, 2, 4], 7).unwrap()
    }

    fn op(parts: &[(u64, bool)]) -> Overpartition {
        Overpartition::new(
            parts
                .iter()
                .map(|&(size, overlined)| Part { size, overlined })
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn fourteen_overpartitions_of_four() {
        let t = count_all_overpartitions(4);
        assert_eq!(t.total(4), BigInt::from(14));
        assert_eq!(t.total(0), BigInt::from(1));
        assert_eq!(t.total(3), BigInt::from(8));
        assert_eq!(all_overpartitions(4).len(), 14);
    }

    #[test]
    fn worked_example_both_sides() {
        let sys = n7();
        let f = count_f(&sys, 8);
        let g = count_g(&sys, 8, LargestPart::none());
        assert_eq!(f.row(8), &DPoly::from_i64s(&[1, 2, 1]));
        assert_eq!(g.row(8), &DPoly::from_i64s(&[1, 2, 1]));
        let mut listed: Vec<String> = list_g(&sys, 8).iter().map(ToString::to_string).collect();
        listed.sort();
        assert_eq!(listed, vec!["5'+3", "5+3", "8", "8'"]);
    }

    #[test]
    fn schur_system_f_side() {
        let sys = AlphaSystem::new(&[1, 2], 3).unwrap();
        // 2', 2, 1'+1, 1+1
        assert_eq!(count_f(&sys, 2).row(2), &DPoly::from_i64s(&[1, 2, 1]));
        assert_eq!(count_f(&sys, 0).row(0), &DPoly::one());
    }

    #[test]
    fn g_condition_examples() {
        let sys = n7();
        assert!(check_g_conditions(&sys, &op(&[(5, false), (3, false)])));
        assert!(check_g_conditions(&sys, &op(&[(5, true), (3, false)])));
        assert!(!check_g_conditions(&sys, &op(&[(5, false), (3, true)])));
        assert!(check_g_conditions(&sys, &op(&[(8, true)])));
        assert!(!check_g_conditions(&sys, &op(&[(7, false), (1, false)])));
        assert!(check_g_conditions(&sys, &Overpartition::empty()));
        assert!(check_g_conditions(&sys, &op(&[(6, false), (6, false)])));
    }

    #[test]
    fn malformed_overpartitions() {
        let bad = |parts: Vec<Part>| matches!(Overpartition::new(parts), Err(EnumError::MalformedOverpartition(_)));
        assert!(bad(vec![Part::over(6), Part::over(6)]));
        assert!(bad(vec![Part::plain(6), Part::over(6)]));
        assert!(bad(vec![Part::plain(3), Part::plain(5)]));
        assert!(bad(vec![Part::plain(0)]));
        assert!(Overpartition::new(vec![Part::over(6), Part::plain(6)]).is_ok());
    }

    #[test]
    fn largest_part_filters() {
        let sys = n7();
        let pi = count_g(&sys, 8, LargestPart::pi(8));
        assert_eq!(pi.row(8), &DPoly::from_i64s(&[1, 1]));
        let zero = count_g(&sys, 0, LargestPart::phi(3));
        assert_eq!(zero.row(0), &DPoly::one());
    }

    #[test]
    fn andrews_k0_small() {
        let sys = n7();
        assert_eq!(count_g_andrews_k0(&sys, 8)[8], BigInt::from(1));
        assert_eq!(count_g_andrews_k0(&sys, 8)[0], BigInt::from(1));
        let schur = AlphaSystem::new(&[1, 2], 3).unwrap();
        let g = count_g(&schur, 5, LargestPart::none());
        assert_eq!(count_g_andrews_k0(&schur, 5)[5], g.get(0, 5));
    }

    #[test]
    fn table_json_shape() {
        let sys = n7();
        let t = count_g(&sys, 1, LargestPart::none());
        assert_eq!(
            t.to_json(&sys, "G"),
            r#"{"n_max":1,"rows":[{"by_k":["1"],"n":0},{"by_k":[],"n":1}],"side":"G","system":{"N":7,"a":[1,2,4]}}"#
        );
    }
}
