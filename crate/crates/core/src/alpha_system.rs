//! The modulus system `(N, A)`.
//!
//! `A = {a(1) < ... < a(r)}` is a set of generators in which every generator
//! exceeds the sum of all smaller ones, so the `2^r - 1` nonempty subset sums
//! are distinct. `A'` is the sorted list of those sums. Each sum remembers the
//! subset it came from, which gives the weight `w` (number of summands) and the
//! smallest summand `v` by lookup.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::series::{DPoly, LaurentPoly};

/// Largest supported number of generators. The subset-sum table has `2^r` rows.
pub const MAX_GENERATORS: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SystemError {
    #[error("generator list is empty")]
    Empty,
    #[error("generators must be positive and strictly increasing")]
    NotIncreasing,
    #[error("too many generators: {0} (limit {MAX_GENERATORS})")]
    TooManyGenerators(usize),
    #[error("dominance violated: a({k}) = {value} is not larger than a(1)+...+a({}) = {partial}", k - 1)]
    DominanceViolated { k: usize, value: u64, partial: u64 },
    #[error("subset sums are not distinct: {value} arises from two different subsets")]
    SumsNotDistinct { value: u64 },
    #[error("modulus too small: N = {modulus} < a(1)+...+a(r) = {total}")]
    ModulusTooSmall { modulus: u64, total: u64 },
    #[error("modulus must be positive")]
    ZeroModulus,
    #[error("generator index {0} out of range")]
    IndexOutOfRange(usize),
}

/// One element of `A'` together with its defining subset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetSum {
    pub value: u64,
    /// 1-based generator indices, ascending.
    pub generators: Vec<usize>,
}

impl SubsetSum {
    pub fn weight(&self) -> usize {
        self.generators.len()
    }
}

/// A validated modulus system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlphaSystem {
    a: Vec<u64>,
    modulus: u64,
    alpha: Vec<SubsetSum>,
    index_of: BTreeMap<u64, usize>,
}

/// `{"N": 7, "a": [1, 2, 4]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SystemSpec {
    #[serde(rename = "N")]
    pub modulus: u64,
    pub a: Vec<u64>,
}

impl AlphaSystem {
    /// Validates `(a, N)` and tabulates `A'` with its weights and smallest summands.
    pub fn new(a: &[u64], modulus: u64) -> Result<Self, SystemError> {
        if a.is_empty() {
            return Err(SystemError::Empty);
        }
        if a.len() > MAX_GENERATORS {
            return Err(SystemError::TooManyGenerators(a.len()));
        }
        if modulus == 0 {
            return Err(SystemError::ZeroModulus);
        }
        if a[0] == 0 || a.windows(2).any(|w| w[0] >= w[1]) {
            return Err(SystemError::NotIncreasing);
        }

        let mut partial = 0u64;
        for (i, &value) in a.iter().enumerate() {
            if i > 0 && value <= partial {
                // A repeated sum is the sharper diagnosis when a(k) equals a smaller subset sum.
                if subset_sums_of(&a[..i]).contains(&value) {
                    return Err(SystemError::SumsNotDistinct { value });
                }
                return Err(SystemError::DominanceViolated {
                    k: i + 1,
                    value,
                    partial,
                });
            }
            partial += value;
        }

        let r = a.len();
        let mut index_of = BTreeMap::new();
        let mut alpha = Vec::with_capacity((1 << r) - 1);
        for mask in 1u32..(1u32 << r) {
            let generators: Vec<usize> = (0..r).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect();
            let value = generators.iter().map(|&i| a[i - 1]).sum();
            if index_of.insert(value, 0).is_some() {
                return Err(SystemError::SumsNotDistinct { value });
            }
            alpha.push(SubsetSum { value, generators });
        }
        alpha.sort_by_key(|s| s.value);
        for (i, s) in alpha.iter().enumerate() {
            index_of.insert(s.value, i);
        }

        if modulus < partial {
            return Err(SystemError::ModulusTooSmall {
                modulus,
                total: partial,
            });
        }

        Ok(Self {
            a: a.to_vec(),
            modulus,
            alpha,
            index_of,
        })
    }

    pub fn r(&self) -> usize {
        self.a.len()
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn generators(&self) -> &[u64] {
        &self.a
    }

    /// `a(k)` for `1 <= k <= r + 1`; `a(r+1)` is the sentinel `N + a(1)`.
    pub fn a(&self, k: usize) -> u64 {
        self.try_a(k).expect("generator index out of range")
    }

    pub fn try_a(&self, k: usize) -> Result<u64, SystemError> {
        match k {
            0 => Err(SystemError::IndexOutOfRange(k)),
            k if k <= self.r() => Ok(self.a[k - 1]),
            k if k == self.r() + 1 => Ok(self.a_ext()),
            _ => Err(SystemError::IndexOutOfRange(k)),
        }
    }

    pub fn a_ext(&self) -> u64 {
        self.modulus + self.a[0]
    }

    /// The sorted subset sums `alpha(1) < ... < alpha(2^r - 1)`.
    pub fn alpha(&self) -> impl Iterator<Item = u64> + '_ {
        self.alpha.iter().map(|s| s.value)
    }

    pub fn subset_sums(&self) -> &[SubsetSum] {
        &self.alpha
    }

    /// `alpha(i)` with 1-based `i` in `1..=2^r`; position `2^r` is the sentinel.
    pub fn alpha_at(&self, i: usize) -> u64 {
        if i == self.alpha.len() + 1 {
            self.a_ext()
        } else {
            self.alpha[i - 1].value
        }
    }

    pub fn alpha_len(&self) -> usize {
        self.alpha.len()
    }

    pub fn contains(&self, alpha: u64) -> bool {
        self.index_of.contains_key(&alpha)
    }

    pub fn lookup(&self, alpha: u64) -> Option<&SubsetSum> {
        self.index_of.get(&alpha).map(|&i| &self.alpha[i])
    }

    /// Number of summands of `alpha`.
    pub fn w(&self, alpha: u64) -> Option<usize> {
        self.lookup(alpha).map(SubsetSum::weight)
    }

    /// Smallest generator in the defining sum of `alpha`.
    pub fn v(&self, alpha: u64) -> Option<u64> {
        self.lookup(alpha).map(|s| self.a[s.generators[0] - 1])
    }

    /// Least positive residue of `m` modulo `N`, valued in `1..=N`.
    pub fn beta(&self, m: i64) -> u64 {
        let n = self.modulus as i64;
        (((m.rem_euclid(n)) + n - 1) % n + 1) as u64
    }

    /// `sum q^{-alpha}` over `alpha < a(bound_index)` with `w(alpha) = weight`.
    ///
    /// Weight zero gives the constant 1. Weights with no qualifying sum give 0.
    pub fn alpha_weight_sum(&self, bound_index: usize, weight: usize) -> LaurentPoly {
        if weight == 0 {
            return LaurentPoly::one();
        }
        let bound = self.a(bound_index);
        let mut out = LaurentPoly::zero();
        for s in self.alpha.iter().filter(|s| s.value < bound && s.weight() == weight) {
            out.add_term(-(s.value as i64), DPoly::one());
        }
        out
    }

    /// The system with the last generator dropped, same modulus.
    pub fn reduced(&self) -> Option<Self> {
        if self.r() < 2 {
            return None;
        }
        Some(Self::new(&self.a[..self.r() - 1], self.modulus).expect("prefix of an admissible system is admissible"))
    }

    pub fn spec(&self) -> SystemSpec {
        SystemSpec {
            modulus: self.modulus,
            a: self.a.clone(),
        }
    }
}

impl fmt::Display for AlphaSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a: Vec<String> = self.a.iter().map(u64::to_string).collect();
        write!(f, "N={}, A={{{}}}", self.modulus, a.join(","))
    }
}

fn subset_sums_of(a: &[u64]) -> Vec<u64> {
    (1u32..(1u32 << a.len()))
        .map(|mask| (0..a.len()).filter(|i| mask >> i & 1 == 1).map(|i| a[i]).sum())
        .collect()
}
