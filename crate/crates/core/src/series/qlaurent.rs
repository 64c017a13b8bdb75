use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{DPoly, LaurentPoly, SeriesError};

/// A Laurent series in `q` with `DPoly` coefficients, exact through `q^trunc`.
///
/// Coefficients above `trunc` are unknown and never stored. Multiplying by a
/// factor whose lowest exponent is negative pulls unknown terms down, so the
/// result's `trunc` drops by that amount; the caller must lower other operands
/// explicitly with [`QLaurent::truncate`] before combining them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QLaurent {
    trunc: i64,
    terms: BTreeMap<i64, DPoly>,
}

/// A single nonzero monomial `c * q^q * d^d`, used to localise residuals.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Monomial {
    #[serde(with = "bigint_string")]
    pub c: BigInt,
    pub d: u32,
    pub q: i64,
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} q^{} d^{}", self.c, self.q, self.d)
    }
}

impl QLaurent {
    pub fn zero(trunc: i64) -> Self {
        Self {
            trunc,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(trunc: i64) -> Self {
        Self::from_poly(&LaurentPoly::one(), trunc)
    }

    pub fn monomial(e_q: i64, e_d: u32, c: i64, trunc: i64) -> Self {
        Self::from_poly(&LaurentPoly::monomial(e_q, e_d, c), trunc)
    }

    /// The exact polynomial `p` viewed as a series through `q^trunc`.
    pub fn from_poly(p: &LaurentPoly, trunc: i64) -> Self {
        Self {
            trunc,
            terms: p
                .terms()
                .filter(|(e, _)| *e <= trunc)
                .map(|(e, c)| (e, c.clone()))
                .collect(),
        }
    }

    pub(crate) fn from_map(mut terms: BTreeMap<i64, DPoly>, trunc: i64) -> Self {
        terms.retain(|e, p| *e <= trunc && !p.is_zero());
        Self { trunc, terms }
    }

    pub fn trunc(&self) -> i64 {
        self.trunc
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    /// Lowest exponent at which the series may differ from zero; `trunc + 1`
    /// for the zero series.
    fn low(&self) -> i64 {
        self.min_exp().unwrap_or(self.trunc + 1)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e_q: i64) -> DPoly {
        self.terms.get(&e_q).cloned().unwrap_or_default()
    }

    pub fn coeff_at(&self, e_q: i64, e_d: u32) -> BigInt {
        self.terms.get(&e_q).map(|p| p.coeff(e_d)).unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &DPoly)> {
        self.terms.iter().map(|(&e, p)| (e, p))
    }

    /// The stored terms as an exact polynomial (drops the truncation marker).
    pub fn to_poly(&self) -> LaurentPoly {
        LaurentPoly::from_terms(self.terms().map(|(e, p)| (e, p.clone())))
    }

    /// Lowers the precision to `trunc`. Raising it is impossible.
    pub fn truncate(&self, trunc: i64) -> Result<Self, SeriesError> {
        if trunc > self.trunc {
            return Err(SeriesError::PrecisionUnavailable {
                requested: trunc,
                available: self.trunc,
            });
        }
        Ok(Self::from_map(self.terms.clone(), trunc))
    }

    fn check_same(&self, other: &Self) -> Result<(), SeriesError> {
        if self.trunc != other.trunc {
            return Err(SeriesError::TruncationMismatch {
                left: self.trunc,
                right: other.trunc,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_same(other)?;
        let mut terms = self.terms.clone();
        for (e, p) in other.terms() {
            *terms.entry(e).or_default() += p;
        }
        Ok(Self::from_map(terms, self.trunc))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_same(other)?;
        let mut terms = self.terms.clone();
        for (e, p) in other.terms() {
            *terms.entry(e).or_default() -= p;
        }
        Ok(Self::from_map(terms, self.trunc))
    }

    pub fn neg(&self) -> Self {
        Self {
            trunc: self.trunc,
            terms: self.terms.iter().map(|(&e, p)| (e, -p)).collect(),
        }
    }

    /// Product of two series with equal `trunc`.
    ///
    /// The result is exact through `trunc + min(0, low(self), low(other))`.
    pub fn checked_mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_same(other)?;
        let trunc = self.trunc + 0.min(self.low()).min(other.low());
        Ok(Self::from_map(product(&self.terms, &other.terms, trunc), trunc))
    }

    /// Product with an exact polynomial; exact through `trunc + min(0, min_exp(p))`.
    pub fn mul_poly(&self, p: &LaurentPoly) -> Self {
        let trunc = self.trunc + 0.min(p.min_exp().unwrap_or(0));
        let rhs: BTreeMap<i64, DPoly> = p.terms().map(|(e, c)| (e, c.clone())).collect();
        Self::from_map(product(&self.terms, &rhs, trunc), trunc)
    }

    /// Multiplies by `c * d^e_d * q^e_q`. A negative `e_q` lowers both
    /// `min_exp` and `trunc`.
    pub fn scale_by_monomial(&self, e_q: i64, e_d: u32, c: i64) -> Self {
        let trunc = self.trunc + 0.min(e_q);
        let c = BigInt::from(c);
        let terms = self.terms().map(|(e, p)| (e + e_q, p.shift(e_d).scale(&c))).collect();
        Self::from_map(terms, trunc)
    }

    /// Exact division by a power series with constant term exactly 1.
    pub fn checked_div(&self, divisor: &Self) -> Result<Self, SeriesError> {
        self.check_same(divisor)?;
        let inv = divisor.inverse()?;
        self.checked_mul(&inv)
    }

    /// Multiplicative inverse of a power series with constant term exactly 1.
    pub fn inverse(&self) -> Result<Self, SeriesError> {
        if self.min_exp().is_some_and(|e| e < 0) || !self.coeff(0).is_one() {
            return Err(SeriesError::NonUnitLeadingTerm);
        }
        // inv_n = -sum_{e=1..n} s_e inv_{n-e}
        let mut inv: BTreeMap<i64, DPoly> = BTreeMap::new();
        inv.insert(0, DPoly::one());
        for n in 1..=self.trunc {
            let mut acc = DPoly::zero();
            for (e, p) in self.terms.range(1..=n) {
                if let Some(prev) = inv.get(&(n - e)) {
                    acc.add_product(p, prev);
                }
            }
            if !acc.is_zero() {
                inv.insert(n, -&acc);
            }
        }
        Ok(Self::from_map(inv, self.trunc))
    }

    pub fn at_d_zero(&self) -> Self {
        let terms = self
            .terms()
            .map(|(e, p)| (e, DPoly::monomial(0, p.at_zero())))
            .collect();
        Self::from_map(terms, self.trunc)
    }

    /// Lowest nonzero monomial, ordered by `q` exponent then `d` degree.
    pub fn first_nonzero(&self) -> Option<Monomial> {
        self.terms().next().map(|(q, p)| {
            let (d, c) = p.terms().next().expect("stored coefficients are nonzero");
            Monomial { q, d, c: c.clone() }
        })
    }

    /// Whether `self` and `other` agree through the smaller of the two truncations.
    pub fn agrees_with(&self, other: &Self) -> bool {
        let t = self.trunc.min(other.trunc);
        self.terms.range(..=t).eq(other.terms.range(..=t))
    }

    pub fn to_wire(&self) -> SeriesJson {
        let mut terms = Vec::new();
        for (q, p) in self.terms() {
            for (d, c) in p.terms() {
                terms.push(Monomial { q, d, c: c.clone() });
            }
        }
        SeriesJson {
            terms,
            trunc: self.trunc,
        }
    }

    /// Canonical JSON: sorted keys, exponent-sorted terms, integers as strings.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_wire()).expect("series serialisation cannot fail")
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        let wire: SeriesJson = serde_json::from_str(s)?;
        Ok(Self::from(wire))
    }
}

fn product(a: &BTreeMap<i64, DPoly>, b: &BTreeMap<i64, DPoly>, trunc: i64) -> BTreeMap<i64, DPoly> {
    let mut acc: BTreeMap<i64, DPoly> = BTreeMap::new();
    let Some(&b_low) = b.keys().next() else {
        return acc;
    };
    for (&e1, p1) in a {
        if e1 + b_low > trunc {
            break;
        }
        for (&e2, p2) in b.range(..=trunc - e1) {
            acc.entry(e1 + e2).or_default().add_product(p1, p2);
        }
    }
    acc
}

/// Wire shape `{"terms": [{"c": "1", "d": 0, "q": 0}, ...], "trunc": n}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub terms: Vec<Monomial>,
    pub trunc: i64,
}

impl From<SeriesJson> for QLaurent {
    fn from(w: SeriesJson) -> Self {
        let mut terms: BTreeMap<i64, DPoly> = BTreeMap::new();
        for m in w.terms {
            if !m.c.is_zero() {
                *terms.entry(m.q).or_default() += &DPoly::monomial(m.d, m.c);
            }
        }
        QLaurent::from_map(terms, w.trunc)
    }
}

impl fmt::Display for QLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (e, p) in self.terms() {
            writeln!(f, "q^{e}: {p}")?;
        }
        write!(f, "+ O(q^{})", self.trunc + 1)
    }
}

pub(crate) mod bigint_string {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
