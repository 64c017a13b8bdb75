use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;

use super::DPoly;

/// An exact Laurent polynomial in `q` with `DPoly` coefficients.
///
/// Used for every object that is a finite expression: q-binomial coefficients,
/// sums over `A'`, recurrence coefficients. Arithmetic never truncates.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, DPoly>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 0, 1)
    }

    /// `c * d^e_d * q^e_q`
    pub fn monomial(e_q: i64, e_d: u32, c: i64) -> Self {
        let mut out = Self::zero();
        out.add_term(e_q, DPoly::monomial(e_d, BigInt::from(c)));
        out
    }

    /// `(-d)^k`
    pub fn neg_d_pow(k: u32) -> Self {
        Self::monomial(0, k, if k.is_multiple_of(2) { 1 } else { -1 })
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, DPoly)>) -> Self {
        let mut out = Self::zero();
        for (e, p) in terms {
            out.add_term(e, p);
        }
        out
    }

    pub fn add_term(&mut self, e_q: i64, p: DPoly) {
        if p.is_zero() {
            return;
        }
        let slot = self.terms.entry(e_q).or_default();
        *slot += &p;
        if slot.is_zero() {
            self.terms.remove(&e_q);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn coeff(&self, e_q: i64) -> DPoly {
        self.terms.get(&e_q).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &DPoly)> {
        self.terms.iter().map(|(&e, p)| (e, p))
    }

    /// Multiplies by `c * d^e_d * q^e_q`.
    pub fn scale_by_monomial(&self, e_q: i64, e_d: u32, c: i64) -> Self {
        let c = BigInt::from(c);
        Self::from_terms(self.terms().map(|(e, p)| (e + e_q, p.shift(e_d).scale(&c))))
    }

    /// The substitution `q -> q^base_exp`.
    pub fn substitute_q_power(&self, base_exp: i64) -> Self {
        Self::from_terms(self.terms().map(|(e, p)| (e * base_exp, p.clone())))
    }

    /// Specialisation `d = 0`.
    pub fn at_d_zero(&self) -> Self {
        Self::from_terms(self.terms().map(|(e, p)| (e, DPoly::monomial(0, p.at_zero()))))
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| &acc * self)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, p) in rhs.terms() {
            out.add_term(e, p.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, p)| (e, -p)).collect(),
        }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut acc: BTreeMap<i64, DPoly> = BTreeMap::new();
        for (e1, p1) in self.terms() {
            for (e2, p2) in rhs.terms() {
                acc.entry(e1 + e2).or_default().add_product(p1, p2);
            }
        }
        acc.retain(|_, p| !p.is_zero());
        LaurentPoly { terms: acc }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl std::iter::Sum for LaurentPoly {
    fn sum<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        iter.fold(LaurentPoly::zero(), |acc, x| &acc + &x)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms().map(|(e, p)| format!("({p})q^{e}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: i64, d: u32, c: i64) -> LaurentPoly {
        LaurentPoly::monomial(e, d, c)
    }

    #[test]
    fn expands_products_with_negative_exponents() {
        // (q^{-1} + 1)(q + d) = 1 + q + d q^{-1} + d
        let lhs = (m(-1, 0, 1) + m(0, 0, 1)) * (m(1, 0, 1) + m(0, 1, 1));
        let rhs = m(0, 0, 1) + m(1, 0, 1) + m(-1, 1, 1) + m(0, 1, 1);
        assert_eq!(lhs, rhs);
        assert_eq!(lhs.min_exp(), Some(-1));
    }

    #[test]
    fn cancellation_leaves_no_zero_terms() {
        let x = m(3, 1, 2) - m(3, 1, 2);
        assert!(x.is_zero());
        assert_eq!(x.min_exp(), None);
    }

    #[test]
    fn substitution_and_scaling() {
        let p = m(0, 0, 1) + m(1, 0, 1);
        assert_eq!(p.substitute_q_power(-3), m(0, 0, 1) + m(-3, 0, 1));
        assert_eq!(LaurentPoly::one().scale_by_monomial(-3, 1, -1), m(-3, 1, -1));
        assert_eq!(LaurentPoly::neg_d_pow(3), m(0, 3, -1));
    }
}
