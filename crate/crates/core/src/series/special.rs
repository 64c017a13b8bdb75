//! Gaussian binomials, q-Pochhammer products and the product side of the
//! main identity.

use num_bigint::BigInt;
use num_traits::Zero;

use super::{DPoly, LaurentPoly, QLaurent, SeriesError};
use crate::alpha_system::AlphaSystem;

/// The Gaussian binomial `[m r]` evaluated at `q^base_exp`.
///
/// `[m 0] = 1` for every `m` (empty product); otherwise zero unless
/// `0 <= r <= m`. Computed from the product formula
/// `prod_{i<r} (1 - q^{m-i}) / (1 - q^{i+1})` by exact division, then
/// substituted; `base_exp = 0` yields the ordinary binomial coefficient.
pub fn qbinomial(m: i64, r: i64, base_exp: i64) -> LaurentPoly {
    if r == 0 {
        return LaurentPoly::one();
    }
    if r < 0 || m < 0 || r > m {
        return LaurentPoly::zero();
    }
    let mut num = vec![BigInt::from(1)];
    for i in 0..r {
        num = mul_one_minus_q_pow(&num, (m - i) as usize);
    }
    for i in 1..=r {
        num = div_one_minus_q_pow(&num, i as usize);
    }
    let base = LaurentPoly::from_terms(
        num.into_iter()
            .enumerate()
            .map(|(e, c)| (e as i64, DPoly::monomial(0, c))),
    );
    base.substitute_q_power(base_exp)
}

fn mul_one_minus_q_pow(p: &[BigInt], s: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); p.len() + s];
    for (e, c) in p.iter().enumerate() {
        out[e] += c;
        out[e + s] -= c;
    }
    out
}

/// Divides by `1 - q^s`; the division must be exact.
fn div_one_minus_q_pow(p: &[BigInt], s: usize) -> Vec<BigInt> {
    let len = p.len() - s;
    let mut out = vec![BigInt::zero(); len];
    for e in 0..len {
        let carry = if e >= s { out[e - s].clone() } else { BigInt::zero() };
        out[e] = &p[e] + carry;
    }
    debug_assert!(mul_one_minus_q_pow(&out, s) == p, "inexact division by 1 - q^{s}");
    out
}

/// Number of factors in a q-Pochhammer product.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Factors {
    Finite(usize),
    Infinite,
}

/// Expands `prod_j (1 - t q^{offset_exp + j step_exp})` with
/// `t = t_sign * d^t_d_degree`, exact through `q^trunc`.
///
/// In the classical notation `(a; q^s)_n` this is `a = t q^offset`.
pub fn pochhammer(
    t_sign: i32,
    t_d_degree: u32,
    offset_exp: i64,
    step_exp: i64,
    factors: Factors,
    trunc: i64,
) -> Result<QLaurent, SeriesError> {
    let factor =
        |j: i64| &LaurentPoly::one() - &LaurentPoly::monomial(offset_exp + j * step_exp, t_d_degree, t_sign as i64);
    match factors {
        Factors::Finite(n) => {
            let prod = (0..n as i64).fold(LaurentPoly::one(), |acc, j| &acc * &factor(j));
            Ok(QLaurent::from_poly(&prod, trunc))
        }
        Factors::Infinite => {
            if offset_exp <= 0 || step_exp <= 0 {
                return Err(SeriesError::NonConvergent { offset_exp, step_exp });
            }
            let mut acc = QLaurent::one(trunc);
            let mut j = 0;
            while offset_exp + j * step_exp <= trunc {
                acc = acc.mul_poly(&factor(j));
                j += 1;
            }
            Ok(acc)
        }
    }
}

/// `prod_{j=1}^r (-q^{N-a(j)}; q^N)_inf / (d q^{N-a(j)}; q^N)_inf`.
///
/// The coefficient of `q^n d^k` counts overpartitions of `n` into parts
/// congruent to some `-a(j)` modulo `N` with `k` non-overlined parts.
pub fn product_f(sys: &AlphaSystem, trunc: i64) -> Result<QLaurent, SeriesError> {
    product_over(sys, trunc, true)
}

/// The `d = 0` specialisation of [`product_f`]: distinct parts only.
pub fn product_distinct(sys: &AlphaSystem, trunc: i64) -> Result<QLaurent, SeriesError> {
    product_over(sys, trunc, false)
}

fn product_over(sys: &AlphaSystem, trunc: i64, with_denominator: bool) -> Result<QLaurent, SeriesError> {
    let n = sys.modulus() as i64;
    let mut acc = QLaurent::one(trunc);
    for &a in sys.generators() {
        let offset = n - a as i64;
        acc = acc.checked_mul(&pochhammer(-1, 0, offset, n, Factors::Infinite, trunc)?)?;
        if with_denominator {
            acc = acc.checked_div(&pochhammer(1, 1, offset, n, Factors::Infinite, trunc)?)?;
        }
    }
    Ok(acc)
}
