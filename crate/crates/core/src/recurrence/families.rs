//! Coefficient families of the transformation chain, as exact Laurent
//! polynomials. All binomials are at base `q^{-N}`.

use crate::alpha_system::AlphaSystem;
use crate::series::{qbinomial, LaurentPoly};

/// `sum q^{-alpha}` over `alpha < a(r)` of weight `w`; 1 at `w = 0`.
pub fn weight_sum_below_last(sys: &AlphaSystem, w: i64) -> LaurentPoly {
    if w < 0 {
        return LaurentPoly::zero();
    }
    sys.alpha_weight_sum(sys.r(), w as usize)
}

/// `sum q^{-alpha}` over all `alpha` (below the sentinel) of weight `w`.
pub fn weight_sum_all(sys: &AlphaSystem, w: i64) -> LaurentPoly {
    if w < 0 {
        return LaurentPoly::zero();
    }
    sys.alpha_weight_sum(sys.r() + 1, w as usize)
}

fn n(sys: &AlphaSystem) -> i64 {
    sys.modulus() as i64
}

fn ar(sys: &AlphaSystem) -> i64 {
    sys.a(sys.r()) as i64
}

fn tri_exp(sys: &AlphaSystem, k: i64) -> i64 {
    -n(sys) * k * (k + 1) / 2 - k * ar(sys)
}

fn pair(sum: impl Fn(i64) -> LaurentPoly, m: i64, w: i64) -> LaurentPoly {
    let lo = sum(w - 1).scale_by_monomial(0, (m - 1).max(0) as u32, 1);
    let hi = sum(w).scale_by_monomial(0, m as u32, 1);
    if m >= 1 {
        lo + hi
    } else {
        hi
    }
}

/// `c_{k,j} = d^k q^{-N k(k+1)/2 - k a(r)} [j-1, k]`.
pub fn c(sys: &AlphaSystem, k: i64, j: i64) -> LaurentPoly {
    qbinomial(j - 1, k, -n(sys)).scale_by_monomial(tri_exp(sys, k), k.max(0) as u32, 1)
}

/// `b_{m,j} = (d^{m-1} S(j+m-1) + d^m S(j+m)) [j+m-1, m-1]`, `S` over all `alpha`.
pub fn b(sys: &AlphaSystem, m: i64, j: i64) -> LaurentPoly {
    pair(|w| weight_sum_all(sys, w), m, j + m) * qbinomial(j + m - 1, m - 1, -n(sys))
}

/// `e_{m,j}`: as `b_{m,j}` with the sums restricted to `alpha < a(r)`.
pub fn e(sys: &AlphaSystem, m: i64, j: i64) -> LaurentPoly {
    pair(|w| weight_sum_below_last(sys, w), m, j + m) * qbinomial(j + m - 1, m - 1, -n(sys))
}

/// `f_{m,k} = q^{-N k(k+1)/2 - k a(r)} [m-1, k]`.
pub fn f(sys: &AlphaSystem, m: i64, k: i64) -> LaurentPoly {
    qbinomial(m - 1, k, -n(sys)).scale_by_monomial(tri_exp(sys, k), 0, 1)
}

/// `A_m = d^{m-1} S(m-1) + d^m S(m)` with `S` over `alpha < a(r)`.
pub fn a_coeff(sys: &AlphaSystem, m: i64) -> LaurentPoly {
    pair(|w| weight_sum_below_last(sys, w), m, m)
}

/// `T_{m,j} = sum_{k=0}^{min(j-1, m-1)} c_{k,j} b_{m-k,j}`.
pub fn t(sys: &AlphaSystem, m: i64, j: i64) -> LaurentPoly {
    (0..=(j - 1).min(m - 1)).map(|k| c(sys, k, j) * b(sys, m - k, j)).sum()
}

/// `T'_{m,j} = sum_k f_{m,k} e_{m,j-k} + q^{-a(r)} sum_k f_{m,k} e_{m,j-k-1}`.
pub fn t_prime(sys: &AlphaSystem, m: i64, j: i64) -> LaurentPoly {
    let first: LaurentPoly = (0..=(m - 1).min(j)).map(|k| f(sys, m, k) * e(sys, m, j - k)).sum();
    let second: LaurentPoly = (0..=(m - 1).min(j - 1))
        .map(|k| f(sys, m, k) * e(sys, m, j - k - 1))
        .sum();
    first + second.scale_by_monomial(-ar(sys), 0, 1)
}

/// Whether `T_{m,j} = T'_{m,j}` exactly.
pub fn verify_tmj(sys: &AlphaSystem, m: i64, j: i64) -> bool {
    t(sys, m, j) == t_prime(sys, m, j)
}

/// Coefficient `C_{m,nu}` multiplying `x^nu q^{nu m N} g(x q^{mN})`.
pub fn eq_prime_coeff(sys: &AlphaSystem, m: i64, nu: i64) -> LaurentPoly {
    let r = sys.r() as i64;
    let mut out = LaurentPoly::zero();
    if nu < r {
        for mu in 0..=(m - 1).min(nu) {
            out = out + f(sys, m, mu) * e(sys, m, nu - mu);
        }
    }
    if nu >= 1 {
        let mut second = LaurentPoly::zero();
        for mu in 0..=(m - 1).min(nu - 1) {
            second = second + f(sys, m, mu) * e(sys, m, nu - mu - 1);
        }
        out = out + second.scale_by_monomial(-ar(sys), 0, 1);
    }
    out
}
