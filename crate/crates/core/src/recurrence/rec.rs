use super::g::GFamily;
use super::RecError;
use crate::alpha_system::AlphaSystem;
use crate::series::{add_lowering, qbinomial, LaurentPoly, QLaurent};

/// One instance of the main recurrence:
/// `lhs * u_ell = sum_j rhs[j-1] * u_{ell-j}` for `j = 1..=r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecRow {
    pub ell: i64,
    pub lhs: LaurentPoly,
    pub rhs: Vec<LaurentPoly>,
}

fn sign(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// `prod_{j=1}^{k-1} (1 - d q^{ell N - a(j)})`.
pub fn damping_product(sys: &AlphaSystem, k: usize, ell: i64) -> LaurentPoly {
    let n = sys.modulus() as i64;
    (1..k).fold(LaurentPoly::one(), |acc, j| {
        &acc * &(&LaurentPoly::one() - &LaurentPoly::monomial(ell * n - sys.a(j) as i64, 1, 1))
    })
}

/// Coefficient of `g_{(ell-j)N - a(1)}` in the level-`k` key identity.
///
/// `sum_{m=0}^{k-1-j} d^m sum_{alpha < a(k), w = j+m} q^{ell N - alpha}
///   ((-1)^{m-1} q^{ell(m-1)N} [j+m-1, m-1] + (-1)^m q^{ell m N} [j+m, m])
///   * prod_{h=1}^{j-1} (1 - q^{(ell-h)N})`, binomials at base `q^{-N}`.
pub fn key_coefficient(sys: &AlphaSystem, k: usize, j: usize, ell: i64) -> LaurentPoly {
    let n = sys.modulus() as i64;
    let mut prod = LaurentPoly::one();
    for h in 1..j as i64 {
        prod = &prod * &(&LaurentPoly::one() - &LaurentPoly::monomial((ell - h) * n, 0, 1));
        if prod.is_zero() {
            return prod;
        }
    }
    let mut inner = LaurentPoly::zero();
    for m in 0..k.saturating_sub(j) {
        let sums = sys.alpha_weight_sum(k, j + m);
        if sums.is_zero() {
            continue;
        }
        let (mi, ji) = (m as i64, j as i64);
        let mut bracket = LaurentPoly::monomial(ell * mi * n, 0, sign(mi)) * qbinomial(ji + mi, mi, -n);
        if m >= 1 {
            bracket = bracket
                + LaurentPoly::monomial(ell * (mi - 1) * n, 0, sign(mi - 1)) * qbinomial(ji + mi - 1, mi - 1, -n);
        }
        inner = inner + sums.scale_by_monomial(ell * n, m as u32, 1) * bracket;
    }
    &inner * &prod
}

/// The recurrence row at `ell >= 1`.
pub fn build_rec_row(sys: &AlphaSystem, ell: i64) -> Result<RecRow, RecError> {
    if ell < 1 {
        return Err(RecError::InvalidIndex(format!("ell = {ell}")));
    }
    let r = sys.r();
    let mut rhs: Vec<LaurentPoly> = (1..=r).map(|j| key_coefficient(sys, r + 1, j, ell)).collect();
    // g_{ell N - a(r+1)} is u_{ell-1}
    rhs[0] = &rhs[0] + &LaurentPoly::one();
    Ok(RecRow {
        ell,
        lhs: damping_product(sys, r + 1, ell),
        rhs,
    })
}

/// `u_{-k} = (-d)^k` for `0 <= k <= r - 1`.
fn initial(sys: &AlphaSystem, idx: i64, trunc: i64) -> QLaurent {
    let k = (-idx).min(sys.r() as i64 - 1);
    QLaurent::from_poly(&LaurentPoly::neg_d_pow(k as u32), trunc)
}

/// `lhs * seq[ell] - sum_j rhs[j-1] * seq[ell-j]`, with the initial values
/// standing in for negative indices.
pub fn rec_residual(sys: &AlphaSystem, ell: i64, seq: &[QLaurent]) -> Result<QLaurent, RecError> {
    let row = build_rec_row(sys, ell)?;
    let at = |i: i64| {
        if i >= 0 {
            seq[i as usize].clone()
        } else {
            initial(sys, i, seq[0].trunc())
        }
    };
    let mut acc = at(ell).mul_poly(&row.lhs);
    for (j, c) in row.rhs.iter().enumerate() {
        if !c.is_zero() {
            acc = add_lowering(&acc, &at(ell - 1 - j as i64).mul_poly(c).neg())?;
        }
    }
    Ok(acc)
}

/// `u_0, ..., u_{ell_max}`, each exact through `q^trunc`.
pub fn run_recurrence(sys: &AlphaSystem, ell_max: usize, trunc: i64) -> Result<Vec<QLaurent>, RecError> {
    if trunc < 0 {
        return Err(RecError::NegativeTruncation(trunc));
    }
    let mut u = vec![QLaurent::one(trunc)];
    for ell in 1..=ell_max as i64 {
        let row = build_rec_row(sys, ell)?;
        let mut acc = QLaurent::zero(trunc);
        for (j, c) in row.rhs.iter().enumerate() {
            let idx = ell - 1 - j as i64;
            if c.is_zero() {
                continue;
            }
            let prev = if idx >= 0 {
                u[idx as usize].clone()
            } else {
                initial(sys, idx, trunc)
            };
            acc = add_lowering(&acc, &prev.mul_poly(c))?;
        }
        let lhs = QLaurent::from_poly(&row.lhs, acc.trunc());
        u.push(acc.checked_div(&lhs)?);
    }
    Ok(u)
}

/// Residual of the level-`k` key identity at `ell`:
/// `prod_{j<k} (1 - d q^{ell N - a(j)}) g_{ell N - a(1)}
///   = g_{ell N - a(k)} + sum_{j<k} C_{k,j} g_{(ell-j)N - a(1)}`.
pub fn verify_key_lemma(fam: &mut GFamily<'_>, k: usize, ell: i64) -> Result<QLaurent, RecError> {
    let sys = fam.system();
    if k == 0 || k > sys.r() + 1 {
        return Err(RecError::InvalidIndex(format!("generator index {k}")));
    }
    if ell < 1 {
        return Err(RecError::InvalidIndex(format!("ell = {ell}")));
    }
    let n = sys.modulus() as i64;
    let a1 = sys.a(1) as i64;
    let mut acc = fam.g(ell * n - a1)?.mul_poly(&damping_product(sys, k, ell));
    acc = add_lowering(&acc, &fam.g(ell * n - sys.a(k) as i64)?.neg())?;
    for j in 1..k {
        let c = key_coefficient(sys, k, j, ell);
        if c.is_zero() {
            continue;
        }
        let g = fam.g((ell - j as i64) * n - a1)?;
        acc = add_lowering(&acc, &g.mul_poly(&c).neg())?;
    }
    Ok(acc)
}

/// The smallest `ell` with `ell N - a(1) > trunc`; from there on every
/// coefficient through `q^trunc` is final.
pub fn stabilization_index(sys: &AlphaSystem, trunc: i64) -> usize {
    ((trunc + sys.a(1) as i64).div_euclid(sys.modulus() as i64) + 1).max(0) as usize
}

/// `lim u_ell` through `q^trunc`, read off once the coefficients stop moving.
pub fn limit_u(sys: &AlphaSystem, trunc: i64) -> Result<QLaurent, RecError> {
    let stop = stabilization_index(sys, trunc);
    let u = run_recurrence(sys, stop + 1, trunc)?;
    let (a, b) = (&u[stop], &u[stop + 1]);
    if a != b {
        let diff = add_lowering(a, &b.neg())?;
        let exponent = diff.first_nonzero().map_or(trunc, |m| m.q);
        return Err(RecError::NotStabilized { ell: stop, exponent });
    }
    Ok(b.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::DPoly;

    #[test]
    fn r1_row_closed_form() {
        let sys = AlphaSystem::new(&[1], 2).unwrap();
        for ell in 1..5 {
            let row = build_rec_row(&sys, ell).unwrap();
            assert_eq!(row.lhs, LaurentPoly::one() - LaurentPoly::monomial(2 * ell - 1, 1, 1));
            assert_eq!(
                row.rhs,
                vec![LaurentPoly::one() + LaurentPoly::monomial(2 * ell - 1, 0, 1)]
            );
        }
    }

    #[test]
    fn ell_one_uses_only_u0() {
        let sys = AlphaSystem::new(&[1, 2, 4], 7).unwrap();
        let row = build_rec_row(&sys, 1).unwrap();
        assert!(row.rhs[1..].iter().all(LaurentPoly::is_zero));
    }

    #[test]
    fn r1_first_iterate() {
        let sys = AlphaSystem::new(&[1], 2).unwrap();
        let u = run_recurrence(&sys, 1, 4).unwrap();
        assert_eq!(u[0], QLaurent::one(4));
        assert_eq!(u[1].coeff(1), DPoly::from_i64s(&[1, 1]));
        assert_eq!(u[1].coeff(2), DPoly::from_i64s(&[0, 1, 1]));
    }

    #[test]
    fn limit_worked_example() {
        let sys = AlphaSystem::new(&[1, 2, 4], 7).unwrap();
        let lim = limit_u(&sys, 8).unwrap();
        assert_eq!(lim.coeff(8), DPoly::from_i64s(&[1, 2, 1]));
        assert_eq!(lim.coeff(0), DPoly::one());
    }
}
