use std::collections::HashMap;

use super::RecError;
use crate::alpha_system::AlphaSystem;
use crate::enumeration::{CountTable, GWalker, LargestPart};
use crate::series::{add_lowering, DPoly, LaurentPoly, QLaurent};

/// The `g_m` series of one system at one truncation, computed on demand from
/// the enumeration and cached.
pub struct GFamily<'a> {
    sys: &'a AlphaSystem,
    trunc: i64,
    walker: GWalker<'a>,
    series: HashMap<i64, QLaurent>,
    flagged: HashMap<(i64, bool), CountTable>,
}

impl<'a> GFamily<'a> {
    pub fn new(sys: &'a AlphaSystem, trunc: i64) -> Result<Self, RecError> {
        if trunc < 0 {
            return Err(RecError::NegativeTruncation(trunc));
        }
        Ok(Self {
            sys,
            trunc,
            walker: GWalker::new(sys, trunc as usize),
            series: HashMap::new(),
            flagged: HashMap::new(),
        })
    }

    pub fn system(&self) -> &'a AlphaSystem {
        self.sys
    }

    pub fn trunc(&self) -> i64 {
        self.trunc
    }

    /// `g_m`. For `m >= 1` the generating function of `psi_m`; for `m <= 0`
    /// the constant `(-d)^k` with `k = floor(-m / N)`, capped at `r - 1`.
    pub fn g(&mut self, m: i64) -> Result<QLaurent, RecError> {
        if m <= 0 {
            return Ok(QLaurent::from_poly(&negative_convention(self.sys, m)?, self.trunc));
        }
        if let Some(hit) = self.series.get(&m) {
            return Ok(hit.clone());
        }
        let table = self.walker.table(self.trunc as usize, LargestPart::at_most(m as u64));
        let s = table_series(&table, self.trunc);
        self.series.insert(m, s.clone());
        Ok(s)
    }

    /// `pi_m` (overlined largest part) or `phi_m` as a count table. Bounds
    /// below 1 leave only the empty overpartition.
    pub fn flagged(&mut self, m: i64, overlined: bool) -> CountTable {
        if let Some(hit) = self.flagged.get(&(m, overlined)) {
            return hit.clone();
        }
        let n_max = self.trunc as usize;
        let table = if m < 1 {
            let mut rows = vec![DPoly::zero(); n_max + 1];
            rows[0] = DPoly::one();
            CountTable::from_rows(rows)
        } else {
            let filter = if overlined {
                LargestPart::pi(m as u64)
            } else {
                LargestPart::phi(m as u64)
            };
            self.walker.table(n_max, filter)
        };
        self.flagged.insert((m, overlined), table.clone());
        table
    }
}

fn table_series(t: &CountTable, trunc: i64) -> QLaurent {
    let poly = LaurentPoly::from_terms(t.rows().iter().enumerate().map(|(n, p)| (n as i64, p.clone())));
    QLaurent::from_poly(&poly, trunc)
}

/// The value of `g_m` for `m <= 0`.
pub fn negative_convention(sys: &AlphaSystem, m: i64) -> Result<LaurentPoly, RecError> {
    let n = sys.modulus() as i64;
    let r = sys.r() as i64;
    if -m > r * n {
        return Err(RecError::ConventionOutOfRange { m });
    }
    let k = ((-m) / n).min(r - 1);
    Ok(LaurentPoly::neg_d_pow(k as u32))
}

/// `g_m` through `q^trunc`.
pub fn g_series(sys: &AlphaSystem, m: i64, trunc: i64) -> Result<QLaurent, RecError> {
    GFamily::new(sys, trunc)?.g(m)
}

fn shifted(s: &QLaurent, e_q: i64, e_d: u32) -> QLaurent {
    s.scale_by_monomial(e_q, e_d, 1)
}

fn sum_all(terms: &[QLaurent]) -> Result<QLaurent, RecError> {
    let mut acc = terms[0].clone();
    for t in &terms[1..] {
        acc = add_lowering(&acc, t)?;
    }
    Ok(acc)
}

struct AlphaData {
    value: i64,
    w: i64,
    v: i64,
}

fn alpha_data(sys: &AlphaSystem, i: usize) -> AlphaData {
    let value = sys.alpha_at(i);
    AlphaData {
        value: value as i64,
        w: sys.w(value).expect("alpha in A'") as i64,
        v: sys.v(value).expect("alpha in A'") as i64,
    }
}

/// The four `g` subscripts of the `m`-th two-term identity at level `j`.
pub fn lemma2_subscripts(sys: &AlphaSystem, j: i64, m: usize) -> Result<[i64; 4], RecError> {
    if m == 0 || m > sys.alpha_len() {
        return Err(RecError::InvalidIndex(format!("alpha index {m}")));
    }
    let n = sys.modulus() as i64;
    let a = alpha_data(sys, m);
    let next = sys.alpha_at(m + 1) as i64;
    Ok([
        j * n - a.value,
        j * n - next,
        j * n - a.w * n - a.v,
        j * n - (a.w - 1) * n - a.v,
    ])
}

/// Residual of
/// `g_{jN-alpha(m)} - g_{jN-alpha(m+1)} = q^{jN-alpha(m)} (g_{jN-wN-v} + d g_{jN-(w-1)N-v})`.
pub fn verify_lemma2(fam: &mut GFamily<'_>, j: i64, m: usize) -> Result<QLaurent, RecError> {
    let [s0, s1, s2, s3] = lemma2_subscripts(fam.sys, j, m)?;
    let shift = s0;
    let lhs = fam.g(s0)?.checked_sub(&fam.g(s1)?)?;
    let rhs = add_lowering(&shifted(&fam.g(s2)?, shift, 0), &shifted(&fam.g(s3)?, shift, 1))?;
    Ok(add_lowering(&lhs, &rhs.neg())?)
}

/// First cell at which the counting form of the two-term identity fails:
/// `psi_A(k,n) - psi_B(k,n) = psi_C(k,n') + psi_D(k-1,n')` with
/// `n' = n - jN + alpha(m)`. Returns `(n, k)`.
pub fn verify_lemma1(fam: &mut GFamily<'_>, j: i64, m: usize) -> Result<Option<(i64, u32)>, RecError> {
    let [s0, s1, s2, s3] = lemma2_subscripts(fam.sys, j, m)?;
    let (ga, gb, gc, gd) = (fam.g(s0)?, fam.g(s1)?, fam.g(s2)?, fam.g(s3)?);
    for n in 0..=fam.trunc {
        let np = n - s0;
        let lhs = &ga.coeff(n) - &gb.coeff(n);
        let rhs = if np < 0 {
            DPoly::zero()
        } else {
            &gc.coeff(np) + &gd.coeff(np).shift(1)
        };
        if lhs != rhs {
            let top = lhs.degree().max(rhs.degree()).unwrap_or(0);
            let k = (0..=top).find(|&k| lhs.coeff(k) != rhs.coeff(k)).unwrap_or(0);
            return Ok(Some((n, k)));
        }
    }
    Ok(None)
}

/// First failure of the refined identities
/// `pi_A(k,n) = pi_B(k,n) + pi_C(k,n') + phi_D(k,n')` and
/// `phi_A(k,n) = phi_B(k,n) + pi_C(k-1,n') + phi_D(k-1,n')`, for `n' != 0`.
/// Returns `(overlined, n, k)`.
pub fn verify_lemma1_refined(fam: &mut GFamily<'_>, j: i64, m: usize) -> Result<Option<(bool, i64, u32)>, RecError> {
    let [s0, s1, s2, s3] = lemma2_subscripts(fam.sys, j, m)?;
    let pi_c = fam.flagged(s2, true);
    let phi_d = fam.flagged(s3, false);
    for overlined in [true, false] {
        let a = fam.flagged(s0, overlined);
        let b = fam.flagged(s1, overlined);
        for n in 0..=fam.trunc {
            let np = n - s0;
            if np == 0 {
                continue;
            }
            let n_u = n as usize;
            let tail = if np < 0 {
                DPoly::zero()
            } else {
                pi_c.row(np as usize) + phi_d.row(np as usize)
            };
            let tail = if overlined { tail } else { tail.shift(1) };
            let rhs = b.row(n_u) + &tail;
            let lhs = a.row(n_u);
            if lhs != &rhs {
                let top = lhs.degree().max(rhs.degree()).unwrap_or(0);
                let k = (0..=top).find(|&k| lhs.coeff(k) != rhs.coeff(k)).unwrap_or(0);
                return Ok(Some((overlined, n, k)));
            }
        }
    }
    Ok(None)
}

/// First `n >= 1` where `phi_m(k, n) != pi_m(k-1, n)` for some `k`.
pub fn verify_overline_symmetry(fam: &mut GFamily<'_>, m: i64) -> Option<usize> {
    let pi = fam.flagged(m, true);
    let phi = fam.flagged(m, false);
    (1..=pi.n_max()).find(|&n| phi.row(n) != &pi.row(n).shift(1))
}

/// Residuals of the summed identity between `g_{jN-a(1)}` and `g_{jN-a(k)}`
/// and of the three-term relation linking levels `j` and `j - 1`. The second
/// is `None` at `k = r + 1`, where it does not apply.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Eq357 {
    pub summed: QLaurent,
    pub three_term: Option<QLaurent>,
}

pub fn verify_eq_357(fam: &mut GFamily<'_>, j: i64, k: usize) -> Result<Eq357, RecError> {
    let sys = fam.sys;
    let r = sys.r();
    if k == 0 || k > r + 1 {
        return Err(RecError::InvalidIndex(format!("generator index {k}")));
    }
    let n = sys.modulus() as i64;
    let a1 = sys.a(1) as i64;
    let ak = sys.a(k) as i64;

    let mut terms = vec![fam.g(j * n - a1)?, fam.g(j * n - ak)?.neg()];
    for s in sys.subset_sums().iter().filter(|s| s.value < sys.a(k)) {
        let (alpha, w) = (s.value as i64, s.weight() as i64);
        let v = sys.v(s.value).expect("alpha in A'") as i64;
        terms.push(shifted(&fam.g((j - w) * n - v)?, j * n - alpha, 0).neg());
        terms.push(shifted(&fam.g((j - w + 1) * n - v)?, j * n - alpha, 1).neg());
    }
    let summed = sum_all(&terms)?;

    let three_term = if k <= r {
        let gk = fam.g(j * n - ak)?;
        let lhs = add_lowering(&gk, &shifted(&gk, j * n - ak, 1).neg())?;
        let prev_ak = fam.g((j - 1) * n - ak)?;
        let damp = add_lowering(&prev_ak, &shifted(&prev_ak, (j - 1) * n, 0).neg())?;
        let rhs = sum_all(&[
            fam.g(j * n - sys.a(k + 1) as i64)?,
            shifted(&fam.g((j - 1) * n - a1)?, n - ak, 0),
            shifted(&damp, n - ak, 0).neg(),
        ])?;
        Some(add_lowering(&lhs, &rhs.neg())?)
    } else {
        None
    };
    Ok(Eq357 { summed, three_term })
}
