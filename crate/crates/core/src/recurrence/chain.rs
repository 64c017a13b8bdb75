//! The transformation chain from the `r`-generator recurrence down to the
//! `(r-1)`-generator one, checked stage by stage on actual series.

use num_bigint::BigInt;
use serde::Serialize;

use super::families::{a_coeff, e, eq_prime_coeff, t, t_prime};
use super::rec::{limit_u, rec_residual, run_recurrence};
use super::RecError;
use crate::alpha_system::{AlphaSystem, SystemSpec};
use crate::series::{add_lowering, bigint_string, product_f, LaurentPoly, QLaurent, XSeries};

/// The sequences and generating functions produced along the chain.
#[derive(Debug, Clone)]
pub struct ChainState {
    pub u: Vec<QLaurent>,
    pub beta: Vec<QLaurent>,
    pub s: Vec<QLaurent>,
    pub mu: Vec<QLaurent>,
    pub f: XSeries,
    pub big_g: XSeries,
    pub g: XSeries,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResidualMonomial {
    #[serde(with = "bigint_string")]
    pub c: BigInt,
    pub d: u32,
    pub q: i64,
    pub x: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StageReport {
    /// Highest `q` exponent through which the residual is known; `None` for
    /// identities between exact polynomials.
    pub checked_to: Option<i64>,
    pub first_nonzero: Option<ResidualMonomial>,
    pub name: String,
    pub residual_zero: bool,
}

impl StageReport {
    fn new(name: &str) -> Self {
        Self {
            checked_to: None,
            first_nonzero: None,
            name: name.to_string(),
            residual_zero: true,
        }
    }

    fn record_trunc(&mut self, t: i64) {
        self.checked_to = Some(self.checked_to.map_or(t, |c| c.min(t)));
    }

    fn absorb(&mut self, x: usize, res: &QLaurent) {
        self.record_trunc(res.trunc());
        self.absorb_exact(x, &res.to_poly());
    }

    fn absorb_exact(&mut self, x: usize, res: &LaurentPoly) {
        if let Some((q, p)) = res.terms().next() {
            self.residual_zero = false;
            if self.first_nonzero.is_none() {
                let (d, c) = p.terms().next().expect("stored coefficients are nonzero");
                self.first_nonzero = Some(ResidualMonomial { c: c.clone(), d, q, x });
            }
        }
    }

    fn absorb_series(&mut self, res: &XSeries) {
        for (x, c) in res.coeffs().iter().enumerate() {
            self.absorb(x, c);
        }
        if res.coeffs().is_empty() {
            self.record_trunc(res.q_trunc());
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ChainReport {
    pub stages: Vec<StageReport>,
    pub system: SystemSpec,
    pub verdict: String,
}

impl ChainReport {
    pub fn passed(&self) -> bool {
        self.stages.iter().all(|s| s.residual_zero)
    }

    pub fn first_broken(&self) -> Option<&StageReport> {
        self.stages.iter().find(|s| !s.residual_zero)
    }

    pub fn ensure_pass(&self) -> Result<(), RecError> {
        match self.first_broken() {
            Some(s) => Err(RecError::ChainBroken(s.name.clone())),
            None => Ok(()),
        }
    }

    /// `{"stages": [...], "system": {...}, "verdict": "pass"}`
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serialisation cannot fail")
    }
}

fn one_minus(e_q: i64, e_d: u32) -> LaurentPoly {
    LaurentPoly::one() - LaurentPoly::monomial(e_q, e_d, 1)
}

fn sign(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// `1 + sum_j (-1)^j A_j q^{j ell N}`, the common left multiplier.
fn a_multiplier(sys: &AlphaSystem, ell: i64) -> LaurentPoly {
    let n = sys.modulus() as i64;
    let mut out = LaurentPoly::one();
    for j in 1..=sys.r() as i64 {
        out = out + a_coeff(sys, j).scale_by_monomial(j * ell * n, 0, sign(j));
    }
    out
}

/// `(1 - x) F(x) - sum_m (-1)^{m+1} P_m(x) F(x q^{mN})`, `P_m` given by its
/// `x`-coefficients before the `q^{j m N}` twist.
fn q_difference_residual(
    sys: &AlphaSystem,
    series: &XSeries,
    coeffs: impl Fn(i64, i64) -> LaurentPoly,
    top_j: i64,
) -> Result<XSeries, RecError> {
    let n = sys.modulus() as i64;
    let mut acc = series.mul_xpoly(&[LaurentPoly::one(), -LaurentPoly::one()])?;
    for m in 1..=sys.r() as i64 {
        let poly: Vec<LaurentPoly> = (0..=top_j)
            .map(|j| coeffs(m, j).scale_by_monomial(j * m * n, 0, sign(m + 1)))
            .collect();
        let term = series.substitute_x(m as u64, sys.modulus()).mul_xpoly(&poly)?;
        acc = sub_lowering(&acc, &term)?;
    }
    Ok(acc)
}

fn sub_lowering(a: &XSeries, b: &XSeries) -> Result<XSeries, RecError> {
    let t = a.q_trunc().min(b.q_trunc());
    Ok(a.truncate_q(t)?.checked_sub(&b.truncate_q(t)?)?)
}

/// Runs every stage and reports each residual.
pub fn verify_chain(sys: &AlphaSystem, ell_max: usize, x_trunc: usize, trunc: i64) -> Result<ChainReport, RecError> {
    let reduced = sys.reduced().ok_or(RecError::NeedsTwoGenerators)?;
    let (stages, _) = run_chain(sys, &reduced, ell_max, x_trunc, trunc)?;
    let mut report = ChainReport {
        stages,
        system: sys.spec(),
        verdict: String::new(),
    };
    report.verdict = if report.passed() { "pass" } else { "fail" }.to_string();
    Ok(report)
}

/// The chain's intermediate objects, without the checks.
pub fn chain_state(sys: &AlphaSystem, ell_max: usize, x_trunc: usize, trunc: i64) -> Result<ChainState, RecError> {
    let reduced = sys.reduced().ok_or(RecError::NeedsTwoGenerators)?;
    Ok(run_chain(sys, &reduced, ell_max, x_trunc, trunc)?.1)
}

fn run_chain(
    sys: &AlphaSystem,
    reduced: &AlphaSystem,
    ell_max: usize,
    x_trunc: usize,
    trunc: i64,
) -> Result<(Vec<StageReport>, ChainState), RecError> {
    let n = sys.modulus() as i64;
    let r = sys.r() as i64;
    let ar = sys.a(sys.r()) as i64;
    let len = ell_max.max(x_trunc);
    let mut stages = Vec::new();

    let u = run_recurrence(sys, len, trunc)?;

    // beta_n = u_n prod_{j<=n} (1 - d q^{jN - a(r)}) / (1 - q^{jN})
    let mut beta = Vec::with_capacity(len + 1);
    let mut factor = QLaurent::one(trunc);
    for (idx, un) in u.iter().enumerate() {
        if idx > 0 {
            let j = idx as i64;
            factor = factor
                .mul_poly(&one_minus(j * n - ar, 1))
                .checked_div(&QLaurent::from_poly(&one_minus(j * n, 0), trunc))?;
        }
        beta.push(un.checked_mul(&factor)?);
    }

    let mut stage = StageReport::new("rec_prime");
    for ell in 1..=ell_max as i64 {
        let mut res = beta[ell as usize].mul_poly(&a_multiplier(sys, ell));
        res = add_lowering(&res, &beta[ell as usize - 1].neg())?;
        for j in 1..=r.min(ell) {
            let mut coeff = LaurentPoly::zero();
            for h in 1..=r {
                coeff = coeff + t(sys, h, j).scale_by_monomial(h * ell * n, 0, sign(h + 1));
            }
            res = add_lowering(&res, &beta[(ell - j) as usize].mul_poly(&coeff).neg())?;
        }
        stage.absorb(ell as usize, &res);
    }
    stages.push(stage);

    let f = XSeries::from_coeffs(beta[..=x_trunc].to_vec(), x_trunc)?;

    let mut stage = StageReport::new("eq_f");
    let res = q_difference_residual(sys, &f, |m, j| if j == 0 { a_coeff(sys, m) } else { t(sys, m, j) }, r)?;
    stage.absorb_series(&res);
    stages.push(stage);

    let mut stage = StageReport::new("eq_prime");
    let res = q_difference_residual(sys, &f, |m, nu| eq_prime_coeff(sys, m, nu), r)?;
    stage.absorb_series(&res);
    stages.push(stage);

    let mut stage = StageReport::new("tmj");
    for m in 1..=r {
        for j in 1..=r {
            stage.absorb_exact(0, &(t(sys, m, j) - t_prime(sys, m, j)));
        }
    }
    stages.push(stage);

    // prod_{k>=1} (1 + x q^{kN - a(r)}), factors beyond q^trunc are 1 here
    let mut pi = XSeries::one(x_trunc, trunc);
    let mut k = 1;
    while k * n - ar <= trunc {
        pi = pi.mul_xpoly(&[LaurentPoly::one(), LaurentPoly::monomial(k * n - ar, 0, 1)])?;
        k += 1;
    }
    let big_g = f.checked_div(&pi)?;

    let mut stage = StageReport::new("eq_double_prime");
    let res = q_difference_residual(sys, &big_g, |m, j| e(sys, m, j), r - 1)?;
    stage.absorb_series(&res);
    stages.push(stage);

    let s: Vec<QLaurent> = big_g.coeffs().to_vec();
    let mut stage = StageReport::new("rec_double_prime");
    for ell in 1..=x_trunc as i64 {
        let mut res = s[ell as usize].mul_poly(&a_multiplier(sys, ell));
        res = add_lowering(&res, &s[ell as usize - 1].neg())?;
        for j in 1..=r.min(ell) {
            let mut coeff = LaurentPoly::zero();
            for m in 1..=(r - j) {
                coeff = coeff + e(sys, m, j).scale_by_monomial(m * ell * n, 0, sign(m + 1));
            }
            if !coeff.is_zero() {
                res = add_lowering(&res, &s[(ell - j) as usize].mul_poly(&coeff).neg())?;
            }
        }
        stage.absorb(ell as usize, &res);
    }
    stages.push(stage);

    // mu_n = s_n prod_{k<=n} (1 - q^{Nk})
    let mut mu = Vec::with_capacity(x_trunc + 1);
    let mut factor = LaurentPoly::one();
    for (idx, sn) in s.iter().enumerate() {
        if idx > 0 {
            factor = &factor * &one_minus(n * idx as i64, 0);
        }
        mu.push(sn.mul_poly(&factor));
    }

    let mut stage = StageReport::new("rec_reduced");
    stage.absorb(0, &add_lowering(&mu[0], &QLaurent::one(mu[0].trunc()).neg())?);
    for ell in 1..=x_trunc as i64 {
        stage.absorb(ell as usize, &rec_residual(reduced, ell, &mu)?);
    }
    stages.push(stage);

    let mut stage = StageReport::new("mu_matches_reduced");
    let direct = run_recurrence(reduced, x_trunc, trunc)?;
    for (idx, (a, b)) in mu.iter().zip(&direct).enumerate() {
        stage.absorb(idx, &add_lowering(a, &b.neg())?);
    }
    stages.push(stage);

    let mut stage = StageReport::new("appell_limit");
    let lim = limit_u(sys, trunc)?;
    stage.absorb(0, &add_lowering(&lim, &product_f(sys, trunc)?.neg())?);
    stages.push(stage);

    // mu_X already carries every coefficient up to X N - a(1) of its limit
    let mut stage = StageReport::new("limit_reduced");
    let reduced_product = product_f(reduced, trunc)?;
    let lim = limit_u(reduced, trunc)?;
    stage.absorb(0, &add_lowering(&lim, &reduced_product.neg())?);
    let settled = trunc.min(x_trunc as i64 * n - reduced.a(1) as i64);
    if settled >= 0 {
        let tail = mu[x_trunc].truncate(settled)?;
        stage.absorb(x_trunc, &add_lowering(&tail, &reduced_product.neg())?);
    }
    stages.push(stage);

    let t_common = big_g.q_trunc().min(pi.q_trunc());
    let g = big_g.truncate_q(t_common)?.checked_mul(&pi.truncate_q(t_common)?)?;
    let state = ChainState {
        u,
        beta,
        s,
        mu,
        f,
        big_g,
        g,
    };
    Ok((stages, state))
}
