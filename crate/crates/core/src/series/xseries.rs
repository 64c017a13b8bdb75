use super::{LaurentPoly, QLaurent, SeriesError};

/// A truncated power series in an auxiliary variable `x` with `QLaurent`
/// coefficients sharing one `q`-truncation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XSeries {
    x_trunc: usize,
    coeffs: Vec<QLaurent>,
}

impl XSeries {
    pub fn zero(x_trunc: usize, trunc: i64) -> Self {
        Self {
            x_trunc,
            coeffs: vec![QLaurent::zero(trunc); x_trunc + 1],
        }
    }

    pub fn one(x_trunc: usize, trunc: i64) -> Self {
        let mut out = Self::zero(x_trunc, trunc);
        out.coeffs[0] = QLaurent::one(trunc);
        out
    }

    /// Builds `sum_j coeffs[j] x^j`, lowering every coefficient to the smallest
    /// truncation present. Missing degrees up to `x_trunc` are zero.
    pub fn from_coeffs(coeffs: Vec<QLaurent>, x_trunc: usize) -> Result<Self, SeriesError> {
        let trunc = coeffs
            .iter()
            .take(x_trunc + 1)
            .map(QLaurent::trunc)
            .min()
            .ok_or(SeriesError::Empty)?;
        let mut out: Vec<QLaurent> = coeffs
            .iter()
            .take(x_trunc + 1)
            .map(|c| c.truncate(trunc))
            .collect::<Result<_, _>>()?;
        out.resize(x_trunc + 1, QLaurent::zero(trunc));
        Ok(Self { x_trunc, coeffs: out })
    }

    /// An exact polynomial in `x` (coefficient `j` multiplies `x^j`) as a series.
    pub fn from_polys(polys: &[LaurentPoly], x_trunc: usize, trunc: i64) -> Self {
        let mut out = Self::zero(x_trunc, trunc);
        for (j, p) in polys.iter().enumerate().take(x_trunc + 1) {
            out.coeffs[j] = QLaurent::from_poly(p, trunc);
        }
        out
    }

    pub fn x_trunc(&self) -> usize {
        self.x_trunc
    }

    pub fn q_trunc(&self) -> i64 {
        self.coeffs[0].trunc()
    }

    pub fn coeff(&self, j: usize) -> &QLaurent {
        &self.coeffs[j]
    }

    pub fn coeffs(&self) -> &[QLaurent] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(QLaurent::is_zero)
    }

    fn check_same(&self, other: &Self) -> Result<(), SeriesError> {
        if self.x_trunc != other.x_trunc {
            return Err(SeriesError::XTruncationMismatch {
                left: self.x_trunc,
                right: other.x_trunc,
            });
        }
        if self.q_trunc() != other.q_trunc() {
            return Err(SeriesError::TruncationMismatch {
                left: self.q_trunc(),
                right: other.q_trunc(),
            });
        }
        Ok(())
    }

    pub fn truncate_q(&self, trunc: i64) -> Result<Self, SeriesError> {
        Ok(Self {
            x_trunc: self.x_trunc,
            coeffs: self
                .coeffs
                .iter()
                .map(|c| c.truncate(trunc))
                .collect::<Result<_, _>>()?,
        })
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_same(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.checked_add(b))
            .collect::<Result<_, _>>()?;
        Ok(Self {
            x_trunc: self.x_trunc,
            coeffs,
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_same(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.checked_sub(b))
            .collect::<Result<_, _>>()?;
        Ok(Self {
            x_trunc: self.x_trunc,
            coeffs,
        })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_same(other)?;
        let mut out = Vec::with_capacity(self.x_trunc + 1);
        for n in 0..=self.x_trunc {
            let mut acc: Option<QLaurent> = None;
            for i in 0..=n {
                let term = self.coeffs[i].checked_mul(&other.coeffs[n - i])?;
                acc = Some(match acc {
                    None => term,
                    Some(a) => add_lowering(&a, &term)?,
                });
            }
            out.push(acc.expect("at least one term"));
        }
        Self::from_coeffs(out, self.x_trunc)
    }

    /// Product with the exact `x`-polynomial `sum_j polys[j] x^j`.
    pub fn mul_xpoly(&self, polys: &[LaurentPoly]) -> Result<Self, SeriesError> {
        let mut out = Vec::with_capacity(self.x_trunc + 1);
        for n in 0..=self.x_trunc {
            let mut acc = QLaurent::zero(self.q_trunc());
            for (j, p) in polys.iter().enumerate().take(n + 1) {
                if !p.is_zero() {
                    acc = add_lowering(&acc, &self.coeffs[n - j].mul_poly(p))?;
                }
            }
            out.push(acc);
        }
        Self::from_coeffs(out, self.x_trunc)
    }

    /// Multiplies every coefficient by the exact polynomial `p`.
    pub fn mul_poly(&self, p: &LaurentPoly) -> Result<Self, SeriesError> {
        self.mul_xpoly(std::slice::from_ref(p))
    }

    /// `x -> x q^{mN}`: the coefficient of `x^j` is multiplied by `q^{j m N}`.
    pub fn substitute_x(&self, m: u64, modulus: u64) -> Self {
        let step = (m * modulus) as i64;
        Self {
            x_trunc: self.x_trunc,
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(j, c)| c.scale_by_monomial(j as i64 * step, 0, 1))
                .collect(),
        }
    }

    /// Exact division by a series whose `x^0` coefficient is exactly 1 and
    /// whose coefficients carry no negative `q` exponents.
    pub fn checked_div(&self, divisor: &Self) -> Result<Self, SeriesError> {
        self.check_same(divisor)?;
        let d0 = divisor.coeffs[0].to_poly();
        if d0 != LaurentPoly::one() {
            return Err(SeriesError::NonUnitLeadingTerm);
        }
        if divisor.coeffs.iter().any(|c| c.min_exp().is_some_and(|e| e < 0)) {
            return Err(SeriesError::NonUnitLeadingTerm);
        }
        let mut out: Vec<QLaurent> = Vec::with_capacity(self.x_trunc + 1);
        for n in 0..=self.x_trunc {
            let mut acc = self.coeffs[n].clone();
            for i in 1..=n {
                let t = divisor.q_trunc().min(out[n - i].trunc());
                let term = divisor.coeffs[i].truncate(t)?.checked_mul(&out[n - i].truncate(t)?)?;
                acc = add_lowering(&acc, &term.neg())?;
            }
            out.push(acc);
        }
        Self::from_coeffs(out, self.x_trunc)
    }

    /// First nonzero `(x-degree, monomial)` pair.
    pub fn first_nonzero(&self) -> Option<(usize, super::Monomial)> {
        self.coeffs
            .iter()
            .enumerate()
            .find_map(|(j, c)| c.first_nonzero().map(|m| (j, m)))
    }
}

/// Sum of two series, lowering the more precise one to the other's truncation.
pub fn add_lowering(a: &QLaurent, b: &QLaurent) -> Result<QLaurent, SeriesError> {
    let t = a.trunc().min(b.trunc());
    a.truncate(t)?.checked_add(&b.truncate(t)?)
}
