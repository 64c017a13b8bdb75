use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// A polynomial in the marker `d` with integer coefficients.
///
/// Stored densely by `d`-degree with no trailing zeros, so the zero polynomial
/// is the empty vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct DPoly {
    coeffs: Vec<BigInt>,
}

impl DPoly {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(0, BigInt::from(c))
    }

    /// `c * d^degree`
    pub fn monomial(degree: u32, c: BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); degree as usize + 1];
        coeffs[degree as usize] = c;
        Self { coeffs }
    }

    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        let mut p = Self { coeffs };
        p.trim();
        p
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.len().checked_sub(1).map(|d| d as u32)
    }

    /// Coefficient of `d^k`.
    pub fn coeff(&self, k: u32) -> BigInt {
        self.coeffs.get(k as usize).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Nonzero `(degree, coefficient)` pairs in ascending degree.
    pub fn terms(&self) -> impl Iterator<Item = (u32, &BigInt)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k as u32, c))
    }

    /// Value at `d = 0`.
    pub fn at_zero(&self) -> BigInt {
        self.coeff(0)
    }

    pub fn shift(&self, by: u32) -> Self {
        if self.is_zero() || by == 0 {
            return self.clone();
        }
        let mut coeffs = vec![BigInt::zero(); by as usize];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// `self += a * b`, the inner step of every series product.
    pub fn add_product(&mut self, a: &DPoly, b: &DPoly) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        let len = a.coeffs.len() + b.coeffs.len() - 1;
        if self.coeffs.len() < len {
            self.coeffs.resize(len, BigInt::zero());
        }
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    self.coeffs[i + j] += x * y;
                }
            }
        }
        self.trim();
    }

    pub fn all_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }
}

impl AddAssign<&DPoly> for DPoly {
    fn add_assign(&mut self, rhs: &DPoly) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), BigInt::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
        self.trim();
    }
}

impl SubAssign<&DPoly> for DPoly {
    fn sub_assign(&mut self, rhs: &DPoly) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), BigInt::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a -= b;
        }
        self.trim();
    }
}

impl Add for &DPoly {
    type Output = DPoly;
    fn add(self, rhs: &DPoly) -> DPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &DPoly {
    type Output = DPoly;
    fn sub(self, rhs: &DPoly) -> DPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul for &DPoly {
    type Output = DPoly;
    fn mul(self, rhs: &DPoly) -> DPoly {
        let mut out = DPoly::zero();
        out.add_product(self, rhs);
        out
    }
}

impl Neg for &DPoly {
    type Output = DPoly;
    fn neg(self) -> DPoly {
        DPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for DPoly {
    /// `1 + 2d + d^2`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.terms() {
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let show_mag = k == 0 || !mag.is_one();
            if show_mag {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => write!(f, "d")?,
                _ => write!(f, "d^{k}")?,
            }
        }
        Ok(())
    }
}
