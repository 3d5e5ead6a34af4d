//! Dense univariate polynomials over the rationals.

use crate::scalar::{rational_str, Rational};
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RatPolyError {
    #[error("DivisionByZeroPoly")]
    DivisionByZeroPoly,
    #[error("ZeroPolynomial")]
    ZeroPolynomial,
    #[error("DegreeBoundExceeded")]
    DegreeBoundExceeded,
}

/// Coefficients by ascending degree; the zero polynomial is empty.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QPoly {
    coeffs: Vec<Rational>,
}

/// A complete factorization `unit * prod factors[i]^mult[i]` with primitive
/// irreducible factors of positive leading coefficient, sorted by degree and
/// then coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QFactorization {
    pub unit: Rational,
    pub factors: Vec<(QPoly, u32)>,
}

impl QFactorization {
    pub fn expand(&self) -> QPoly {
        let mut acc = QPoly::constant(self.unit.clone());
        for (f, m) in &self.factors {
            for _ in 0..*m {
                acc = &acc * f;
            }
        }
        acc
    }
}

impl QPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        QPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        QPoly::new(vec![c])
    }

    pub fn x() -> Self {
        QPoly::new(vec![Rational::zero(), Rational::one()])
    }

    pub fn monomial(deg: usize, c: Rational) -> Self {
        let mut coeffs = vec![Rational::zero(); deg + 1];
        coeffs[deg] = c;
        QPoly::new(coeffs)
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        QPoly::new(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> QPoly {
        if self.coeffs.len() <= 1 {
            return QPoly::zero();
        }
        QPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(i.into()))
                .collect(),
        )
    }

    pub fn scale(&self, by: &Rational) -> QPoly {
        QPoly::new(self.coeffs.iter().map(|c| c * by).collect())
    }

    pub fn monic(&self) -> QPoly {
        match self.leading() {
            None => QPoly::zero(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    /// Quotient and remainder; the divisor must be nonzero.
    pub fn divrem(&self, divisor: &QPoly) -> Result<(QPoly, QPoly), RatPolyError> {
        let dd = divisor.degree().ok_or(RatPolyError::DivisionByZeroPoly)?;
        let lc = divisor.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        if rem.len() < dd + 1 {
            return Ok((QPoly::zero(), self.clone()));
        }
        let qlen = rem.len() - dd;
        let mut quot = vec![Rational::zero(); qlen];
        for k in (0..qlen).rev() {
            let c = &rem[k + dd] / &lc;
            if !c.is_zero() {
                for (i, dc) in divisor.coeffs.iter().enumerate() {
                    let sub = dc * &c;
                    rem[k + i] -= sub;
                }
            }
            quot[k] = c;
        }
        Ok((QPoly::new(quot), QPoly::new(rem)))
    }

    pub fn divides(&self, other: &QPoly) -> bool {
        match other.divrem(self) {
            Ok((_, r)) => r.is_zero(),
            Err(_) => false,
        }
    }

    /// Monic greatest common divisor. `gcd(0, 0)` is an error.
    pub fn gcd(&self, other: &QPoly) -> Result<QPoly, RatPolyError> {
        if self.is_zero() && other.is_zero() {
            return Err(RatPolyError::DivisionByZeroPoly);
        }
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    /// Yun squarefree decomposition of a nonzero polynomial: monic pairwise
    /// coprime squarefree parts with multiplicities; the unit is implied by
    /// the leading coefficient.
    pub fn squarefree_decompose(&self) -> Result<Vec<(QPoly, u32)>, RatPolyError> {
        if self.is_zero() {
            return Err(RatPolyError::ZeroPolynomial);
        }
        let f = self.monic();
        if f.degree() == Some(0) {
            return Ok(Vec::new());
        }
        let df = f.derivative();
        let a0 = f.gcd(&df)?;
        let mut b = f.divrem(&a0)?.0;
        let mut c = df.divrem(&a0)?.0;
        let mut d = &c - &b.derivative();
        let mut out = Vec::new();
        let mut mult = 1u32;
        loop {
            let a = b.gcd(&d)?;
            if a.degree().map_or(false, |dg| dg > 0) {
                out.push((a.clone(), mult));
            }
            b = b.divrem(&a)?.0;
            c = d.divrem(&a)?.0;
            d = &c - &b.derivative();
            mult += 1;
            if b.degree() == Some(0) {
                break;
            }
        }
        Ok(out)
    }

    /// Complete irreducible factorization over the rationals.
    pub fn factor(&self) -> Result<QFactorization, RatPolyError> {
        super::zassenhaus::factor_qpoly(self)
    }
}

impl Add for &QPoly {
    type Output = QPoly;
    fn add(self, rhs: &QPoly) -> QPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        QPoly::new((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &QPoly {
    type Output = QPoly;
    fn sub(self, rhs: &QPoly) -> QPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        QPoly::new((0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &QPoly {
    type Output = QPoly;
    fn mul(self, rhs: &QPoly) -> QPoly {
        if self.is_zero() || rhs.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPoly::new(out)
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if first {
                if c.is_negative() { "-" } else { "" }
            } else if c.is_negative() {
                " - "
            } else {
                " + "
            };
            let mag = c.abs();
            let body = match i {
                0 => rational_str(&mag),
                _ => {
                    let var = if i == 1 { "x".to_string() } else { format!("x^{}", i) };
                    if mag.is_one() {
                        var
                    } else {
                        format!("{}*{}", rational_str(&mag), var)
                    }
                }
            };
            write!(f, "{}{}", sign, body)?;
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mul_and_divrem() {
        let f = QPoly::from_ints(&[1, 1]); // x + 1
        let g = QPoly::from_ints(&[-1, 1]); // x - 1
        let p = &f * &g;
        assert_eq!(p, QPoly::from_ints(&[-1, 0, 1]));
        let (q, r) = p.divrem(&f).unwrap();
        assert_eq!(q, g);
        assert!(r.is_zero());
        let (q2, r2) = QPoly::from_ints(&[1, 0, 1]).divrem(&f).unwrap();
        assert_eq!(q2, QPoly::from_ints(&[-1, 1]));
        assert_eq!(r2, QPoly::from_ints(&[2]));
    }

    #[test]
    fn gcd_common_root() {
        let a = QPoly::from_ints(&[-1, 0, 1]); // x^2 - 1
        let b = QPoly::from_ints(&[1, 2, 1]); // (x+1)^2
        assert_eq!(a.gcd(&b).unwrap(), QPoly::from_ints(&[1, 1]));
        assert_eq!(
            QPoly::zero().gcd(&QPoly::zero()),
            Err(RatPolyError::DivisionByZeroPoly)
        );
    }

    #[test]
    fn squarefree_decomposition() {
        let f = QPoly::from_ints(&[1, 2, 1]); // (x+1)^2
        assert_eq!(
            f.squarefree_decompose().unwrap(),
            vec![(QPoly::from_ints(&[1, 1]), 2)]
        );
        // (x+1)^2 (x-2)
        let g = &f * &QPoly::from_ints(&[-2, 1]);
        let parts = g.squarefree_decompose().unwrap();
        assert_eq!(
            parts,
            vec![
                (QPoly::from_ints(&[-2, 1]), 1),
                (QPoly::from_ints(&[1, 1]), 2)
            ]
        );
    }

    #[test]
    fn display_forms() {
        assert_eq!(QPoly::from_ints(&[-1, 0, 1]).to_string(), "x^2 - 1");
        assert_eq!(QPoly::from_ints(&[2, -3]).to_string(), "-3*x + 2");
        assert_eq!(QPoly::zero().to_string(), "0");
    }
}
