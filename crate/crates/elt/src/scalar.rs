//! Scalars of the exploded layered tropical semiring over the rationals.
//!
//! A finite scalar pairs a *tangible* value `t` (the max-plus magnitude)
//! with a *layer* `l` (a rational multiplicity that may be zero or
//! negative). Addition keeps the larger tangible and adds layers on ties;
//! multiplication adds tangibles and multiplies layers. The adjoined
//! element `ninf` is the additive identity and multiplicative absorber.

use num_rational::BigRational;
use num_traits::{One, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul};
use thiserror::Error;

/// Exact rational numbers, used for tangible values and layers alike.
pub type Rational = BigRational;

/// Builds a rational from a numerator/denominator pair of machine integers.
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(numer.into(), denom.into())
}

/// Builds an integral rational.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Renders a rational as `n` when integral and `n/d` otherwise.
pub fn rational_str(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("ZeroLayerNotInvertible")]
    ZeroLayerNotInvertible,
    #[error("NegInfNotInvertible")]
    NegInfNotInvertible,
}

/// An element of the layered tropical semiring: `ninf` or `<t:l>`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum EltScalar {
    NegInf,
    Finite { tangible: Rational, layer: Rational },
}

impl EltScalar {
    pub fn finite(tangible: Rational, layer: Rational) -> Self {
        EltScalar::Finite { tangible, layer }
    }

    /// `<t:l>` from machine integers, handy in tests and examples.
    pub fn from_ints(tangible: i64, layer: i64) -> Self {
        EltScalar::finite(rat_int(tangible), rat_int(layer))
    }

    pub fn neg_inf() -> Self {
        EltScalar::NegInf
    }

    /// The multiplicative identity `<0:1>`.
    pub fn one() -> Self {
        EltScalar::finite(Rational::zero(), Rational::one())
    }

    pub fn is_neg_inf(&self) -> bool {
        matches!(self, EltScalar::NegInf)
    }

    /// The tangible value; `None` for `ninf`, which has no tangible value.
    pub fn tangible(&self) -> Option<&Rational> {
        match self {
            EltScalar::NegInf => None,
            EltScalar::Finite { tangible, .. } => Some(tangible),
        }
    }

    /// The layer; `ninf` has layer zero.
    pub fn layer(&self) -> Rational {
        match self {
            EltScalar::NegInf => Rational::zero(),
            EltScalar::Finite { layer, .. } => layer.clone(),
        }
    }

    pub fn has_zero_layer(&self) -> bool {
        self.layer().is_zero()
    }

    /// Compares only the tangible values; `ninf` is below every finite scalar.
    pub fn tangible_cmp(&self, other: &EltScalar) -> Ordering {
        match (self, other) {
            (EltScalar::NegInf, EltScalar::NegInf) => Ordering::Equal,
            (EltScalar::NegInf, _) => Ordering::Less,
            (_, EltScalar::NegInf) => Ordering::Greater,
            (EltScalar::Finite { tangible: a, .. }, EltScalar::Finite { tangible: b, .. }) => {
                a.cmp(b)
            }
        }
    }

    /// `k`-fold product; the empty product is `<0:1>` even for `ninf`.
    pub fn pow(&self, k: u32) -> EltScalar {
        if k == 0 {
            return EltScalar::one();
        }
        match self {
            EltScalar::NegInf => EltScalar::NegInf,
            EltScalar::Finite { tangible, layer } => EltScalar::finite(
                tangible * Rational::from_integer(k.into()),
                layer.pow(k as i32),
            ),
        }
    }

    /// Multiplicative inverse `<-t:1/l>`, defined for finite scalars of
    /// nonzero layer.
    pub fn inv(&self) -> Result<EltScalar, ScalarError> {
        match self {
            EltScalar::NegInf => Err(ScalarError::NegInfNotInvertible),
            EltScalar::Finite { tangible, layer } => {
                if layer.is_zero() {
                    Err(ScalarError::ZeroLayerNotInvertible)
                } else {
                    Ok(EltScalar::finite(-tangible, layer.recip()))
                }
            }
        }
    }

    /// Inverts the tangible value only, keeping the layer. Used where a
    /// zero-layer coefficient must be moved to tangible value `0`.
    pub fn tangible_inv(&self) -> Option<EltScalar> {
        match self {
            EltScalar::NegInf => None,
            EltScalar::Finite { tangible, layer } => {
                Some(EltScalar::finite(-tangible, layer.clone()))
            }
        }
    }
}

impl Add for &EltScalar {
    type Output = EltScalar;

    fn add(self, rhs: &EltScalar) -> EltScalar {
        match (self, rhs) {
            (EltScalar::NegInf, b) => b.clone(),
            (a, EltScalar::NegInf) => a.clone(),
            (
                EltScalar::Finite { tangible: ta, layer: la },
                EltScalar::Finite { tangible: tb, layer: lb },
            ) => match ta.cmp(tb) {
                Ordering::Greater => self.clone(),
                Ordering::Less => rhs.clone(),
                Ordering::Equal => EltScalar::finite(ta.clone(), la + lb),
            },
        }
    }
}

impl Mul for &EltScalar {
    type Output = EltScalar;

    fn mul(self, rhs: &EltScalar) -> EltScalar {
        match (self, rhs) {
            (EltScalar::NegInf, _) | (_, EltScalar::NegInf) => EltScalar::NegInf,
            (
                EltScalar::Finite { tangible: ta, layer: la },
                EltScalar::Finite { tangible: tb, layer: lb },
            ) => EltScalar::finite(ta + tb, la * lb),
        }
    }
}

impl Add for EltScalar {
    type Output = EltScalar;
    fn add(self, rhs: EltScalar) -> EltScalar {
        &self + &rhs
    }
}

impl Mul for EltScalar {
    type Output = EltScalar;
    fn mul(self, rhs: EltScalar) -> EltScalar {
        &self * &rhs
    }
}

impl fmt::Display for EltScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EltScalar::NegInf => write!(f, "ninf"),
            EltScalar::Finite { tangible, layer } => {
                write!(f, "<{}:{}>", rational_str(tangible), rational_str(layer))
            }
        }
    }
}
