//! Factorization of layered tropical polynomials.
//!
//! Univariate polynomials split into primary pieces around their corner
//! roots; pieces with zero-layer leading or constant coefficients peel off
//! degenerate linear factors; the regular primary remainder is carried to an
//! ordinary rational polynomial, factored there, and mapped back. Regular
//! polynomials factor uniquely; the zero-layer counterexamples are handled
//! by fixed canonical choices and reported as non-unique.

mod multi;
mod uni;

pub use multi::{factor_primary_multivariate, find_primary_point, is_linear_form_irreducible};
pub use uni::{
    factor_into_primaries, factor_primary, factor_univariate, is_irreducible_univariate,
    split_at_monomial, strip_monomial, PrimaryFactorization,
};

use crate::poly::{EltPoly, MultiIndex, PolyError};
use crate::ratpoly::RatPolyError;
use crate::scalar::{EltScalar, Rational};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FactorError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Rat(#[from] RatPolyError),
    #[error("NoConstantTerm")]
    NoConstantTerm,
    #[error("MonomialNotEligible")]
    MonomialNotEligible,
    #[error("NotPrimary")]
    NotPrimary,
    #[error("NotRegular")]
    NotRegular,
    #[error("LayerZeroSeparator")]
    LayerZeroSeparator,
    #[error("NegInfPolynomial")]
    NegInfPolynomial,
}

/// A factorization `prefactor * x^monomial_prefactor * prod factors^mult`.
/// Factors are canonical, non-constant and normalized: the leading (highest
/// lexicographic index) coefficient has tangible value zero and layer one
/// where invertible, layer zero otherwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub prefactor: EltScalar,
    pub monomial_prefactor: MultiIndex,
    pub factors: Vec<(EltPoly, u32)>,
    pub unique: bool,
}

impl Factorization {
    pub fn expand(&self, arity: usize) -> EltPoly {
        let mut acc = EltPoly::constant(arity, self.prefactor.clone());
        acc = acc.shift_up(&self.monomial_prefactor);
        for (f, m) in &self.factors {
            for _ in 0..*m {
                acc = acc.checked_mul(f).expect("factor arity mismatch");
            }
        }
        acc.canonicalize()
    }
}

/// Expands the factorization and compares with the input as functions.
pub fn verify_factorization(f: &EltPoly, fac: &Factorization) -> bool {
    fac.expand(f.arity())
        .equals_as_functions(f)
        .unwrap_or(false)
}

/// Scales a polynomial so its leading coefficient becomes `<0:1>` (or
/// `<0:0>` when the layer is zero); returns the normalized polynomial and
/// the extracted constant, with `input = extracted * normalized`.
pub(crate) fn normalize_factor(f: &EltPoly) -> (EltPoly, EltScalar) {
    let lead = f
        .coeff(f.leading_index().expect("normalize of ninf"))
        .unwrap()
        .clone();
    match lead.inv() {
        Ok(inv) => (f.scale(&inv).canonicalize(), lead),
        Err(_) => {
            // zero layer: move the tangible part only
            let t = lead.tangible().expect("finite coefficient").clone();
            let extracted = EltScalar::finite(t.clone(), num_traits::One::one());
            let inv = EltScalar::finite(-t, num_traits::One::one());
            (f.scale(&inv).canonicalize(), extracted)
        }
    }
}

/// Accumulates prefactor, monomial part and factor multiset during a
/// pipeline run.
pub(crate) struct Accumulator {
    pub prefactor: EltScalar,
    pub monomial: MultiIndex,
    pub factors: Vec<(EltPoly, u32)>,
}

impl Accumulator {
    pub fn new(arity: usize) -> Self {
        Accumulator {
            prefactor: EltScalar::one(),
            monomial: MultiIndex::zero(arity),
            factors: Vec::new(),
        }
    }

    pub fn scale(&mut self, s: &EltScalar) {
        self.prefactor = &self.prefactor * s;
    }

    pub fn push(&mut self, f: EltPoly, mult: u32) {
        debug_assert!(f.is_canonical_form());
        for (g, m) in &mut self.factors {
            if g.terms() == f.terms() {
                *m += mult;
                return;
            }
        }
        self.factors.push((f, mult));
    }

    pub fn finish(mut self, unique: bool) -> Factorization {
        self.factors.sort_by(|a, b| factor_key(&a.0).cmp(&factor_key(&b.0)));
        Factorization {
            prefactor: self.prefactor,
            monomial_prefactor: self.monomial,
            factors: self.factors,
            unique,
        }
    }
}

type FactorKey = (bool, Option<Rational>, u32, String);

/// Sort key: smallest corner root (univariate), then total degree, then the
/// rendered form.
fn factor_key(f: &EltPoly) -> FactorKey {
    let root = f
        .corner_roots()
        .ok()
        .and_then(|r| r.first().cloned());
    let deg = f
        .terms()
        .keys()
        .map(|i| i.total_degree())
        .max()
        .unwrap_or(0);
    (root.is_none(), root, deg, f.to_string())
}
