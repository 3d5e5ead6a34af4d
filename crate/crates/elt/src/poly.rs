//! Layered tropical polynomials treated as functions.
//!
//! Two polynomials with different supports can agree at every point, so the
//! working representative is the canonical form: a monomial is kept iff it
//! changes the function somewhere. For nonzero layers that means tying the
//! tangible maximum somewhere; for layer zero it means dominating strictly
//! somewhere.

use crate::fm::{feasible, Constraint};
use crate::hull::{HullPosition, UpperHull};
use crate::scalar::{rational_str, EltScalar, Rational};
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("ArityMismatch")]
    ArityMismatch { expected: usize, found: usize },
    #[error("UnknownMonomial")]
    UnknownMonomial,
    #[error("NotPrimary")]
    NotPrimary,
    #[error("InfinitePoint")]
    InfinitePoint,
}

/// Exponent vector of a monomial; ordering is lexicographic.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex(pub Vec<u32>);

impl MultiIndex {
    pub fn zero(arity: usize) -> Self {
        MultiIndex(vec![0; arity])
    }

    pub fn uni(exp: u32) -> Self {
        MultiIndex(vec![exp])
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Componentwise difference; `None` if any component would go negative.
    pub fn checked_sub(&self, other: &MultiIndex) -> Option<MultiIndex> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<u32>>>()
            .map(MultiIndex)
    }

    /// Dot product with a rational point.
    pub fn dot(&self, point: &[Rational]) -> Rational {
        self.0
            .iter()
            .zip(point)
            .map(|(&e, x)| x * Rational::from_integer(e.into()))
            .fold(Rational::zero(), |acc, v| acc + v)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    Essential,
    QuasiEssential,
    Inessential,
}

/// The layer behaviour of a univariate polynomial along the fiber over a
/// tangible point: the rational polynomial `l -> s(f(<a:l>))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayerProfile {
    coeffs: Vec<Rational>,
}

impl LayerProfile {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        LayerProfile { coeffs }
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn eval(&self, layer: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * layer + c;
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

/// The normal form of a polynomial that is primary at a point: a tangible
/// constant together with the layer of every monomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimaryDecomposition {
    pub constant: Rational,
    pub layers: BTreeMap<MultiIndex, Rational>,
}

/// A finite map from exponent vectors to finite scalars, interpreted as a
/// function; the empty map is the constant `ninf`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EltPoly {
    arity: usize,
    terms: BTreeMap<MultiIndex, EltScalar>,
    canonical: bool,
}

impl EltPoly {
    pub fn zero(arity: usize) -> Self {
        assert!(arity >= 1, "arity must be positive");
        EltPoly { arity, terms: BTreeMap::new(), canonical: true }
    }

    /// Builds a polynomial, merging duplicate indices with semiring addition
    /// and dropping `ninf` coefficients.
    pub fn from_terms<I>(arity: usize, terms: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = (MultiIndex, EltScalar)>,
    {
        assert!(arity >= 1, "arity must be positive");
        let mut map: BTreeMap<MultiIndex, EltScalar> = BTreeMap::new();
        for (idx, coeff) in terms {
            if idx.arity() != arity {
                return Err(PolyError::ArityMismatch { expected: arity, found: idx.arity() });
            }
            match map.remove(&idx) {
                Some(prev) => {
                    let merged = &prev + &coeff;
                    map.insert(idx, merged);
                }
                None => {
                    map.insert(idx, coeff);
                }
            }
        }
        map.retain(|_, c| !c.is_neg_inf());
        Ok(EltPoly { arity, terms: map, canonical: false })
    }

    pub fn constant(arity: usize, value: EltScalar) -> Self {
        if value.is_neg_inf() {
            return EltPoly::zero(arity);
        }
        let mut terms = BTreeMap::new();
        terms.insert(MultiIndex::zero(arity), value);
        EltPoly { arity, terms, canonical: true }
    }

    pub fn monomial(arity: usize, idx: MultiIndex, coeff: EltScalar) -> Self {
        assert_eq!(idx.arity(), arity);
        if coeff.is_neg_inf() {
            return EltPoly::zero(arity);
        }
        let mut terms = BTreeMap::new();
        terms.insert(idx, coeff);
        EltPoly { arity, terms, canonical: true }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn terms(&self) -> &BTreeMap<MultiIndex, EltScalar> {
        &self.terms
    }

    pub fn is_canonical_form(&self) -> bool {
        self.canonical
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// True for the constant `ninf`.
    pub fn is_neg_inf(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|i| i.is_zero())
    }

    pub fn constant_term(&self) -> Option<&EltScalar> {
        self.terms.get(&MultiIndex::zero(self.arity))
    }

    pub fn coeff(&self, idx: &MultiIndex) -> Option<&EltScalar> {
        self.terms.get(idx)
    }

    /// Highest index in lexicographic order.
    pub fn leading_index(&self) -> Option<&MultiIndex> {
        self.terms.keys().next_back()
    }

    /// Degree of a univariate polynomial; `None` for the constant `ninf`.
    pub fn degree_uni(&self) -> Option<u32> {
        self.check_uni().ok()?;
        self.terms.keys().next_back().map(|i| i.0[0])
    }

    fn check_arity(&self, other: &EltPoly) -> Result<(), PolyError> {
        if self.arity == other.arity {
            Ok(())
        } else {
            Err(PolyError::ArityMismatch { expected: self.arity, found: other.arity })
        }
    }

    fn check_uni(&self) -> Result<(), PolyError> {
        if self.arity == 1 {
            Ok(())
        } else {
            Err(PolyError::ArityMismatch { expected: 1, found: self.arity })
        }
    }

    fn check_point_len(&self, len: usize) -> Result<(), PolyError> {
        if self.arity == len {
            Ok(())
        } else {
            Err(PolyError::ArityMismatch { expected: self.arity, found: len })
        }
    }

    fn term_value(idx: &MultiIndex, coeff: &EltScalar, point: &[EltScalar]) -> EltScalar {
        let mut acc = coeff.clone();
        for (e, p) in idx.0.iter().zip(point) {
            if *e > 0 {
                acc = &acc * &p.pow(*e);
            }
        }
        acc
    }

    pub fn evaluate(&self, point: &[EltScalar]) -> Result<EltScalar, PolyError> {
        self.check_point_len(point.len())?;
        if point.iter().any(|p| p.is_neg_inf()) {
            return Err(PolyError::InfinitePoint);
        }
        let mut acc = EltScalar::neg_inf();
        for (idx, coeff) in &self.terms {
            acc = &acc + &Self::term_value(idx, coeff, point);
        }
        Ok(acc)
    }

    /// Evaluates at a tangible point, i.e. all coordinates at layer one.
    pub fn evaluate_tangible(&self, point: &[Rational]) -> Result<EltScalar, PolyError> {
        let lifted: Vec<EltScalar> = point
            .iter()
            .map(|t| EltScalar::finite(t.clone(), Rational::one()))
            .collect();
        self.evaluate(&lifted)
    }

    pub fn classify_at(
        &self,
        h: &MultiIndex,
        point: &[EltScalar],
    ) -> Result<Classification, PolyError> {
        let coeff = self.terms.get(h).ok_or(PolyError::UnknownMonomial)?.clone();
        let full = self.evaluate(point)?;
        let mut rest = self.clone();
        rest.terms.remove(h);
        rest.canonical = false;
        let without = rest.evaluate(point)?;
        if without == full {
            return Ok(Classification::Inessential);
        }
        let own = Self::term_value(h, &coeff, point);
        if own == full {
            Ok(Classification::Essential)
        } else {
            Ok(Classification::QuasiEssential)
        }
    }

    fn lifted_points(&self) -> Vec<(u32, Rational)> {
        self.terms
            .iter()
            .map(|(idx, c)| (idx.0[0], c.tangible().unwrap().clone()))
            .collect()
    }

    /// `(attains the tangible maximum somewhere, strictly dominates somewhere)`
    /// for the monomial at `h`, decided exactly.
    pub fn attains_and_dominates(&self, h: &MultiIndex) -> Result<(bool, bool), PolyError> {
        let _ = self.terms.get(h).ok_or(PolyError::UnknownMonomial)?;
        if self.terms.len() == 1 {
            return Ok((true, true));
        }
        if self.arity == 1 {
            let hull = UpperHull::new(self.lifted_points());
            return Ok(match hull.position(h.0[0]) {
                HullPosition::Vertex => (true, true),
                HullPosition::OnEdge => (true, false),
                HullPosition::Below => (false, false),
            });
        }
        let th = self.terms[h].tangible().unwrap().clone();
        let build = |strict: bool| -> Vec<Constraint> {
            self.terms
                .iter()
                .filter(|(idx, _)| *idx != h)
                .map(|(idx, c)| {
                    let coeffs: Vec<Rational> = h
                        .0
                        .iter()
                        .zip(&idx.0)
                        .map(|(&a, &b)| Rational::from_integer((i64::from(a) - i64::from(b)).into()))
                        .collect();
                    Constraint {
                        coeffs,
                        rhs: c.tangible().unwrap() - &th,
                        strict,
                    }
                })
                .collect()
        };
        let attains = feasible(build(false), self.arity);
        let dominates = attains && feasible(build(true), self.arity);
        Ok((attains, dominates))
    }

    /// Returns the canonical representative of the same function: monomials
    /// with nonzero layer are kept iff they attain the maximum somewhere,
    /// zero-layer monomials iff they dominate strictly somewhere.
    pub fn canonicalize(&self) -> EltPoly {
        if self.canonical {
            return self.clone();
        }
        let mut kept: BTreeMap<MultiIndex, EltScalar> = BTreeMap::new();
        for (idx, coeff) in &self.terms {
            let (attains, dominates) = self.attains_and_dominates(idx).unwrap();
            let keep = if coeff.has_zero_layer() { dominates } else { attains };
            if keep {
                kept.insert(idx.clone(), coeff.clone());
            }
        }
        EltPoly { arity: self.arity, terms: kept, canonical: true }
    }

    pub fn checked_add(&self, other: &EltPoly) -> Result<EltPoly, PolyError> {
        self.check_arity(other)?;
        let merged = EltPoly::from_terms(
            self.arity,
            self.terms
                .iter()
                .chain(other.terms.iter())
                .map(|(i, c)| (i.clone(), c.clone())),
        )?;
        Ok(merged.canonicalize())
    }

    pub fn checked_mul(&self, other: &EltPoly) -> Result<EltPoly, PolyError> {
        self.check_arity(other)?;
        let mut products: Vec<(MultiIndex, EltScalar)> = Vec::new();
        for (i, a) in &self.terms {
            for (j, b) in &other.terms {
                products.push((i.add(j), a * b));
            }
        }
        Ok(EltPoly::from_terms(self.arity, products)?.canonicalize())
    }

    /// Multiplies every coefficient by a scalar.
    pub fn scale(&self, factor: &EltScalar) -> EltPoly {
        if factor.is_neg_inf() {
            return EltPoly::zero(self.arity);
        }
        let terms = self
            .terms
            .iter()
            .map(|(i, c)| (i.clone(), factor * c))
            .collect();
        EltPoly { arity: self.arity, terms, canonical: self.canonical }
    }

    /// Shifts all exponents down by `m` (each component must stay
    /// nonnegative).
    pub fn shift_down(&self, m: &MultiIndex) -> EltPoly {
        let terms = self
            .terms
            .iter()
            .map(|(i, c)| (i.checked_sub(m).expect("shift below zero"), c.clone()))
            .collect();
        EltPoly { arity: self.arity, terms, canonical: self.canonical }
    }

    pub fn shift_up(&self, m: &MultiIndex) -> EltPoly {
        let terms = self
            .terms
            .iter()
            .map(|(i, c)| (i.add(m), c.clone()))
            .collect();
        EltPoly { arity: self.arity, terms, canonical: self.canonical }
    }

    /// Reverses a univariate coefficient list: exponent `i` becomes `n-i`.
    /// Corner roots are negated; products are preserved.
    pub(crate) fn reverse_uni(&self) -> EltPoly {
        debug_assert_eq!(self.arity, 1);
        let n = self.degree_uni().unwrap_or(0);
        let terms = self
            .terms
            .iter()
            .map(|(i, c)| (MultiIndex::uni(n - i.0[0]), c.clone()))
            .collect();
        EltPoly { arity: 1, terms, canonical: self.canonical }
    }

    /// Function equality, decided through canonical forms.
    pub fn equals_as_functions(&self, other: &EltPoly) -> Result<bool, PolyError> {
        self.check_arity(other)?;
        Ok(self.canonicalize().terms == other.canonicalize().terms)
    }

    /// Tangible points where at least two monomials attain the maximum,
    /// ascending. Univariate only.
    pub fn corner_roots(&self) -> Result<Vec<Rational>, PolyError> {
        self.check_uni()?;
        if self.terms.len() < 2 {
            return Ok(Vec::new());
        }
        Ok(UpperHull::new(self.lifted_points()).breakpoints())
    }

    /// Corner roots at which the given monomial ties the maximum.
    pub fn tie_roots(&self, h: &MultiIndex) -> Result<Vec<Rational>, PolyError> {
        self.check_uni()?;
        let _ = self.terms.get(h).ok_or(PolyError::UnknownMonomial)?;
        if self.terms.len() < 2 {
            return Ok(Vec::new());
        }
        Ok(UpperHull::new(self.lifted_points()).tie_roots(h.0[0]))
    }

    /// The sub-polynomial of monomials not inessential at the point.
    pub fn essential_part_at(&self, point: &[Rational]) -> Result<EltPoly, PolyError> {
        self.check_point_len(point.len())?;
        let lifted: Vec<EltScalar> = point
            .iter()
            .map(|t| EltScalar::finite(t.clone(), Rational::one()))
            .collect();
        let mut kept = BTreeMap::new();
        for (idx, coeff) in &self.terms {
            if self.classify_at(idx, &lifted)? != Classification::Inessential {
                kept.insert(idx.clone(), coeff.clone());
            }
        }
        Ok(EltPoly { arity: self.arity, terms: kept, canonical: false })
    }

    /// True iff every monomial of the canonical form has the same tangible
    /// value at the point.
    pub fn is_primary_at(&self, point: &[Rational]) -> Result<bool, PolyError> {
        self.check_point_len(point.len())?;
        let canon = self.canonicalize();
        if canon.is_neg_inf() {
            return Ok(false);
        }
        let mut value: Option<Rational> = None;
        for (idx, coeff) in &canon.terms {
            let v = coeff.tangible().unwrap() + idx.dot(point);
            match &value {
                None => value = Some(v),
                Some(prev) => {
                    if *prev != v {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// For a polynomial primary at `point`, extracts the tangible constant
    /// `c` (value at the point minus the leading index contribution) and the
    /// layer of every monomial. The polynomial is reconstructed exactly by
    /// giving index `I` the coefficient `<c + (I0 - I).point : layer(I)>`.
    pub fn primary_decompose(
        &self,
        point: &[Rational],
    ) -> Result<PrimaryDecomposition, PolyError> {
        if !self.is_primary_at(point)? {
            return Err(PolyError::NotPrimary);
        }
        let canon = self.canonicalize();
        let top = canon.leading_index().unwrap().clone();
        let value = canon.terms[&top].tangible().unwrap() + top.dot(point);
        let constant = value - top.dot(point);
        let layers = canon
            .terms
            .iter()
            .map(|(i, c)| (i.clone(), c.layer()))
            .collect();
        Ok(PrimaryDecomposition { constant, layers })
    }

    /// The rational polynomial `l -> s(f(<a:l>))` for univariate `f`.
    pub fn layer_profile(&self, a: &Rational) -> Result<LayerProfile, PolyError> {
        self.check_uni()?;
        if self.is_neg_inf() {
            return Ok(LayerProfile::new(Vec::new()));
        }
        let max = self
            .terms
            .iter()
            .map(|(i, c)| c.tangible().unwrap() + i.dot(std::slice::from_ref(a)))
            .max()
            .unwrap();
        let deg = self.terms.keys().next_back().unwrap().0[0] as usize;
        let mut coeffs = vec![Rational::zero(); deg + 1];
        for (idx, coeff) in &self.terms {
            let v = coeff.tangible().unwrap() + idx.dot(std::slice::from_ref(a));
            if v == max {
                coeffs[idx.0[0] as usize] += coeff.layer();
            }
        }
        Ok(LayerProfile::new(coeffs))
    }

    /// Root equivalence: identical corner root sets and identical layer
    /// profiles at every corner root.
    pub fn root_equivalent(&self, other: &EltPoly) -> Result<bool, PolyError> {
        self.check_uni()?;
        other.check_uni()?;
        let ra = self.corner_roots()?;
        let rb = other.corner_roots()?;
        if ra != rb {
            return Ok(false);
        }
        for root in &ra {
            if self.layer_profile(root)? != other.layer_profile(root)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// True iff every coefficient of the canonical form has nonzero layer.
    pub fn is_regular(&self) -> bool {
        self.canonicalize()
            .terms
            .values()
            .all(|c| !c.has_zero_layer())
    }

    fn var_name(arity: usize, j: usize) -> &'static str {
        debug_assert!(j < 4);
        if arity == 1 {
            "x"
        } else {
            ["x", "y", "z", "w"][j]
        }
    }

    fn monomial_str(&self, idx: &MultiIndex) -> String {
        let mut parts = Vec::new();
        for (j, &e) in idx.0.iter().enumerate() {
            if e == 1 {
                parts.push(Self::var_name(self.arity, j).to_string());
            } else if e > 1 {
                parts.push(format!("{}^{}", Self::var_name(self.arity, j), e));
            }
        }
        parts.join("*")
    }
}

impl fmt::Display for EltPoly {
    /// Terms in descending lexicographic index order. The coefficient `<0:1>`
    /// on a non-constant monomial is omitted; a constant term of layer one is
    /// printed as a bare rational.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_neg_inf() {
            return write!(f, "ninf");
        }
        let mut parts = Vec::new();
        for (idx, coeff) in self.terms.iter().rev() {
            if idx.is_zero() {
                let (t, l) = match coeff {
                    EltScalar::Finite { tangible, layer } => (tangible, layer),
                    EltScalar::NegInf => unreachable!(),
                };
                if l.is_one() {
                    parts.push(rational_str(t));
                } else {
                    parts.push(coeff.to_string());
                }
            } else if *coeff == EltScalar::one() {
                parts.push(self.monomial_str(idx));
            } else {
                parts.push(format!("{}*{}", coeff, self.monomial_str(idx)));
            }
        }
        write!(f, "{}", parts.join(" + "))
    }
}

impl Add for &EltPoly {
    type Output = EltPoly;
    fn add(self, rhs: &EltPoly) -> EltPoly {
        self.checked_add(rhs).expect("arity mismatch in +")
    }
}

impl Mul for &EltPoly {
    type Output = EltPoly;
    fn mul(self, rhs: &EltPoly) -> EltPoly {
        self.checked_mul(rhs).expect("arity mismatch in *")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rat_int};

    fn sc(t: i64, l: i64) -> EltScalar {
        EltScalar::from_ints(t, l)
    }

    fn uni(terms: &[(u32, EltScalar)]) -> EltPoly {
        EltPoly::from_terms(1, terms.iter().map(|(e, c)| (MultiIndex::uni(*e), c.clone())))
            .unwrap()
    }

    fn pt1(t: i64, l: i64) -> Vec<EltScalar> {
        vec![sc(t, l)]
    }

    #[test]
    fn evaluate_sums_monomials() {
        // x^2 + <1:2>x + <0:1> at <1:1>
        let f = uni(&[(2, sc(0, 1)), (1, sc(1, 2)), (0, sc(0, 1))]);
        assert_eq!(f.evaluate(&pt1(1, 1)).unwrap(), sc(2, 3));
    }

    #[test]
    fn evaluate_layer_fiber() {
        // x^2 + x + <0:1/4> at <0:-1/2> has layer (-1/2)^2 + (-1/2) + 1/4 = 0
        let f = uni(&[(2, sc(0, 1)), (1, sc(0, 1)), (0, EltScalar::finite(rat_int(0), rat(1, 4)))]);
        let v = f
            .evaluate(&[EltScalar::finite(rat_int(0), rat(-1, 2))])
            .unwrap();
        assert_eq!(v, sc(0, 0));
    }

    #[test]
    fn evaluate_neg_inf_poly() {
        let f = EltPoly::zero(1);
        assert_eq!(f.evaluate(&pt1(5, 1)).unwrap(), EltScalar::neg_inf());
    }

    #[test]
    fn evaluate_rejects_infinite_points() {
        let f = uni(&[(1, sc(0, 1))]);
        assert_eq!(f.evaluate(&[EltScalar::neg_inf()]), Err(PolyError::InfinitePoint));
    }

    #[test]
    fn classification_cases() {
        let f = uni(&[(2, sc(0, 1)), (1, sc(1, 1)), (0, sc(2, 1))]);
        let h2 = MultiIndex::uni(2);
        let h1 = MultiIndex::uni(1);
        assert_eq!(f.classify_at(&h2, &pt1(3, 1)).unwrap(), Classification::Essential);
        assert_eq!(f.classify_at(&h1, &pt1(1, 1)).unwrap(), Classification::QuasiEssential);

        let g = uni(&[(2, sc(0, 1)), (1, sc(0, 1)), (0, sc(2, 1))]);
        assert_eq!(g.classify_at(&h1, &pt1(0, 1)).unwrap(), Classification::Inessential);

        assert_eq!(
            f.classify_at(&MultiIndex::uni(9), &pt1(0, 1)),
            Err(PolyError::UnknownMonomial)
        );
    }

    #[test]
    fn attains_and_dominates_univariate() {
        let f = uni(&[(2, sc(0, 1)), (1, sc(0, 1)), (0, sc(2, 1))]);
        assert_eq!(f.attains_and_dominates(&MultiIndex::uni(1)).unwrap(), (false, false));
        // the middle of (x+1)^2 ties at the lone corner root but never wins
        let g = uni(&[(2, sc(0, 1)), (1, sc(1, 1)), (0, sc(2, 1))]);
        assert_eq!(g.attains_and_dominates(&MultiIndex::uni(1)).unwrap(), (true, false));
        // raising the middle makes it a hull vertex
        let h = uni(&[(2, sc(0, 1)), (1, sc(2, 1)), (0, sc(2, 1))]);
        assert_eq!(h.attains_and_dominates(&MultiIndex::uni(1)).unwrap(), (true, true));
    }

    #[test]
    fn attains_and_dominates_bivariate() {
        // x + y: each monomial dominates on a half plane
        let f = EltPoly::from_terms(
            2,
            vec![
                (MultiIndex(vec![1, 0]), sc(0, 1)),
                (MultiIndex(vec![0, 1]), sc(0, 1)),
            ],
        )
        .unwrap();
        assert_eq!(f.attains_and_dominates(&MultiIndex(vec![1, 0])).unwrap(), (true, true));
        assert_eq!(f.attains_and_dominates(&MultiIndex(vec![0, 1])).unwrap(), (true, true));
    }

    #[test]
    fn canonicalize_drops_inessential_middle() {
        let f = uni(&[(2, sc(0, 1)), (1, sc(0, 1)), (0, sc(2, 1))]);
        let g = uni(&[(2, sc(0, 1)), (0, sc(2, 1))]);
        assert_eq!(f.canonicalize().terms, g.terms);
    }

    #[test]
    fn canonicalize_keeps_zero_layer_vertex() {
        let f = uni(&[(4, sc(0, 1)), (2, sc(2, 0)), (0, sc(0, 1))]);
        assert_eq!(f.canonicalize().terms, f.terms);
    }

    #[test]
    fn canonicalize_drops_zero_layer_tie() {
        let f = uni(&[(2, sc(0, 1)), (1, sc(2, 0)), (0, sc(4, 1))]);
        let g = uni(&[(2, sc(0, 1)), (0, sc(4, 1))]);
        assert_eq!(f.canonicalize().terms, g.terms);
    }

    #[test]
    fn canonicalize_is_idempotent() {
        let f = uni(&[(2, sc(0, 1)), (1, sc(2, 0)), (0, sc(4, 1))]);
        let once = f.canonicalize();
        assert_eq!(once.canonicalize(), once);
    }

    #[test]
    fn product_collapses_and_merges() {
        // ((-2)x^2 + x + 1) * ((-5)x^3 + (-1)x + 0)
        let f = uni(&[(2, sc(-2, 1)), (1, sc(0, 1)), (0, sc(1, 1))]);
        let g = uni(&[(3, sc(-5, 1)), (1, sc(-1, 1)), (0, sc(0, 1))]);
        let p = f.checked_mul(&g).unwrap();
        let expected = uni(&[
            (5, sc(-7, 1)),
            (4, sc(-5, 1)),
            (3, sc(-3, 1)),
            (2, sc(-1, 1)),
            (1, sc(0, 2)),
            (0, sc(1, 1)),
        ]);
        assert_eq!(p.terms, expected.terms);
    }

    #[test]
    fn product_of_zero_layer_middles() {
        // (x^2 + <1:0>x + <0:1/3>)(x^2 + <1:0>x + <0:3>) = x^4 + <2:0>x^2 + 0
        let f = uni(&[(2, sc(0, 1)), (1, sc(1, 0)), (0, EltScalar::finite(rat_int(0), rat(1, 3)))]);
        let g = uni(&[(2, sc(0, 1)), (1, sc(1, 0)), (0, sc(0, 3))]);
        let p = f.checked_mul(&g).unwrap();
        let expected = uni(&[(4, sc(0, 1)), (2, sc(2, 0)), (0, sc(0, 1))]);
        assert_eq!(p.terms, expected.terms);
    }

    #[test]
    fn square_merges_cross_terms() {
        // (x + 1)^2 = x^2 + <1:2>x + <2:1>
        let f = uni(&[(1, sc(0, 1)), (0, sc(1, 1))]);
        let p = f.checked_mul(&f).unwrap();
        let expected = uni(&[(2, sc(0, 1)), (1, sc(1, 2)), (0, sc(2, 1))]);
        assert_eq!(p.terms, expected.terms);
    }

    #[test]
    fn equality_of_functions() {
        let f = uni(&[(2, sc(0, 1)), (1, sc(0, 1)), (0, sc(2, 1))]);
        let g = uni(&[(2, sc(0, 1)), (0, sc(2, 1))]);
        assert!(f.equals_as_functions(&g).unwrap());
        let a = uni(&[(4, sc(2, 1)), (3, sc(3, 0)), (0, sc(0, 1))]);
        let b = uni(&[(4, sc(0, 1)), (2, sc(2, 0)), (0, sc(0, 1))]);
        assert!(!a.equals_as_functions(&b).unwrap());
        assert!(f.equals_as_functions(&f).unwrap());
    }

    #[test]
    fn corner_roots_examples() {
        let f = uni(&[(2, sc(0, 1)), (1, sc(1, 2)), (0, sc(0, 1))]);
        assert_eq!(f.corner_roots().unwrap(), vec![rat_int(-1), rat_int(1)]);
        let g = uni(&[(2, sc(-2, 1)), (1, sc(0, 1)), (0, sc(1, 1))]);
        assert_eq!(g.corner_roots().unwrap(), vec![rat_int(1), rat_int(2)]);
        let m = uni(&[(3, sc(5, 1))]);
        assert!(m.corner_roots().unwrap().is_empty());
    }

    #[test]
    fn essential_part_examples() {
        // 4x^3 + 5x^2 + 6x + 6
        let f = uni(&[(3, sc(4, 1)), (2, sc(5, 1)), (1, sc(6, 1)), (0, sc(6, 1))]);
        let at0 = f.essential_part_at(&[rat_int(0)]).unwrap();
        assert_eq!(at0.terms, uni(&[(1, sc(6, 1)), (0, sc(6, 1))]).terms);
        let at1 = f.essential_part_at(&[rat_int(1)]).unwrap();
        assert_eq!(
            at1.terms,
            uni(&[(3, sc(4, 1)), (2, sc(5, 1)), (1, sc(6, 1))]).terms
        );
        let m = uni(&[(3, sc(5, 1))]);
        assert_eq!(m.essential_part_at(&[rat_int(7)]).unwrap().terms, m.terms);
    }

    #[test]
    fn primary_decompose_univariate() {
        let f = uni(&[(2, sc(0, 1)), (1, sc(1, 2)), (0, sc(2, 1))]);
        assert!(f.is_primary_at(&[rat_int(1)]).unwrap());
        let d = f.primary_decompose(&[rat_int(1)]).unwrap();
        assert_eq!(d.constant, rat_int(0));
        assert_eq!(d.layers[&MultiIndex::uni(2)], rat_int(1));
        assert_eq!(d.layers[&MultiIndex::uni(1)], rat_int(2));
        assert_eq!(d.layers[&MultiIndex::uni(0)], rat_int(1));
    }

    #[test]
    fn primary_decompose_bivariate() {
        let f = EltPoly::from_terms(
            2,
            vec![
                (MultiIndex(vec![2, 0]), sc(0, 1)),
                (MultiIndex(vec![1, 1]), sc(0, 2)),
                (MultiIndex(vec![0, 2]), sc(0, 1)),
            ],
        )
        .unwrap();
        let d = f.primary_decompose(&[rat_int(0), rat_int(0)]).unwrap();
        assert_eq!(d.constant, rat_int(0));
        assert_eq!(d.layers[&MultiIndex(vec![1, 1])], rat_int(2));
    }

    #[test]
    fn not_primary_case() {
        let f = uni(&[(2, sc(0, 1)), (1, sc(0, 1)), (0, sc(2, 1))]);
        assert!(!f.is_primary_at(&[rat_int(0)]).unwrap());
        assert_eq!(
            f.primary_decompose(&[rat_int(0)]),
            Err(PolyError::NotPrimary)
        );
    }

    #[test]
    fn layer_profiles() {
        let f = uni(&[(2, sc(0, 1)), (1, sc(0, 1)), (0, EltScalar::finite(rat_int(0), rat(1, 4)))]);
        let p = f.layer_profile(&rat_int(0)).unwrap();
        assert_eq!(p.coefficients(), &[rat(1, 4), rat_int(1), rat_int(1)]);
        assert_eq!(p.eval(&rat(-1, 2)), rat_int(0));

        let g = uni(&[(2, sc(0, 1)), (1, sc(1, 2)), (0, sc(0, 1))]);
        let q = g.layer_profile(&rat_int(1)).unwrap();
        assert_eq!(q.coefficients(), &[rat_int(0), rat_int(2), rat_int(1)]);

        let c = uni(&[(0, sc(2, 1))]);
        assert_eq!(c.layer_profile(&rat_int(9)).unwrap().coefficients(), &[rat_int(1)]);
    }

    #[test]
    fn root_equivalence_weaker_than_equality() {
        let f = uni(&[(4, sc(2, 1)), (3, sc(3, 0)), (0, sc(0, 1))]);
        let g = uni(&[(4, sc(0, 1)), (2, sc(2, 0)), (0, sc(0, 1))]);
        assert!(f.root_equivalent(&g).unwrap());
        assert!(!f.equals_as_functions(&g).unwrap());
        assert!(f.root_equivalent(&f).unwrap());
        // x + 0 vs x + 1: roots {0} vs {1}
        let a = uni(&[(1, sc(0, 1)), (0, sc(0, 1))]);
        let b = uni(&[(1, sc(0, 1)), (0, sc(1, 1))]);
        assert!(!a.root_equivalent(&b).unwrap());
    }

    #[test]
    fn regularity() {
        assert!(uni(&[(2, sc(0, 1)), (1, sc(0, 1)), (0, sc(0, 1))]).is_regular());
        assert!(!uni(&[(4, sc(0, 1)), (2, sc(2, 0)), (0, sc(0, 1))]).is_regular());
        // a stored zero-layer tie monomial disappears, so the function is regular
        assert!(uni(&[(2, sc(0, 1)), (1, sc(2, 0)), (0, sc(4, 1))]).is_regular());
    }

    #[test]
    fn display_forms() {
        let f = uni(&[
            (5, sc(-7, 1)),
            (4, sc(-5, 1)),
            (3, sc(-3, 1)),
            (2, sc(-1, 1)),
            (1, sc(0, 2)),
            (0, sc(1, 1)),
        ]);
        assert_eq!(
            f.to_string(),
            "<-7:1>*x^5 + <-5:1>*x^4 + <-3:1>*x^3 + <-1:1>*x^2 + <0:2>*x + 1"
        );
        assert_eq!(EltPoly::zero(1).to_string(), "ninf");
        let g = uni(&[(1, sc(0, 1)), (0, sc(0, -1))]);
        assert_eq!(g.to_string(), "x + <0:-1>");
    }

    #[test]
    fn evaluation_commutes_with_product() {
        let f = uni(&[(2, sc(-2, 1)), (1, sc(0, 1)), (0, sc(1, 1))]);
        let g = uni(&[(3, sc(-5, 1)), (1, sc(-1, 1)), (0, sc(0, 1))]);
        let p = f.checked_mul(&g).unwrap();
        for t in -4..5 {
            for l in [-2, -1, 0, 1, 2, 3] {
                let point = pt1(t, l);
                let lhs = p.evaluate(&point).unwrap();
                let rhs = &f.evaluate(&point).unwrap() * &g.evaluate(&point).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }
}
