//! Sparse multivariate polynomials over the rationals with factorization by
//! exponent packing: substitute `x_j -> t^(D_1*...*D_{j-1})`, factor the
//! univariate image, and recombine subsets of its irreducible factors by
//! exact trial division.

use super::qpoly::{QPoly, RatPolyError};
use crate::poly::MultiIndex;
use crate::scalar::Rational;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Sub};

pub const TOTAL_DEGREE_BOUND: u32 = 8;

/// Nonzero coefficients indexed by exponent vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMPoly {
    arity: usize,
    terms: BTreeMap<MultiIndex, Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMFactorization {
    pub unit: Rational,
    pub factors: Vec<(QMPoly, u32)>,
}

impl QMFactorization {
    pub fn expand(&self, arity: usize) -> QMPoly {
        let mut acc = QMPoly::constant(arity, self.unit.clone());
        for (f, m) in &self.factors {
            for _ in 0..*m {
                acc = &acc * f;
            }
        }
        acc
    }
}

impl QMPoly {
    pub fn zero(arity: usize) -> Self {
        QMPoly { arity, terms: BTreeMap::new() }
    }

    pub fn constant(arity: usize, c: Rational) -> Self {
        let mut p = QMPoly::zero(arity);
        if !c.is_zero() {
            p.terms.insert(MultiIndex::zero(arity), c);
        }
        p
    }

    pub fn from_terms<I>(arity: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (MultiIndex, Rational)>,
    {
        let mut map: BTreeMap<MultiIndex, Rational> = BTreeMap::new();
        for (idx, c) in terms {
            assert_eq!(idx.arity(), arity, "index arity mismatch");
            let entry = map.entry(idx).or_insert_with(Rational::zero);
            *entry += c;
        }
        map.retain(|_, c| !c.is_zero());
        QMPoly { arity, terms: map }
    }

    pub fn var(arity: usize, j: usize) -> Self {
        let mut idx = vec![0u32; arity];
        idx[j] = 1;
        QMPoly::from_terms(arity, vec![(MultiIndex(idx), Rational::one())])
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn terms(&self) -> &BTreeMap<MultiIndex, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|i| i.is_zero())
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|i| i.total_degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, j: usize) -> u32 {
        self.terms.keys().map(|i| i.0[j]).max().unwrap_or(0)
    }

    /// Leading term in lexicographic order.
    pub fn leading(&self) -> Option<(&MultiIndex, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn scale(&self, by: &Rational) -> QMPoly {
        if by.is_zero() {
            return QMPoly::zero(self.arity);
        }
        QMPoly {
            arity: self.arity,
            terms: self.terms.iter().map(|(i, c)| (i.clone(), c * by)).collect(),
        }
    }

    fn mul_term(&self, idx: &MultiIndex, c: &Rational) -> QMPoly {
        QMPoly {
            arity: self.arity,
            terms: self.terms.iter().map(|(i, v)| (i.add(idx), v * c)).collect(),
        }
    }

    /// Exact division test via lexicographic leading-term reduction.
    pub fn try_divide(&self, divisor: &QMPoly) -> Option<QMPoly> {
        let (dlead, dc) = divisor.leading()?;
        let mut rem = self.clone();
        let mut quot = QMPoly::zero(self.arity);
        while !rem.is_zero() {
            let (rlead, rc) = rem.leading().unwrap();
            let shift = rlead.checked_sub(dlead)?;
            let c = rc / dc;
            let term = QMPoly::from_terms(self.arity, vec![(shift.clone(), c.clone())]);
            rem = &rem - &divisor.mul_term(&shift, &c);
            quot = &quot + &term;
        }
        Some(quot)
    }

    pub fn divides(&self, other: &QMPoly) -> bool {
        other.try_divide(self).is_some()
    }

    /// Componentwise minimum exponent over the support.
    fn monomial_content(&self) -> MultiIndex {
        let mut min = match self.terms.keys().next() {
            None => return MultiIndex::zero(self.arity),
            Some(i) => i.0.clone(),
        };
        for idx in self.terms.keys() {
            for (m, &e) in min.iter_mut().zip(&idx.0) {
                *m = (*m).min(e);
            }
        }
        MultiIndex(min)
    }

    fn shift_down(&self, m: &MultiIndex) -> QMPoly {
        QMPoly {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .map(|(i, c)| (i.checked_sub(m).unwrap(), c.clone()))
                .collect(),
        }
    }

    /// Integer-primitive form with positive lexicographic leading
    /// coefficient; returns the rational multiplier taken out.
    fn primitive(&self) -> (Rational, QMPoly) {
        if self.is_zero() {
            return (Rational::one(), self.clone());
        }
        let mut denom_lcm = BigInt::one();
        for c in self.terms.values() {
            denom_lcm = denom_lcm.lcm(c.denom());
        }
        let mut gcd = BigInt::zero();
        for c in self.terms.values() {
            gcd = gcd.gcd(&(c.numer() * (&denom_lcm / c.denom())));
        }
        let mut scale = Rational::new(gcd, denom_lcm);
        if self.leading().unwrap().1.is_negative() {
            scale = -scale;
        }
        let inv = scale.recip();
        (scale, self.scale(&inv))
    }

    /// Projects a polynomial supported on a single variable to a univariate
    /// dense polynomial, if possible.
    pub fn to_univariate(&self) -> Option<(usize, QPoly)> {
        self.as_univariate()
    }

    fn as_univariate(&self) -> Option<(usize, QPoly)> {
        let mut used: Option<usize> = None;
        for idx in self.terms.keys() {
            for (j, &e) in idx.0.iter().enumerate() {
                if e > 0 {
                    match used {
                        None => used = Some(j),
                        Some(u) if u == j => {}
                        _ => return None,
                    }
                }
            }
        }
        let j = used?;
        let deg = self.degree_in(j) as usize;
        let mut coeffs = vec![Rational::zero(); deg + 1];
        for (idx, c) in &self.terms {
            coeffs[idx.0[j] as usize] = c.clone();
        }
        Some((j, QPoly::new(coeffs)))
    }

    fn from_univariate(arity: usize, j: usize, f: &QPoly) -> QMPoly {
        QMPoly::from_terms(
            arity,
            f.coeffs().iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(e, c)| {
                let mut idx = vec![0u32; arity];
                idx[j] = e as u32;
                (MultiIndex(idx), c.clone())
            }),
        )
    }

    /// Complete irreducible factorization over the rationals, for total
    /// degree up to [`TOTAL_DEGREE_BOUND`].
    pub fn factor(&self) -> Result<QMFactorization, RatPolyError> {
        factor_multi(self)
    }
}

impl Add for &QMPoly {
    type Output = QMPoly;
    fn add(self, rhs: &QMPoly) -> QMPoly {
        QMPoly::from_terms(
            self.arity,
            self.terms
                .iter()
                .chain(rhs.terms.iter())
                .map(|(i, c)| (i.clone(), c.clone())),
        )
    }
}

impl Sub for &QMPoly {
    type Output = QMPoly;
    fn sub(self, rhs: &QMPoly) -> QMPoly {
        QMPoly::from_terms(
            self.arity,
            self.terms
                .iter()
                .map(|(i, c)| (i.clone(), c.clone()))
                .chain(rhs.terms.iter().map(|(i, c)| (i.clone(), -c))),
        )
    }
}

impl Mul for &QMPoly {
    type Output = QMPoly;
    fn mul(self, rhs: &QMPoly) -> QMPoly {
        let mut products = Vec::new();
        for (i, a) in &self.terms {
            for (j, b) in &rhs.terms {
                products.push((i.add(j), a * b));
            }
        }
        QMPoly::from_terms(self.arity, products)
    }
}

impl fmt::Display for QMPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use crate::scalar::rational_str;
        if self.is_zero() {
            return write!(f, "0");
        }
        let names = ["x", "y", "z", "w"];
        let mut first = true;
        for (idx, c) in self.terms.iter().rev() {
            let sign = if first {
                if c.is_negative() { "-" } else { "" }
            } else if c.is_negative() {
                " - "
            } else {
                " + "
            };
            let mag = c.abs();
            let mut vars = Vec::new();
            for (j, &e) in idx.0.iter().enumerate() {
                if e == 1 {
                    vars.push(names[j].to_string());
                } else if e > 1 {
                    vars.push(format!("{}^{}", names[j], e));
                }
            }
            let body = if vars.is_empty() {
                rational_str(&mag)
            } else if mag.is_one() {
                vars.join("*")
            } else {
                format!("{}*{}", rational_str(&mag), vars.join("*"))
            };
            write!(f, "{}{}", sign, body)?;
            first = false;
        }
        Ok(())
    }
}

/// Packs exponents with mixed radix `D_j = deg_j + 1`.
fn pack(idx: &MultiIndex, radices: &[u32]) -> usize {
    let mut out = 0usize;
    let mut mult = 1usize;
    for (e, d) in idx.0.iter().zip(radices) {
        out += (*e as usize) * mult;
        mult *= *d as usize;
    }
    out
}

fn unpack(mut packed: usize, radices: &[u32]) -> MultiIndex {
    let mut out = Vec::with_capacity(radices.len());
    for d in radices {
        out.push((packed % *d as usize) as u32);
        packed /= *d as usize;
    }
    debug_assert_eq!(packed, 0);
    MultiIndex(out)
}

fn factor_multi(f: &QMPoly) -> Result<QMFactorization, RatPolyError> {
    if f.is_zero() {
        return Err(RatPolyError::ZeroPolynomial);
    }
    if f.total_degree() > TOTAL_DEGREE_BOUND {
        return Err(RatPolyError::DegreeBoundExceeded);
    }
    let arity = f.arity();
    let mut factors: Vec<(QMPoly, u32)> = Vec::new();

    // monomial content first
    let content = f.monomial_content();
    let mut body = f.shift_down(&content);
    for (j, &e) in content.0.iter().enumerate() {
        if e > 0 {
            factors.push((QMPoly::var(arity, j), e));
        }
    }

    if body.is_constant() {
        return finish(f, factors);
    }
    if let Some((j, uni)) = body.as_univariate() {
        let fac = uni.factor()?;
        for (g, m) in fac.factors {
            factors.push((QMPoly::from_univariate(arity, j, &g), m));
        }
        return finish(f, factors);
    }

    let radices: Vec<u32> = (0..arity).map(|j| body.degree_in(j) + 1).collect();
    let packed_len = radices.iter().map(|&d| d as usize).product::<usize>();
    let mut coeffs = vec![Rational::zero(); packed_len];
    for (idx, c) in body.terms() {
        coeffs[pack(idx, &radices)] = c.clone();
    }
    let packed = QPoly::new(coeffs);
    let fac = packed.factor()?;
    // flatten the univariate factors with multiplicity
    let mut pieces: Vec<QPoly> = Vec::new();
    for (g, m) in fac.factors {
        for _ in 0..m {
            pieces.push(g.clone());
        }
    }

    body = body.primitive().1;
    let mut active: Vec<QPoly> = pieces;
    let mut size = 1usize;
    while 2 * size <= active.len() {
        let mut found = false;
        'combo: for combo in combinations_iter(active.len(), size) {
            let mut prod = QPoly::one();
            for &i in &combo {
                prod = &prod * &active[i];
            }
            let cand = unpack_poly(&prod, arity, &radices);
            let (_, cand) = cand.primitive();
            if cand.is_constant() {
                continue 'combo;
            }
            if let Some(quot) = body.try_divide(&cand) {
                factors.push((cand, 1));
                body = quot.primitive().1;
                let mut keep = Vec::new();
                for (i, g) in active.into_iter().enumerate() {
                    if !combo.contains(&i) {
                        keep.push(g);
                    }
                }
                active = keep;
                found = true;
                break 'combo;
            }
        }
        if !found {
            size += 1;
        }
    }
    if !body.is_constant() {
        factors.push((body.primitive().1, 1));
    }
    finish(f, factors)
}

fn unpack_poly(f: &QPoly, arity: usize, radices: &[u32]) -> QMPoly {
    QMPoly::from_terms(
        arity,
        f.coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| (unpack(e, radices), c.clone())),
    )
}

fn combinations_iter(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Groups equal factors, sorts deterministically and computes the unit from
/// the lexicographic leading coefficients.
fn finish(input: &QMPoly, flat: Vec<(QMPoly, u32)>) -> Result<QMFactorization, RatPolyError> {
    let mut sorted = flat;
    sorted.sort_by(|a, b| {
        let ka = (a.0.total_degree(), format!("{}", a.0));
        let kb = (b.0.total_degree(), format!("{}", b.0));
        ka.cmp(&kb)
    });
    let mut merged: Vec<(QMPoly, u32)> = Vec::new();
    for (f, m) in sorted {
        match merged.last_mut() {
            Some((g, mm)) if *g == f => *mm += m,
            _ => merged.push((f, m)),
        }
    }
    let mut unit = input.leading().unwrap().1.clone();
    for (g, m) in &merged {
        unit /= g.leading().unwrap().1.pow(*m as i32);
    }
    let result = QMFactorization { unit, factors: merged };
    debug_assert_eq!(result.expand(input.arity()), *input);
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat_int;

    fn term(i: &[u32], n: i64) -> (MultiIndex, Rational) {
        (MultiIndex(i.to_vec()), rat_int(n))
    }

    fn qm(arity: usize, terms: &[(&[u32], i64)]) -> QMPoly {
        QMPoly::from_terms(arity, terms.iter().map(|(i, n)| term(i, *n)))
    }

    #[test]
    fn perfect_square() {
        // x^2 + 2xy + y^2 = (x + y)^2
        let f = qm(2, &[(&[2, 0], 1), (&[1, 1], 2), (&[0, 2], 1)]);
        let fac = f.factor().unwrap();
        assert_eq!(fac.unit, Rational::one());
        assert_eq!(fac.factors.len(), 1);
        assert_eq!(fac.factors[0].1, 2);
        assert_eq!(fac.factors[0].0, qm(2, &[(&[1, 0], 1), (&[0, 1], 1)]));
    }

    #[test]
    fn irreducible_quadratic_form() {
        let f = qm(2, &[(&[2, 0], 1), (&[1, 1], 1), (&[0, 2], 1)]);
        let fac = f.factor().unwrap();
        assert_eq!(fac.factors.len(), 1);
        assert_eq!(fac.factors[0].1, 1);
        assert_eq!(fac.factors[0].0, f);
    }

    #[test]
    fn distinct_linear_factors() {
        // 2x^2 + 3xy + y^2 = (2x + y)(x + y)
        let f = qm(2, &[(&[2, 0], 2), (&[1, 1], 3), (&[0, 2], 1)]);
        let fac = f.factor().unwrap();
        assert_eq!(fac.factors.len(), 2);
        assert_eq!(fac.expand(2), f);
        let strs: Vec<String> = fac.factors.iter().map(|(g, _)| g.to_string()).collect();
        assert!(strs.contains(&"x + y".to_string()));
        assert!(strs.contains(&"2*x + y".to_string()));
    }

    #[test]
    fn monomial_content_extracted() {
        // x*y*(x + y)
        let f = qm(2, &[(&[2, 1], 1), (&[1, 2], 1)]);
        let fac = f.factor().unwrap();
        assert_eq!(fac.expand(2), f);
        assert_eq!(fac.factors.len(), 3);
    }

    #[test]
    fn univariate_embedding() {
        // (y - 1)(y + 1) seen in two variables
        let f = qm(2, &[(&[0, 2], 1), (&[0, 0], -1)]);
        let fac = f.factor().unwrap();
        assert_eq!(fac.expand(2), f);
        assert_eq!(fac.factors.len(), 2);
    }

    #[test]
    fn degree_bound_enforced() {
        let f = qm(2, &[(&[9, 0], 1), (&[0, 0], 1)]);
        assert_eq!(f.factor(), Err(RatPolyError::DegreeBoundExceeded));
    }

    #[test]
    fn division_checks() {
        let f = qm(2, &[(&[2, 0], 1), (&[1, 1], 2), (&[0, 2], 1)]);
        let g = qm(2, &[(&[1, 0], 1), (&[0, 1], 1)]);
        assert_eq!(f.try_divide(&g).unwrap(), g);
        let h = qm(2, &[(&[1, 0], 1), (&[0, 0], 1)]);
        assert!(f.try_divide(&h).is_none());
    }
}
