//! The univariate factorization pipeline.

use super::{normalize_factor, Accumulator, FactorError, Factorization};
use crate::poly::{EltPoly, MultiIndex, PolyError};
use crate::ratpoly::{psi, psi_inverse, QPoly};
use crate::scalar::{EltScalar, Rational};
use num_traits::{One, Zero};

fn check_uni(f: &EltPoly) -> Result<(), FactorError> {
    if f.arity() == 1 {
        Ok(())
    } else {
        Err(PolyError::ArityMismatch { expected: 1, found: f.arity() }.into())
    }
}

/// Divides out the largest monomial dividing every term: returns the
/// componentwise minimal exponent and the shifted polynomial.
pub fn strip_monomial(f: &EltPoly) -> (MultiIndex, EltPoly) {
    let arity = f.arity();
    if f.is_neg_inf() {
        return (MultiIndex::zero(arity), f.clone());
    }
    let mut min = f.terms().keys().next().unwrap().0.clone();
    for idx in f.terms().keys() {
        for (m, &e) in min.iter_mut().zip(&idx.0) {
            *m = (*m).min(e);
        }
    }
    let m = MultiIndex(min);
    (m.clone(), f.shift_down(&m))
}

/// The raw two-sided split at exponent `k`: the lower part keeps every term
/// of degree at most `k`, the upper part is shifted down by `k` and scaled
/// so its constant term is the identity. Returns `(upper, lower)`.
fn split_at_index(canon: &EltPoly, k: u32) -> Option<(EltPoly, EltPoly)> {
    let ck = canon.coeff(&MultiIndex::uni(k))?.clone();
    let inv = ck.inv().ok()?;
    let lower = EltPoly::from_terms(
        1,
        canon
            .terms()
            .iter()
            .filter(|(i, _)| i.0[0] <= k)
            .map(|(i, c)| (i.clone(), c.clone())),
    )
    .unwrap()
    .canonicalize();
    let upper = EltPoly::from_terms(
        1,
        canon
            .terms()
            .iter()
            .filter(|(i, _)| i.0[0] >= k)
            .map(|(i, c)| (MultiIndex::uni(i.0[0] - k), &inv * c)),
    )
    .unwrap()
    .canonicalize();
    Some((upper, lower))
}

/// Splits `f` at an essential middle monomial of nonzero layer whose big
/// and small roots differ. Returns `(g1, g2)` with `g1 * g2 = f`, the corner
/// roots of `g1` at least the big root, those of `g2` at most the small
/// root.
pub fn split_at_monomial(f: &EltPoly, k: u32) -> Result<(EltPoly, EltPoly), FactorError> {
    check_uni(f)?;
    let canon = f.canonicalize();
    if canon.constant_term().is_none() {
        return Err(FactorError::NoConstantTerm);
    }
    let idx = MultiIndex::uni(k);
    let coeff = canon.coeff(&idx).ok_or(PolyError::UnknownMonomial)?;
    if coeff.has_zero_layer() {
        return Err(FactorError::MonomialNotEligible);
    }
    let (_, dominates) = canon.attains_and_dominates(&idx)?;
    if !dominates {
        return Err(FactorError::MonomialNotEligible);
    }
    let ties = canon.tie_roots(&idx)?;
    if ties.len() < 2 {
        return Err(FactorError::MonomialNotEligible);
    }
    let (upper, lower) = split_at_index(&canon, k).ok_or(FactorError::MonomialNotEligible)?;
    debug_assert_eq!(
        upper.checked_mul(&lower).unwrap().terms(),
        canon.terms(),
        "split product mismatch"
    );
    Ok((upper, lower))
}

/// A factorization into a monomial part, a constant and primary pieces
/// ordered by their corner roots (ascending). All pieces except the last
/// are normalized to leading coefficient `<0:1>`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimaryFactorization {
    pub monomial: MultiIndex,
    pub prefactor: EltScalar,
    pub primaries: Vec<(EltPoly, Rational)>,
}

impl PrimaryFactorization {
    pub fn expand(&self) -> EltPoly {
        let mut acc = EltPoly::constant(1, self.prefactor.clone());
        acc = acc.shift_up(&self.monomial);
        for (g, _) in &self.primaries {
            acc = acc.checked_mul(g).expect("arity");
        }
        acc.canonicalize()
    }
}

/// Splits a univariate polynomial into primary pieces, one per corner root,
/// by taking essential parts. Fails when a zero-layer separator coefficient
/// makes the chained normalization impossible.
pub fn factor_into_primaries(f: &EltPoly) -> Result<PrimaryFactorization, FactorError> {
    check_uni(f)?;
    let canon = f.canonicalize();
    if canon.is_neg_inf() {
        return Err(FactorError::NegInfPolynomial);
    }
    let (monomial, body) = strip_monomial(&canon);
    if body.is_constant() {
        return Ok(PrimaryFactorization {
            monomial,
            prefactor: body.constant_term().unwrap().clone(),
            primaries: Vec::new(),
        });
    }
    let roots = body.corner_roots()?;
    let mut primaries = Vec::new();
    for (i, a) in roots.iter().enumerate() {
        let part = body.essential_part_at(std::slice::from_ref(a))?;
        let (_, mut piece) = strip_monomial(&part);
        if i + 1 < roots.len() {
            let lead = piece.coeff(piece.leading_index().unwrap()).unwrap().clone();
            let inv = lead.inv().map_err(|_| FactorError::LayerZeroSeparator)?;
            piece = piece.scale(&inv);
        }
        primaries.push((piece.canonicalize(), a.clone()));
    }
    let result = PrimaryFactorization {
        monomial,
        prefactor: EltScalar::one(),
        primaries,
    };
    if result.expand().terms() != canon.terms() {
        return Err(FactorError::LayerZeroSeparator);
    }
    Ok(result)
}

/// The degenerate linear factor `<0:0>*x + <a:1>` that is primary at `a`.
fn zero_layer_lead_factor(a: &Rational) -> EltPoly {
    EltPoly::from_terms(
        1,
        vec![
            (MultiIndex::uni(1), EltScalar::finite(Rational::zero(), Rational::zero())),
            (MultiIndex::uni(0), EltScalar::finite(a.clone(), Rational::one())),
        ],
    )
    .unwrap()
    .canonicalize()
}

/// The degenerate linear factor `x + <a:0>`.
fn zero_layer_const_factor(a: &Rational) -> EltPoly {
    EltPoly::from_terms(
        1,
        vec![
            (MultiIndex::uni(1), EltScalar::one()),
            (MultiIndex::uni(0), EltScalar::finite(a.clone(), Rational::zero())),
        ],
    )
    .unwrap()
    .canonicalize()
}

fn remove_index(f: &EltPoly, idx: &MultiIndex) -> EltPoly {
    EltPoly::from_terms(
        1,
        f.terms()
            .iter()
            .filter(|(i, _)| *i != idx)
            .map(|(i, c)| (i.clone(), c.clone())),
    )
    .unwrap()
    .canonicalize()
}

/// Factors a piece that is primary at `a` into the accumulator: peels
/// zero-layer leading and constant factors, then transports the regular
/// remainder to a rational polynomial and factors it there.
fn factor_primary_into(acc: &mut Accumulator, piece: &EltPoly, a: &Rational) -> Result<(), FactorError> {
    let (m, mut work) = strip_monomial(&piece.canonicalize());
    acc.monomial = acc.monomial.add(&m);
    if work.is_constant() {
        acc.scale(work.constant_term().unwrap());
        return Ok(());
    }

    // zero-layer leading monomial: peel copies of <0:0>x + a
    let lead_idx = work.leading_index().unwrap().clone();
    if work.coeff(&lead_idx).unwrap().has_zero_layer() && work.num_terms() >= 2 {
        let rest = remove_index(&work, &lead_idx);
        let mult = lead_idx.0[0] - rest.leading_index().unwrap().0[0];
        acc.push(zero_layer_lead_factor(a), mult);
        let shift = -(a * Rational::from_integer(mult.into()));
        acc.scale(&EltScalar::finite(shift, Rational::one()));
        work = rest;
    }
    if work.is_constant() {
        acc.scale(work.constant_term().unwrap());
        return Ok(());
    }

    // zero-layer constant: peel copies of x + <a:0>
    if work
        .constant_term()
        .map_or(false, |c| c.has_zero_layer())
        && work.num_terms() >= 2
    {
        let rest = remove_index(&work, &MultiIndex::uni(0));
        let (k, shifted) = strip_monomial(&rest);
        acc.push(zero_layer_const_factor(a), k.0[0]);
        work = shifted;
    }
    if work.is_constant() {
        acc.scale(work.constant_term().unwrap());
        return Ok(());
    }

    // the remainder is regular primary: factor its layer polynomial
    let (q, c) = psi(&work, std::slice::from_ref(a))?;
    let uni = q.to_univariate().expect("constant layer polynomial").1;
    let qfac = uni.factor()?;
    acc.scale(&EltScalar::finite(c, qfac.unit.clone()));
    for (g, mult) in &qfac.factors {
        let back = psi_inverse(&qpoly_to_qm(g), std::slice::from_ref(a), &Rational::zero());
        let (norm, extracted) = normalize_factor(&back);
        acc.scale(&extracted.pow(*mult));
        debug_assert!(!norm.is_constant(), "monomial image in layer factorization");
        acc.push(norm, *mult);
    }
    Ok(())
}

fn qpoly_to_qm(f: &QPoly) -> crate::ratpoly::QMPoly {
    crate::ratpoly::QMPoly::from_terms(
        1,
        f.coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| (MultiIndex::uni(e as u32), c.clone())),
    )
}

/// Factors a polynomial primary at `a` into irreducibles; always unique.
pub fn factor_primary(f: &EltPoly, a: &Rational) -> Result<Factorization, FactorError> {
    check_uni(f)?;
    let canon = f.canonicalize();
    if canon.is_neg_inf() {
        return Err(FactorError::NegInfPolynomial);
    }
    if !canon.is_primary_at(std::slice::from_ref(a))? {
        return Err(FactorError::NotPrimary);
    }
    let mut acc = Accumulator::new(1);
    factor_primary_into(&mut acc, &canon, a)?;
    let fac = acc.finish(true);
    debug_assert!(super::verify_factorization(&canon, &fac));
    Ok(fac)
}

/// Candidate split exponents ordered by the smallest corner root at which
/// the monomial ties, then by exponent.
fn split_candidates(piece: &EltPoly) -> Vec<u32> {
    let deg = piece.degree_uni().unwrap();
    let mut cands: Vec<(Rational, u32)> = Vec::new();
    for (idx, coeff) in piece.terms() {
        let e = idx.0[0];
        if e == 0 || e == deg || coeff.has_zero_layer() {
            continue;
        }
        let ties = piece.tie_roots(idx).unwrap();
        if let Some(first) = ties.first() {
            cands.push((first.clone(), e));
        }
    }
    cands.sort();
    cands.into_iter().map(|(_, e)| e).collect()
}

/// Tries the two-sided split at each candidate exponent, keeping the first
/// one whose product reproduces the piece exactly.
fn try_verified_split(piece: &EltPoly) -> Option<(EltPoly, EltPoly)> {
    for k in split_candidates(piece) {
        if let Some((upper, lower)) = split_at_index(piece, k) {
            if upper.degree_uni() == Some(0) || lower.degree_uni() == Some(0) {
                continue;
            }
            let prod = upper.checked_mul(&lower).unwrap();
            if prod.terms() == piece.terms() {
                return Some((upper, lower));
            }
        }
    }
    None
}

/// Peels `<0:0>x + a_top` off a non-primary piece with a zero-layer leading
/// coefficient.
fn try_lead_peel(piece: &EltPoly) -> Option<(EltPoly, EltPoly)> {
    let lead_idx = piece.leading_index()?.clone();
    let lead = piece.coeff(&lead_idx)?;
    if !lead.has_zero_layer() {
        return None;
    }
    let roots = piece.corner_roots().ok()?;
    let a_top = roots.last()?.clone();
    let n = lead_idx.0[0];
    let shifted = remove_index(piece, &lead_idx)
        .scale(&EltScalar::finite(-a_top.clone(), Rational::one()));
    let g = EltPoly::from_terms(
        1,
        shifted
            .terms()
            .iter()
            .map(|(i, c)| (i.clone(), c.clone()))
            .chain(std::iter::once((
                MultiIndex::uni(n - 1),
                EltScalar::finite(lead.tangible().unwrap().clone(), Rational::zero()),
            ))),
    )
    .unwrap()
    .canonicalize();
    let factor = zero_layer_lead_factor(&a_top);
    let prod = factor.checked_mul(&g).unwrap();
    if prod.terms() == piece.terms() {
        Some((factor, g))
    } else {
        None
    }
}

/// Peels `x + <a_bottom:0>` off a non-primary piece with a zero-layer
/// constant, via coefficient reversal.
fn try_const_peel(piece: &EltPoly) -> Option<(EltPoly, EltScalar, EltPoly)> {
    let constant = piece.constant_term()?;
    if !constant.has_zero_layer() {
        return None;
    }
    let rev = piece.reverse_uni().canonicalize();
    let (rev_factor, rev_g) = try_lead_peel(&rev)?;
    debug_assert_eq!(rev_factor.degree_uni(), Some(1));
    let g = rev_g.reverse_uni().canonicalize();
    let roots = piece.corner_roots().ok()?;
    let a_bottom = roots.first()?.clone();
    let factor = zero_layer_const_factor(&a_bottom);
    let prefactor = EltScalar::finite(-a_bottom, Rational::one());
    let check = factor
        .checked_mul(&g)
        .unwrap()
        .scale(&prefactor)
        .canonicalize();
    if check.terms() == piece.terms() {
        Some((factor, prefactor, g))
    } else {
        None
    }
}

/// Decides reducibility of a three-monomial piece with a zero-layer middle
/// by trying every exponent split of a product of two such shapes; the
/// tangibles of the candidate factors are forced by the corner roots.
fn try_three_monomial_split(piece: &EltPoly) -> Option<(EltScalar, EltPoly, EltPoly)> {
    if piece.num_terms() != 3 {
        return None;
    }
    let (norm, extracted) = normalize_factor(piece);
    let exps: Vec<u32> = norm.terms().keys().map(|i| i.0[0]).collect();
    let (e0, k, n) = (exps[0], exps[1], exps[2]);
    if e0 != 0 {
        return None;
    }
    let middle = norm.coeff(&MultiIndex::uni(k)).unwrap();
    let constant = norm.coeff(&MultiIndex::uni(0)).unwrap();
    let lead = norm.coeff(&MultiIndex::uni(n)).unwrap();
    if !middle.has_zero_layer() || constant.has_zero_layer() || lead.has_zero_layer() {
        return None;
    }
    let roots = norm.corner_roots().ok()?;
    if roots.len() != 2 {
        return None;
    }
    let (x_lo, x_hi) = (roots[0].clone(), roots[1].clone());
    let s_const = constant.layer();

    for n1 in 1..n {
        let n2 = n - n1;
        for k1 in 1..n1 {
            if k <= k1 {
                continue;
            }
            let k2 = k - k1;
            if k2 < 1 || k2 >= n2 {
                continue;
            }
            let build = |nn: u32, kk: u32, const_layer: Rational| -> EltPoly {
                let b = &x_hi * Rational::from_integer((nn - kk).into());
                let c = &b + &x_lo * Rational::from_integer(kk.into());
                EltPoly::from_terms(
                    1,
                    vec![
                        (MultiIndex::uni(nn), EltScalar::one()),
                        (MultiIndex::uni(kk), EltScalar::finite(b, Rational::zero())),
                        (MultiIndex::uni(0), EltScalar::finite(c, const_layer)),
                    ],
                )
                .unwrap()
                .canonicalize()
            };
            let g = build(n1, k1, Rational::one());
            let h = build(n2, k2, s_const.clone());
            let prod = g.checked_mul(&h).unwrap();
            if prod.terms() == norm.terms() {
                return Some((extracted, g, h));
            }
        }
    }
    None
}

/// The split for pieces with three or more corner roots whose middles all
/// have layer zero: divide out a two-monomial factor carrying the second
/// smallest positive-exponent tie.
fn try_all_essential_split(piece: &EltPoly) -> Option<(EltPoly, EltPoly)> {
    if piece.num_terms() < 4 {
        return None;
    }
    let exps: Vec<u32> = piece.terms().keys().map(|i| i.0[0]).collect();
    if exps[0] != 0 {
        return None;
    }
    let (m3, m2, m1) = (exps[1], exps[2], exps[3]);
    let b3 = piece.coeff(&MultiIndex::uni(m3)).unwrap().clone();
    let b2 = piece.coeff(&MultiIndex::uni(m2)).unwrap().clone();
    let delta = m2 - m3;
    let t32 = b3.tangible().unwrap() - b2.tangible().unwrap();
    let u = EltScalar::finite(t32.clone(), Rational::one());
    let mut first_terms: Vec<(MultiIndex, EltScalar)> = piece
        .terms()
        .iter()
        .filter(|(i, _)| i.0[0] >= m1)
        .map(|(i, c)| (MultiIndex::uni(i.0[0] - delta), &u * c))
        .collect();
    first_terms.push((MultiIndex::uni(m3), b3.clone()));
    first_terms.push((MultiIndex::uni(0), piece.constant_term().unwrap().clone()));
    let first = EltPoly::from_terms(1, first_terms).unwrap().canonicalize();
    let second = EltPoly::from_terms(
        1,
        vec![
            (MultiIndex::uni(delta), EltScalar::finite(-t32, Rational::one())),
            (MultiIndex::uni(0), EltScalar::one()),
        ],
    )
    .unwrap()
    .canonicalize();
    let prod = first.checked_mul(&second).unwrap();
    if prod.terms() == piece.terms() {
        Some((first, second))
    } else {
        None
    }
}

/// Complete factorization of a univariate polynomial. The expansion of the
/// result reproduces the canonical input exactly; `unique` is set when the
/// input is regular or primary, the cases with unique factorization.
pub fn factor_univariate(f: &EltPoly) -> Result<Factorization, FactorError> {
    check_uni(f)?;
    let canon = f.canonicalize();
    if canon.is_neg_inf() {
        return Ok(Factorization {
            prefactor: EltScalar::neg_inf(),
            monomial_prefactor: MultiIndex::zero(1),
            factors: Vec::new(),
            unique: true,
        });
    }
    let (m, body) = strip_monomial(&canon);
    let unique = canon.is_regular() || body.corner_roots()?.len() <= 1;
    let mut acc = Accumulator::new(1);
    acc.monomial = m;
    let mut queue: Vec<EltPoly> = vec![body];
    while let Some(piece) = queue.pop() {
        let piece = piece.canonicalize();
        if piece.is_constant() {
            acc.scale(piece.constant_term().expect("ninf piece"));
            continue;
        }
        let (mm, piece) = strip_monomial(&piece);
        acc.monomial = acc.monomial.add(&mm);
        if piece.is_constant() {
            acc.scale(piece.constant_term().unwrap());
            continue;
        }
        let roots = piece.corner_roots()?;
        if roots.len() <= 1 {
            factor_primary_into(&mut acc, &piece, &roots[0])?;
            continue;
        }
        if let Some((upper, lower)) = try_verified_split(&piece) {
            queue.push(lower);
            queue.push(upper);
            continue;
        }
        if let Some((factor, rest)) = try_lead_peel(&piece) {
            acc.push(factor, 1);
            queue.push(rest);
            continue;
        }
        if let Some((factor, prefactor, rest)) = try_const_peel(&piece) {
            acc.push(factor, 1);
            acc.scale(&prefactor);
            queue.push(rest);
            continue;
        }
        if let Some((extracted, g, h)) = try_three_monomial_split(&piece) {
            acc.scale(&extracted);
            queue.push(g);
            queue.push(h);
            continue;
        }
        if let Some((first, second)) = try_all_essential_split(&piece) {
            queue.push(first);
            queue.push(second);
            continue;
        }
        // irreducible piece
        let (norm, extracted) = normalize_factor(&piece);
        acc.scale(&extracted);
        acc.push(norm, 1);
    }
    let fac = acc.finish(unique);
    debug_assert!(super::verify_factorization(&canon, &fac), "expansion mismatch");
    Ok(fac)
}

/// Decides irreducibility: linear monomials and constants-free primaries
/// with irreducible layer polynomials, plus the non-primary three-monomial
/// shapes with a zero-layer middle that admit no product split.
pub fn is_irreducible_univariate(f: &EltPoly) -> Result<bool, FactorError> {
    check_uni(f)?;
    let canon = f.canonicalize();
    if canon.is_neg_inf() || canon.is_constant() {
        return Ok(false);
    }
    if canon.num_terms() == 1 {
        return Ok(canon.leading_index().unwrap().total_degree() == 1);
    }
    let (m, body) = strip_monomial(&canon);
    if !m.is_zero() {
        return Ok(false);
    }
    let roots = body.corner_roots()?;
    if roots.len() <= 1 {
        let fac = factor_primary(&body, &roots[0])?;
        let total: u32 = fac.factors.iter().map(|(_, m)| *m).sum();
        return Ok(total == 1 && fac.monomial_prefactor.is_zero());
    }
    // non-primary: only the three-monomial zero-layer-middle shapes survive
    if body.num_terms() != 3 {
        return Ok(false);
    }
    let exps: Vec<u32> = body.terms().keys().map(|i| i.0[0]).collect();
    let (k, n) = (exps[1], exps[2]);
    let lead = body.coeff(&MultiIndex::uni(n)).unwrap();
    let middle = body.coeff(&MultiIndex::uni(k)).unwrap();
    let constant = body.coeff(&MultiIndex::uni(0)).unwrap();
    if !middle.has_zero_layer() || lead.has_zero_layer() || constant.has_zero_layer() {
        return Ok(false);
    }
    if k == 1 || k == n - 1 {
        return Ok(true);
    }
    Ok(try_three_monomial_split(&body).is_none())
}
