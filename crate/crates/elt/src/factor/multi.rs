//! Multivariate primary factorization and the irreducible linear-form test.

use super::uni::strip_monomial;
use super::{normalize_factor, Accumulator, FactorError, Factorization};
use crate::poly::{EltPoly, MultiIndex};
use crate::ratpoly::{psi, psi_inverse};
use crate::scalar::{EltScalar, Rational};
use num_traits::Zero;

/// Solves for a tangible point at which every monomial of the canonical
/// form has the same value, if one exists: Gaussian elimination on the
/// pairwise difference equations.
pub fn find_primary_point(f: &EltPoly) -> Option<Vec<Rational>> {
    let canon = f.canonicalize();
    let n = canon.arity();
    let mut terms = canon.terms().iter();
    let (base_idx, base_coeff) = terms.next()?;
    let base_t = base_coeff.tangible().unwrap().clone();
    // rows: (I - I0) . a = t0 - tI
    let mut rows: Vec<(Vec<Rational>, Rational)> = Vec::new();
    for (idx, coeff) in terms {
        let coeffs: Vec<Rational> = idx
            .0
            .iter()
            .zip(&base_idx.0)
            .map(|(&a, &b)| Rational::from_integer((i64::from(a) - i64::from(b)).into()))
            .collect();
        rows.push((coeffs, &base_t - coeff.tangible().unwrap()));
    }
    // forward elimination
    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut reduced: Vec<(Vec<Rational>, Rational)> = Vec::new();
    for (mut coeffs, mut rhs) in rows {
        for (row, &col) in reduced.iter().zip(&pivot_cols) {
            if !coeffs[col].is_zero() {
                let factor = coeffs[col].clone();
                for j in 0..n {
                    let delta = &row.0[j] * &factor;
                    coeffs[j] -= delta;
                }
                rhs -= &row.1 * &factor;
            }
        }
        match coeffs.iter().position(|c| !c.is_zero()) {
            Some(col) => {
                let lead = coeffs[col].clone();
                for c in &mut coeffs {
                    *c /= &lead;
                }
                rhs /= &lead;
                pivot_cols.push(col);
                reduced.push((coeffs, rhs));
            }
            None => {
                if !rhs.is_zero() {
                    return None;
                }
            }
        }
    }
    // back substitution with free variables at zero
    let mut point = vec![Rational::zero(); n];
    for (row, &col) in reduced.iter().zip(&pivot_cols).collect::<Vec<_>>().into_iter().rev() {
        let mut v = row.1.clone();
        for j in 0..n {
            if j != col {
                v -= &row.0[j] * &point[j];
            }
        }
        point[col] = v;
    }
    Some(point)
}

/// Factors a regular polynomial that is primary at `point`, by carrying its
/// layer polynomial to the rationals and back. Always unique.
pub fn factor_primary_multivariate(
    f: &EltPoly,
    point: &[Rational],
) -> Result<Factorization, FactorError> {
    let canon = f.canonicalize();
    if canon.is_neg_inf() {
        return Err(FactorError::NegInfPolynomial);
    }
    if !canon.is_primary_at(point)? {
        return Err(FactorError::NotPrimary);
    }
    if !canon.is_regular() {
        return Err(FactorError::NotRegular);
    }
    let mut acc = Accumulator::new(canon.arity());
    let (m, work) = strip_monomial(&canon);
    acc.monomial = m;
    if work.is_constant() {
        acc.scale(work.constant_term().unwrap());
        let fac = acc.finish(true);
        return Ok(fac);
    }
    let (q, c) = psi(&work, point)?;
    let qfac = q.factor()?;
    acc.scale(&EltScalar::finite(c, qfac.unit.clone()));
    for (g, mult) in &qfac.factors {
        let back = psi_inverse(g, point, &Rational::zero());
        let (norm, extracted) = normalize_factor(&back);
        acc.scale(&extracted.pow(*mult));
        acc.push(norm, *mult);
    }
    let fac = acc.finish(true);
    debug_assert!(super::verify_factorization(&canon, &fac));
    Ok(fac)
}

/// True iff the canonical form matches `x_j + g(x_i)`: one variable appears
/// only as a lone monomial of degree one with a normalizable coefficient,
/// everything else lives in the other variable.
pub fn is_linear_form_irreducible(f: &EltPoly) -> Result<bool, FactorError> {
    if f.arity() != 2 {
        return Err(crate::poly::PolyError::ArityMismatch { expected: 2, found: f.arity() }.into());
    }
    let canon = f.canonicalize();
    if canon.num_terms() < 2 {
        return Ok(false);
    }
    'var: for j in 0..2 {
        let i = 1 - j;
        let mut lone: Option<&MultiIndex> = None;
        for idx in canon.terms().keys() {
            match idx.0[j] {
                0 => {}
                1 if idx.0[i] == 0 => {
                    if lone.is_some() {
                        continue 'var;
                    }
                    lone = Some(idx);
                }
                _ => continue 'var,
            }
        }
        if let Some(idx) = lone {
            let coeff = canon.coeff(idx).unwrap();
            if !coeff.has_zero_layer() && canon.num_terms() >= 2 {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factor::verify_factorization;
    use crate::scalar::rat_int;

    fn sc(t: i64, l: i64) -> EltScalar {
        EltScalar::from_ints(t, l)
    }

    fn biv(terms: &[((u32, u32), (i64, i64))]) -> EltPoly {
        EltPoly::from_terms(
            2,
            terms
                .iter()
                .map(|&((i, j), (t, l))| (MultiIndex(vec![i, j]), EltScalar::from_ints(t, l))),
        )
        .unwrap()
    }

    #[test]
    fn bivariate_square_factors() {
        // x^2 + <0:2>xy + y^2 = (x + y)^2 at the origin
        let f = biv(&[((2, 0), (0, 1)), ((1, 1), (0, 2)), ((0, 2), (0, 1))]);
        let fac = factor_primary_multivariate(&f, &[rat_int(0), rat_int(0)]).unwrap();
        assert!(fac.unique);
        assert!(verify_factorization(&f, &fac));
        assert_eq!(fac.factors.len(), 1);
        assert_eq!(fac.factors[0].1, 2);
        assert_eq!(
            fac.factors[0].0.terms(),
            biv(&[((1, 0), (0, 1)), ((0, 1), (0, 1))]).terms()
        );
    }

    #[test]
    fn bivariate_irreducible() {
        let f = biv(&[((2, 0), (0, 1)), ((1, 1), (0, 1)), ((0, 2), (0, 1))]);
        let fac = factor_primary_multivariate(&f, &[rat_int(0), rat_int(0)]).unwrap();
        assert_eq!(fac.factors.len(), 1);
        assert_eq!(fac.factors[0].1, 1);
        assert!(verify_factorization(&f, &fac));
    }

    #[test]
    fn layered_coefficients_factor() {
        // <0:2>x^2 + <0:3>xy + <0:1>y^2 = (<0:2>x + y)(x + y)
        let f = biv(&[((2, 0), (0, 2)), ((1, 1), (0, 3)), ((0, 2), (0, 1))]);
        let fac = factor_primary_multivariate(&f, &[rat_int(0), rat_int(0)]).unwrap();
        assert!(verify_factorization(&f, &fac));
        assert_eq!(fac.factors.len(), 2);
    }

    #[test]
    fn rejects_non_primary_and_non_regular() {
        let f = biv(&[((1, 0), (0, 1)), ((0, 1), (0, 1)), ((0, 0), (5, 1))]);
        assert_eq!(
            factor_primary_multivariate(&f, &[rat_int(0), rat_int(0)]),
            Err(FactorError::NotPrimary)
        );
        let g = biv(&[((2, 0), (0, 0)), ((1, 1), (0, 2)), ((0, 2), (0, 1))]);
        assert_eq!(
            factor_primary_multivariate(&g, &[rat_int(0), rat_int(0)]),
            Err(FactorError::NotRegular)
        );
    }

    #[test]
    fn primary_point_search() {
        let f = biv(&[((2, 0), (0, 1)), ((1, 1), (0, 2)), ((0, 2), (0, 1))]);
        let p = find_primary_point(&f).unwrap();
        assert!(f.is_primary_at(&p).unwrap());
        // x + y + 5 ties everything at (5, 5)
        let g = biv(&[((1, 0), (0, 1)), ((0, 1), (0, 1)), ((0, 0), (5, 1))]);
        let q = find_primary_point(&g).unwrap();
        assert_eq!(q, vec![rat_int(5), rat_int(5)]);
        // two corner roots: x^2 + <1:2>x + <0:1> has no common-value point
        let h = biv(&[((2, 0), (0, 1)), ((1, 0), (1, 2)), ((0, 0), (0, 1))]);
        assert!(find_primary_point(&h).is_none());
    }

    #[test]
    fn linear_form_detection() {
        // y + x + x^2 + (-1)x^3
        let f1 = biv(&[((0, 1), (0, 1)), ((1, 0), (0, 1)), ((2, 0), (0, 1)), ((3, 0), (-1, 1))]);
        assert!(is_linear_form_irreducible(&f1).unwrap());
        // y + 0 + x^2 + (-2)x^4
        let f2 = biv(&[((0, 1), (0, 1)), ((0, 0), (0, 1)), ((2, 0), (0, 1)), ((4, 0), (-2, 1))]);
        assert!(is_linear_form_irreducible(&f2).unwrap());
        // xy + 0 is not of the form
        let g = biv(&[((1, 1), (0, 1)), ((0, 0), (0, 1))]);
        assert!(!is_linear_form_irreducible(&g).unwrap());
        // x + y qualifies with g(x) = x
        let h = biv(&[((1, 0), (0, 1)), ((0, 1), (0, 1))]);
        assert!(is_linear_form_irreducible(&h).unwrap());
    }
}
