//! The layer-extraction map between polynomials that are primary at a point
//! and ordinary rational polynomials: a primary polynomial is determined by
//! its tangible normalization constant and the layers of its monomials, and
//! multiplication of primaries corresponds to rational multiplication of the
//! layer polynomials.

use super::multi::QMPoly;
use crate::poly::{EltPoly, PolyError};
use crate::scalar::{EltScalar, Rational};
use num_traits::Zero;

/// Extracts the layer polynomial and the tangible constant of a polynomial
/// primary at `point`. Zero layers produce absent coefficients.
pub fn psi(f: &EltPoly, point: &[Rational]) -> Result<(QMPoly, Rational), PolyError> {
    let decomp = f.primary_decompose(point)?;
    let q = QMPoly::from_terms(
        f.arity(),
        decomp
            .layers
            .iter()
            .filter(|(_, l)| !l.is_zero())
            .map(|(i, l)| (i.clone(), l.clone())),
    );
    Ok((q, decomp.constant))
}

/// Builds the regular polynomial primary at `point` whose layers are the
/// coefficients of `q` and whose tangible normalization is `c`: index `I`
/// receives the coefficient `<c + (I0 - I).point : q_I>` for the leading
/// index `I0`.
pub fn psi_inverse(q: &QMPoly, point: &[Rational], c: &Rational) -> EltPoly {
    let arity = q.arity();
    if q.is_zero() {
        return EltPoly::zero(arity);
    }
    let top = q.leading().unwrap().0.clone();
    let top_dot = top.dot(point);
    let terms = q.terms().iter().map(|(idx, layer)| {
        let tangible = c + &top_dot - idx.dot(point);
        (idx.clone(), EltScalar::finite(tangible, layer.clone()))
    });
    EltPoly::from_terms(arity, terms).unwrap().canonicalize()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::MultiIndex;
    use crate::scalar::{rat_int, EltScalar};

    fn sc(t: i64, l: i64) -> EltScalar {
        EltScalar::from_ints(t, l)
    }

    fn uni(terms: &[(u32, EltScalar)]) -> EltPoly {
        EltPoly::from_terms(1, terms.iter().map(|(e, c)| (MultiIndex::uni(*e), c.clone())))
            .unwrap()
    }

    #[test]
    fn quadratic_primary() {
        // x^2 + <1:2>x + <2:1> at 1 -> x^2 + 2x + 1, c = 0
        let f = uni(&[(2, sc(0, 1)), (1, sc(1, 2)), (0, sc(2, 1))]);
        let (q, c) = psi(&f, &[rat_int(1)]).unwrap();
        assert_eq!(c, rat_int(0));
        let expected = QMPoly::from_terms(
            1,
            vec![
                (MultiIndex::uni(2), rat_int(1)),
                (MultiIndex::uni(1), rat_int(2)),
                (MultiIndex::uni(0), rat_int(1)),
            ],
        );
        assert_eq!(q, expected);
        let back = psi_inverse(&q, &[rat_int(1)], &c);
        assert_eq!(back.terms(), f.terms());
    }

    #[test]
    fn zero_layer_lead_vanishes() {
        // <0:0>x + 0 at 0 maps to the constant 1
        let f = uni(&[(1, sc(0, 0)), (0, sc(0, 1))]);
        let (q, c) = psi(&f, &[rat_int(0)]).unwrap();
        assert_eq!(c, rat_int(0));
        assert_eq!(q, QMPoly::constant(1, rat_int(1)));
    }

    #[test]
    fn bivariate_square() {
        let f = EltPoly::from_terms(
            2,
            vec![
                (MultiIndex(vec![2, 0]), sc(0, 1)),
                (MultiIndex(vec![1, 1]), sc(0, 2)),
                (MultiIndex(vec![0, 2]), sc(0, 1)),
            ],
        )
        .unwrap();
        let (q, c) = psi(&f, &[rat_int(0), rat_int(0)]).unwrap();
        assert_eq!(c, rat_int(0));
        let expected = QMPoly::from_terms(
            2,
            vec![
                (MultiIndex(vec![2, 0]), rat_int(1)),
                (MultiIndex(vec![1, 1]), rat_int(2)),
                (MultiIndex(vec![0, 2]), rat_int(1)),
            ],
        );
        assert_eq!(q, expected);
    }

    #[test]
    fn inverse_examples() {
        // x^3 - 1 at 0 with c = 0 -> x^3 + <0:-1>
        let q = QMPoly::from_terms(
            1,
            vec![
                (MultiIndex::uni(3), rat_int(1)),
                (MultiIndex::uni(0), rat_int(-1)),
            ],
        );
        let f = psi_inverse(&q, &[rat_int(0)], &rat_int(0));
        assert_eq!(f.terms(), uni(&[(3, sc(0, 1)), (0, sc(0, -1))]).terms());

        // constant 1 with c = 5 -> <5:1>
        let one = QMPoly::constant(1, rat_int(1));
        let g = psi_inverse(&one, &[rat_int(7)], &rat_int(5));
        assert_eq!(g.terms(), uni(&[(0, sc(5, 1))]).terms());
    }

    #[test]
    fn psi_multiplicative_on_primaries() {
        let a = [rat_int(2)];
        let p = uni(&[(1, sc(0, 1)), (0, sc(2, 3))]); // primary at 2
        let q = uni(&[(2, sc(0, 2)), (1, sc(2, 1)), (0, sc(4, 5))]); // primary at 2
        let prod = p.checked_mul(&q).unwrap();
        let (pp, cp) = psi(&p, &a).unwrap();
        let (qq, cq) = psi(&q, &a).unwrap();
        let (rr, cr) = psi(&prod, &a).unwrap();
        assert_eq!(rr, &pp * &qq);
        assert_eq!(cr, cp + cq);
    }

    #[test]
    fn not_primary_rejected() {
        let f = uni(&[(2, sc(0, 1)), (0, sc(2, 1))]);
        assert_eq!(psi(&f, &[rat_int(0)]), Err(PolyError::NotPrimary));
    }
}
