//! Exact feasibility of systems of linear inequalities over the rationals,
//! by Fourier-Motzkin elimination with strict/non-strict bookkeeping.

use crate::scalar::Rational;
use num_traits::{Signed, Zero};
use std::collections::BTreeMap;

/// `coeffs . x >= rhs`, or `coeffs . x > rhs` when `strict`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub rhs: Rational,
    pub strict: bool,
}

enum Reduced {
    Constraint(Constraint),
    Trivial,
    Infeasible,
}

/// Scales so the leading nonzero coefficient is +-1; detects constant rows.
fn reduce(mut c: Constraint) -> Reduced {
    match c.coeffs.iter().find(|q| !q.is_zero()) {
        None => {
            let sat = if c.strict {
                Rational::zero() > c.rhs
            } else {
                Rational::zero() >= c.rhs
            };
            if sat {
                Reduced::Trivial
            } else {
                Reduced::Infeasible
            }
        }
        Some(lead) => {
            let scale = lead.abs().recip();
            for q in &mut c.coeffs {
                *q *= &scale;
            }
            c.rhs *= &scale;
            Reduced::Constraint(c)
        }
    }
}

/// True iff the system has a rational solution.
pub fn feasible(constraints: Vec<Constraint>, nvars: usize) -> bool {
    // key: coefficient row; value: tightest (rhs, strict)
    let mut rows: BTreeMap<Vec<Rational>, (Rational, bool)> = BTreeMap::new();
    let insert = |rows: &mut BTreeMap<Vec<Rational>, (Rational, bool)>, c: Constraint| -> bool {
        match reduce(c) {
            Reduced::Trivial => true,
            Reduced::Infeasible => false,
            Reduced::Constraint(c) => {
                match rows.get_mut(&c.coeffs) {
                    Some((rhs, strict)) => {
                        if c.rhs > *rhs {
                            *rhs = c.rhs;
                            *strict = c.strict;
                        } else if c.rhs == *rhs {
                            *strict = *strict || c.strict;
                        }
                    }
                    None => {
                        rows.insert(c.coeffs, (c.rhs, c.strict));
                    }
                }
                true
            }
        }
    };

    for c in constraints {
        debug_assert_eq!(c.coeffs.len(), nvars);
        if !insert(&mut rows, c) {
            return false;
        }
    }

    for var in 0..nvars {
        let mut pos: Vec<Constraint> = Vec::new();
        let mut neg: Vec<Constraint> = Vec::new();
        let mut rest: BTreeMap<Vec<Rational>, (Rational, bool)> = BTreeMap::new();
        for (coeffs, (rhs, strict)) in rows {
            let c = Constraint { coeffs, rhs, strict };
            let v = &c.coeffs[var];
            if v.is_zero() {
                rest.insert(c.coeffs, (c.rhs, c.strict));
            } else if v.is_positive() {
                pos.push(normalize_on(c, var));
            } else {
                neg.push(normalize_on(c, var));
            }
        }
        rows = rest;
        for p in &pos {
            for n in &neg {
                let coeffs: Vec<Rational> = p
                    .coeffs
                    .iter()
                    .zip(&n.coeffs)
                    .map(|(a, b)| a + b)
                    .collect();
                let combined = Constraint {
                    coeffs,
                    rhs: &p.rhs + &n.rhs,
                    strict: p.strict || n.strict,
                };
                if !insert(&mut rows, combined) {
                    return false;
                }
            }
        }
    }
    true
}

fn normalize_on(mut c: Constraint, var: usize) -> Constraint {
    let scale = c.coeffs[var].abs().recip();
    for q in &mut c.coeffs {
        *q *= &scale;
    }
    c.rhs *= &scale;
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat_int;

    fn c(coeffs: &[i64], rhs: i64, strict: bool) -> Constraint {
        Constraint {
            coeffs: coeffs.iter().map(|&v| rat_int(v)).collect(),
            rhs: rat_int(rhs),
            strict,
        }
    }

    #[test]
    fn box_is_feasible() {
        assert!(feasible(vec![c(&[1, 0], 0, false), c(&[0, 1], 0, false)], 2));
    }

    #[test]
    fn contradictory_bounds() {
        // x >= 5 and -x >= -4 (x <= 4)
        assert!(!feasible(vec![c(&[1], 5, false), c(&[-1], -4, false)], 1));
    }

    #[test]
    fn strictness_matters() {
        // x >= 0 and -x >= 0 pins x = 0; adding x > 0 kills it
        assert!(feasible(vec![c(&[1], 0, false), c(&[-1], 0, false)], 1));
        assert!(!feasible(
            vec![c(&[1], 0, true), c(&[-1], 0, false)],
            1
        ));
    }

    #[test]
    fn middle_monomial_never_max() {
        // x - 5 >= 2x and x - 5 >= 0 is infeasible
        assert!(!feasible(vec![c(&[-1], 5, false), c(&[1], 5, false)], 1));
    }

    #[test]
    fn open_cone_in_two_vars() {
        // x > y, x > 0 is feasible
        assert!(feasible(vec![c(&[1, -1], 0, true), c(&[1, 0], 0, true)], 2));
    }
}
