//! Complete factorization of univariate rational polynomials: content and
//! primitive part, squarefree decomposition, factorization modulo a small
//! prime, linear Hensel lifting of the factor tree and subset recombination
//! against a coefficient bound.

use super::modp::{self, Fp, FpPoly};
use super::qpoly::{QFactorization, QPoly, RatPolyError};
use crate::scalar::Rational;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Integer polynomial, coefficients ascending, trimmed.
type ZPoly = Vec<BigInt>;

fn ztrim(mut f: ZPoly) -> ZPoly {
    while f.last().map_or(false, |c| c.is_zero()) {
        f.pop();
    }
    f
}

fn zdeg(f: &ZPoly) -> usize {
    debug_assert!(!f.is_empty());
    f.len() - 1
}

fn zmul(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    ztrim(out)
}

fn zsub(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let len = a.len().max(b.len());
    ztrim(
        (0..len)
            .map(|i| {
                a.get(i).cloned().unwrap_or_else(BigInt::zero)
                    - b.get(i).cloned().unwrap_or_else(BigInt::zero)
            })
            .collect(),
    )
}

fn zmod(f: &ZPoly, m: &BigInt) -> ZPoly {
    ztrim(f.iter().map(|c| c.mod_floor(m)).collect())
}

/// Symmetric representative in `(-m/2, m/2]`.
fn zmod_symmetric(f: &ZPoly, m: &BigInt) -> ZPoly {
    let half = m / 2;
    ztrim(
        f.iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

fn to_fp(f: &ZPoly, fp: Fp) -> FpPoly {
    let p = BigInt::from(fp.p);
    modp::trim(
        f.iter()
            .map(|c| {
                let r = c.mod_floor(&p);
                r.to_u64_digits().1.first().copied().unwrap_or(0)
            })
            .collect(),
    )
}

fn fp_to_z(f: &FpPoly) -> ZPoly {
    f.iter().map(|&c| BigInt::from(c)).collect()
}

fn content(f: &ZPoly) -> BigInt {
    let mut g = BigInt::zero();
    for c in f {
        g = g.gcd(c);
    }
    g
}

fn primitive_part(f: &ZPoly) -> (BigInt, ZPoly) {
    let mut c = content(f);
    if c.is_zero() {
        return (BigInt::one(), Vec::new());
    }
    if f.last().unwrap().is_negative() {
        c = -c;
    }
    (c.clone(), f.iter().map(|v| v / &c).collect())
}

fn modinv(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(m)
}

/// One linear lifting step: given `f = a*b (mod p^k)` with `lc(a) = lc(f)`
/// exactly and `b` monic, and Bezout data `s*a + t*b = 1 (mod p)`, returns
/// the corrected pair modulo `p^(k+1)`.
#[allow(clippy::too_many_arguments)]
fn lift_step(
    f: &ZPoly,
    a: &ZPoly,
    b: &ZPoly,
    s: &FpPoly,
    t: &FpPoly,
    fp: Fp,
    pk: &BigInt,
    pk1: &BigInt,
) -> (ZPoly, ZPoly) {
    let e = zsub(f, &zmul(a, b));
    let e_over: ZPoly = e.iter().map(|c| c / pk).collect();
    let e_p = to_fp(&ztrim(e_over), fp);
    if e_p.is_empty() {
        return (zmod_keep_lc(a, pk1), zmod_keep_lc(b, pk1));
    }
    // solve da*b + a*db = e (mod p) with deg db < deg b
    let se = modp::mul(fp, s, &e_p);
    let b_p = to_fp(b, fp);
    let a_p = to_fp(a, fp);
    let (q, db) = modp::divrem(fp, &se, &b_p);
    let da = modp::add(fp, &modp::mul(fp, t, &e_p), &modp::mul(fp, &q, &a_p));
    let mut a1 = zmod(&zadd_scaled(a, &fp_to_z(&da), pk), pk1);
    let b1 = zadd_scaled(b, &fp_to_z(&db), pk);
    // keep the exact integer leading coefficient on the `a` side
    let lc = f.last().unwrap().clone();
    fix_lc(&mut a1, zdeg(a), lc);
    let mut b1 = zmod(&b1, pk1);
    fix_lc(&mut b1, zdeg(b), BigInt::one());
    (a1, b1)
}

fn zadd_scaled(base: &ZPoly, delta: &ZPoly, scale: &BigInt) -> ZPoly {
    let len = base.len().max(delta.len());
    ztrim(
        (0..len)
            .map(|i| {
                base.get(i).cloned().unwrap_or_else(BigInt::zero)
                    + delta.get(i).cloned().unwrap_or_else(BigInt::zero) * scale
            })
            .collect(),
    )
}

fn fix_lc(f: &mut ZPoly, deg: usize, lc: BigInt) {
    f.resize(deg + 1, BigInt::zero());
    f[deg] = lc;
    while f.last().map_or(false, |c| c.is_zero()) {
        f.pop();
    }
}

/// Reduces all coefficients except the exact leading one.
fn zmod_keep_lc(f: &ZPoly, m: &BigInt) -> ZPoly {
    let mut out = zmod(f, m);
    let deg = zdeg(f);
    fix_lc(&mut out, deg, f.last().unwrap().clone());
    out
}

/// Lifts `f = lc(f) * prod(gs) (mod p)` to monic factors modulo `p^k`.
fn hensel_tree(f: &ZPoly, gs: &[FpPoly], fp: Fp, k: u32) -> Vec<ZPoly> {
    let p = BigInt::from(fp.p);
    let pk = p.pow(k);
    if gs.len() == 1 {
        let lc = f.last().unwrap().mod_floor(&pk);
        let inv = modinv(&lc, &pk);
        let mut out: ZPoly = zmod(&f.iter().map(|c| c * &inv).collect::<Vec<_>>(), &pk);
        fix_lc(&mut out, zdeg(f), BigInt::one());
        return vec![out];
    }
    let mid = gs.len() / 2;
    let (left, right) = gs.split_at(mid);
    let lcf = f.last().unwrap().clone();
    let lcf_p = to_fp(&vec![lcf.clone()], fp);
    let mut a0 = lcf_p;
    for g in left {
        a0 = modp::mul(fp, &a0, g);
    }
    let mut b0: FpPoly = vec![1];
    for g in right {
        b0 = modp::mul(fp, &b0, g);
    }
    let (g, s, t) = modp::ext_gcd(fp, &a0, &b0);
    debug_assert_eq!(g, vec![1], "modular factors not coprime");
    let mut a = fp_to_z(&a0);
    fix_lc(&mut a, a0.len() - 1, lcf.clone());
    let mut b = fp_to_z(&b0);
    let mut pk_cur = p.clone();
    for _ in 1..k {
        let pk1 = &pk_cur * &p;
        let (a1, b1) = lift_step(f, &a, &b, &s, &t, fp, &pk_cur, &pk1);
        a = a1;
        b = b1;
        pk_cur = pk1;
    }
    debug_assert_eq!(zmod(&zsub(f, &zmul(&a, &b)), &pk), Vec::<BigInt>::new());
    let mut out = hensel_tree(&a, left, fp, k);
    out.extend(hensel_tree(&b, right, fp, k));
    out
}

/// Subset recombination of lifted modular factors against trial division.
fn recombine(f: &ZPoly, lifted: Vec<ZPoly>, pk: &BigInt) -> Vec<ZPoly> {
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut active: Vec<ZPoly> = lifted;
    let mut size = 1usize;
    'outer: while 2 * size <= active.len() {
        let combos = combinations(active.len(), size);
        for combo in combos {
            let mut cand = vec![rest.last().unwrap().clone()];
            for &i in &combo {
                cand = zmod(&zmul(&cand, &active[i]), pk);
            }
            let cand = zmod_symmetric(&cand, pk);
            if cand.is_empty() {
                continue;
            }
            let (_, cand) = primitive_part(&cand);
            if let Some(quot) = ztry_divide(&rest, &cand) {
                out.push(cand);
                rest = quot;
                let mut keep: Vec<ZPoly> = Vec::new();
                for (i, g) in active.into_iter().enumerate() {
                    if !combo.contains(&i) {
                        keep.push(g);
                    }
                }
                active = keep;
                continue 'outer;
            }
        }
        size += 1;
    }
    if !rest.is_empty() && zdeg(&rest) >= 1 {
        out.push(primitive_part(&rest).1);
    }
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
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

/// Exact division over the integers, if the divisor divides.
fn ztry_divide(a: &ZPoly, b: &ZPoly) -> Option<ZPoly> {
    if b.is_empty() || a.len() < b.len() {
        return None;
    }
    let mut rem = a.clone();
    let qlen = a.len() - b.len() + 1;
    let mut quot = vec![BigInt::zero(); qlen];
    let lc = b.last().unwrap();
    for k in (0..qlen).rev() {
        let top = rem[k + b.len() - 1].clone();
        if top.is_zero() {
            continue;
        }
        let (c, r) = top.div_rem(lc);
        if !r.is_zero() {
            return None;
        }
        for (i, bc) in b.iter().enumerate() {
            let v = &rem[k + i] - bc * &c;
            rem[k + i] = v;
        }
        quot[k] = c;
    }
    if rem.iter().all(|c| c.is_zero()) {
        Some(ztrim(quot))
    } else {
        None
    }
}

const PRIMES: [u64; 25] = [
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
    101,
];

fn prime_iter() -> impl Iterator<Item = u64> {
    PRIMES.into_iter().chain((102u64..).filter(|&n| {
        n % 2 == 1 && (3..).take_while(|d| d * d <= n).step_by(2).all(|d| n % d != 0)
    }))
}

/// Factors a primitive squarefree integer polynomial with positive leading
/// coefficient into primitive irreducible integer polynomials.
fn factor_squarefree_z(f: &ZPoly) -> Vec<ZPoly> {
    let n = zdeg(f);
    if n == 1 {
        return vec![f.clone()];
    }
    let lc = f.last().unwrap().clone();
    let mut chosen: Option<(Fp, Vec<FpPoly>)> = None;
    for p in prime_iter() {
        let fp = Fp { p };
        let big_p = BigInt::from(p);
        if (&lc).mod_floor(&big_p).is_zero() {
            continue;
        }
        let fbar = to_fp(f, fp);
        if modp::deg(&fbar) != Some(n) {
            continue;
        }
        let dfbar = modp::trim(
            fbar.iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| fp.mul(c, (i as u64) % p))
                .collect(),
        );
        if dfbar.is_empty() {
            continue;
        }
        let g = modp::gcd(fp, &fbar, &dfbar);
        if modp::deg(&g) != Some(0) {
            continue;
        }
        let monic = modp::make_monic(fp, &fbar);
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
        let mut factors = modp::factor_squarefree_monic(fp, &monic, &mut rng);
        factors.sort();
        chosen = Some((fp, factors));
        break;
    }
    let (fp, factors) = chosen.expect("no usable prime found");
    if factors.len() == 1 {
        return vec![f.clone()];
    }

    // coefficient bound: |lc| * 2^n * (|f|_2 + 1), then p^K > 2*bound
    let norm2_sq: BigInt = f.iter().map(|c| c * c).sum();
    let norm2 = norm2_sq.sqrt() + 1;
    let bound = lc.abs() * (BigInt::one() << n) * norm2;
    let p_big = BigInt::from(fp.p);
    let mut k = 1u32;
    let mut pk = p_big.clone();
    let target = &bound * 2 + 1;
    while pk < target {
        pk *= &p_big;
        k += 1;
    }

    let lifted = hensel_tree(f, &factors, fp, k);
    debug_assert_eq!(
        zmod(&lifted.iter().fold(vec![lc.clone()], |acc, g| zmul(&acc, g)), &pk),
        zmod(f, &pk)
    );
    recombine(f, lifted, &pk)
}

fn qpoly_to_z(f: &QPoly) -> (Rational, ZPoly) {
    // f = scale * P with P primitive integer, positive leading coefficient
    let mut denom_lcm = BigInt::one();
    for c in f.coeffs() {
        denom_lcm = denom_lcm.lcm(c.denom());
    }
    let ints: ZPoly = f
        .coeffs()
        .iter()
        .map(|c| c.numer() * (&denom_lcm / c.denom()))
        .collect();
    let (cont, prim) = primitive_part(&ints);
    (Rational::new(cont, denom_lcm), prim)
}

fn z_to_qpoly(f: &ZPoly) -> QPoly {
    QPoly::new(f.iter().map(|c| Rational::from_integer(c.clone())).collect())
}

/// Complete irreducible factorization over the rationals. Factors are
/// primitive with positive leading coefficients, sorted by degree then by
/// coefficient sequence; the rational unit carries the rest.
pub fn factor_qpoly(f: &QPoly) -> Result<QFactorization, RatPolyError> {
    if f.is_zero() {
        return Err(RatPolyError::ZeroPolynomial);
    }
    if f.degree() == Some(0) {
        return Ok(QFactorization { unit: f.coeff(0), factors: Vec::new() });
    }
    let mut factors: Vec<(QPoly, u32)> = Vec::new();
    for (part, mult) in f.squarefree_decompose()? {
        let (_, prim) = qpoly_to_z(&part);
        for irred in factor_squarefree_z(&prim) {
            factors.push((z_to_qpoly(&irred), mult));
        }
    }
    factors.sort_by(|a, b| {
        (a.0.degree(), a.0.coeffs(), a.1).cmp(&(b.0.degree(), b.0.coeffs(), b.1))
    });
    // merge equal factors (possible across squarefree parts only by error,
    // but keep the representation canonical)
    let mut merged: Vec<(QPoly, u32)> = Vec::new();
    for (f, m) in factors {
        match merged.last_mut() {
            Some((g, mm)) if *g == f => *mm += m,
            _ => merged.push((f, m)),
        }
    }
    let mut unit = f.leading().unwrap().clone();
    for (g, m) in &merged {
        unit /= g.leading().unwrap().pow(*m as i32);
    }
    Ok(QFactorization { unit, factors: merged })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn qp(coeffs: &[i64]) -> QPoly {
        QPoly::from_ints(coeffs)
    }

    fn check_roundtrip(f: &QPoly) {
        let fac = f.factor().unwrap();
        assert_eq!(&fac.expand(), f, "factorization of {} does not expand back", f);
    }

    #[test]
    fn quadratic_square() {
        let f = qp(&[1, 2, 1]);
        let fac = f.factor().unwrap();
        assert_eq!(fac.unit, Rational::one());
        assert_eq!(fac.factors, vec![(qp(&[1, 1]), 2)]);
    }

    #[test]
    fn cubic_with_linear_factor() {
        let f = qp(&[-1, 0, 0, 1]); // x^3 - 1
        let fac = f.factor().unwrap();
        assert_eq!(fac.factors, vec![(qp(&[-1, 1]), 1), (qp(&[1, 1, 1]), 1)]);
        check_roundtrip(&f);
    }

    #[test]
    fn sextic_three_quadratics() {
        let f = qp(&[2, 2, 3, 2, 3, 2, 1]);
        let fac = f.factor().unwrap();
        assert_eq!(
            fac.factors,
            vec![
                (qp(&[1, -1, 1]), 1),
                (qp(&[1, 1, 1]), 1),
                (qp(&[2, 2, 1]), 1)
            ]
        );
        check_roundtrip(&f);
    }

    #[test]
    fn rational_scaling_lands_in_unit() {
        let f = QPoly::new(vec![rat(1, 2), rat(1, 1), rat(1, 2)]); // (x+1)^2 / 2
        let fac = f.factor().unwrap();
        assert_eq!(fac.unit, rat(1, 2));
        assert_eq!(fac.factors, vec![(qp(&[1, 1]), 2)]);
        check_roundtrip(&f);
    }

    #[test]
    fn irreducible_stays_whole() {
        let f = qp(&[1, 1, 1, 0, 1]); // x^4 + x^2 + x + 1? no: 1 + x + x^2 + x^4
        check_roundtrip(&f);
    }

    #[test]
    fn non_monic_content() {
        let f = qp(&[2, 3, 1]).scale(&rat(3, 5)); // (x+1)(x+2) * 3/5
        let fac = f.factor().unwrap();
        assert_eq!(fac.unit, rat(3, 5));
        assert_eq!(fac.factors, vec![(qp(&[1, 1]), 1), (qp(&[2, 1]), 1)]);
    }

    #[test]
    fn big_product_roundtrip() {
        // (2x+1)(x^2+x+1)^2 (x-3)
        let f = &(&(&qp(&[1, 2]) * &qp(&[1, 1, 1])) * &qp(&[1, 1, 1])) * &qp(&[-3, 1]);
        check_roundtrip(&f);
        let fac = f.factor().unwrap();
        let mults: Vec<u32> = fac.factors.iter().map(|(_, m)| *m).collect();
        assert_eq!(mults, vec![1, 1, 2]);
    }

    #[test]
    fn zero_rejected() {
        assert_eq!(QPoly::zero().factor(), Err(RatPolyError::ZeroPolynomial));
    }
}
