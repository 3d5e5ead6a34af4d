//! Polynomial arithmetic over a small prime field, used by the
//! factorization routine: distinct-degree splitting, equal-degree splitting
//! and the Bezout data for Hensel lifting.

use num_bigint::BigUint;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, Copy)]
pub struct Fp {
    pub p: u64,
}

impl Fp {
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn inv(&self, a: u64) -> u64 {
        // extended Euclid on (a, p)
        let (mut t, mut new_t): (i128, i128) = (0, 1);
        let (mut r, mut new_r): (i128, i128) = (self.p as i128, a as i128);
        while new_r != 0 {
            let q = r / new_r;
            (t, new_t) = (new_t, t - q * new_t);
            (r, new_r) = (new_r, r - q * new_r);
        }
        debug_assert_eq!(r, 1, "not invertible");
        t.rem_euclid(self.p as i128) as u64
    }
}

/// Coefficients ascending; always trimmed.
pub type FpPoly = Vec<u64>;

pub fn trim(mut f: FpPoly) -> FpPoly {
    while f.last() == Some(&0) {
        f.pop();
    }
    f
}

pub fn deg(f: &FpPoly) -> Option<usize> {
    if f.is_empty() {
        None
    } else {
        Some(f.len() - 1)
    }
}

pub fn add(fp: Fp, a: &FpPoly, b: &FpPoly) -> FpPoly {
    let len = a.len().max(b.len());
    trim(
        (0..len)
            .map(|i| fp.add(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
            .collect(),
    )
}

pub fn sub(fp: Fp, a: &FpPoly, b: &FpPoly) -> FpPoly {
    let len = a.len().max(b.len());
    trim(
        (0..len)
            .map(|i| fp.sub(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
            .collect(),
    )
}

pub fn mul(fp: Fp, a: &FpPoly, b: &FpPoly) -> FpPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = fp.add(out[i + j], fp.mul(x, y));
        }
    }
    trim(out)
}

pub fn scale(fp: Fp, a: &FpPoly, by: u64) -> FpPoly {
    trim(a.iter().map(|&c| fp.mul(c, by)).collect())
}

pub fn make_monic(fp: Fp, a: &FpPoly) -> FpPoly {
    match a.last() {
        None => Vec::new(),
        Some(&lc) => scale(fp, a, fp.inv(lc)),
    }
}

pub fn divrem(fp: Fp, a: &FpPoly, b: &FpPoly) -> (FpPoly, FpPoly) {
    let db = deg(b).expect("division by zero polynomial");
    if a.len() < b.len() {
        return (Vec::new(), a.clone());
    }
    let lc_inv = fp.inv(*b.last().unwrap());
    let mut rem = a.clone();
    let qlen = a.len() - db;
    let mut quot = vec![0u64; qlen];
    for k in (0..qlen).rev() {
        let c = fp.mul(rem[k + db], lc_inv);
        if c != 0 {
            for (i, &bc) in b.iter().enumerate() {
                rem[k + i] = fp.sub(rem[k + i], fp.mul(c, bc));
            }
        }
        quot[k] = c;
    }
    (trim(quot), trim(rem))
}

pub fn rem(fp: Fp, a: &FpPoly, b: &FpPoly) -> FpPoly {
    divrem(fp, a, b).1
}

pub fn gcd(fp: Fp, a: &FpPoly, b: &FpPoly) -> FpPoly {
    let mut a = a.clone();
    let mut b = b.clone();
    while !b.is_empty() {
        let r = rem(fp, &a, &b);
        a = b;
        b = r;
    }
    make_monic(fp, &a)
}

/// Returns `(g, s, t)` with `s*a + t*b = g = gcd(a, b)`, `g` monic.
pub fn ext_gcd(fp: Fp, a: &FpPoly, b: &FpPoly) -> (FpPoly, FpPoly, FpPoly) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1): (FpPoly, FpPoly) = (vec![1], Vec::new());
    let (mut t0, mut t1): (FpPoly, FpPoly) = (Vec::new(), vec![1]);
    while !r1.is_empty() {
        let (q, r) = divrem(fp, &r0, &r1);
        let s = sub(fp, &s0, &mul(fp, &q, &s1));
        let t = sub(fp, &t0, &mul(fp, &q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        t0 = std::mem::replace(&mut t1, t);
    }
    match r0.last() {
        None => (r0, s0, t0),
        Some(&lc) => {
            let inv = fp.inv(lc);
            (scale(fp, &r0, inv), scale(fp, &s0, inv), scale(fp, &t0, inv))
        }
    }
}

/// `base^exp mod m` by binary exponentiation over the bits of `exp`.
pub fn powmod(fp: Fp, base: &FpPoly, exp: &BigUint, modulus: &FpPoly) -> FpPoly {
    let mut result = vec![1u64];
    let mut acc = rem(fp, base, modulus);
    for i in 0..exp.bits() {
        if exp.bit(i) {
            result = rem(fp, &mul(fp, &result, &acc), modulus);
        }
        acc = rem(fp, &mul(fp, &acc, &acc), modulus);
    }
    result
}

/// Factors a monic squarefree polynomial into monic irreducibles (with the
/// usual distinct-degree then equal-degree splitting). Deterministically
/// seeded; the caller sorts the result.
pub fn factor_squarefree_monic(fp: Fp, f: &FpPoly, rng: &mut ChaCha8Rng) -> Vec<FpPoly> {
    let mut out = Vec::new();
    let mut rest = f.clone();
    let p_big = BigUint::from(fp.p);
    let mut d = 1usize;
    while deg(&rest).unwrap_or(0) >= 2 * d {
        // x^(p^d) mod rest
        let exp = p_big.pow(d as u32);
        let frob = powmod(fp, &vec![0, 1], &exp, &rest);
        let diff = sub(fp, &frob, &vec![0, 1]);
        let g = gcd(fp, &diff, &rest);
        if deg(&g).unwrap_or(0) > 0 {
            equal_degree_split(fp, &g, d, rng, &mut out);
            rest = divrem(fp, &rest, &g).0;
        }
        d += 1;
    }
    if deg(&rest).unwrap_or(0) > 0 {
        out.push(make_monic(fp, &rest));
    }
    out
}

/// Splits a product of distinct monic irreducibles of equal degree `d`.
fn equal_degree_split(fp: Fp, f: &FpPoly, d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<FpPoly>) {
    let n = deg(f).unwrap();
    if n == d {
        out.push(f.clone());
        return;
    }
    let exp = (BigUint::from(fp.p).pow(d as u32) - 1u32) / 2u32;
    loop {
        let a: FpPoly = trim((0..n).map(|_| rng.gen_range(0..fp.p)).collect());
        if deg(&a).unwrap_or(0) < 1 {
            continue;
        }
        let b = powmod(fp, &a, &exp, f);
        let b_minus_one = sub(fp, &b, &vec![1]);
        let g = gcd(fp, &b_minus_one, f);
        if let Some(dg) = deg(&g) {
            if dg > 0 && dg < n {
                let h = divrem(fp, f, &g).0;
                equal_degree_split(fp, &g, d, rng, out);
                equal_degree_split(fp, &h, d, rng, out);
                return;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    const FP7: Fp = Fp { p: 7 };

    #[test]
    fn field_ops() {
        assert_eq!(FP7.add(5, 4), 2);
        assert_eq!(FP7.sub(2, 5), 4);
        assert_eq!(FP7.mul(3, 5), 1);
        assert_eq!(FP7.inv(3), 5);
    }

    #[test]
    fn divrem_and_gcd() {
        // (x+1)(x+2) = x^2 + 3x + 2
        let f = vec![2, 3, 1];
        let (q, r) = divrem(FP7, &f, &vec![1, 1]);
        assert_eq!(q, vec![2, 1]);
        assert!(r.is_empty());
        let g = gcd(FP7, &f, &vec![2, 1]);
        assert_eq!(g, vec![2, 1]);
    }

    #[test]
    fn ext_gcd_bezout() {
        let a = vec![1, 1]; // x + 1
        let b = vec![2, 1]; // x + 2
        let (g, s, t) = ext_gcd(FP7, &a, &b);
        assert_eq!(g, vec![1]);
        let lhs = add(FP7, &mul(FP7, &s, &a), &mul(FP7, &t, &b));
        assert_eq!(lhs, vec![1]);
    }

    #[test]
    fn factor_quadratic() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        // x^2 + 3x + 2 = (x+1)(x+2) over F7
        let mut fs = factor_squarefree_monic(FP7, &vec![2, 3, 1], &mut rng);
        fs.sort();
        assert_eq!(fs, vec![vec![1, 1], vec![2, 1]]);
    }

    #[test]
    fn factor_irreducible_stays_whole() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        // x^2 + 1 is irreducible over F7 (-1 is not a square mod 7)
        let fs = factor_squarefree_monic(FP7, &vec![1, 0, 1], &mut rng);
        assert_eq!(fs, vec![vec![1, 0, 1]]);
    }
}
