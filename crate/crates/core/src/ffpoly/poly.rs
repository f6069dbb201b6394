//! Dense univariate polynomials over F_q, coefficients low degree first.
//!
//! A polynomial is a trimmed `Vec<Fq>`; the zero polynomial is the empty vector.

use super::field::{FieldTable, Fq};

pub type Poly = Vec<Fq>;

pub fn trim(p: &mut Poly) {
    while p.last() == Some(&0) {
        p.pop();
    }
}

/// Degree, or `None` for the zero polynomial.
pub fn degree(p: &[Fq]) -> Option<usize> {
    p.iter().rposition(|&c| c != 0)
}

pub fn add(f: &FieldTable, a: &[Fq], b: &[Fq]) -> Poly {
    let n = a.len().max(b.len());
    let mut out: Poly = (0..n)
        .map(|i| f.add(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
        .collect();
    trim(&mut out);
    out
}

pub fn sub(f: &FieldTable, a: &[Fq], b: &[Fq]) -> Poly {
    let n = a.len().max(b.len());
    let mut out: Poly = (0..n)
        .map(|i| f.sub(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
        .collect();
    trim(&mut out);
    out
}

pub fn scale(f: &FieldTable, a: &[Fq], c: Fq) -> Poly {
    if c == 0 {
        return Vec::new();
    }
    a.iter().map(|&x| f.mul(x, c)).collect()
}

pub fn mul(f: &FieldTable, a: &[Fq], b: &[Fq]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    trim(&mut out);
    out
}

pub fn pow(f: &FieldTable, a: &[Fq], n: u32) -> Poly {
    let mut out = vec![1];
    for _ in 0..n {
        out = mul(f, &out, a);
    }
    out
}

/// Quotient and remainder; panics if `b` is zero.
pub fn divrem(f: &FieldTable, a: &[Fq], b: &[Fq]) -> (Poly, Poly) {
    let db = degree(b).expect("division by the zero polynomial");
    let lead_inv = f.inv(b[db]);
    let mut r: Poly = a.to_vec();
    trim(&mut r);
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut quo = vec![0; r.len() - db];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = f.mul(r[dr], lead_inv);
        quo[dr - db] = c;
        for j in 0..=db {
            r[dr - db + j] = f.sub(r[dr - db + j], f.mul(c, b[j]));
        }
        trim(&mut r);
    }
    trim(&mut quo);
    (quo, r)
}

pub fn rem(f: &FieldTable, a: &[Fq], b: &[Fq]) -> Poly {
    divrem(f, a, b).1
}

pub fn monic(f: &FieldTable, a: &[Fq]) -> Poly {
    match degree(a) {
        None => Vec::new(),
        Some(d) => scale(f, &a[..=d], f.inv(a[d])),
    }
}

/// Monic gcd; `gcd(0, 0) = 0`.
pub fn gcd(f: &FieldTable, a: &[Fq], b: &[Fq]) -> Poly {
    let mut x = monic(f, a);
    let mut y = monic(f, b);
    while !y.is_empty() {
        let r = rem(f, &x, &y);
        x = y;
        y = monic(f, &r);
    }
    x
}

pub fn eval(f: &FieldTable, a: &[Fq], x: Fq) -> Fq {
    a.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
}

/// `base^e mod m` for a possibly huge exponent.
pub fn powmod(f: &FieldTable, base: &[Fq], mut e: u128, m: &[Fq]) -> Poly {
    let mut result: Poly = rem(f, &[1], m);
    let mut b = rem(f, base, m);
    while e > 0 {
        if e & 1 == 1 {
            result = rem(f, &mul(f, &result, &b), m);
        }
        b = rem(f, &mul(f, &b, &b), m);
        e >>= 1;
    }
    result
}

fn prime_divisors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rabin's irreducibility test for a polynomial of degree >= 1.
pub fn is_irreducible(f: &FieldTable, a: &[Fq]) -> bool {
    let Some(d) = degree(a) else { return false };
    if d == 0 {
        return false;
    }
    if d == 1 {
        return true;
    }
    let q = f.q() as u128;
    let x: Poly = vec![0, 1];
    let frob = |k: u32| powmod(f, &x, q.pow(k), a);
    if frob(d as u32) != rem(f, &x, a) {
        return false;
    }
    for r in prime_divisors(d as u32) {
        let h = sub(f, &frob(d as u32 / r), &x);
        if degree(&gcd(f, &h, a)).unwrap_or(0) != 0 || h.is_empty() {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffpoly::field::FieldTable;

    fn trial_irreducible(f: &FieldTable, a: &[Fq]) -> bool {
        let d = degree(a).unwrap();
        // any monic divisor of degree 1..=d/2 witnesses reducibility
        for k in 1..=d / 2 {
            let count = (f.q() as usize).pow(k as u32);
            for code in 0..count {
                let mut b: Poly = (0..k)
                    .map(|j| ((code / (f.q() as usize).pow(j as u32)) % f.q() as usize) as Fq)
                    .collect();
                b.push(1);
                if rem(f, a, &b).is_empty() {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn rabin_matches_trial_division() {
        for q in [2u32, 3, 4, 5] {
            let f = FieldTable::new(q).unwrap();
            for d in 1..=4usize {
                let count = (q as usize).pow(d as u32);
                for code in 0..count {
                    let mut a: Poly = (0..d)
                        .map(|j| ((code / (q as usize).pow(j as u32)) % q as usize) as Fq)
                        .collect();
                    a.push(1);
                    assert_eq!(is_irreducible(&f, &a), trial_irreducible(&f, &a), "q={q} {a:?}");
                }
            }
        }
    }

    #[test]
    fn division_identity() {
        let f = FieldTable::new(9).unwrap();
        let a: Poly = vec![3, 0, 7, 1, 2, 5];
        let b: Poly = vec![1, 4, 2];
        let (qq, r) = divrem(&f, &a, &b);
        assert_eq!(add(&f, &mul(&f, &qq, &b), &r), a);
        assert!(degree(&r).is_none_or(|d| d < 2));
    }

    #[test]
    fn gcd_of_products() {
        let f = FieldTable::new(5).unwrap();
        let x1: Poly = vec![f.from_int(-1), 1];
        let x2: Poly = vec![f.from_int(-2), 1];
        let x3: Poly = vec![f.from_int(-3), 1];
        let a = mul(&f, &mul(&f, &x1, &x2), &x2);
        let b = mul(&f, &x2, &x3);
        assert_eq!(gcd(&f, &a, &b), x2);
        assert_eq!(gcd(&f, &[], &b), b);
        assert!(gcd(&f, &[], &[]).is_empty());
    }
}
