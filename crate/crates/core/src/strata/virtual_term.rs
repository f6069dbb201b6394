//! The virtual main term `Σ_{w <= x} μ(w, x) q^{-γ(x)}`, truncated.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;


use crate::error::Result;
use crate::ffpoly::{closed_points_upto, enumerate_uk_in, ClosedPoint, FieldTable};
use crate::posetq::{enumerate_saturated_above, local_euler_polynomial, mobius_global, Chain, PairWX, SaturatedElement};

/// Truncated power series in `z` with integer coefficients.
type Series = Vec<BigInt>;

fn truncate(mut s: Series, n: usize) -> Series {
    s.resize(n + 1, BigInt::zero());
    s
}

fn mul(a: &Series, b: &Series, n: usize) -> Series {
    let mut out = vec![BigInt::zero(); n + 1];
    for (i, x) in a.iter().enumerate().take(n + 1) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(n + 1 - i) {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

/// `p(z^d)` truncated at degree `n`.
fn substitute(p: &[i64], d: usize, n: usize) -> Series {
    let mut out = vec![BigInt::zero(); n + 1];
    for (i, &c) in p.iter().enumerate() {
        if i * d <= n {
            out[i * d] += c;
        }
    }
    out
}

/// Inverse of a series with constant term 1.
fn invert(a: &Series, n: usize) -> Series {
    let mut out = vec![BigInt::zero(); n + 1];
    out[0] = BigInt::from(1);
    for i in 1..=n {
        let mut acc = BigInt::zero();
        for j in 1..=i.min(a.len() - 1) {
            acc += &a[j] * &out[i - j];
        }
        out[i] = -acc;
    }
    out
}

fn evaluate(s: &Series, q: u32) -> BigRational {
    let n = s.len().saturating_sub(1);
    let qb = BigInt::from(q);
    let num: BigInt = s.iter().enumerate().map(|(i, c)| c * qb.pow((n - i) as u32)).sum();
    BigRational::new(num, qb.pow(n as u32))
}

/// `Σ_{w ∈ U_k} Σ_{x >= w, γ(x) <= γ_max} μ(w, x) q^{-γ(x)}`, with `x`
/// supported on closed points of degree at most `deg_max` and on `supp w`.
pub fn main_term_virtual(f: &FieldTable, k: [u32; 4], gamma_max: u32, deg_max: u32) -> Result<BigRational> {
    let n = gamma_max as usize;
    let trivial = local_euler_polynomial(&Chain::trivial());
    let points: Vec<ClosedPoint> = if deg_max == 0 { Vec::new() } else { closed_points_upto(f, deg_max)? };
    let mut all = truncate(vec![BigInt::from(1)], n);
    for c in &points {
        all = mul(&all, &substitute(&trivial, c.degree() as usize, n), n);
    }
    let mut local_cache: HashMap<(Chain, u32), Series> = HashMap::new();
    let mut total = truncate(Vec::new(), n);
    for divs in enumerate_uk_in(f, k)? {
        let w = SaturatedElement::from_divisors(&divs)?;
        if w.gamma() > gamma_max {
            continue;
        }
        let mut s = all.clone();
        for (c, chain) in w.chains() {
            let d = c.degree();
            if d <= deg_max {
                s = mul(&s, &invert(&substitute(&trivial, d as usize, n), n), n);
            }
            let local = local_cache
                .entry((chain.clone(), d))
                .or_insert_with(|| substitute(&local_euler_polynomial(chain), d as usize, n));
            s = mul(&s, local, n);
        }
        for (t, x) in total.iter_mut().zip(&s) {
            *t += x;
        }
    }
    Ok(evaluate(&total, f.q()))
}

fn eval_poly(p: &[i64], x: &BigRational) -> BigRational {
    p.iter().rev().fold(BigRational::zero(), |acc, &c| acc * x + BigRational::from_integer(BigInt::from(c)))
}

/// `Σ_{w ∈ U_k} Σ_{x >= w} μ(w, x) q^{-γ(x)}` with `w` and `x` both supported
/// on closed points of degree at most `deg_max`, without a bound on `γ`.
/// The sum is finite: each local interval is.
pub fn main_term_virtual_matched(f: &FieldTable, k: [u32; 4], deg_max: u32) -> Result<BigRational> {
    let q = BigInt::from(f.q());
    let trivial = local_euler_polynomial(&Chain::trivial());
    let points: Vec<ClosedPoint> = if deg_max == 0 { Vec::new() } else { closed_points_upto(f, deg_max)? };
    let z = |d: u32| BigRational::new(BigInt::from(1), q.pow(d));
    let mut all = BigRational::from_integer(BigInt::from(1));
    for c in &points {
        all *= eval_poly(&trivial, &z(c.degree()));
    }
    let mut total = BigRational::zero();
    for divs in enumerate_uk_in(f, k)? {
        let w = SaturatedElement::from_divisors(&divs)?;
        if w.support().any(|c| c.degree() > deg_max) {
            continue;
        }
        let mut term = all.clone();
        for (c, chain) in w.chains() {
            let x = z(c.degree());
            term = term / eval_poly(&trivial, &x) * eval_poly(&local_euler_polynomial(chain), &x);
        }
        total += term;
    }
    Ok(total)
}

/// [`main_term_virtual`] together with a bound on the rest of the series.
#[derive(Clone, Debug)]
pub struct MainTermReport {
    pub value: BigRational,
    pub tail_bound: BigRational,
}

/// The tail bound is `Σ_{γ > γ_max} |c_γ| q^-γ`, `c_γ` the coefficients of
/// the product of the coefficientwise absolute values of the local polynomials.
pub fn main_term_virtual_report(f: &FieldTable, k: [u32; 4], gamma_max: u32, deg_max: u32) -> Result<MainTermReport> {
    let value = main_term_virtual(f, k, gamma_max, deg_max)?;
    let abs = |p: Vec<i64>| -> Vec<i64> { p.into_iter().map(i64::abs).collect() };
    let trivial = abs(local_euler_polynomial(&Chain::trivial()));
    let points: Vec<ClosedPoint> = if deg_max == 0 { Vec::new() } else { closed_points_upto(f, deg_max)? };
    let full = |extra: &[(u32, Vec<i64>)]| -> Series {
        let n: usize = points.iter().map(|c| c.degree() as usize * (trivial.len() - 1)).sum::<usize>()
            + extra.iter().map(|(d, p)| *d as usize * (p.len() - 1)).sum::<usize>();
        let mut s = truncate(vec![BigInt::from(1)], n);
        for c in &points {
            s = mul(&s, &substitute(&trivial, c.degree() as usize, n), n);
        }
        for (d, p) in extra {
            s = mul(&s, &substitute(p, *d as usize, n), n);
        }
        s
    };
    let q = BigInt::from(f.q());
    let mut tail = BigRational::zero();
    for divs in enumerate_uk_in(f, k)? {
        let w = SaturatedElement::from_divisors(&divs)?;
        // the extra trivial factors at supp w only enlarge coefficients
        let extra: Vec<(u32, Vec<i64>)> =
            w.chains().iter().map(|(c, chain)| (c.degree(), abs(local_euler_polynomial(chain)))).collect();
        let s = full(&extra);
        for (g, c) in s.iter().enumerate().skip(gamma_max as usize + 1) {
            if !c.is_zero() {
                tail += BigRational::new(c.clone(), q.pow(g as u32));
            }
        }
    }
    Ok(MainTermReport { value, tail_bound: tail })
}

/// The same sum by enumerating every pair `w <= x` and its Möbius value.
pub fn main_term_virtual_enumerated(
    f: &FieldTable,
    k: [u32; 4],
    gamma_max: u32,
    deg_max: u32,
) -> Result<BigRational> {
    let q = BigInt::from(f.q());
    let mut total = BigRational::zero();
    for divs in enumerate_uk_in(f, k)? {
        let w = SaturatedElement::from_divisors(&divs)?;
        for x in enumerate_saturated_above(f, &w, gamma_max, deg_max)? {
            let mu = mobius_global(&PairWX::new(w.clone(), x.clone())?)?;
            if mu != 0 {
                total += BigRational::new(BigInt::from(mu), q.pow(x.gamma()));
            }
        }
    }
    Ok(total)
}
