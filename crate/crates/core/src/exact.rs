//! Helpers for exact rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serializer;

pub type Q = BigRational;

pub fn int(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// `q^(-e)`.
pub fn inv_pow(q: u64, e: u32) -> Q {
    Q::new(BigInt::one(), BigInt::from(q).pow(e))
}

/// `x^e` for a possibly negative exponent.
pub fn pow(x: &Q, e: i64) -> Q {
    if e >= 0 {
        num_traits::pow(x.clone(), e as usize)
    } else {
        num_traits::pow(x.recip(), (-e) as usize)
    }
}

pub fn ratio_to_f64(r: &Q) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    let (n, d) = (r.numer(), r.denom());
    match (n.to_f64(), d.to_f64()) {
        (Some(a), Some(b)) if a.is_finite() && b.is_finite() && b != 0.0 => a / b,
        _ => {
            let shift = n.bits().max(d.bits()).saturating_sub(1000);
            let n2: BigInt = n >> shift;
            let d2: BigInt = d >> shift;
            n2.to_f64().unwrap_or(0.0) / d2.to_f64().unwrap_or(1.0)
        }
    }
}

/// `num/den` text.
pub fn ratio_text(r: &Q) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn serialize_ratio<S: Serializer>(r: &Q, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&ratio_text(r))
}

pub fn serialize_opt_ratio<S: Serializer>(r: &Option<Q>, s: S) -> Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_str(&ratio_text(r)),
        None => s.serialize_none(),
    }
}

/// Parses `n` or `n/d`.
pub fn parse_ratio(s: &str) -> crate::Result<Q> {
    let bad = || crate::Dp4Error::Config(format!("{s:?} is not a rational number"));
    let (n, d) = match s.trim().split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Q::new(n, d))
}
