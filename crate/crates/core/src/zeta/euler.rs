//! Euler products over the closed points of P^1: the Tamagawa constant and the
//! residue of the virtual height zeta function.

use num_bigint::BigInt;
use num_traits::{Signed, One, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Dp4Error, Result};
use crate::exact::{frac, int, inv_pow, ratio_to_f64, Q};
use crate::ffpoly::points::closed_point_count;

/// Default truncation degree for numeric products.
pub const DEFAULT_TRUNCATION: u32 = 25;

/// `|log((1-x)^6 (1+6x+x^2))| <= LOG_FACTOR_BOUND x^2` for `0 < x <= 1/2`.
pub const LOG_FACTOR_BOUND: f64 = 20.0;

/// Exact values are kept while the estimated size of the result stays below
/// this many bits.
pub const EXACT_BITS_LIMIT: f64 = (1u64 << 21) as f64;

/// `#S(F_{q^d}) = q^(2d) + 6 q^d + 1`.
pub fn surface_point_count(q: u64, d: u32) -> BigInt {
    let qd = BigInt::from(q).pow(d);
    &qd * &qd + 6 * &qd + 1
}

/// `(1 - x)^6 (1 + 6x + x^2)` at `x = q^-d`, equal to
/// `(1 - q^-d)^6 #S(F_{q^d}) / q^(2d)`.
pub fn point_factor(q: u64, d: u32) -> Q {
    let x = inv_pow(q, d);
    let one = Q::one();
    let a = num_traits::pow(&one - &x, 6);
    a * (one + int(6) * &x + &x * &x)
}

fn ln_point_factor(q: u64, d: u32) -> f64 {
    let x = (q as f64).powi(-(d as i32));
    6.0 * (-x).ln_1p() + (6.0 * x + x * x).ln_1p()
}

/// Bound on `Σ_{d > D} #points(d) |log factor(d)|`, from
/// `#points(d) <= q^d/d + q^(d/2)`.
pub fn log_tail_bound(q: u64, truncation: u32) -> f64 {
    let qf = q as f64;
    let d0 = truncation as f64 + 1.0;
    LOG_FACTOR_BOUND
        * (qf.powf(-d0) / (d0 * (1.0 - 1.0 / qf)) + qf.powf(-1.5 * d0) / (1.0 - qf.powf(-1.5)))
}

/// Value of a truncated Euler product, exact when small enough.
#[derive(Clone, Debug, PartialEq)]
pub struct EulerProduct {
    pub q: u64,
    pub truncation: u32,
    pub exact: Option<Q>,
    pub value: f64,
    /// Bound on `|value - limit|`.
    pub tail_bound: f64,
}

impl Serialize for EulerProduct {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("EulerProduct", 7)?;
        st.serialize_field("q", &self.q)?;
        st.serialize_field("D", &self.truncation)?;
        st.serialize_field("value_num", &self.exact.as_ref().map(|v| v.numer().to_string()))?;
        st.serialize_field("value_den", &self.exact.as_ref().map(|v| v.denom().to_string()))?;
        st.serialize_field("value_exact", &self.exact.as_ref().map(crate::exact::ratio_text))?;
        st.serialize_field("value", &self.value)?;
        st.serialize_field("tail_bound", &self.tail_bound)?;
        st.end()
    }
}

/// `prefactor · Π_{deg c <= D} factor(deg c)`.
fn product(q: u64, truncation: u32, prefactor: Q, factor: impl Fn(u64, u32) -> Q, ln_factor: impl Fn(u64, u32) -> f64) -> EulerProduct {
    let bits: f64 = (1..=truncation)
        .map(|d| closed_point_count(q, d) as f64 * 8.0 * d as f64 * (q as f64).log2())
        .sum();
    let exact = (bits <= EXACT_BITS_LIMIT).then(|| {
        let mut v = prefactor.clone();
        for d in 1..=truncation {
            v *= num_traits::pow(factor(q, d), closed_point_count(q, d) as usize);
        }
        v
    });
    let value = match &exact {
        Some(v) => ratio_to_f64(v),
        None => {
            let ln: f64 = (1..=truncation).map(|d| closed_point_count(q, d) as f64 * ln_factor(q, d)).sum();
            ratio_to_f64(&prefactor) * ln.exp()
        }
    };
    let tail_bound = value.abs() * log_tail_bound(q, truncation).exp_m1();
    EulerProduct { q, truncation, exact, value, tail_bound }
}

/// `(1 - 1/q)^-n`.
fn normalizer(q: u64, n: usize) -> Q {
    num_traits::pow(frac(q as i64, q as i64 - 1), n)
}

/// `τ = q^2 (1 - 1/q)^-6 Π_c (1 - q^-|c|)^6 #S(F_{q^|c|}) / q^(2|c|)`,
/// over closed points of P^1 of degree at most `truncation`.
pub fn tamagawa(q: u64, truncation: u32) -> Result<EulerProduct> {
    if q < 2 {
        return Err(Dp4Error::Config(format!("q = {q} is not a field order")));
    }
    Ok(product(q, truncation, int((q * q) as i64) * normalizer(q, 6), point_factor, ln_point_factor))
}

/// The local factor of the virtual height zeta function at a point of
/// degree `d`, at numeric `t`:
/// `1 - 6x^2 + 8x^3 - 3x^4 + Σ_i Σ_{m>=1} (q t_i)^(dm) x^(2m) (1 - 2x + 2x^3 - x^4)`
/// with `x = q^-d`. The inner sums are geometric in `u_i = t_i^d x`.
pub fn virtual_zeta_factor(q: u64, d: u32, t: &[Q; 4]) -> Result<Q> {
    let x = inv_pow(q, d);
    let one = Q::one();
    let x2 = &x * &x;
    let base = &one - int(6) * &x2 + int(8) * &x2 * &x - int(3) * &x2 * &x2;
    let tail = &one - int(2) * &x + int(2) * &x2 * &x - &x2 * &x2;
    let mut total = base;
    for ti in t {
        let u = num_traits::pow(ti.clone(), d as usize) * &x;
        if u.abs() >= one {
            return Err(Dp4Error::Domain(format!("series in t = {ti} diverges at degree {d}")));
        }
        total += &u / (&one - &u) * &tail;
    }
    Ok(total)
}

/// Coefficients of the local factor as a series in one `t_i`: entry `j` is
/// the coefficient of `t_i^j` (the constant term is shared by all four).
pub fn virtual_zeta_factor_series(q: u64, d: u32, max_degree: u32) -> Vec<Q> {
    let x = inv_pow(q, d);
    let one = Q::one();
    let x2 = &x * &x;
    let tail = &one - int(2) * &x + int(2) * &x2 * &x - &x2 * &x2;
    let mut out = vec![Q::zero(); max_degree as usize + 1];
    out[0] = &one - int(6) * &x2 + int(8) * &x2 * &x - int(3) * &x2 * &x2;
    let mut m = 1;
    while m * d <= max_degree {
        // (q t)^(dm) x^(2m) = t^(dm) x^m
        out[(m * d) as usize] = num_traits::pow(x.clone(), m as usize) * &tail;
        m += 1;
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct ResidueRecord {
    pub q: u64,
    pub truncation: u32,
    pub closed_form: EulerProduct,
    pub abel_limit: EulerProduct,
    /// `closed_form - abel_limit`, when both are exact.
    #[serde(serialize_with = "crate::exact::serialize_opt_ratio")]
    pub difference: Option<Q>,
}

/// `(1 - x)^4 Z_c(1, 1, 1, 1)` at a point of degree `d`: the local factor of
/// `Π_i (1 - t_i) Z(t)` at `t = 1`, after removing `Π_i (1 - t_i/q)^-1`.
pub fn normalized_factor_at_one(q: u64, d: u32) -> Q {
    let x = inv_pow(q, d);
    let one = Q::one();
    let t = [one.clone(), one.clone(), one.clone(), one.clone()];
    let z = virtual_zeta_factor(q, d, &t).expect("t = 1 converges for d >= 1");
    num_traits::pow(one - x, 4) * z
}

/// Closed form `(1-1/q)^-4 Π (1-q^-|c|)^6 (1 + 6q^-|c| + q^-2|c|)` against
/// the limit `t_i -> 1` of `Π (1 - t_i) Z(t)` taken factor by factor.
pub fn residue_compare(q: u64, truncation: u32) -> Result<ResidueRecord> {
    if q < 2 {
        return Err(Dp4Error::Config(format!("q = {q} is not a field order")));
    }
    let closed_form = product(q, truncation, normalizer(q, 4), point_factor, ln_point_factor);
    let abel_limit = product(q, truncation, normalizer(q, 4), normalized_factor_at_one, |q, d| {
        ratio_to_f64(&normalized_factor_at_one(q, d)).ln()
    });
    let difference = match (&closed_form.exact, &abel_limit.exact) {
        (Some(a), Some(b)) => Some(a - b),
        _ => None,
    };
    Ok(ResidueRecord { q, truncation, closed_form, abel_limit, difference })
}
