//! Closed points of P^1 over F_q.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use super::field::{FieldTable, Fq};
use super::form::BinaryForm;
use super::poly::{self, Poly};
use crate::error::{Dp4Error, Result};

/// Largest number of monic candidates scanned for one degree.
const SCAN_LIMIT: u64 = 1 << 24;

/// A Galois orbit on P^1, stored as a monic irreducible dehomogenized
/// polynomial, or the point at infinity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ClosedPoint {
    degree: u32,
    infinite: bool,
    /// Monic, low degree first; empty at infinity.
    poly: Poly,
    /// Root for degree one, coefficients `c_1..c_d` otherwise.
    key: Vec<Fq>,
}

impl ClosedPoint {
    pub fn infinity() -> ClosedPoint {
        ClosedPoint { degree: 1, infinite: true, poly: Vec::new(), key: Vec::new() }
    }

    /// The rational point `(e : 1)`.
    pub fn affine(f: &FieldTable, e: Fq) -> ClosedPoint {
        ClosedPoint { degree: 1, infinite: false, poly: vec![f.neg(e), 1], key: vec![e] }
    }

    /// Wraps a monic irreducible polynomial; the caller vouches for irreducibility.
    pub fn from_monic(f: &FieldTable, poly: Poly) -> ClosedPoint {
        let d = poly::degree(&poly).expect("nonzero");
        assert!(d >= 1 && poly[d] == 1, "expected a monic polynomial of degree >= 1");
        if d == 1 {
            return ClosedPoint::affine(f, f.neg(poly[0]));
        }
        let key = (0..d).map(|j| poly[d - 1 - j]).collect();
        ClosedPoint { degree: d as u32, infinite: false, poly, key }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_infinity(&self) -> bool {
        self.infinite
    }

    /// Dehomogenized monic polynomial (empty at infinity).
    pub fn poly(&self) -> &[Fq] {
        &self.poly
    }

    /// The rational point as `(x, y)` with `y` in {0, 1}, for degree one.
    pub fn rational(&self, f: &FieldTable) -> Option<(Fq, Fq)> {
        match (self.degree, self.infinite) {
            (1, true) => Some((1, 0)),
            (1, false) => Some((f.neg(self.poly[0]), 1)),
            _ => None,
        }
    }

    /// The irreducible binary form of degree `self.degree()`.
    pub fn form(&self) -> BinaryForm {
        if self.infinite {
            BinaryForm::new(vec![0, 1])
        } else {
            BinaryForm::homogenize(&self.poly, self.degree as usize)
        }
    }


    /// Comma-separated coefficients `c_0..c_d` of the monic form, or `inf`.
    pub fn text(&self) -> String {
        if self.infinite {
            return "inf".into();
        }
        let form = self.form();
        form.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
    }

    pub fn parse(f: &FieldTable, s: &str) -> Result<ClosedPoint> {
        let s = s.trim();
        if s == "inf" {
            return Ok(ClosedPoint::infinity());
        }
        let coeffs: Vec<Fq> = s
            .split(',')
            .map(|t| t.trim().parse::<u32>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| Dp4Error::Config(format!("bad point {s:?}: {e}")))?
            .into_iter()
            .map(|c| {
                if c < f.q() {
                    Ok(c as Fq)
                } else {
                    Err(Dp4Error::Config(format!("coefficient {c} not in F_{}", f.q())))
                }
            })
            .collect::<Result<_>>()?;
        if coeffs.len() < 2 || coeffs[0] != 1 {
            return Err(Dp4Error::Config(format!("point {s:?} is not a monic form")));
        }
        let g = BinaryForm::new(coeffs).dehomogenize();
        if !poly::is_irreducible(f, &g) {
            return Err(Dp4Error::Config(format!("point {s:?} is not irreducible")));
        }
        Ok(ClosedPoint::from_monic(f, g))
    }
}

impl PartialOrd for ClosedPoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ClosedPoint {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.degree, self.infinite, &self.key).cmp(&(other.degree, other.infinite, &other.key))
    }
}

impl fmt::Display for ClosedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.infinite {
            write!(f, "inf")
        } else {
            write!(f, "({})", self.text())
        }
    }
}

fn compute_points(f: &FieldTable, d: u32) -> Result<Vec<ClosedPoint>> {
    let q = f.q() as u64;
    if d == 1 {
        let mut out: Vec<ClosedPoint> = f.elements().map(|e| ClosedPoint::affine(f, e)).collect();
        out.push(ClosedPoint::infinity());
        return Ok(out);
    }
    let total = q.checked_pow(d).filter(|&t| t <= SCAN_LIMIT).ok_or_else(|| {
        Dp4Error::ResourceCap(format!("closed points of degree {d} over F_{q}"))
    })?;
    let mut out = Vec::new();
    for code in 0..total {
        let mut g: Poly = (0..d).map(|j| ((code / q.pow(j)) % q) as Fq).collect();
        g.push(1);
        if poly::is_irreducible(f, &g) {
            out.push(ClosedPoint::from_monic(f, g));
        }
    }
    out.sort();
    Ok(out)
}

/// All closed points of degree `d`, in canonical order (cached).
pub fn closed_points_of(f: &FieldTable, d: u32) -> Result<Arc<Vec<ClosedPoint>>> {
    if d == 0 {
        return Err(Dp4Error::Config("closed points have degree >= 1".into()));
    }
    type Cache = Mutex<HashMap<(u32, u32), Arc<Vec<ClosedPoint>>>>;
    static CACHE: OnceLock<Cache> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().unwrap().get(&(f.q(), d)) {
        return Ok(v.clone());
    }
    let v = Arc::new(compute_points(f, d)?);
    cache.lock().unwrap().insert((f.q(), d), v.clone());
    Ok(v)
}

/// `closed_points(q, d)`: the degree-`d` closed points of P^1 over F_q.
pub fn closed_points(q: u32, d: u32) -> Result<Vec<ClosedPoint>> {
    let f = FieldTable::get(q)?;
    Ok(closed_points_of(&f, d)?.as_ref().clone())
}

/// All closed points of degree at most `d`, canonical order.
pub fn closed_points_upto(f: &FieldTable, d: u32) -> Result<Vec<ClosedPoint>> {
    let mut out = Vec::new();
    for e in 1..=d {
        out.extend(closed_points_of(f, e)?.iter().cloned());
    }
    Ok(out)
}

/// Number of closed points of degree `d`, including infinity when `d = 1`.
pub fn closed_point_count(q: u64, d: u32) -> u128 {
    let q = q as u128;
    if d == 1 {
        return q + 1;
    }
    let mut total: i128 = 0;
    for e in 1..=d {
        if d.is_multiple_of(e) {
            total += mobius(e) as i128 * (q.pow(d / e) as i128);
        }
    }
    (total / d as i128) as u128
}

/// Number-theoretic Moebius function.
pub fn mobius(mut n: u32) -> i32 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}
