//! Effective divisors on P^1 and the tuples `U_k`.

use std::fmt;

use serde::{Serialize, Serializer};

use super::field::FieldTable;
use super::form::{BinaryForm, Functional};
use super::points::{closed_points_of, closed_points_upto, ClosedPoint};
use super::poly;
use crate::error::{Dp4Error, Result};

/// Upper bound on materialized divisor lists and tuple streams.
pub const ENUMERATION_LIMIT: usize = 1 << 24;

/// Finitely supported multiplicity map, sorted by point.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Divisor {
    parts: Vec<(ClosedPoint, u32)>,
}

impl Divisor {
    pub fn zero() -> Divisor {
        Divisor { parts: Vec::new() }
    }

    pub fn point(c: ClosedPoint, m: u32) -> Divisor {
        if m == 0 {
            return Divisor::zero();
        }
        Divisor { parts: vec![(c, m)] }
    }

    pub fn from_parts(mut parts: Vec<(ClosedPoint, u32)>) -> Divisor {
        parts.retain(|(_, m)| *m > 0);
        parts.sort_by(|a, b| a.0.cmp(&b.0));
        let mut out: Vec<(ClosedPoint, u32)> = Vec::with_capacity(parts.len());
        for (c, m) in parts {
            match out.last_mut() {
                Some((d, n)) if *d == c => *n += m,
                _ => out.push((c, m)),
            }
        }
        Divisor { parts: out }
    }

    pub fn parts(&self) -> &[(ClosedPoint, u32)] {
        &self.parts
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.parts.iter().map(|(c, m)| c.degree() * m).sum()
    }

    pub fn multiplicity(&self, c: &ClosedPoint) -> u32 {
        self.parts.iter().find(|(d, _)| d == c).map_or(0, |(_, m)| *m)
    }

    pub fn support(&self) -> impl Iterator<Item = &ClosedPoint> {
        self.parts.iter().map(|(c, _)| c)
    }

    pub fn is_disjoint(&self, other: &Divisor) -> bool {
        self.support().all(|c| other.multiplicity(c) == 0)
    }

    pub fn add(&self, other: &Divisor) -> Divisor {
        let mut parts = self.parts.clone();
        parts.extend(other.parts.iter().cloned());
        Divisor::from_parts(parts)
    }

    /// Pointwise minimum.
    pub fn meet(&self, other: &Divisor) -> Divisor {
        let parts = self
            .parts
            .iter()
            .filter_map(|(c, m)| {
                let n = other.multiplicity(c);
                (n > 0).then(|| (c.clone(), (*m).min(n)))
            })
            .collect();
        Divisor { parts }
    }

    /// Product of the point forms, a binary form of degree `self.degree()`.
    pub fn form(&self, f: &FieldTable) -> BinaryForm {
        let mut out = BinaryForm::new(vec![1]);
        for (c, m) in &self.parts {
            let pf = c.form();
            for _ in 0..*m {
                out = out.mul(f, &pf);
            }
        }
        out
    }

    pub fn text(&self) -> String {
        if self.parts.is_empty() {
            return "0".into();
        }
        self.parts
            .iter()
            .map(|(c, m)| format!("{m}*{c}"))
            .collect::<Vec<_>>()
            .join("+")
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text())
    }
}

impl Serialize for Divisor {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.text())
    }
}

/// Divisor of a nonzero form; `None` for the zero form.
pub fn divisor_of_form(f: &FieldTable, form: &BinaryForm) -> Option<Divisor> {
    let vo = form.v_order()?;
    let mut parts = Vec::new();
    if vo > 0 {
        parts.push((ClosedPoint::infinity(), vo as u32));
    }
    let mut g = poly::monic(f, &form.dehomogenize());
    let mut d = 1u32;
    while let Some(dg) = poly::degree(&g) {
        if dg == 0 {
            break;
        }
        if (dg as u32) < 2 * d {
            // what remains has no factor of degree < d, hence is irreducible
            parts.push((ClosedPoint::from_monic(f, g.clone()), 1));
            break;
        }
        let pts = closed_points_of(f, d).expect("degree bounded by the form degree");
        for c in pts.iter().filter(|c| !c.is_infinity()) {
            let mut m = 0;
            loop {
                let (quo, r) = poly::divrem(f, &g, c.poly());
                if !r.is_empty() {
                    break;
                }
                g = quo;
                m += 1;
            }
            if m > 0 {
                parts.push((c.clone(), m));
            }
        }
        d += 1;
    }
    Some(Divisor::from_parts(parts))
}

/// Result of a gcd of two forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GcdDivisor {
    Divisor(Divisor),
    /// Both forms vanish identically.
    WholeCurve,
}

impl GcdDivisor {
    pub fn degree(&self) -> Option<u32> {
        match self {
            GcdDivisor::Divisor(d) => Some(d.degree()),
            GcdDivisor::WholeCurve => None,
        }
    }
}

/// Divisor of `gcd(a, b)` computed by Euclid on dehomogenizations with the
/// power of `v` tracked separately.
pub fn gcd_divisor(f: &FieldTable, a: &BinaryForm, b: &BinaryForm) -> GcdDivisor {
    match (a.is_zero(), b.is_zero()) {
        (true, true) => GcdDivisor::WholeCurve,
        (true, false) => GcdDivisor::Divisor(divisor_of_form(f, b).unwrap()),
        (false, true) => GcdDivisor::Divisor(divisor_of_form(f, a).unwrap()),
        (false, false) => {
            let vo = a.v_order().unwrap().min(b.v_order().unwrap());
            let g = poly::gcd(f, &a.dehomogenize(), &b.dehomogenize());
            let n = poly::degree(&g).unwrap_or(0);
            let mut d = divisor_of_form(f, &BinaryForm::homogenize(&g, n)).unwrap();
            if vo > 0 {
                d = d.add(&Divisor::point(ClosedPoint::infinity(), vo as u32));
            }
            GcdDivisor::Divisor(d)
        }
    }
}

/// `true` when the two coordinate forms of a pair share no root on P^1.
pub fn is_nowhere_vanishing(f: &FieldTable, pair: &(BinaryForm, BinaryForm)) -> bool {
    match gcd_divisor(f, &pair.0, &pair.1) {
        GcdDivisor::WholeCurve => false,
        GcdDivisor::Divisor(d) => d.is_zero(),
    }
}

/// Divisor of `gcd(phi1(s), phi2(t))`, the incidence of `(s, t)` with the
/// line `ker phi1 ⊕ ker phi2`.
pub fn intersection_multiplicity(
    f: &FieldTable,
    s: &(BinaryForm, BinaryForm),
    t: &(BinaryForm, BinaryForm),
    phi1: Functional,
    phi2: Functional,
) -> Result<GcdDivisor> {
    if !is_nowhere_vanishing(f, s) || !is_nowhere_vanishing(f, t) {
        return Err(Dp4Error::Precondition("section pair vanishes somewhere".into()));
    }
    Ok(gcd_divisor(f, &phi1.apply(f, s), &phi2.apply(f, t)))
}

fn divisors_rec(
    pts: &[ClosedPoint],
    start: usize,
    remaining: u32,
    acc: &mut Vec<(ClosedPoint, u32)>,
    out: &mut Vec<Divisor>,
) -> Result<()> {
    if remaining == 0 {
        if out.len() >= ENUMERATION_LIMIT {
            return Err(Dp4Error::ResourceCap("divisor enumeration".into()));
        }
        out.push(Divisor { parts: acc.clone() });
        return Ok(());
    }
    for i in start..pts.len() {
        let d = pts[i].degree();
        let mut m = 1;
        while m * d <= remaining {
            acc.push((pts[i].clone(), m));
            divisors_rec(pts, i + 1, remaining - m * d, acc, out)?;
            acc.pop();
            m += 1;
        }
    }
    Ok(())
}

/// Effective divisors of degree `n` over an existing field table.
pub fn divisors_of_degree_in(f: &FieldTable, n: u32) -> Result<Vec<Divisor>> {
    let pts = if n == 0 { Vec::new() } else { closed_points_upto(f, n)? };
    let mut out = Vec::new();
    divisors_rec(&pts, 0, n, &mut Vec::new(), &mut out)?;
    Ok(out)
}

/// All effective divisors of degree `n` on P^1 over F_q.
pub fn divisors_of_degree(q: u32, n: u32) -> Result<Vec<Divisor>> {
    divisors_of_degree_in(&*FieldTable::get(q)?, n)
}

/// Tuples `(T_1..T_4)` with `deg T_i = k_i` and pairwise disjoint supports.
pub fn enumerate_uk_in(f: &FieldTable, k: [u32; 4]) -> Result<Vec<[Divisor; 4]>> {
    let lists: Vec<Vec<Divisor>> =
        k.iter().map(|&ki| divisors_of_degree_in(f, ki)).collect::<Result<_>>()?;
    let mut out = Vec::new();
    for t1 in &lists[0] {
        for t2 in lists[1].iter().filter(|t| t.is_disjoint(t1)) {
            for t3 in lists[2].iter().filter(|t| t.is_disjoint(t1) && t.is_disjoint(t2)) {
                for t4 in lists[3]
                    .iter()
                    .filter(|t| t.is_disjoint(t1) && t.is_disjoint(t2) && t.is_disjoint(t3))
                {
                    if out.len() >= ENUMERATION_LIMIT {
                        return Err(Dp4Error::ResourceCap("U_k enumeration".into()));
                    }
                    out.push([t1.clone(), t2.clone(), t3.clone(), t4.clone()]);
                }
            }
        }
    }
    Ok(out)
}

/// `enumerate_Uk(q, k)`.
pub fn enumerate_uk(q: u32, k: [u32; 4]) -> Result<Vec<[Divisor; 4]>> {
    enumerate_uk_in(&*FieldTable::get(q)?, k)
}
