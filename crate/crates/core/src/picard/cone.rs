//! Rational polyhedral cones in the Picard lattice: double description,
//! pulling triangulations, exact slice volumes and lattice counts.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Zero};
use serde::Serialize;

use super::ell::ell;
use super::lattice::{minus_one_classes, PicClass};
use crate::error::{Dp4Error, Result};
use crate::exact::ratio_to_f64;

pub type Vec6 = [i128; 6];

/// Rank of the Picard lattice.
pub const RHO: i64 = 6;

fn dot(a: &Vec6, b: &Vec6) -> i128 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn primitive(v: Vec6) -> Vec6 {
    let g = v.iter().fold(0i128, |g, x| g.gcd(x));
    if g <= 1 {
        v
    } else {
        v.map(|x| x / g)
    }
}

/// Rank over Q by fraction-free elimination.
pub fn rank(rows: &[Vec6]) -> usize {
    let mut m: Vec<Vec6> = rows.to_vec();
    let mut r = 0;
    for col in 0..6 {
        let Some(piv) = (r..m.len()).find(|&i| m[i][col] != 0) else { continue };
        m.swap(r, piv);
        for i in 0..m.len() {
            if i != r && m[i][col] != 0 {
                let (a, b) = (m[r][col], m[i][col]);
                let row: Vec6 = std::array::from_fn(|j| a * m[i][j] - b * m[r][j]);
                m[i] = primitive(row);
            }
        }
        r += 1;
    }
    r
}

/// Determinant of a 6x6 integer matrix (Bareiss).
pub fn det6(rows: &[Vec6; 6]) -> i128 {
    let mut m = *rows;
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..6 {
        if m[k][k] == 0 {
            let Some(p) = (k + 1..6).find(|&i| m[i][k] != 0) else { return 0 };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..6 {
            for j in k + 1..6 {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    sign * m[5][5]
}

/// Extreme rays of the pointed full-dimensional cone `{x : a·x >= 0, a in rows}`.
fn double_description(rows: &[Vec6]) -> Result<Vec<Vec6>> {
    if rows.len() > 128 {
        return Err(Dp4Error::ResourceCap("double description supports at most 128 constraints".into()));
    }
    if rank(rows) < 6 {
        return Err(Dp4Error::Precondition("constraint system does not define a pointed cone".into()));
    }
    // greedy basis of independent rows
    let mut basis: Vec<usize> = Vec::new();
    for i in 0..rows.len() {
        let mut cand: Vec<Vec6> = basis.iter().map(|&j| rows[j]).collect();
        cand.push(rows[i]);
        if rank(&cand) == cand.len() {
            basis.push(i);
        }
        if basis.len() == 6 {
            break;
        }
    }
    let b: [Vec6; 6] = std::array::from_fn(|i| rows[basis[i]]);
    let d = det6(&b);
    // columns of the adjugate solve B r_j = det e_j
    let mut rays: Vec<Vec6> = Vec::new();
    for j in 0..6 {
        let mut r = [0i128; 6];
        for (col, slot) in r.iter_mut().enumerate() {
            let mut minor = b;
            for (i, row) in minor.iter_mut().enumerate() {
                row[col] = if i == j { 1 } else { 0 };
            }
            *slot = det6(&minor);
        }
        let r = if d < 0 { r.map(|x| -x) } else { r };
        rays.push(primitive(r));
    }
    let mut processed: Vec<usize> = basis.clone();
    let zero_set = |r: &Vec6, processed: &[usize]| -> u128 {
        processed
            .iter()
            .enumerate()
            .filter(|(_, &i)| dot(&rows[i], r) == 0)
            .fold(0u128, |acc, (k, _)| acc | (1u128 << k))
    };
    for i in 0..rows.len() {
        if basis.contains(&i) {
            continue;
        }
        let a = rows[i];
        let vals: Vec<i128> = rays.iter().map(|r| dot(&a, r)).collect();
        let zs: Vec<u128> = rays.iter().map(|r| zero_set(r, &processed)).collect();
        let mut next: Vec<Vec6> = Vec::new();
        for (r, &v) in rays.iter().zip(&vals) {
            if v >= 0 {
                next.push(*r);
            }
        }
        for p in 0..rays.len() {
            if vals[p] <= 0 {
                continue;
            }
            for n in 0..rays.len() {
                if vals[n] >= 0 {
                    continue;
                }
                let common = zs[p] & zs[n];
                if common.count_ones() < 4 {
                    continue;
                }
                let adjacent = (0..rays.len()).all(|r| r == p || r == n || zs[r] & common != common);
                if adjacent {
                    let r: Vec6 = std::array::from_fn(|k| vals[p] * rays[n][k] - vals[n] * rays[p][k]);
                    next.push(primitive(r));
                }
            }
        }
        processed.push(i);
        next.sort();
        next.dedup();
        rays = next;
    }
    rays.sort();
    Ok(rays)
}

/// Which subset of the nef cone a [`Cone`] describes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ConeKind {
    Polyhedral,
    /// `{α nef : ℓ(α) >= ε h(α)}`, a finite union of polyhedral cones.
    Shrunk { eps: (i64, i64) },
}

/// A cone given by both its extreme rays and its facet inequalities.
#[derive(Clone, Debug, Serialize)]
pub struct Cone {
    kind: ConeKind,
    rays: Vec<Vec6>,
    /// Inequalities `a·x >= 0` in coordinate dot-product form.
    ineqs: Vec<Vec6>,
    dim: usize,
}

impl Cone {
    /// The nef cone, dual to the 16 lines.
    pub fn nef() -> Cone {
        let ineqs: Vec<Vec6> =
            minus_one_classes().iter().map(|c| c.functional().map(|x| x as i128)).collect();
        Cone::from_inequalities(ineqs).expect("the nef cone is pointed")
    }

    pub fn from_inequalities(ineqs: Vec<Vec6>) -> Result<Cone> {
        let rays = double_description(&ineqs)?;
        Ok(Cone { kind: ConeKind::Polyhedral, rays, ineqs, dim: 6 })
    }

    /// Cone generated by the given classes; extreme rays and facets are recomputed.
    pub fn from_rays(gens: &[PicClass]) -> Result<Cone> {
        let gens: Vec<Vec6> = gens.iter().map(|c| primitive(c.0.map(|x| x as i128))).collect();
        let dim = rank(&gens);
        if dim < 6 {
            let mut rays = gens;
            rays.sort();
            rays.dedup();
            return Ok(Cone { kind: ConeKind::Polyhedral, rays, ineqs: Vec::new(), dim });
        }
        let ineqs = double_description(&gens)?;
        Cone::from_inequalities(ineqs)
    }

    /// `{α nef : ℓ(α) >= eps h(α)}`.
    pub fn shrunk(eps: Ratio<i64>) -> Cone {
        let mut c = Cone::nef();
        c.kind = ConeKind::Shrunk { eps: (*eps.numer(), *eps.denom()) };
        c
    }

    pub fn kind(&self) -> &ConeKind {
        &self.kind
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> Vec<PicClass> {
        self.rays.iter().map(|r| PicClass(r.map(|x| x as i64))).collect()
    }

    pub fn inequalities(&self) -> &[Vec6] {
        &self.ineqs
    }

    /// Image under a lattice automorphism permuting the `E_i` and/or swapping `F`, `F'`.
    pub fn permuted(&self, perm: [usize; 4], swap: bool) -> Result<Cone> {
        let gens: Vec<PicClass> = self.rays().iter().map(|r| r.permuted(perm, swap)).collect();
        let mut c = Cone::from_rays(&gens)?;
        c.kind = self.kind.clone();
        Ok(c)
    }

    pub fn contains(&self, alpha: &PicClass) -> bool {
        let v = alpha.0.map(|x| x as i128);
        let poly_ok = if self.dim == 6 {
            self.ineqs.iter().all(|a| dot(a, &v) >= 0)
        } else {
            self.contains_degenerate(&v)
        };
        match &self.kind {
            ConeKind::Polyhedral => poly_ok,
            ConeKind::Shrunk { eps } => {
                let eps = Ratio::new(eps.0, eps.1);
                poly_ok && ell(alpha) >= eps * Ratio::from_integer(alpha.h())
            }
        }
    }

    fn contains_degenerate(&self, v: &Vec6) -> bool {
        if v.iter().all(|&x| x == 0) {
            return true;
        }
        match self.rays.as_slice() {
            [r] => {
                // v = t r with t >= 0
                let mut rows = vec![*r, *v];
                rank(&rows) == 1 && {
                    rows.pop();
                    dot(r, v) > 0
                }
            }
            _ => false,
        }
    }

    /// Simplicial cones (as ray index sets) of a pulling triangulation.
    pub fn triangulate(&self) -> Vec<Vec<usize>> {
        if self.dim < 6 {
            return Vec::new();
        }
        let all: Vec<usize> = (0..self.rays.len()).collect();
        self.triangulate_face(&all, 6)
    }

    fn triangulate_face(&self, face: &[usize], dim: usize) -> Vec<Vec<usize>> {
        if face.len() == dim {
            return vec![face.to_vec()];
        }
        let v = face[0];
        let mut facets: BTreeSet<Vec<usize>> = BTreeSet::new();
        for a in &self.ineqs {
            let tight: Vec<usize> = face.iter().copied().filter(|&r| dot(a, &self.rays[r]) == 0).collect();
            if tight.len() == face.len() || tight.len() < dim - 1 {
                continue;
            }
            let vecs: Vec<Vec6> = tight.iter().map(|&r| self.rays[r]).collect();
            if rank(&vecs) == dim - 1 {
                facets.insert(tight);
            }
        }
        let mut out = Vec::new();
        for facet in facets.iter().filter(|f| !f.contains(&v)) {
            for mut s in self.triangulate_face(facet, dim - 1) {
                s.push(v);
                out.push(s);
            }
        }
        out
    }

    /// Exact volume of `{α in cone : -K·α <= 1}` with the lattice normalized to covolume 1.
    pub fn slice_volume(&self) -> Result<BigRational> {
        if self.kind != ConeKind::Polyhedral {
            return Err(Dp4Error::Precondition("exact volume needs a polyhedral cone".into()));
        }
        if self.dim < 6 {
            return Ok(BigRational::zero());
        }
        let hs: Vec<i128> = self.rays.iter().map(|r| PicClass(r.map(|x| x as i64)).h() as i128).collect();
        if hs.iter().any(|&h| h <= 0) {
            return Err(Dp4Error::Precondition("cone is not contained in the nef cone".into()));
        }
        let mut total = BigRational::zero();
        for s in self.triangulate() {
            let m: [Vec6; 6] = std::array::from_fn(|i| self.rays[s[i]]);
            let d = det6(&m).abs();
            let den: BigInt = s.iter().map(|&i| BigInt::from(hs[i])).product::<BigInt>() * 720;
            total += BigRational::new(BigInt::from(d), den);
        }
        Ok(total)
    }

    /// Bounding box of `{α in cone : h(α) <= m}`.
    fn bounds(&self, m: i64) -> [(i64, i64); 6] {
        std::array::from_fn(|j| {
            let (mut lo, mut hi) = (Ratio::from_integer(0i128), Ratio::from_integer(0i128));
            for r in &self.rays {
                let h = PicClass(r.map(|x| x as i64)).h() as i128;
                let v = Ratio::new(r[j] * m as i128, h);
                if v < lo {
                    lo = v;
                }
                if v > hi {
                    hi = v;
                }
            }
            (lo.floor().to_integer() as i64, hi.ceil().to_integer() as i64)
        })
    }

    /// `#{α integral in cone : -K·α <= m}`.
    pub fn ehrhart_count(&self, m: i64) -> Result<u64> {
        if m < 0 {
            return Ok(0);
        }
        if self.dim < 6 {
            return match self.rays.as_slice() {
                [r] => {
                    let h = PicClass(r.map(|x| x as i64)).h();
                    Ok((m / h) as u64 + 1)
                }
                [] => Ok(1),
                _ => Err(Dp4Error::Precondition(
                    "lattice counts need a full-dimensional cone or a single ray".into(),
                )),
            };
        }
        let b = self.bounds(m);
        let mut hrow: Vec6 = PicClass::MINUS_K.functional().map(|x| x as i128);
        hrow = hrow.map(|x| -x); // m - h >= 0 handled as an affine constraint below
        let mut count = 0u64;
        let mut v = [0i64; 6];
        self.count_rec(0, &b, m, &hrow, &mut v, &mut count);
        Ok(count)
    }

    fn count_rec(&self, j: usize, b: &[(i64, i64); 6], m: i64, hneg: &Vec6, v: &mut [i64; 6], count: &mut u64) {
        if j == 5 {
            // the last coordinate ranges over an interval cut out by every constraint
            let (mut lo, mut hi) = (b[5].0 as i128, b[5].1 as i128);
            let mut constraints: Vec<(Vec6, i128)> = self.ineqs.iter().map(|a| (*a, 0)).collect();
            constraints.push((*hneg, m as i128));
            for (a, c0) in &constraints {
                let partial: i128 = c0 + (0..5).map(|k| a[k] * v[k] as i128).sum::<i128>();
                let coef = a[5];
                // partial + coef * x >= 0
                if coef == 0 {
                    if partial < 0 {
                        return;
                    }
                } else if coef > 0 {
                    lo = lo.max(Integer::div_ceil(&(-partial), &coef));
                } else {
                    hi = hi.min(Integer::div_floor(&partial, &(-coef)));
                }
            }
            if hi < lo {
                return;
            }
            match self.kind {
                ConeKind::Polyhedral => *count += (hi - lo + 1) as u64,
                ConeKind::Shrunk { .. } => {
                    for x in lo..=hi {
                        v[5] = x as i64;
                        if self.contains(&PicClass(*v)) {
                            *count += 1;
                        }
                    }
                }
            }
            return;
        }
        for x in b[j].0..=b[j].1 {
            v[j] = x;
            self.count_rec(j + 1, b, m, hneg, v, count);
        }
    }
}

/// How [`alpha_constant`] evaluates the volume.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum AlphaMode {
    Exact,
    Lattice,
}

#[derive(Clone, Debug, Serialize)]
pub struct AlphaValue {
    pub mode: AlphaMode,
    /// Exact value when computed by triangulation.
    #[serde(serialize_with = "crate::exact::serialize_opt_ratio")]
    pub exact: Option<BigRational>,
    pub approx: f64,
    pub dilation: Option<i64>,
    pub warning: Option<String>,
}

/// `ρ · Vol{α in cone : -K·α <= 1}`.
pub fn alpha_constant(cone: &Cone, mode: AlphaMode, dilation: i64) -> Result<AlphaValue> {
    let lattice = |warning: Option<String>| -> Result<AlphaValue> {
        if dilation <= 0 {
            return Err(Dp4Error::Config("lattice mode needs a positive dilation".into()));
        }
        let count = cone.ehrhart_count(dilation)?;
        let approx = RHO as f64 * count as f64 / (dilation as f64).powi(6);
        Ok(AlphaValue { mode: AlphaMode::Lattice, exact: None, approx, dilation: Some(dilation), warning })
    };
    match (mode, cone.kind()) {
        (AlphaMode::Exact, ConeKind::Polyhedral) => {
            let v = cone.slice_volume()? * BigRational::from_integer(BigInt::from(RHO));
            let approx = ratio_to_f64(&v);
            Ok(AlphaValue { mode, exact: Some(v), approx, dilation: None, warning: None })
        }
        (AlphaMode::Exact, ConeKind::Shrunk { .. }) => {
            lattice(Some("exact volume unsupported for the shrunk cone; lattice count used".into()))
        }
        (AlphaMode::Lattice, _) => lattice(None),
    }
}

/// `1/180` for the full nef cone.
pub fn full_alpha() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(180))
}
