//! Saturated elements over `F_q`: one chain per closed point, trivial off a
//! finite support.

use std::collections::BTreeMap;
use std::fmt;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use super::chain::{chains_above, mobius_local, Chain, Multiplicities};
use crate::error::{Dp4Error, Result};
use crate::ffpoly::{closed_points_upto, ClosedPoint, FieldTable};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SaturatedElement {
    chains: BTreeMap<ClosedPoint, Chain>,
}

impl SaturatedElement {
    pub fn empty() -> SaturatedElement {
        SaturatedElement::default()
    }

    /// Trivial chains are dropped.
    pub fn from_chains(it: impl IntoIterator<Item = (ClosedPoint, Chain)>) -> SaturatedElement {
        SaturatedElement { chains: it.into_iter().filter(|(_, c)| !c.is_trivial()).collect() }
    }

    /// `w` with `w_c = d[ℓ_{i,1} ⊕ ℓ_{i,2}]` for every point of `D_i` of multiplicity `d`.
    pub fn from_divisors(divs: &[crate::ffpoly::Divisor; 4]) -> Result<SaturatedElement> {
        let mut chains = BTreeMap::new();
        for (i, d) in divs.iter().enumerate() {
            for (c, m) in d.parts() {
                if chains.insert(c.clone(), Chain::atom(i + 1, *m)).is_some() {
                    return Err(Dp4Error::Precondition(format!("divisors share the point {c}")));
                }
            }
        }
        Ok(SaturatedElement { chains })
    }

    pub fn chain(&self, c: &ClosedPoint) -> Chain {
        self.chains.get(c).cloned().unwrap_or_default()
    }

    pub fn chains(&self) -> &BTreeMap<ClosedPoint, Chain> {
        &self.chains
    }

    pub fn support(&self) -> impl Iterator<Item = &ClosedPoint> {
        self.chains.keys()
    }

    pub fn gamma(&self) -> u32 {
        self.chains.iter().map(|(c, f)| c.degree() * f.gamma()).sum()
    }

    pub fn rank(&self) -> u32 {
        self.chains.iter().map(|(c, f)| c.degree() * f.rank()).sum()
    }

    /// Number of geometric points in the support.
    pub fn supp(&self) -> u32 {
        self.chains.keys().map(|c| c.degree()).sum()
    }

    /// Degree-weighted multiplicities of each kind of element.
    pub fn multiplicities(&self) -> Multiplicities {
        let mut m = Multiplicities::default();
        for (c, f) in &self.chains {
            let d = c.degree();
            let l = f.multiplicities();
            m.zero += d * l.zero;
            m.lines += d * l.lines;
            m.halves += d * l.halves;
            m.planes += d * l.planes;
        }
        m
    }

    /// Chain order at every point.
    pub fn leq(&self, other: &SaturatedElement) -> bool {
        self.chains.iter().all(|(c, f)| f.leq(&other.chain(c)))
    }

    pub fn join(&self, other: &SaturatedElement) -> SaturatedElement {
        let mut chains = self.chains.clone();
        for (c, f) in &other.chains {
            let j = self.chain(c).join(f);
            chains.insert(c.clone(), j);
        }
        SaturatedElement { chains }
    }

    /// Per-index degrees `k_i` when every chain is `d[ℓ_{i,1} ⊕ ℓ_{i,2}]`.
    pub fn atom_degrees(&self) -> Option<[u32; 4]> {
        let mut k = [0u32; 4];
        for (c, f) in &self.chains {
            let (i, d) = f.as_atom()?;
            k[i - 1] += c.degree() * d;
        }
        Some(k)
    }

    pub fn text(&self) -> String {
        if self.chains.is_empty() {
            return "trivial".into();
        }
        self.chains.iter().map(|(c, f)| format!("{}:{}", c.text(), f.text())).collect::<Vec<_>>().join(";")
    }

    /// Parses `point:chain;point:chain`, points in the closed-point text form.
    pub fn parse(f: &FieldTable, s: &str) -> Result<SaturatedElement> {
        let s = s.trim();
        if s == "trivial" || s.is_empty() {
            return Ok(Self::empty());
        }
        let mut chains = BTreeMap::new();
        for part in s.split(';') {
            let (p, c) = part
                .split_once(':')
                .ok_or_else(|| Dp4Error::Config(format!("expected point:chain in {part:?}")))?;
            let point = ClosedPoint::parse(f, p)?;
            if chains.insert(point, Chain::parse(c)?).is_some() {
                return Err(Dp4Error::Config(format!("point {p} listed twice")));
            }
        }
        Ok(Self::from_chains(chains))
    }
}

impl fmt::Display for SaturatedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text())
    }
}

impl Serialize for SaturatedElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.chains.len()))?;
        for (c, f) in &self.chains {
            m.serialize_entry(&c.text(), &f.text())?;
        }
        m.end()
    }
}

/// A pair `w <= x` where `w` comes from four pairwise disjoint divisors.
#[derive(Clone, Debug, Serialize)]
pub struct PairWX {
    pub w: SaturatedElement,
    pub x: SaturatedElement,
    pub k: [u32; 4],
}

impl PairWX {
    pub fn new(w: SaturatedElement, x: SaturatedElement) -> Result<PairWX> {
        let k = w
            .atom_degrees()
            .ok_or_else(|| Dp4Error::Precondition(format!("{w} is not made of atoms")))?;
        if !w.leq(&x) {
            return Err(Dp4Error::Precondition(format!("{w} is not below {x}")));
        }
        Ok(PairWX { w, x, k })
    }
}

/// Product of local Möbius values over the joint support.
pub fn mobius_global(pair: &PairWX) -> Result<i64> {
    let mut mu = 1;
    for (c, f) in pair.x.chains() {
        mu *= mobius_local(&pair.w.chain(c), f)?;
        if mu == 0 {
            break;
        }
    }
    Ok(mu)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CombRecord {
    pub gamma: u32,
    pub rank: u32,
    pub supp: u32,
    pub kappa: i64,
    pub e: i64,
}

/// γ, rank, |Supp|, `κ = 2γ - rank - 2|Supp|` and
/// `E = 4m₀ + 3Σm_ℓ + 2Σm_V + 2Σm_{ℓ⊕ℓ} - 2Σk` of `x`.
pub fn comb_functions(x: &SaturatedElement, w: Option<&SaturatedElement>, k: [u32; 4]) -> Result<CombRecord> {
    if let Some(w) = w {
        if !w.leq(x) {
            return Err(Dp4Error::Precondition(format!("{w} is not below {x}")));
        }
    }
    let (gamma, rank, supp) = (x.gamma(), x.rank(), x.supp());
    let m = x.multiplicities();
    let kappa = 2 * gamma as i64 - rank as i64 - 2 * supp as i64;
    let e = 4 * m.zero as i64 + 3 * m.lines as i64 + 2 * m.halves as i64 + 2 * m.planes as i64
        - 2 * k.iter().map(|&v| v as i64).sum::<i64>();
    Ok(CombRecord { gamma, rank, supp, kappa, e })
}

/// Visits every saturated `x >= w` supported on closed points of degree at
/// most `deg_max` (plus the support of `w`) with `γ(x) <= gamma_max`, in a
/// fixed order.
pub fn for_each_saturated_above(
    f: &FieldTable,
    w: &SaturatedElement,
    gamma_max: u32,
    deg_max: u32,
    mut visit: impl FnMut(&SaturatedElement),
) -> Result<()> {
    let mut points: Vec<ClosedPoint> = if deg_max == 0 { Vec::new() } else { closed_points_upto(f, deg_max)? };
    for c in w.support() {
        if !points.contains(c) {
            points.push(c.clone());
        }
    }
    points.sort();
    let base: Vec<u32> = points.iter().map(|c| c.degree() * w.chain(c).gamma()).collect();
    let w_gamma: u32 = base.iter().sum();
    if w_gamma > gamma_max {
        return Ok(());
    }
    // suffix sums of the minimal cost still to pay
    let mut rest = vec![0u32; points.len() + 1];
    for i in (0..points.len()).rev() {
        rest[i] = rest[i + 1] + base[i];
    }
    fn rec(
        i: usize,
        used: u32,
        points: &[ClosedPoint],
        rest: &[u32],
        w: &SaturatedElement,
        gamma_max: u32,
        cur: &mut BTreeMap<ClosedPoint, Chain>,
        visit: &mut dyn FnMut(&SaturatedElement),
    ) {
        if i == points.len() {
            visit(&SaturatedElement { chains: cur.clone() });
            return;
        }
        let c = &points[i];
        let d = c.degree();
        let budget = (gamma_max - used - rest[i + 1]) / d;
        for f in chains_above(&w.chain(c), budget) {
            let cost = d * f.gamma();
            if f.is_trivial() {
                rec(i + 1, used + cost, points, rest, w, gamma_max, cur, visit);
            } else {
                cur.insert(c.clone(), f);
                rec(i + 1, used + cost, points, rest, w, gamma_max, cur, visit);
                cur.remove(c);
            }
        }
    }
    rec(0, 0, &points, &rest, w, gamma_max, &mut BTreeMap::new(), &mut visit);
    Ok(())
}

pub fn enumerate_saturated_above(
    f: &FieldTable,
    w: &SaturatedElement,
    gamma_max: u32,
    deg_max: u32,
) -> Result<Vec<SaturatedElement>> {
    let mut out = Vec::new();
    for_each_saturated_above(f, w, gamma_max, deg_max, |x| out.push(x.clone()))?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::posetq::QElem;

    #[test]
    fn enumeration_counts() {
        let f = FieldTable::get(2).unwrap();
        let w = SaturatedElement::empty();
        assert_eq!(enumerate_saturated_above(&f, &w, 1, 3).unwrap().len(), 1);
        assert_eq!(enumerate_saturated_above(&f, &w, 2, 3).unwrap().len(), 19);
        assert_eq!(enumerate_saturated_above(&f, &w, 3, 3).unwrap().len(), 43);
    }

    #[test]
    fn comb_examples() {
        let f = FieldTable::get(3).unwrap();
        let pts = closed_points_upto(&f, 2).unwrap();
        let p1 = pts[0].clone();
        let x = SaturatedElement::from_chains([(p1.clone(), Chain::parse("[0]").unwrap())]);
        let r = comb_functions(&x, None, [0; 4]).unwrap();
        assert_eq!((r.gamma, r.rank, r.supp, r.kappa), (4, 3, 1, 3));
        let x = SaturatedElement::from_chains([(p1, Chain::atom(1, 1))]);
        let r = comb_functions(&x, None, [0; 4]).unwrap();
        assert_eq!((r.gamma, r.rank, r.supp, r.kappa), (2, 1, 1, 1));
        let p2 = pts.iter().find(|c| c.degree() == 2).unwrap().clone();
        assert_eq!(p2.degree(), 2);
        let x = SaturatedElement::from_chains([(p2, Chain::atom(1, 1))]);
        let r = comb_functions(&x, None, [0; 4]).unwrap();
        assert_eq!((r.gamma, r.supp), (4, 2));
    }

    #[test]
    fn global_mobius_examples() {
        let f = FieldTable::get(3).unwrap();
        let pts = closed_points_upto(&f, 1).unwrap();
        let (c1, c2) = (pts[0].clone(), pts[1].clone());
        let w = SaturatedElement::from_chains([(c1.clone(), Chain::atom(1, 1)), (c2.clone(), Chain::atom(2, 1))]);
        let pair = PairWX::new(w.clone(), w.clone()).unwrap();
        assert_eq!(mobius_global(&pair).unwrap(), 1);
        let x = SaturatedElement::from_chains([
            (c1.clone(), Chain::from_runs(&[(QElem::line(1, 1), 1)]).unwrap()),
            (c2, Chain::atom(2, 1)),
        ]);
        assert_eq!(mobius_global(&PairWX::new(w.clone(), x).unwrap()).unwrap(), -1);
        let x = SaturatedElement::from_chains([(c1, Chain::parse("[0]+[V1]").unwrap())]);
        assert!(PairWX::new(w, x).is_err());
    }

    #[test]
    fn text_roundtrip() {
        let f = FieldTable::get(3).unwrap();
        let pts = closed_points_upto(&f, 2).unwrap();
        let x = SaturatedElement::from_chains([
            (pts[0].clone(), Chain::atom(1, 2)),
            (pts[3].clone(), Chain::parse("[0]").unwrap()),
            (pts[5].clone(), Chain::parse("[l2,1]+[V1]").unwrap()),
        ]);
        assert_eq!(SaturatedElement::parse(&f, &x.text()).unwrap(), x);
    }
}
