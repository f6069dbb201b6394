//! Chains: join-preserving maps `f: N -> Q` with `f(n) = V` for large `n`,
//! the local saturated elements at one geometric point.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::{Mutex, OnceLock};

use serde::{Serialize, Serializer};

use super::q::{elements, QElem, QKind};
use crate::error::{Dp4Error, Result};

/// Stored as the sequence `f(1), f(2), ..` up to the last value below `V`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Chain(Vec<QElem>);

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Multiplicities {
    pub zero: u32,
    pub lines: u32,
    pub halves: u32,
    pub planes: u32,
}

impl Chain {
    pub fn trivial() -> Chain {
        Chain(Vec::new())
    }

    /// `d[ℓ_{i,1} ⊕ ℓ_{i,2}]`.
    pub fn atom(i: usize, d: u32) -> Chain {
        Chain(vec![QElem::plane(i); d as usize])
    }

    pub fn from_runs(runs: &[(QElem, u32)]) -> Result<Chain> {
        let mut seq: Vec<QElem> = Vec::new();
        for &(e, m) in runs {
            if m == 0 || e == QElem::V {
                return Err(Dp4Error::InvalidFunction(format!("bad run {m}[{e}]")));
            }
            if let Some(&last) = seq.last() {
                if !(last.leq(e) && last != e) {
                    return Err(Dp4Error::InvalidFunction(format!("{last} then {e} is not increasing")));
                }
            }
            seq.extend(std::iter::repeat_n(e, m as usize));
        }
        Ok(Chain(seq))
    }

    fn from_seq(mut seq: Vec<QElem>) -> Chain {
        while seq.last() == Some(&QElem::V) {
            seq.pop();
        }
        debug_assert!(seq.windows(2).all(|w| w[0].leq(w[1])));
        Chain(seq)
    }

    pub fn is_trivial(&self) -> bool {
        self.0.is_empty()
    }

    /// Total multiplicity: the largest `n` with `f(n) != V`.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `f(n)` for `n >= 1`.
    pub fn value(&self, n: usize) -> QElem {
        assert!(n >= 1);
        self.0.get(n - 1).copied().unwrap_or(QElem::V)
    }

    pub fn sequence(&self) -> &[QElem] {
        &self.0
    }

    pub fn runs(&self) -> Vec<(QElem, u32)> {
        let mut out: Vec<(QElem, u32)> = Vec::new();
        for &e in &self.0 {
            match out.last_mut() {
                Some((last, m)) if *last == e => *m += 1,
                _ => out.push((e, 1)),
            }
        }
        out
    }

    /// The multiplicity function `g(q) = #{n : f(n) <= q}`.
    pub fn multiplicity(&self, q: QElem) -> Option<u32> {
        if q == QElem::V {
            return None;
        }
        Some(self.0.iter().filter(|&&e| e.leq(q)).count() as u32)
    }

    pub fn multiplicities(&self) -> Multiplicities {
        let mut m = Multiplicities::default();
        for e in &self.0 {
            match e.kind() {
                QKind::Zero => m.zero += 1,
                QKind::Line => m.lines += 1,
                QKind::Half => m.halves += 1,
                QKind::Plane => m.planes += 1,
                QKind::Top => unreachable!(),
            }
        }
        m
    }

    pub fn gamma(&self) -> u32 {
        self.0.iter().map(|e| e.gamma()).sum()
    }

    pub fn rank(&self) -> u32 {
        self.0.iter().map(|e| e.rank()).sum()
    }

    /// Chain order: `f <= f'` when `f'(n) <= f(n)` in Q for every `n`.
    pub fn leq(&self, other: &Chain) -> bool {
        other.0.len() >= self.0.len() && (1..=other.0.len()).all(|n| other.value(n).leq(self.value(n)))
    }

    /// Least upper bound: the pointwise meet.
    pub fn join(&self, other: &Chain) -> Chain {
        let n = self.len().max(other.len());
        Chain::from_seq((1..=n).map(|i| self.value(i).meet(other.value(i))).collect())
    }

    /// Pairs of the form `d[ℓ_{i,1} ⊕ ℓ_{i,2}]` give `(i, d)`.
    pub fn as_atom(&self) -> Option<(usize, u32)> {
        if self.is_trivial() {
            return None;
        }
        let first = self.0[0];
        (first.kind() == QKind::Plane && self.0.iter().all(|&e| e == first))
            .then(|| (first.pair_index().unwrap(), self.len() as u32))
    }

    pub fn text(&self) -> String {
        if self.is_trivial() {
            return "V".into();
        }
        self.runs()
            .iter()
            .map(|(e, m)| if *m == 1 { format!("[{e}]") } else { format!("{m}[{e}]") })
            .collect::<Vec<_>>()
            .join("+")
    }

    /// Parses `m0[0]+m1[l1,1]+m2[l1,1+l1,2]`; a missing multiplicity means 1
    /// and `V` is the trivial chain.
    pub fn parse(s: &str) -> Result<Chain> {
        let s = s.trim();
        if s == "V" || s.is_empty() {
            return Ok(Chain::trivial());
        }
        let bad = |why: &str| Dp4Error::Config(format!("bad chain {s:?}: {why}"));
        let mut runs = Vec::new();
        let mut rest = s;
        loop {
            let open = rest.find('[').ok_or_else(|| bad("expected '['"))?;
            let close = rest.find(']').ok_or_else(|| bad("expected ']'"))?;
            let m = rest[..open].trim();
            let m: u32 = if m.is_empty() { 1 } else { m.parse().map_err(|_| bad("multiplicity"))? };
            runs.push((QElem::parse(&rest[open + 1..close])?, m));
            rest = rest[close + 1..].trim_start();
            if rest.is_empty() {
                break;
            }
            rest = rest.strip_prefix('+').ok_or_else(|| bad("expected '+'"))?;
        }
        Chain::from_runs(&runs).map_err(|e| bad(&e.to_string()))
    }
}

impl fmt::Display for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text())
    }
}

impl Serialize for Chain {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.text())
    }
}

/// Least meet-preserving function above a monotone `g` on `Q \ {V}`,
/// returned as its chain `f(n) = min{q : g(q) >= n}`.
pub fn saturate(g: impl Fn(QElem) -> u32) -> Result<Chain> {
    let elems = &elements()[..15];
    let mut val = [0u32; 15];
    for (v, &e) in val.iter_mut().zip(elems) {
        *v = g(e);
    }
    for (a, &ea) in elems.iter().enumerate() {
        for (b, &eb) in elems.iter().enumerate().skip(a + 1) {
            if ea.leq(eb) && val[a] > val[b] {
                return Err(Dp4Error::InvalidFunction(format!("g({ea}) > g({eb}) with {ea} <= {eb}")));
            }
        }
    }
    // the least meet-preserving function above g has upper level sets
    // generated by the meet of {q : g(q) >= n}
    let top = val.iter().copied().max().unwrap_or(0);
    let seq = (1..=top)
        .map(|n| elems.iter().zip(&val).filter(|(_, &v)| v >= n).fold(QElem::V, |acc, (&e, _)| acc.meet(e)))
        .collect();
    Ok(Chain::from_seq(seq))
}

/// Elements of Q covered by `e`.
fn lower_covers(e: QElem) -> Vec<QElem> {
    let below: Vec<QElem> = elements().iter().copied().filter(|&x| x.leq(e) && x != e).collect();
    below.iter().copied().filter(|&x| !below.iter().any(|&y| x.leq(y) && x != y)).collect()
}

/// Every chain strictly above `f0` dominates one of these.
fn generators_above(f0: &Chain) -> Vec<Chain> {
    let mut out = BTreeSet::new();
    for n in 1..=f0.len() + 1 {
        for c in lower_covers(f0.value(n)) {
            let seq = (1..=f0.len().max(n)).map(|m| if m <= n { f0.value(m).meet(c) } else { f0.value(m) }).collect();
            out.insert(Chain::from_seq(seq));
        }
    }
    out.into_iter().collect()
}

fn minimal(cands: Vec<Chain>) -> Vec<Chain> {
    cands.iter().filter(|g| !cands.iter().any(|h| h != *g && h.leq(g))).cloned().collect()
}

/// All `f` with `f0 ≺ f`.
pub fn covers(f0: &Chain) -> Vec<Chain> {
    let mut c = minimal(generators_above(f0));
    c.sort_by(|a, b| (a.gamma(), a).cmp(&(b.gamma(), b)));
    c
}

/// Joins of all subsets of the covers of `f0`, including `f0` itself.
pub fn essentials(f0: &Chain) -> Vec<Chain> {
    let cov = covers(f0);
    let mut out = BTreeSet::new();
    for s in 0u64..1 << cov.len() {
        let j = (0..cov.len()).filter(|b| s >> b & 1 == 1).fold(f0.clone(), |acc, b| acc.join(&cov[b]));
        out.insert(j);
    }
    let mut v: Vec<Chain> = out.into_iter().collect();
    v.sort_by(|a, b| (a.gamma(), a).cmp(&(b.gamma(), b)));
    v
}

#[derive(Clone, Debug, Serialize)]
pub struct CoverReport {
    pub covers: Vec<Chain>,
    pub essentials: Vec<Chain>,
}

pub fn covers_and_essentials(f0: &Chain) -> CoverReport {
    CoverReport { covers: covers(f0), essentials: essentials(f0) }
}

/// The closed interval `[lo, hi]` in chain order, sorted by γ.
pub fn interval(lo: &Chain, hi: &Chain) -> Vec<Chain> {
    fn rec(lo: &Chain, hi: &Chain, n: usize, cur: &mut Vec<QElem>, out: &mut Vec<Chain>) {
        if n > hi.len() {
            out.push(Chain(cur.clone()));
            return;
        }
        let (a, b) = (hi.value(n), lo.value(n));
        if b == QElem::V {
            // stopping here keeps every later value at V
            out.push(Chain(cur.clone()));
        }
        let prev = cur.last().copied().unwrap_or(QElem::ZERO);
        for &e in elements() {
            if e != QElem::V && a.leq(e) && e.leq(b) && prev.leq(e) {
                cur.push(e);
                rec(lo, hi, n + 1, cur, out);
                cur.pop();
            }
        }
    }
    if !lo.leq(hi) {
        return Vec::new();
    }
    let mut out = Vec::new();
    rec(lo, hi, 1, &mut Vec::new(), &mut out);
    out.sort_by(|a, b| (a.gamma(), a).cmp(&(b.gamma(), b)));
    out.dedup();
    out
}

/// Chains `f >= f0` with `γ(f) <= gamma_max`, sorted by γ.
pub fn chains_above(f0: &Chain, gamma_max: u32) -> Vec<Chain> {
    fn rec(f0: &Chain, budget: u32, cur: &mut Vec<QElem>, out: &mut Vec<Chain>) {
        let n = cur.len() + 1;
        let b = f0.value(n);
        if b == QElem::V {
            out.push(Chain(cur.clone()));
        }
        let prev = cur.last().copied().unwrap_or(QElem::ZERO);
        for &e in elements() {
            if e != QElem::V && e.leq(b) && prev.leq(e) && e.gamma() <= budget {
                cur.push(e);
                rec(f0, budget - e.gamma(), cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    if f0.gamma() <= gamma_max {
        rec(f0, gamma_max, &mut Vec::new(), &mut out);
    }
    out.sort_by(|a, b| (a.gamma(), a).cmp(&(b.gamma(), b)));
    out
}

type MuCache = Mutex<HashMap<(Chain, Chain), i64>>;

fn mu_cache() -> &'static MuCache {
    static C: OnceLock<MuCache> = OnceLock::new();
    C.get_or_init(Default::default)
}

/// Möbius function of the chain poset, by recursion over the interval.
pub fn mobius_local(f0: &Chain, f: &Chain) -> Result<i64> {
    if !f0.leq(f) {
        return Err(Dp4Error::Precondition(format!("{f0} is not below {f}")));
    }
    if f0 == f {
        return Ok(1);
    }
    let key = (f0.clone(), f.clone());
    if let Some(&v) = mu_cache().lock().unwrap().get(&key) {
        return Ok(v);
    }
    let iv = interval(f0, f);
    let mut mu: Vec<i64> = Vec::with_capacity(iv.len());
    for (i, y) in iv.iter().enumerate() {
        let v = if y == f0 { 1 } else { -(0..i).filter(|&j| iv[j].leq(y)).map(|j| mu[j]).sum::<i64>() };
        mu.push(v);
    }
    let v = mu[iv.iter().position(|y| y == f).unwrap()];
    mu_cache().lock().unwrap().insert(key, v);
    Ok(v)
}

/// `Σ_{x >= f0} μ(f0, x) z^{γ(x)}` as coefficients in `z`, summed over
/// the essential chains (the only ones with nonzero μ).
pub fn local_euler_polynomial(f0: &Chain) -> Vec<i64> {
    let ess = essentials(f0);
    let top = ess.iter().map(|c| c.gamma()).max().unwrap_or(0) as usize;
    let mut p = vec![0i64; top + 1];
    for x in &ess {
        p[x.gamma() as usize] += mobius_local(f0, x).unwrap();
    }
    while p.len() > 1 && p.last() == Some(&0) {
        p.pop();
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ch(s: &str) -> Chain {
        Chain::parse(s).unwrap()
    }

    #[test]
    fn parse_and_text() {
        for s in ["V", "[0]", "2[0]+[l1,1]+3[l1,1+l1,2]", "[l2,2]+[V2]"] {
            assert_eq!(ch(s).text(), s);
        }
        assert_eq!(ch("1[0]"), ch("[0]"));
        assert!(Chain::parse("[V1]+[V2]").is_err());
        assert!(Chain::parse("[l1,1]+[l1,1]").is_err());
    }

    #[test]
    fn joins() {
        let f = ch("[l1,1]+[V1]");
        assert_eq!(f.join(&Chain::trivial()), f);
        assert_eq!(ch("[V1]").join(&ch("[V2]")), ch("[0]"));
        assert_eq!(ch("[l1,1+l1,2]").join(&ch("[V1]")), ch("[l1,1]"));
    }

    #[test]
    fn saturate_examples() {
        let v1 = QElem::half(1);
        let v2 = QElem::half(2);
        let c = saturate(|e| u32::from(e == v1 || e == v2)).unwrap();
        assert_eq!(c, ch("[0]"));
        let p = QElem::plane(1);
        assert_eq!(saturate(|e| if e == p { 2 } else { 0 }).unwrap(), ch("2[l1,1+l1,2]"));
        assert!(saturate(|e| u32::from(e == QElem::ZERO)).is_err());
    }

    #[test]
    fn covers_of_atoms() {
        for d in 1..4 {
            let f0 = Chain::atom(1, d);
            let mut c = covers(&f0);
            c.sort();
            let mut expect = vec![
                Chain::atom(1, d + 1),
                Chain::from_runs(&[(QElem::line(1, 1), 1)]).unwrap().join(&f0),
                Chain::from_runs(&[(QElem::line(1, 2), 1)]).unwrap().join(&f0),
            ];
            expect.sort();
            assert_eq!(c, expect);
        }
    }

    #[test]
    fn trivial_essentials() {
        let e = essentials(&Chain::trivial());
        assert_eq!(e.len(), 16);
        assert!(e.iter().all(|c| c.len() <= 1));
    }

    #[test]
    fn mobius_examples() {
        let t = Chain::trivial();
        assert_eq!(mobius_local(&t, &t).unwrap(), 1);
        assert_eq!(mobius_local(&t, &ch("[V1]")).unwrap(), -1);
        assert_eq!(interval(&t, &ch("[0]")).len(), 16);
        assert_eq!(mobius_local(&t, &ch("[0]")).unwrap(), -3);
        assert!(mobius_local(&ch("[V1]"), &ch("[V2]")).is_err());
    }

    #[test]
    fn euler_polynomials() {
        assert_eq!(local_euler_polynomial(&Chain::trivial()), vec![1, 0, -6, 8, -3]);
        for d in 1..=4u32 {
            let mut p = vec![0i64; 2 * d as usize + 5];
            p[2 * d as usize] = 1;
            p[2 * d as usize + 1] = -2;
            p[2 * d as usize + 3] = 2;
            p[2 * d as usize + 4] = -1;
            assert_eq!(local_euler_polynomial(&Chain::atom(2, d)), p);
        }
    }
}
