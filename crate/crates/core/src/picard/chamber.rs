//! Chamber decomposition of nef classes along contractions to P^2 blown up twice.

use serde::Serialize;

use super::cone::{det6, Vec6};
use super::lattice::{disjoint_triples, minus_one_classes, PicClass};
use crate::error::{Dp4Error, Result};

/// Generators `(-K, -ψ₃*K, -ψ₂*K, H, F₁, F₂)` of the chamber of an ordered
/// disjoint triple `(E₁, E₂, E₃)`.
pub fn chamber_generators(triple: [usize; 3]) -> [PicClass; 6] {
    let l = minus_one_classes();
    let (e1, e2, e3) = (l[triple[0]], l[triple[1]], l[triple[2]]);
    let rest: Vec<PicClass> = l
        .iter()
        .copied()
        .filter(|c| c.dot(&e1) == 0 && c.dot(&e2) == 0 && c.dot(&e3) == 0 && *c != e1 && *c != e2 && *c != e3)
        .collect();
    assert_eq!(rest.len(), 3, "three lines survive on the degree seven surface");
    // the line meeting the other two contracts to P^1 x P^1
    let li = (0..3)
        .find(|&i| (0..3).filter(|&j| j != i).all(|j| rest[i].dot(&rest[j]) == 1))
        .expect("one line meets both others");
    let others: Vec<PicClass> = (0..3).filter(|&j| j != li).map(|j| rest[j]).collect();
    let (line, ea, eb) = (rest[li], others[0], others[1]);
    let mk = PicClass::MINUS_K;
    let h = line + ea + eb;
    [mk, mk + e1, mk + e1 + e2, h, line + ea, line + eb]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChamberDecomposition {
    pub b: i64,
    pub b3: i64,
    pub b2: i64,
    pub x: i64,
    pub y1: i64,
    pub y2: i64,
    /// Indices into the canonical line list.
    pub triple: [usize; 3],
}

impl ChamberDecomposition {
    pub fn coefficients(&self) -> [i64; 6] {
        [self.b, self.b3, self.b2, self.x, self.y1, self.y2]
    }

    pub fn recompose(&self) -> PicClass {
        let g = chamber_generators(self.triple);
        let c = self.coefficients();
        (0..6).fold(PicClass::ZERO, |acc, i| acc + c[i] * g[i])
    }
}

/// Solves `Σ c_i g_i = α` exactly; `None` when there is no integral solution.
fn solve(g: &[PicClass; 6], alpha: &PicClass) -> Option<[i64; 6]> {
    // columns are the generators
    let m: [Vec6; 6] = std::array::from_fn(|r| std::array::from_fn(|c| g[c].0[r] as i128));
    let d = det6(&m);
    if d == 0 {
        return None;
    }
    let mut out = [0i64; 6];
    for (c, slot) in out.iter_mut().enumerate() {
        let mut mc = m;
        for (r, row) in mc.iter_mut().enumerate() {
            row[c] = alpha.0[r] as i128;
        }
        let n = det6(&mc);
        if n % d != 0 {
            return None;
        }
        *slot = (n / d) as i64;
    }
    Some(out)
}

/// First admissible decomposition over the 960 triples in canonical order.
pub fn chamber_decompose(alpha: &PicClass) -> Result<ChamberDecomposition> {
    if !alpha.is_nef() {
        return Err(Dp4Error::InvalidClass(format!("{alpha} is not nef")));
    }
    for &t in disjoint_triples() {
        let g = chamber_generators(t);
        if let Some(c) = solve(&g, alpha) {
            if c.iter().all(|&x| x >= 0) {
                return Ok(ChamberDecomposition { b: c[0], b3: c[1], b2: c[2], x: c[3], y1: c[4], y2: c[5], triple: t });
            }
        }
    }
    Err(Dp4Error::InvalidClass(format!("no chamber contains {alpha}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chambers_are_unimodular() {
        for &t in disjoint_triples() {
            let g = chamber_generators(t);
            let m: [Vec6; 6] = std::array::from_fn(|r| std::array::from_fn(|c| g[c].0[r] as i128));
            assert_eq!(det6(&m).abs(), 1);
            assert_eq!(g.map(|c| c.h()), [4, 5, 6, 3, 2, 2]);
        }
    }

    #[test]
    fn examples() {
        let d = chamber_decompose(&PicClass::MINUS_K).unwrap();
        assert_eq!(d.coefficients(), [1, 0, 0, 0, 0, 0]);
        let d = chamber_decompose(&PicClass::F).unwrap();
        assert_eq!(d.coefficients(), [0, 0, 0, 0, 1, 0]);
        let a = PicClass::MINUS_K + PicClass::F + PicClass::F_PRIME;
        let d = chamber_decompose(&a).unwrap();
        assert_eq!(d.coefficients(), [1, 0, 0, 0, 1, 1]);
        assert_eq!(4 * d.b + 2 * d.y1 + 2 * d.y2, a.h());
        assert!(chamber_decompose(&PicClass::e(1)).is_err());
    }
}
