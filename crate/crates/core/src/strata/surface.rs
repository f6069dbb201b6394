//! The split quartic del Pezzo surface as the blow-up of `P^1 x P^1` at four
//! points `P_i = (p_i, p'_i)`.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Dp4Error, Result};
use crate::ffpoly::{FieldTable, Fq, Functional};

/// Permutations of `0..4` in lexicographic order.
fn permutations4() -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    if (0..4).all(|i| (0..i).all(|j| p[i] != p[j])) {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

fn det(f: &FieldTable, a: (Fq, Fq), b: (Fq, Fq)) -> Fq {
    f.sub(f.mul(a.0, b.1), f.mul(b.0, a.1))
}

/// Cross-ratio as an unreduced fraction `(num, den)`.
fn cross_ratio(f: &FieldTable, p: &[(Fq, Fq); 4]) -> (Fq, Fq) {
    (f.mul(det(f, p[0], p[2]), det(f, p[1], p[3])), f.mul(det(f, p[0], p[3]), det(f, p[1], p[2])))
}

#[derive(Clone, Debug, Serialize)]
pub struct Surface {
    pub q: u32,
    #[serde(skip)]
    field: Arc<FieldTable>,
    /// Points of the first factor, as `(x, y)`.
    pub p: [(Fq, Fq); 4],
    /// Points of the second factor.
    pub p_prime: [(Fq, Fq); 4],
    /// Set when no relabelling changes the cross-ratio (every quadruple over
    /// `F_3` is harmonic); then the `P_i` lie on a `(1,1)` curve.
    pub degenerate: bool,
}

impl Surface {
    pub fn new(q: u32) -> Result<Surface> {
        let field = FieldTable::get(q)?;
        if q < 3 {
            return Err(Dp4Error::InvalidSurface(format!("P^1(F_{q}) has fewer than four points")));
        }
        let mut pts: Vec<(Fq, Fq)> = field.elements().map(|e| (e, 1)).collect();
        pts.push((1, 0));
        let p: [(Fq, Fq); 4] = [pts[0], pts[1], pts[2], pts[3]];
        let base = cross_ratio(&field, &p);
        let mut p_prime = p;
        let mut degenerate = true;
        for sigma in permutations4() {
            let cand = sigma.map(|i| p[i]);
            let cr = cross_ratio(&field, &cand);
            if field.mul(cr.0, base.1) != field.mul(base.0, cr.1) {
                p_prime = cand;
                degenerate = false;
                break;
            }
        }
        Ok(Surface { q, field, p, p_prime, degenerate })
    }

    /// A surface with the given centres. Points are projective `(x, y)` pairs
    /// and must be pairwise distinct on each factor.
    pub fn with_points(q: u32, p: [(Fq, Fq); 4], p_prime: [(Fq, Fq); 4]) -> Result<Surface> {
        let field = FieldTable::get(q)?;
        if q < 3 {
            return Err(Dp4Error::InvalidSurface(format!("P^1(F_{q}) has fewer than four points")));
        }
        let mut normalized = [p, p_prime];
        for side in normalized.iter_mut() {
            for pt in side.iter_mut() {
                if pt.0 as u32 >= q || pt.1 as u32 >= q {
                    return Err(Dp4Error::InvalidSurface(format!("{pt:?} is not a point over F_{q}")));
                }
                *pt = match pt {
                    (0, 0) => return Err(Dp4Error::InvalidSurface("(0, 0) is not a projective point".into())),
                    (x, 0) if *x != 0 => (1, 0),
                    (x, y) => (field.div(*x, *y), 1),
                };
            }
            for i in 0..4 {
                for j in 0..i {
                    if side[i] == side[j] {
                        return Err(Dp4Error::InvalidSurface(format!("centres {} and {} coincide", j + 1, i + 1)));
                    }
                }
            }
        }
        let [p, p_prime] = normalized;
        let cr = cross_ratio(&field, &p);
        let cr_prime = cross_ratio(&field, &p_prime);
        let degenerate = field.mul(cr.0, cr_prime.1) == field.mul(cr_prime.0, cr.1);
        Ok(Surface { q, field, p, p_prime, degenerate })
    }

    pub fn field(&self) -> &FieldTable {
        &self.field
    }

    pub fn field_arc(&self) -> Arc<FieldTable> {
        self.field.clone()
    }

    /// `φ_i`, vanishing at `p_i`, applied to `s`.
    pub fn phi(&self, i: usize) -> Functional {
        Functional::vanishing_on(&self.field, self.p[i].0, self.p[i].1)
    }

    /// `φ'_i`, vanishing at `p'_i`, applied to `t`.
    pub fn phi_prime(&self, i: usize) -> Functional {
        Functional::vanishing_on(&self.field, self.p_prime[i].0, self.p_prime[i].1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn configurations() {
        assert!(Surface::new(2).is_err());
        let s = Surface::new(3).unwrap();
        assert!(s.degenerate);
        for q in [4, 5, 7, 8, 9] {
            let s = Surface::new(q).unwrap();
            assert!(!s.degenerate, "q = {q}");
            let f = s.field();
            // points on each factor are distinct
            for i in 0..4 {
                for j in 0..i {
                    assert_ne!(det(f, s.p[i], s.p[j]), 0);
                    assert_ne!(det(f, s.p_prime[i], s.p_prime[j]), 0);
                }
            }
        }
    }
}
