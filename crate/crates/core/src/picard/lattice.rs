//! The Picard lattice `Z F + Z F' + Σ Z E_i` and its distinguished classes.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use serde::{Serialize, Serializer};

use crate::error::{Dp4Error, Result};

/// Coordinates `(x, y, c_1..c_4)` of `x F + y F' + Σ c_i E_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PicClass(pub [i64; 6]);

impl PicClass {
    pub const ZERO: PicClass = PicClass([0; 6]);
    pub const F: PicClass = PicClass([1, 0, 0, 0, 0, 0]);
    pub const F_PRIME: PicClass = PicClass([0, 1, 0, 0, 0, 0]);
    /// `-K = 2F + 2F' - Σ E_i`.
    pub const MINUS_K: PicClass = PicClass([2, 2, -1, -1, -1, -1]);

    /// Exceptional class `E_i`, `i` in `1..=4`.
    pub fn e(i: usize) -> PicClass {
        assert!((1..=4).contains(&i), "exceptional index out of range");
        let mut v = [0; 6];
        v[i + 1] = 1;
        PicClass(v)
    }

    /// The class with standard invariants `a = F·α`, `a' = F'·α`, `k_i = E_i·α`.
    pub fn from_invariants(a: i64, a_prime: i64, k: [i64; 4]) -> PicClass {
        PicClass([a_prime, a, -k[0], -k[1], -k[2], -k[3]])
    }

    /// Intersection number.
    pub fn dot(&self, other: &PicClass) -> i64 {
        let (u, v) = (&self.0, &other.0);
        u[0] * v[1] + u[1] * v[0] - (2..6).map(|i| u[i] * v[i]).sum::<i64>()
    }

    /// `h(α) = -K·α`.
    pub fn h(&self) -> i64 {
        PicClass::MINUS_K.dot(self)
    }

    /// Coefficients of the functional `β -> self·β` in the coordinate basis.
    pub fn functional(&self) -> [i64; 6] {
        let u = &self.0;
        [u[1], u[0], -u[2], -u[3], -u[4], -u[5]]
    }

    /// Standard invariants `(a, a', k)`.
    pub fn standard_invariants(&self) -> (i64, i64, [i64; 4]) {
        let k = [1, 2, 3, 4].map(|i| PicClass::e(i).dot(self));
        (PicClass::F.dot(self), PicClass::F_PRIME.dot(self), k)
    }

    /// Textual form `a,a',k1,k2,k3,k4`.
    pub fn text(&self) -> String {
        let (a, ap, k) = self.standard_invariants();
        format!("{a},{ap},{},{},{},{}", k[0], k[1], k[2], k[3])
    }

    /// Parses `a,a',k1,k2,k3,k4`, or `h,a,a',k1,k2,k3,k4` with `h` checked.
    pub fn parse(s: &str) -> Result<PicClass> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 6 && parts.len() != 7 {
            return Err(Dp4Error::InvalidClass(format!(
                "expected a,a',k1,k2,k3,k4 or h,a,a',k1,k2,k3,k4, got {s:?}"
            )));
        }
        let v: Vec<i64> = parts
            .iter()
            .map(|p| p.parse().map_err(|_| Dp4Error::InvalidClass(format!("{p:?} is not an integer in {s:?}"))))
            .collect::<Result<_>>()?;
        let t = &v[v.len() - 6..];
        let c = PicClass::from_invariants(t[0], t[1], [t[2], t[3], t[4], t[5]]);
        if v.len() == 7 && c.h() != v[0] {
            return Err(Dp4Error::InvalidClass(format!("{s:?}: h is {} for these invariants, not {}", c.h(), v[0])));
        }
        Ok(c)
    }

    pub fn is_nef(&self) -> bool {
        minus_one_classes().iter().all(|c| c.dot(self) >= 0)
    }

    /// Image under the automorphism permuting `E_i -> E_perm[i]` and optionally
    /// swapping `F` and `F'`.
    pub fn permuted(&self, perm: [usize; 4], swap: bool) -> PicClass {
        let u = &self.0;
        let mut v = [0; 6];
        if swap {
            v[0] = u[1];
            v[1] = u[0];
        } else {
            v[0] = u[0];
            v[1] = u[1];
        }
        for i in 0..4 {
            v[2 + perm[i]] = u[2 + i];
        }
        PicClass(v)
    }
}

impl Add for PicClass {
    type Output = PicClass;
    fn add(self, o: PicClass) -> PicClass {
        PicClass(std::array::from_fn(|i| self.0[i] + o.0[i]))
    }
}

impl Sub for PicClass {
    type Output = PicClass;
    fn sub(self, o: PicClass) -> PicClass {
        PicClass(std::array::from_fn(|i| self.0[i] - o.0[i]))
    }
}

impl Neg for PicClass {
    type Output = PicClass;
    fn neg(self) -> PicClass {
        PicClass(self.0.map(|x| -x))
    }
}

impl Mul<PicClass> for i64 {
    type Output = PicClass;
    fn mul(self, o: PicClass) -> PicClass {
        PicClass(o.0.map(|x| self * x))
    }
}

impl fmt::Display for PicClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text())
    }
}

impl Serialize for PicClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.text())
    }
}

/// The 16 lines: `E_i`, `F - E_i`, `F' - E_i`, `F + F' - Σ_{j≠i} E_j`.
pub fn minus_one_classes() -> &'static [PicClass] {
    static LINES: OnceLock<Vec<PicClass>> = OnceLock::new();
    LINES.get_or_init(|| {
        let mut out = Vec::with_capacity(16);
        out.extend((1..=4).map(PicClass::e));
        out.extend((1..=4).map(|i| PicClass::F - PicClass::e(i)));
        out.extend((1..=4).map(|i| PicClass::F_PRIME - PicClass::e(i)));
        for i in 1..=4 {
            let mut c = PicClass::F + PicClass::F_PRIME;
            for j in (1..=4).filter(|&j| j != i) {
                c = c - PicClass::e(j);
            }
            out.push(c);
        }
        out
    })
}

/// Ordered triples of pairwise disjoint lines, as indices into [`minus_one_classes`].
pub fn disjoint_triples() -> &'static [[usize; 3]] {
    static TRIPLES: OnceLock<Vec<[usize; 3]>> = OnceLock::new();
    TRIPLES.get_or_init(|| {
        let l = minus_one_classes();
        let mut out = Vec::new();
        for i in 0..16 {
            for j in 0..16 {
                for k in 0..16 {
                    if i != j && j != k && i != k && l[i].dot(&l[j]) == 0 && l[i].dot(&l[k]) == 0 && l[j].dot(&l[k]) == 0
                    {
                        out.push([i, j, k]);
                    }
                }
            }
        }
        out
    })
}

/// The ten conic classes `C² = 0`, `-K·C = 2`.
pub fn conic_classes() -> &'static [PicClass] {
    static CONICS: OnceLock<Vec<PicClass>> = OnceLock::new();
    CONICS.get_or_init(|| {
        let (f, fp) = (PicClass::F, PicClass::F_PRIME);
        let e = PicClass::e;
        let all = e(1) + e(2) + e(3) + e(4);
        let mut out = vec![f, fp];
        for i in 1..=4 {
            for j in i + 1..=4 {
                out.push(f + fp - e(i) - e(j));
            }
        }
        out.push(2 * f + fp - all);
        out.push(f + 2 * fp - all);
        out
    })
}

/// A birational morphism to P^1 x P^1: two conic classes meeting once and the
/// four lines it contracts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Presentation {
    pub c: PicClass,
    pub c_prime: PicClass,
    pub e: [PicClass; 4],
}

impl Presentation {
    pub fn standard() -> Presentation {
        Presentation {
            c: PicClass::F,
            c_prime: PicClass::F_PRIME,
            e: [1, 2, 3, 4].map(PicClass::e),
        }
    }

    /// `(h, a, a', k)` of a class in this presentation (no nef check).
    pub fn invariants_unchecked(&self, alpha: &PicClass) -> ClassInvariants {
        ClassInvariants {
            h: alpha.h(),
            a: self.c.dot(alpha),
            a_prime: self.c_prime.dot(alpha),
            k: self.e.map(|e| e.dot(alpha)),
        }
    }
}

/// All presentations, in canonical order; closed under swapping the conics.
pub fn presentations() -> &'static [Presentation] {
    static PRES: OnceLock<Vec<Presentation>> = OnceLock::new();
    PRES.get_or_init(|| {
        let lines = minus_one_classes();
        let mut out = Vec::new();
        for &c in conic_classes() {
            for &cp in conic_classes() {
                if c.dot(&cp) != 1 {
                    continue;
                }
                let e: Vec<PicClass> =
                    lines.iter().copied().filter(|l| l.dot(&c) == 0 && l.dot(&cp) == 0).collect();
                let e: [PicClass; 4] = e.try_into().expect("four contracted lines");
                out.push(Presentation { c, c_prime: cp, e });
            }
        }
        out
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ClassInvariants {
    pub h: i64,
    pub a: i64,
    pub a_prime: i64,
    pub k: [i64; 4],
}

impl ClassInvariants {
    pub fn sum_k(&self) -> i64 {
        self.k.iter().sum()
    }

    pub fn k_u32(&self) -> [u32; 4] {
        self.k.map(|x| x as u32)
    }
}

/// `class_invariants(α, ρ)`; rejects non-nef classes.
pub fn class_invariants(alpha: &PicClass, rho: &Presentation) -> Result<ClassInvariants> {
    if !alpha.is_nef() {
        return Err(Dp4Error::InvalidClass(format!("{alpha} is not nef")));
    }
    Ok(rho.invariants_unchecked(alpha))
}

/// Nef classes with `0 <= h <= h_max`, ordered by `(h, a, a', k)`.
pub fn nef_classes_upto(h_max: i64) -> Vec<PicClass> {
    let mut out = Vec::new();
    // nef forces k_i <= min(a, a') and a + a' >= Σ_{j≠i} k_j, so h >= a, a'
    for a in 0..=h_max.max(0) {
        for ap in 0..=h_max.max(0) {
            let m = a.min(ap);
            for k1 in 0..=m {
                for k2 in 0..=m {
                    for k3 in 0..=m {
                        for k4 in 0..=m {
                            let c = PicClass::from_invariants(a, ap, [k1, k2, k3, k4]);
                            if c.h() <= h_max && c.is_nef() {
                                out.push(c);
                            }
                        }
                    }
                }
            }
        }
    }
    out.sort_by_key(|c| {
        let (a, ap, k) = c.standard_invariants();
        (c.h(), a, ap, k)
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairing_examples() {
        assert_eq!(PicClass::F.dot(&PicClass::F_PRIME), 1);
        assert_eq!(PicClass::e(1).dot(&PicClass::e(2)), 0);
        assert_eq!(PicClass::MINUS_K.dot(&PicClass::MINUS_K), 4);
    }

    #[test]
    fn lines_match_exhaustive_search() {
        let mut found = Vec::new();
        let r = -3..=3i64;
        for x in r.clone() {
            for y in r.clone() {
                for a in r.clone() {
                    for b in r.clone() {
                        for c in r.clone() {
                            for d in r.clone() {
                                let v = PicClass([x, y, a, b, c, d]);
                                if v.dot(&v) == -1 && v.h() == 1 {
                                    found.push(v);
                                }
                            }
                        }
                    }
                }
            }
        }
        let mut lines = minus_one_classes().to_vec();
        lines.sort();
        found.sort();
        assert_eq!(found, lines);
    }

    #[test]
    fn counts_and_graphs() {
        let l = minus_one_classes();
        assert_eq!(l.len(), 16);
        assert_eq!(disjoint_triples().len(), 960);
        for a in l {
            let meets = l.iter().filter(|b| a.dot(b) == 1).count();
            let disjoint = l.iter().filter(|b| *b != a && a.dot(b) == 0).count();
            assert_eq!((meets, disjoint), (5, 10));
        }
        assert!(l.contains(&(PicClass::F + PicClass::F_PRIME - PicClass::e(1) - PicClass::e(2) - PicClass::e(3))));
    }

    #[test]
    fn conics_match_exhaustive_search() {
        let mut found = Vec::new();
        let r = -3..=3i64;
        for x in r.clone() {
            for y in r.clone() {
                for a in r.clone() {
                    for b in r.clone() {
                        for c in r.clone() {
                            for d in r.clone() {
                                let v = PicClass([x, y, a, b, c, d]);
                                if v.dot(&v) == 0 && v.h() == 2 && v.is_nef() {
                                    found.push(v);
                                }
                            }
                        }
                    }
                }
            }
        }
        let mut conics = conic_classes().to_vec();
        conics.sort();
        found.sort();
        assert_eq!(found, conics);
    }

    #[test]
    fn presentations_are_consistent() {
        let p = presentations();
        assert_eq!(p.len(), 80);
        assert!(p.contains(&Presentation::standard()));
        for r in p {
            assert!(p.iter().any(|s| s.c == r.c_prime && s.c_prime == r.c));
            for i in 0..4 {
                for j in 0..4 {
                    assert_eq!(r.e[i].dot(&r.e[j]), if i == j { -1 } else { 0 });
                }
            }
        }
    }

    #[test]
    fn nef_examples() {
        assert!(PicClass::MINUS_K.is_nef());
        assert!(!PicClass::e(1).is_nef());
        let all = PicClass::e(1) + PicClass::e(2) + PicClass::e(3) + PicClass::e(4);
        assert!(!(PicClass::F + PicClass::F_PRIME - all).is_nef());
    }

    #[test]
    fn invariants_examples() {
        let st = Presentation::standard();
        let i = class_invariants(&PicClass::MINUS_K, &st).unwrap();
        assert_eq!((i.h, i.a, i.a_prime, i.k), (4, 2, 2, [1, 1, 1, 1]));
        let i = class_invariants(&PicClass::F, &st).unwrap();
        assert_eq!((i.h, i.a, i.a_prime, i.k), (2, 0, 1, [0, 0, 0, 0]));
        assert!(class_invariants(&PicClass::e(2), &st).is_err());
    }

    #[test]
    fn text_roundtrip() {
        let a = PicClass::parse("3,3,1,1,1,1").unwrap();
        assert_eq!(a, PicClass::MINUS_K + PicClass::F + PicClass::F_PRIME);
        assert_eq!(a.text(), "3,3,1,1,1,1");
        assert_eq!(PicClass::parse("2,0,1,0,0,0,0").unwrap(), PicClass::F);
        assert!(PicClass::parse("3,0,1,0,0,0,0").is_err());
        assert!(PicClass::parse("0,1,0,0,0").is_err());
        assert!(PicClass::parse("2,x,1,0,0,0").is_err());
    }
}
