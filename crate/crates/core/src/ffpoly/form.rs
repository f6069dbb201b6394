//! Homogeneous binary forms `Σ c_j u^(n-j) v^j` on P^1.

use serde::{Deserialize, Serialize};

use super::field::{FieldTable, Fq};
use super::poly::{self, Poly};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BinaryForm {
    coeffs: Vec<Fq>,
}

/// A linear functional `(x, y) -> l1*x + l2*y` on a 2-dimensional space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Functional(pub Fq, pub Fq);

impl BinaryForm {
    /// Form of degree `coeffs.len() - 1`.
    pub fn new(coeffs: Vec<Fq>) -> BinaryForm {
        assert!(!coeffs.is_empty(), "a binary form needs at least one coefficient");
        BinaryForm { coeffs }
    }

    pub fn zero(n: usize) -> BinaryForm {
        BinaryForm { coeffs: vec![0; n + 1] }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Fq] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// `g(T) = F(T, 1)`, low degree first.
    pub fn dehomogenize(&self) -> Poly {
        let mut g: Poly = self.coeffs.iter().rev().copied().collect();
        poly::trim(&mut g);
        g
    }

    /// Multiplicity of the point at infinity (the form `v`); `None` for the zero form.
    pub fn v_order(&self) -> Option<usize> {
        self.coeffs.iter().position(|&c| c != 0)
    }

    /// Homogenizes `g` to degree `n`; requires `deg g <= n`.
    pub fn homogenize(g: &[Fq], n: usize) -> BinaryForm {
        assert!(poly::degree(g).is_none_or(|d| d <= n), "degree too large to homogenize");
        let coeffs = (0..=n).map(|j| *g.get(n - j).unwrap_or(&0)).collect();
        BinaryForm { coeffs }
    }

    pub fn mul(&self, f: &FieldTable, other: &BinaryForm) -> BinaryForm {
        let mut out = vec![0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        BinaryForm { coeffs: out }
    }

    pub fn scale(&self, f: &FieldTable, c: Fq) -> BinaryForm {
        BinaryForm { coeffs: self.coeffs.iter().map(|&x| f.mul(x, c)).collect() }
    }

    /// `F(x, y)`.
    pub fn eval(&self, f: &FieldTable, x: Fq, y: Fq) -> Fq {
        let n = self.degree();
        let mut acc = 0;
        for (j, &c) in self.coeffs.iter().enumerate() {
            if c != 0 {
                let term = f.mul(c, f.mul(f.pow(x, (n - j) as u64), f.pow(y, j as u64)));
                acc = f.add(acc, term);
            }
        }
        acc
    }

    /// Index in base q of the coefficient vector, `c_0` least significant.
    pub fn index(&self, q: u32) -> usize {
        self.coeffs.iter().rev().fold(0usize, |acc, &c| acc * q as usize + c as usize)
    }

    pub fn from_index(mut idx: usize, n: usize, q: u32) -> BinaryForm {
        let mut coeffs = Vec::with_capacity(n + 1);
        for _ in 0..=n {
            coeffs.push((idx % q as usize) as Fq);
            idx /= q as usize;
        }
        BinaryForm { coeffs }
    }
}

impl Functional {
    /// The functional whose kernel is the line through the point `(x : y)`.
    pub fn vanishing_on(f: &FieldTable, x: Fq, y: Fq) -> Functional {
        Functional(y, f.neg(x))
    }

    /// `l1 * F1 + l2 * F2` for a pair of forms of equal degree.
    pub fn apply(&self, f: &FieldTable, pair: &(BinaryForm, BinaryForm)) -> BinaryForm {
        let (a, b) = pair;
        assert_eq!(a.degree(), b.degree(), "pair forms must share a degree");
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| f.add(f.mul(self.0, x), f.mul(self.1, y)))
            .collect();
        BinaryForm { coeffs }
    }

    /// Same as [`Functional::apply`] on a flat coefficient vector `[F1 | F2]`.
    pub fn apply_flat(&self, f: &FieldTable, v: &[Fq]) -> Vec<Fq> {
        let n = v.len() / 2;
        (0..n).map(|j| f.add(f.mul(self.0, v[j]), f.mul(self.1, v[n + j]))).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn homogenize_roundtrip() {
        let f = FieldTable::new(5).unwrap();
        let form = BinaryForm::new(vec![0, 3, 1, 0]);
        assert_eq!(form.v_order(), Some(1));
        let g = form.dehomogenize();
        assert_eq!(poly::degree(&g), Some(2));
        assert_eq!(BinaryForm::homogenize(&g, 3), form);
        let _ = f;
    }

    #[test]
    fn index_roundtrip() {
        for idx in 0..125 {
            let form = BinaryForm::from_index(idx, 2, 5);
            assert_eq!(form.index(5), idx);
        }
    }

    #[test]
    fn root_count_bounded_by_degree() {
        let f = FieldTable::new(4).unwrap();
        for idx in 1..(4usize.pow(4)) {
            let form = BinaryForm::from_index(idx, 3, 4);
            let mut roots = 0;
            for x in f.elements() {
                if form.eval(&f, x, 1) == 0 {
                    roots += 1;
                }
            }
            if form.eval(&f, 1, 0) == 0 {
                roots += 1;
            }
            assert!(roots <= 3);
        }
    }
}
