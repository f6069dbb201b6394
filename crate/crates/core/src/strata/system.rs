//! Linear conditions on section pairs `(s, t)` imposed by a saturated element.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use serde::Serialize;

use super::surface::Surface;
use crate::ffpoly::incidence::image_rows;
use crate::ffpoly::{ClosedPoint, Fq, Rref};
use crate::posetq::{Chain, QElem, SaturatedElement};

/// Residues of monomials of degree `n` modulo `π^m`, keyed by `(π, m, n)`.
pub type ImageCache = Mutex<HashMap<(ClosedPoint, u32, usize), Arc<Vec<Vec<Fq>>>>>;

/// Builds constraint rows, caching residues of monomials modulo `π^m`.
pub struct RowBuilder<'a> {
    surface: &'a Surface,
    a: usize,
    a_prime: usize,
    cache: Arc<ImageCache>,
}

/// Rows on `[s1 | s2]` and on `[t1 | t2]`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SplitRows {
    pub s: Vec<Vec<Fq>>,
    pub t: Vec<Vec<Fq>>,
}

/// Orders of vanishing imposed by a chain: `φ_i(s)`, `φ'_i(t)`, `s`, `t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LocalOrders {
    pub phi: [u32; 4],
    pub phi_prime: [u32; 4],
    pub s: u32,
    pub t: u32,
}

impl LocalOrders {
    pub fn of(chain: &Chain) -> LocalOrders {
        let g = |q: QElem| chain.multiplicity(q).unwrap();
        let s = g(QElem::half(2));
        let t = g(QElem::half(1));
        let planes: [u32; 4] = std::array::from_fn(|i| g(QElem::plane(i + 1)));
        LocalOrders { phi: planes.map(|m| m.max(s)), phi_prime: planes.map(|m| m.max(t)), s, t }
    }
}

impl<'a> RowBuilder<'a> {
    pub fn new(surface: &'a Surface, a: usize, a_prime: usize) -> RowBuilder<'a> {
        RowBuilder::with_cache(surface, a, a_prime, Arc::default())
    }

    /// A builder sharing residue tables with others.
    pub fn with_cache(surface: &'a Surface, a: usize, a_prime: usize, cache: Arc<ImageCache>) -> RowBuilder<'a> {
        RowBuilder { surface, a, a_prime, cache }
    }

    pub fn surface(&self) -> &Surface {
        self.surface
    }

    pub fn ncols_s(&self) -> usize {
        2 * (self.a + 1)
    }

    pub fn ncols_t(&self) -> usize {
        2 * (self.a_prime + 1)
    }

    pub fn ncols(&self) -> usize {
        self.ncols_s() + self.ncols_t()
    }

    fn image(&mut self, n: usize, c: &ClosedPoint, m: u32) -> Arc<Vec<Vec<Fq>>> {
        let key = (c.clone(), m, n);
        if let Some(img) = self.cache.lock().unwrap().get(&key) {
            return img.clone();
        }
        let img = Arc::new(image_rows(self.surface.field(), n, c, m));
        self.cache.lock().unwrap().insert(key, img.clone());
        img
    }

    /// Rows for `functional(F) ≡ 0 mod π^m` on a pair of degree-`n` forms.
    fn functional_rows(&mut self, n: usize, (l1, l2): (Fq, Fq), c: &ClosedPoint, m: u32, out: &mut Vec<Vec<Fq>>) {
        if m == 0 {
            return;
        }
        let f = self.surface.field_arc();
        let img = self.image(n, c, m);
        for r in img.iter() {
            let mut row = vec![0; 2 * (n + 1)];
            for j in 0..=n {
                row[j] = f.mul(l1, r[j]);
                row[n + 1 + j] = f.mul(l2, r[j]);
            }
            out.push(row);
        }
    }

    fn zero_rows(&mut self, n: usize, c: &ClosedPoint, m: u32, out: &mut Vec<Vec<Fq>>) {
        self.functional_rows(n, (1, 0), c, m, out);
        self.functional_rows(n, (0, 1), c, m, out);
    }

    /// Conditions at one closed point for the given chain.
    pub fn local(&mut self, c: &ClosedPoint, chain: &Chain) -> SplitRows {
        let o = LocalOrders::of(chain);
        let (a, ap) = (self.a, self.a_prime);
        let mut rows = SplitRows::default();
        self.zero_rows(a, c, o.s, &mut rows.s);
        self.zero_rows(ap, c, o.t, &mut rows.t);
        for i in 0..4 {
            if o.phi[i] > o.s {
                let phi = self.surface.phi(i);
                self.functional_rows(a, (phi.0, phi.1), c, o.phi[i], &mut rows.s);
            }
            if o.phi_prime[i] > o.t {
                let phi = self.surface.phi_prime(i);
                self.functional_rows(ap, (phi.0, phi.1), c, o.phi_prime[i], &mut rows.t);
            }
        }
        rows
    }

    pub fn system(&mut self, x: &SaturatedElement) -> SplitRows {
        let mut out = SplitRows::default();
        for (c, chain) in x.chains() {
            let r = self.local(c, chain);
            out.s.extend(r.s);
            out.t.extend(r.t);
        }
        out
    }

    /// Embeds split rows into the full coordinate space `[s | t]`.
    pub fn full_rows(&self, rows: &SplitRows) -> Vec<Vec<Fq>> {
        let (ns, n) = (self.ncols_s(), self.ncols());
        let mut out = Vec::with_capacity(rows.s.len() + rows.t.len());
        for r in &rows.s {
            let mut row = r.clone();
            row.resize(n, 0);
            out.push(row);
        }
        for r in &rows.t {
            let mut row = vec![0; ns];
            row.extend_from_slice(r);
            out.push(row);
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct IncidenceSystem {
    pub a: usize,
    pub a_prime: usize,
    pub x: SaturatedElement,
    pub rows: SplitRows,
    s_space: Rref,
    t_space: Rref,
}

impl IncidenceSystem {
    pub fn ncols(&self) -> usize {
        2 * (self.a + 1) + 2 * (self.a_prime + 1)
    }

    /// Dimension of the kernel.
    pub fn kernel_dim(&self) -> usize {
        self.s_space.nullity() + self.t_space.nullity()
    }

    pub fn s_kernel_dim(&self) -> usize {
        self.s_space.nullity()
    }

    pub fn t_kernel_dim(&self) -> usize {
        self.t_space.nullity()
    }

    pub fn s_constraints(&self) -> &Rref {
        &self.s_space
    }

    pub fn t_constraints(&self) -> &Rref {
        &self.t_space
    }

    /// `true` when `(s, t)` (flattened as `[s1|s2|t1|t2]`) satisfies every row.
    pub fn contains(&self, surface: &Surface, v: &[Fq]) -> bool {
        let f = surface.field();
        let ns = 2 * (self.a + 1);
        let dot = |r: &[Fq], x: &[Fq]| r.iter().zip(x).fold(0, |acc, (&p, &q)| f.add(acc, f.mul(p, q)));
        self.rows.s.iter().all(|r| dot(r, &v[..ns]) == 0) && self.rows.t.iter().all(|r| dot(r, &v[ns..]) == 0)
    }

    /// A basis of the kernel, as full vectors.
    pub fn kernel_basis(&self, surface: &Surface) -> Vec<Vec<Fq>> {
        let f = surface.field();
        let ns = 2 * (self.a + 1);
        let nt = 2 * (self.a_prime + 1);
        let mut out = Vec::new();
        for v in self.s_space.kernel_basis(f) {
            let mut full = v;
            full.resize(ns + nt, 0);
            out.push(full);
        }
        for v in self.t_space.kernel_basis(f) {
            let mut full = vec![0; ns];
            full.extend(v);
            out.push(full);
        }
        out
    }
}

pub fn incidence_system(surface: &Surface, a: usize, a_prime: usize, x: &SaturatedElement) -> IncidenceSystem {
    let mut b = RowBuilder::new(surface, a, a_prime);
    let rows = b.system(x);
    let f = surface.field();
    let s_space = Rref::from_rows(f, 2 * (a + 1), rows.s.iter().cloned());
    let t_space = Rref::from_rows(f, 2 * (a_prime + 1), rows.t.iter().cloned());
    IncidenceSystem { a, a_prime, x: x.clone(), rows, s_space, t_space }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct StratumDim {
    pub actual: usize,
    pub expected: usize,
    pub unobstructed: bool,
    /// `2a + 2a' + 4 - γ(x)`, before clipping.
    pub n: i64,
}

pub fn stratum_dim(surface: &Surface, a: usize, a_prime: usize, x: &SaturatedElement) -> StratumDim {
    let sys = incidence_system(surface, a, a_prime, x);
    let n = (2 * (a + 1) + 2 * (a_prime + 1)) as i64 - x.gamma() as i64;
    let expected = n.max(0) as usize;
    let actual = sys.kernel_dim();
    assert!(actual >= expected, "kernel of dimension {actual} below expected {expected} for {x}");
    StratumDim { actual, expected, unobstructed: actual == expected, n }
}
