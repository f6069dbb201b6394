//! Curve counters: direct enumeration, enumeration fibered over `U_k`, and an
//! inclusion-exclusion sieve over the intersection lattice of bad subspaces.

use std::collections::{HashMap, HashSet};
use std::sync::{Arc, Mutex};
use std::time::Instant;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;

use super::surface::Surface;
use super::system::{ImageCache, RowBuilder};
use crate::error::{Dp4Error, Result};
use crate::ffpoly::incidence::image_rows;
use crate::ffpoly::table::FormTable;
use crate::ffpoly::{closed_points_upto, ClosedPoint, enumerate_uk_in, Divisor, FieldTable, Fq, Rref};
use crate::picard::{class_invariants, ClassInvariants, PicClass, Presentation};
use crate::posetq::{covers, Chain, SaturatedElement};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Caps {
    /// Largest number of projective pairs `(s, t)` the naive counter visits.
    pub naive_budget: u64,
    /// Largest number of projective pairs in one fiber `E_w`.
    pub fiber_budget: u64,
    /// Largest intersection lattice the sieve keeps for one `w`.
    pub lattice_cap: usize,
}

impl Default for Caps {
    fn default() -> Caps {
        Caps { naive_budget: 1 << 30, fiber_budget: 1 << 26, lattice_cap: 1 << 20 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CountMethod {
    Naive,
    Fibered,
    Sieve,
}

impl CountMethod {
    pub fn name(self) -> &'static str {
        match self {
            CountMethod::Naive => "naive",
            CountMethod::Fibered => "fibered",
            CountMethod::Sieve => "sieve",
        }
    }

    pub fn parse(s: &str) -> Result<CountMethod> {
        match s {
            "naive" => Ok(CountMethod::Naive),
            "fibered" => Ok(CountMethod::Fibered),
            "sieve" => Ok(CountMethod::Sieve),
            _ => Err(Dp4Error::Config(format!("unknown count method {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CountReport {
    pub q: u32,
    pub class: String,
    pub invariants: ClassInvariants,
    pub method: CountMethod,
    pub torsor_count: u128,
    pub curve_count: u128,
    pub seconds: f64,
    pub caps: Caps,
    /// `#M <= (1 - 1/q)^-6 q^(h+2)`.
    pub within_upper_bound: bool,
}

impl CountReport {
    fn new(
        q: u32,
        alpha: &PicClass,
        invariants: ClassInvariants,
        method: CountMethod,
        torsor_count: u128,
        start: Instant,
        caps: Caps,
    ) -> CountReport {
        let unit = (q as u128 - 1).pow(2);
        assert_eq!(torsor_count % unit, 0, "torsor count {torsor_count} not divisible by (q-1)^2");
        let curve_count = torsor_count / unit;
        let within_upper_bound = satisfies_upper_bound(q, invariants.h, curve_count);
        assert!(within_upper_bound, "{curve_count} curves of class {alpha} over F_{q} exceed the upper bound");
        CountReport {
            q,
            class: alpha.text(),
            invariants,
            method,
            torsor_count,
            curve_count,
            seconds: start.elapsed().as_secs_f64(),
            caps,
            within_upper_bound,
        }
    }

    pub fn csv_header() -> &'static str {
        "q,class,method,torsor_count,curve_count,seconds"
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},\"{}\",{},{},{},{:.6}",
            self.q,
            self.class,
            self.method.name(),
            self.torsor_count,
            self.curve_count,
            self.seconds
        )
    }
}

/// `#M (q-1)^6 <= q^(h+8)`, exactly.
pub fn satisfies_upper_bound(q: u32, h: i64, curve_count: u128) -> bool {
    let lhs = BigUint::from(curve_count) * BigUint::from(q - 1).pow(6);
    let rhs = BigUint::from(q).pow((h + 8) as u32);
    lhs <= rhs
}

/// Everything the counters share for one class.
struct Setup {
    surface: Surface,
    inv: ClassInvariants,
    a: usize,
    ap: usize,
    k: [u32; 4],
    table_a: FormTable,
    table_ap: FormTable,
}

impl Setup {
    fn new(surface: &Surface, alpha: &PicClass) -> Result<Setup> {
        let inv = class_invariants(alpha, &Presentation::standard())?;
        let surface = surface.clone();
        let (a, ap) = (inv.a as usize, inv.a_prime as usize);
        let table_a = FormTable::new(surface.field(), a)?;
        let table_ap = FormTable::new(surface.field(), ap)?;
        Ok(Setup { surface, inv, a, ap, k: inv.k_u32(), table_a, table_ap })
    }

    fn f(&self) -> &FieldTable {
        self.surface.field()
    }
}

/// A nowhere-vanishing pair of forms, by the table indices of `φ_i` of it.
#[derive(Clone, Copy, Debug)]
struct Side {
    phi: [u32; 4],
    sig: [u128; 4],
    zero: u8,
}

/// `Some` when the pair `[F1 | F2]` of degree-`n` forms has no common root.
fn side(
    f: &FieldTable,
    table: &FormTable,
    v: &[Fq],
    functionals: &[(Fq, Fq); 4],
    pow: &[usize],
) -> Option<Side> {
    let n1 = v.len() / 2;
    let idx = |c: &mut dyn Iterator<Item = Fq>| c.zip(pow).map(|(x, p)| x as usize * p).sum::<usize>();
    let i1 = idx(&mut v[..n1].iter().copied());
    let i2 = idx(&mut v[n1..].iter().copied());
    if !table.coprime_pair(i1, i2) {
        return None;
    }
    let mut s = Side { phi: [0; 4], sig: [0; 4], zero: 0 };
    for (i, &(l1, l2)) in functionals.iter().enumerate() {
        let j = idx(&mut (0..n1).map(|j| f.add(f.mul(l1, v[j]), f.mul(l2, v[n1 + j]))));
        s.phi[i] = j as u32;
        s.sig[i] = table.signature(j);
        if j == 0 {
            s.zero |= 1 << i;
        }
    }
    Some(s)
}

#[inline]
fn pair_ok(s: &Side, t: &Side, k: &[u32; 4], ta: &FormTable, tb: &FormTable, exact_sig: bool) -> bool {
    for i in 0..4 {
        if (s.zero | t.zero) >> i & 1 == 0 {
            let inter = s.sig[i] & t.sig[i];
            if inter == 0 {
                if k[i] != 0 {
                    return false;
                }
                continue;
            }
            if k[i] == 0 && exact_sig {
                return false;
            }
        }
        if ta.gcd_degree(s.phi[i] as usize, tb, t.phi[i] as usize) != Some(k[i]) {
            return false;
        }
    }
    true
}

fn powers(q: u32, n: usize) -> Vec<usize> {
    (0..n).scan(1usize, |acc, _| {
        let v = *acc;
        *acc *= q as usize;
        Some(v)
    })
    .collect()
}

/// Projective representatives of `F_q^n`: first nonzero coordinate 1.
fn projective_count(q: u32, n: usize) -> u128 {
    (0..n).map(|p| (q as u128).pow((n - 1 - p) as u32)).sum()
}

fn for_each_projective(q: u32, n: usize, mut visit: impl FnMut(&[Fq])) {
    let mut v = vec![0 as Fq; n];
    for lead in 0..n {
        v.iter_mut().for_each(|x| *x = 0);
        v[lead] = 1;
        let free = n - 1 - lead;
        let total = (q as u64).pow(free as u32);
        for mut code in 0..total {
            for x in v[lead + 1..].iter_mut() {
                *x = (code % q as u64) as Fq;
                code /= q as u64;
            }
            visit(&v);
        }
    }
}

fn functionals(surface: &Surface, prime: bool) -> [(Fq, Fq); 4] {
    std::array::from_fn(|i| {
        let p = if prime { surface.phi_prime(i) } else { surface.phi(i) };
        (p.0, p.1)
    })
}

fn count_pairs(setup: &Setup, ss: &[Side], ts: &[Side]) -> u128 {
    let exact = setup.table_a.exact_signatures() && setup.table_ap.exact_signatures();
    ss.par_iter()
        .map(|s| ts.iter().filter(|t| pair_ok(s, t, &setup.k, &setup.table_a, &setup.table_ap, exact)).count() as u128)
        .sum()
}

/// `#M~` by enumerating every pair of nowhere-vanishing sections.
pub fn count_naive(q: u32, alpha: &PicClass, caps: Caps) -> Result<CountReport> {
    count_naive_on(&Surface::new(q)?, alpha, caps)
}

pub fn count_naive_on(surface: &Surface, alpha: &PicClass, caps: Caps) -> Result<CountReport> {
    let start = Instant::now();
    let q = surface.q;
    let setup = Setup::new(surface, alpha)?;
    let (ns, nt) = (2 * (setup.a + 1), 2 * (setup.ap + 1));
    let cost = projective_count(q, ns).saturating_mul(projective_count(q, nt));
    if cost > caps.naive_budget as u128 {
        return Err(Dp4Error::ResourceCap(format!(
            "naive count of {alpha} over F_{q} needs {cost} pairs (budget {})",
            caps.naive_budget
        )));
    }
    let f = setup.f();
    let collect = |n: usize, table: &FormTable, prime: bool| {
        let fun = functionals(&setup.surface, prime);
        let pow = powers(q, n / 2);
        let mut out = Vec::new();
        for_each_projective(q, n, |v| out.extend(side(f, table, v, &fun, &pow)));
        out
    };
    let ss = collect(ns, &setup.table_a, false);
    let ts = collect(nt, &setup.table_ap, true);
    let pairs = count_pairs(&setup, &ss, &ts);
    let unit = (q as u128 - 1).pow(2);
    Ok(CountReport::new(q, alpha, setup.inv, CountMethod::Naive, pairs * unit, start, caps))
}

/// The four incidence divisors as the saturated element `w`.
fn w_of(divs: &[Divisor; 4]) -> SaturatedElement {
    SaturatedElement::from_divisors(divs).expect("U_k divisors are disjoint")
}

/// Projective points of the span of `basis` (all vectors of one length).
pub(crate) fn for_each_projective_span(f: &FieldTable, basis: &[Vec<Fq>], mut visit: impl FnMut(&[Fq])) {
    let Some(n) = basis.first().map(|b| b.len()) else { return };
    let mut v = vec![0 as Fq; n];
    for_each_projective(f.q(), basis.len(), |lambda| {
        v.iter_mut().for_each(|x| *x = 0);
        for (l, b) in lambda.iter().zip(basis) {
            if *l != 0 {
                for (x, y) in v.iter_mut().zip(b) {
                    *x = f.add(*x, f.mul(*l, *y));
                }
            }
        }
        visit(&v);
    });
}

/// `#M~` as a sum over `w ∈ U_k` of the exact-type points of `E_w`.
pub fn count_fibered(q: u32, alpha: &PicClass, caps: Caps) -> Result<CountReport> {
    count_fibered_on(&Surface::new(q)?, alpha, caps)
}

pub fn count_fibered_on(surface: &Surface, alpha: &PicClass, caps: Caps) -> Result<CountReport> {
    let start = Instant::now();
    let q = surface.q;
    let setup = Setup::new(surface, alpha)?;
    let f = setup.f();
    let uk = enumerate_uk_in(f, setup.k)?;
    let fun_s = functionals(&setup.surface, false);
    let fun_t = functionals(&setup.surface, true);
    let pow_s = powers(q, setup.a + 1);
    let pow_t = powers(q, setup.ap + 1);
    let images: Arc<ImageCache> = Arc::default();
    let per_w = |divs: &[Divisor; 4]| -> Result<u128> {
        let mut rb = RowBuilder::with_cache(&setup.surface, setup.a, setup.ap, images.clone());
        let rows = rb.system(&w_of(divs));
        let s_space = Rref::from_rows(f, 2 * (setup.a + 1), rows.s);
        let t_space = Rref::from_rows(f, 2 * (setup.ap + 1), rows.t);
        let (bs, bt) = (s_space.kernel_basis(f), t_space.kernel_basis(f));
        let cost = projective_count(q, bs.len()).saturating_mul(projective_count(q, bt.len()));
        if cost > caps.fiber_budget as u128 {
            return Err(Dp4Error::ResourceCap(format!("fiber of {alpha} over F_{q} has {cost} pairs")));
        }
        let mut ss = Vec::new();
        for_each_projective_span(f, &bs, |v| ss.extend(side(f, &setup.table_a, v, &fun_s, &pow_s)));
        let mut ts = Vec::new();
        for_each_projective_span(f, &bt, |v| ts.extend(side(f, &setup.table_ap, v, &fun_t, &pow_t)));
        let exact = setup.table_a.exact_signatures() && setup.table_ap.exact_signatures();
        Ok(ss
            .iter()
            .map(|s| ts.iter().filter(|t| pair_ok(s, t, &setup.k, &setup.table_a, &setup.table_ap, exact)).count() as u128)
            .sum())
    };
    let pairs: u128 = uk.par_iter().map(per_w).collect::<Result<Vec<u128>>>()?.into_iter().sum();
    let unit = (q as u128 - 1).pow(2);
    Ok(CountReport::new(q, alpha, setup.inv, CountMethod::Fibered, pairs * unit, start, caps))
}

type AtomCache = Mutex<HashMap<(ClosedPoint, Chain), Arc<Vec<Vec<Vec<Fq>>>>>>;

/// Rows of `E_x` for every cover `x` of `w_c` at `c`.
fn cover_rows(rb: &mut RowBuilder, c: &ClosedPoint, w_c: &Chain) -> Vec<Vec<Vec<Fq>>> {
    covers(w_c)
        .iter()
        .map(|x| {
            let r = rb.local(c, x);
            rb.full_rows(&r)
        })
        .collect()
}

/// Join-closure of `atoms` with Möbius weights from the bottom, zero weights
/// dropped. Equals `Σ (-1)^|S|` over subsets of atoms joining to each element,
/// which vanishes identically once some atom is the bottom.
fn local_lattice(f: &FieldTable, n: usize, atoms: &[Rref]) -> Vec<(Rref, i64)> {
    if atoms.iter().any(|a| a.rank() == 0) {
        return Vec::new();
    }
    let mut elems: Vec<Rref> = vec![Rref::empty(n)];
    let mut seen: HashSet<Rref> = elems.iter().cloned().collect();
    let mut i = 0;
    while i < elems.len() {
        for a in atoms {
            let j = elems[i].join(f, a);
            if seen.insert(j.clone()) {
                elems.push(j);
            }
        }
        i += 1;
    }
    elems.sort_by_key(|e| e.rank());
    let mut mu: Vec<i64> = Vec::with_capacity(elems.len());
    for (i, x) in elems.iter().enumerate() {
        let m = if i == 0 {
            1
        } else {
            -(0..i)
                .filter(|&j| mu[j] != 0 && elems[j].rank() < x.rank() && x.contains_space(f, &elems[j]))
                .map(|j| mu[j])
                .sum::<i64>()
        };
        mu.push(m);
    }
    elems.into_iter().zip(mu).filter(|(_, m)| *m != 0).collect()
}

/// Data shared by the sieve over all fibers of one class.
struct SieveContext<'a> {
    surface: &'a Surface,
    a: usize,
    ap: usize,
    points: Vec<ClosedPoint>,
    /// Residues modulo `π_c` of the monomials of degree `a` and `a'`.
    images: HashMap<ClosedPoint, (Vec<Vec<Fq>>, Vec<Vec<Fq>>)>,
    cache: AtomCache,
    images_m: Arc<ImageCache>,
    lattice_cap: usize,
}

impl<'a> SieveContext<'a> {
    fn new(surface: &'a Surface, a: usize, ap: usize, lattice_cap: usize) -> Result<SieveContext<'a>> {
        let f = surface.field();
        let points = closed_points_upto(f, a.max(ap).max(1) as u32)?;
        let images = points
            .iter()
            .map(|c| (c.clone(), (image_rows(f, a, c, 1), image_rows(f, ap, c, 1))))
            .collect();
        Ok(SieveContext {
            surface,
            a,
            ap,
            points,
            images,
            cache: Mutex::new(HashMap::new()),
            images_m: Arc::default(),
            lattice_cap,
        })
    }

    /// Cover rows at `c` for `w_c`, restricted to the span of `basis`.
    fn restricted_general(&self, rb: &mut RowBuilder, c: &ClosedPoint, w_c: &Chain, basis: &[Vec<Fq>]) -> Vec<Rref> {
        let f = self.surface.field();
        let key = (c.clone(), w_c.clone());
        let cached = self.cache.lock().unwrap().get(&key).cloned();
        let rows = match cached {
            Some(l) => l,
            None => {
                let l = Arc::new(cover_rows(rb, c, w_c));
                self.cache.lock().unwrap().insert(key, l.clone());
                l
            }
        };
        let restrict = |row: &Vec<Fq>| -> Vec<Fq> {
            basis.iter().map(|b| row.iter().zip(b).fold(0, |acc, (x, y)| f.add(acc, f.mul(*x, *y)))).collect()
        };
        rows.iter().map(|r| Rref::from_rows(f, basis.len(), r.iter().map(restrict))).collect()
    }

    /// The same off the support of `w`, where the covers are `[V1]`, `[V2]`
    /// and the four planes, all of order one: rows are combinations of the
    /// residues of the basis forms modulo `π_c`.
    fn restricted_trivial(&self, c: &ClosedPoint, basis: &[Vec<Fq>]) -> Vec<Rref> {
        let f = self.surface.field();
        let (a, ap) = (self.a, self.ap);
        let (img_s, img_t) = &self.images[c];
        let d = img_s.len();
        let apply = |img: &Vec<Vec<Fq>>, coeffs: &[Fq]| -> Vec<Fq> {
            img.iter().map(|r| r.iter().zip(coeffs).fold(0, |acc, (x, y)| f.add(acc, f.mul(*x, *y)))).collect()
        };
        // residues[b] = (s1, s2, t1, t2) modulo π_c
        let residues: Vec<[Vec<Fq>; 4]> = basis
            .iter()
            .map(|v| {
                let (s, t) = v.split_at(2 * (a + 1));
                [apply(img_s, &s[..=a]), apply(img_s, &s[a + 1..]), apply(img_t, &t[..=ap]), apply(img_t, &t[ap + 1..])]
            })
            .collect();
        let combo = |x: usize, y: usize, (l1, l2): (Fq, Fq), j: usize| -> Vec<Fq> {
            residues.iter().map(|r| f.add(f.mul(l1, r[x][j]), f.mul(l2, r[y][j]))).collect()
        };
        let dim = basis.len();
        let mut out = Vec::with_capacity(6);
        for i in 0..4 {
            let p = self.surface.phi(i);
            let pp = self.surface.phi_prime(i);
            let rows = (0..d).map(|j| combo(0, 1, (p.0, p.1), j)).chain((0..d).map(|j| combo(2, 3, (pp.0, pp.1), j)));
            out.push(Rref::from_rows(f, dim, rows));
        }
        let t_rows = (0..d).flat_map(|j| [combo(2, 3, (1, 0), j), combo(2, 3, (0, 1), j)]);
        out.push(Rref::from_rows(f, dim, t_rows));
        let s_rows = (0..d).flat_map(|j| [combo(0, 1, (1, 0), j), combo(0, 1, (0, 1), j)]);
        out.push(Rref::from_rows(f, dim, s_rows));
        out
    }

    /// Number of points of `E_w` of exact type `w`.
    fn fiber(&self, w: &SaturatedElement) -> Result<i128> {
        let f = self.surface.field();
        let mut rb = RowBuilder::with_cache(self.surface, self.a, self.ap, self.images_m.clone());
        let n = rb.ncols();
        let rows = rb.system(w);
        let basis = Rref::from_rows(f, n, rb.full_rows(&rows)).kernel_basis(f);
        let dim = basis.len();
        if dim == 0 {
            // the zero vector lies in every cover subspace
            return Ok(0);
        }
        // support of w first: degenerate fibers are detected there
        let points: Vec<&ClosedPoint> =
            w.support().chain(self.points.iter().filter(|c| !w.chains().contains_key(*c))).collect();
        // (point index, restricted row space); full rank means the zero subspace
        let mut atoms: Vec<(usize, Rref)> = Vec::new();
        let mut seen: HashSet<Rref> = HashSet::new();
        let mut zero_subspace = false;
        for (pi, &c) in points.iter().enumerate() {
            let chain = w.chain(c);
            let spaces = if chain.is_trivial() && self.images.contains_key(c) {
                self.restricted_trivial(c, &basis)
            } else {
                self.restricted_general(&mut rb, c, &chain, &basis)
            };
            for space in spaces {
                match space.rank() {
                    0 => return Ok(0),
                    k if k == dim => zero_subspace = true,
                    _ => {
                        if seen.insert(space.clone()) {
                            atoms.push((pi, space));
                        }
                    }
                }
            }
        }
        let q = self.surface.q as i128;
        if atoms.is_empty() {
            return Ok(if zero_subspace { q.pow(dim as u32) - 1 } else { q.pow(dim as u32) });
        }
        // keep the maximal subspaces, i.e. the minimal row spaces
        atoms.sort_by_key(|(_, r)| r.rank());
        let mut kept: Vec<(usize, Rref)> = Vec::new();
        for (pi, r) in atoms {
            if !kept.iter().any(|(_, k)| k.rank() < r.rank() && r.contains_space(f, k)) {
                kept.push((pi, r));
            }
        }
        kept.sort_by_key(|(pi, _)| *pi);
        let mut state: HashMap<Rref, i128> = HashMap::from([(Rref::empty(dim), 1)]);
        for group in kept.chunk_by(|x, y| x.0 == y.0) {
            let spaces: Vec<Rref> = group.iter().map(|(_, r)| r.clone()).collect();
            let local = local_lattice(f, dim, &spaces);
            let mut next: HashMap<Rref, i128> = HashMap::with_capacity(state.len() * local.len());
            for (k, coef) in &state {
                for (l, mu) in &local {
                    let j = if l.rank() == 0 || k.contains_space(f, l) { k.clone() } else { k.join(f, l) };
                    *next.entry(j).or_default() += coef * *mu as i128;
                }
            }
            next.retain(|_, c| *c != 0);
            if next.len() > self.lattice_cap {
                return Err(Dp4Error::ResourceCap(format!(
                    "sieve lattice for w = {w} exceeds {} elements",
                    self.lattice_cap
                )));
            }
            state = next;
        }
        Ok(state.iter().map(|(k, c)| c * q.pow(k.nullity() as u32)).sum())
    }
}

/// Number of points of `E_w` of exact type `w`, by Möbius inversion over the
/// intersection lattice of the subspaces `E_x`, `x` a cover of `w` at a point.
///
/// Every subspace is cut down to `E_w` first, so constraints are rows over a
/// basis of `E_w`. Subspaces contained in another one are dropped, which
/// leaves their union unchanged.
pub fn sieve_fiber(surface: &Surface, a: usize, ap: usize, w: &SaturatedElement, lattice_cap: usize) -> Result<i128> {
    SieveContext::new(surface, a, ap, lattice_cap)?.fiber(w)
}

/// `#M~` by the exact sieve, summed over `w ∈ U_k`.
pub fn count_sieve_exact(q: u32, alpha: &PicClass, caps: Caps) -> Result<CountReport> {
    count_sieve_exact_on(&Surface::new(q)?, alpha, caps)
}

pub fn count_sieve_exact_on(surface: &Surface, alpha: &PicClass, caps: Caps) -> Result<CountReport> {
    let start = Instant::now();
    let q = surface.q;
    let setup = Setup::new(surface, alpha)?;
    let uk = enumerate_uk_in(setup.f(), setup.k)?;
    let ctx = SieveContext::new(&setup.surface, setup.a, setup.ap, caps.lattice_cap)?;
    let total: i128 = uk
        .par_iter()
        .map(|divs| ctx.fiber(&w_of(divs)))
        .collect::<Result<Vec<i128>>>()?
        .into_iter()
        .sum();
    assert!(total >= 0, "negative sieve count {total}");
    Ok(CountReport::new(q, alpha, setup.inv, CountMethod::Sieve, total as u128, start, caps))
}

pub fn count(q: u32, alpha: &PicClass, method: CountMethod, caps: Caps) -> Result<CountReport> {
    count_on(&Surface::new(q)?, alpha, method, caps)
}

pub fn count_on(surface: &Surface, alpha: &PicClass, method: CountMethod, caps: Caps) -> Result<CountReport> {
    match method {
        CountMethod::Naive => count_naive_on(surface, alpha, caps),
        CountMethod::Fibered => count_fibered_on(surface, alpha, caps),
        CountMethod::Sieve => count_sieve_exact_on(surface, alpha, caps),
    }
}
