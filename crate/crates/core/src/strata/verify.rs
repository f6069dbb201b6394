//! Empirical checks on the stratification: unobstructedness of strata, and
//! coverage of `U_k` by sections with prescribed incidences.

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::count::for_each_projective_span;
use super::surface::Surface;
use super::system::{stratum_dim, LocalOrders, RowBuilder, StratumDim};
use crate::error::{Dp4Error, Result};
use crate::ffpoly::table::FormTable;
use crate::ffpoly::{divisor_of_form, enumerate_uk_in, BinaryForm, ClosedPoint, Fq, Rref};
use crate::picard::{class_invariants, PicClass, Presentation};
use crate::posetq::{enumerate_saturated_above, SaturatedElement};

#[derive(Clone, Debug, Serialize)]
pub struct Obstruction {
    pub w: String,
    pub x: String,
    pub dim: StratumDim,
}

#[derive(Clone, Debug, Serialize)]
pub struct UnobstructednessReport {
    pub q: u32,
    pub class: String,
    pub e_bound: u32,
    pub exhaustive: bool,
    pub checked: usize,
    pub unobstructed: usize,
    pub fraction: f64,
    pub counterexamples: Vec<Obstruction>,
}

/// Checks every stratum `w < x` with `w ∈ U_k`, `x` saturated and
/// `E(w < x) = γ(x) - γ(w) <= e_bound`. With `sample = Some((n, seed))` and
/// more than `n` pairs, a seeded random subset of `n` pairs is checked instead.
pub fn verify_unobstructedness(
    q: u32,
    alpha: &PicClass,
    e_bound: u32,
    sample_size: Option<(usize, u64)>,
) -> Result<UnobstructednessReport> {
    let inv = class_invariants(alpha, &Presentation::standard())?;
    let k_sum: i64 = inv.k.iter().sum();
    if 2 * inv.a <= k_sum || 2 * inv.a_prime <= k_sum {
        return Err(Dp4Error::InvalidClass(format!(
            "{alpha}: need 2a > Σk and 2a' > Σk (a = {}, a' = {}, Σk = {k_sum})",
            inv.a, inv.a_prime
        )));
    }
    let surface = Surface::new(q)?;
    let f = surface.field();
    let (a, ap) = (inv.a as usize, inv.a_prime as usize);
    let deg_max = (e_bound / 2).max(1);
    let mut pairs: Vec<(usize, SaturatedElement)> = Vec::new();
    let ws: Vec<SaturatedElement> = enumerate_uk_in(f, inv.k_u32())?
        .iter()
        .map(SaturatedElement::from_divisors)
        .collect::<Result<_>>()?;
    for (i, w) in ws.iter().enumerate() {
        for x in enumerate_saturated_above(f, w, w.gamma() + e_bound, deg_max)? {
            pairs.push((i, x));
        }
    }
    let exhaustive = match sample_size {
        Some((n, seed)) if n < pairs.len() => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut keep = sample(&mut rng, pairs.len(), n).into_vec();
            keep.sort_unstable();
            pairs = keep.into_iter().map(|j| pairs[j].clone()).collect();
            false
        }
        _ => true,
    };
    let mut counterexamples = Vec::new();
    for (i, x) in &pairs {
        let dim = stratum_dim(&surface, a, ap, x);
        if !dim.unobstructed {
            counterexamples.push(Obstruction { w: ws[*i].text(), x: x.text(), dim });
        }
    }
    let checked = pairs.len();
    let unobstructed = checked - counterexamples.len();
    Ok(UnobstructednessReport {
        q,
        class: alpha.text(),
        e_bound,
        exhaustive,
        checked,
        unobstructed,
        fraction: if checked == 0 { 1.0 } else { unobstructed as f64 / checked as f64 },
        counterexamples,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CoverageReport {
    pub q: u32,
    pub a: usize,
    pub k: [u32; 4],
    pub total: usize,
    pub covered: usize,
    pub fraction: f64,
}

/// Fraction of `w ∈ U_k` through which some section `s = (s1, s2)` of degree
/// `a` with `gcd(s1, s2) = 1` passes, i.e. `φ_i(s)` vanishes on `w_i`.
pub fn coverage_report(q: u32, a: usize, k: [u32; 4]) -> Result<CoverageReport> {
    let surface = Surface::new(q)?;
    let f = surface.field();
    let table = FormTable::new(f, a)?;
    let pow: Vec<usize> = (0..=a).map(|j| (q as usize).pow(j as u32)).collect();
    let index = |c: &[Fq]| c.iter().zip(&pow).map(|(&x, p)| x as usize * p).sum::<usize>();
    let uk = enumerate_uk_in(f, k)?;
    let mut covered = 0;
    for divs in &uk {
        let w = SaturatedElement::from_divisors(divs)?;
        let mut rb = RowBuilder::new(&surface, a, 0);
        let rows = rb.system(&w);
        let basis = Rref::from_rows(f, 2 * (a + 1), rows.s).kernel_basis(f);
        let mut found = false;
        for_each_projective_span(f, &basis, |v| {
            found |= !found && table.coprime_pair(index(&v[..=a]), index(&v[a + 1..]));
        });
        covered += found as usize;
    }
    let total = uk.len();
    Ok(CoverageReport {
        q,
        a,
        k,
        total,
        covered,
        fraction: if total == 0 { 1.0 } else { covered as f64 / total as f64 },
    })
}

fn order_at(f: &crate::ffpoly::FieldTable, form: &BinaryForm, c: &ClosedPoint) -> u32 {
    match divisor_of_form(f, form) {
        None => u32::MAX,
        Some(d) => d.multiplicity(c),
    }
}

/// Orders of vanishing at `c` of `φ_i(s)`, `φ'_i(t)`, `s` and `t` for the
/// section pair `v = [s1|s2|t1|t2]`, computed by factoring; `u32::MAX` for a
/// zero form.
pub fn section_orders(surface: &Surface, a: usize, a_prime: usize, v: &[Fq], c: &ClosedPoint) -> LocalOrders {
    let f = surface.field();
    let (s, t) = v.split_at(2 * (a + 1));
    let apply = |pair: &[Fq], n: usize, (l1, l2): (Fq, Fq)| {
        BinaryForm::new((0..=n).map(|j| f.add(f.mul(l1, pair[j]), f.mul(l2, pair[n + 1 + j]))).collect())
    };
    let ord_pair = |pair: &[Fq], n: usize| {
        order_at(f, &apply(pair, n, (1, 0)), c).min(order_at(f, &apply(pair, n, (0, 1)), c))
    };
    LocalOrders {
        phi: std::array::from_fn(|i| {
            let p = surface.phi(i);
            order_at(f, &apply(s, a, (p.0, p.1)), c)
        }),
        phi_prime: std::array::from_fn(|i| {
            let p = surface.phi_prime(i);
            order_at(f, &apply(t, a_prime, (p.0, p.1)), c)
        }),
        s: ord_pair(s, a),
        t: ord_pair(t, a_prime),
    }
}

/// `true` when `v` meets every condition of `x`, judged by [`section_orders`].
pub fn satisfies_by_orders(surface: &Surface, a: usize, a_prime: usize, v: &[Fq], x: &SaturatedElement) -> bool {
    x.chains().iter().all(|(c, chain)| {
        let need = LocalOrders::of(chain);
        let have = section_orders(surface, a, a_prime, v, c);
        need.s <= have.s
            && need.t <= have.t
            && (0..4).all(|i| need.phi[i] <= have.phi[i] && need.phi_prime[i] <= have.phi_prime[i])
    })
}
