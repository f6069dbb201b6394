//! Precomputed factorizations of every binary form of a fixed degree.
//!
//! Counters look up divisors by form index instead of running Euclid in the
//! inner loop. Point ids are positions in `closed_points_upto(f, max_degree)`,
//! which is prefix-stable, so tables of different degrees share ids.

use std::collections::HashMap;

use super::divisor::divisors_of_degree_in;
use super::field::{FieldTable, Fq};
use super::form::BinaryForm;
use super::points::{closed_points_upto, ClosedPoint};
use crate::error::{Dp4Error, Result};

/// Largest table built (number of coefficient vectors).
pub const TABLE_LIMIT: usize = 1 << 23;

#[derive(Debug, Clone)]
pub struct FormTable {
    q: u32,
    n: usize,
    offsets: Vec<u32>,
    entries: Vec<(u16, u8)>,
    sig: Vec<u128>,
    point_degree: Vec<u8>,
    exact_sig: bool,
}

impl FormTable {
    pub fn new(f: &FieldTable, n: usize) -> Result<FormTable> {
        let q = f.q();
        let size = (q as usize)
            .checked_pow(n as u32 + 1)
            .filter(|&s| s <= TABLE_LIMIT)
            .ok_or_else(|| Dp4Error::ResourceCap(format!("form table of degree {n} over F_{q}")))?;
        let points: Vec<ClosedPoint> = if n == 0 { Vec::new() } else { closed_points_upto(f, n as u32)? };
        let ids: HashMap<&ClosedPoint, u16> =
            points.iter().enumerate().map(|(i, c)| (c, i as u16)).collect();
        let mut per_form: Vec<Option<Vec<(u16, u8)>>> = vec![None; size];
        for d in divisors_of_degree_in(f, n as u32)? {
            let form = d.form(f);
            let list: Vec<(u16, u8)> = d.parts().iter().map(|(c, m)| (ids[c], *m as u8)).collect();
            for lambda in 1..q as Fq {
                let idx = form.scale(f, lambda).index(q);
                debug_assert!(per_form[idx].is_none());
                per_form[idx] = Some(list.clone());
            }
        }
        let mut offsets = Vec::with_capacity(size + 1);
        let mut entries = Vec::new();
        let mut sig = Vec::with_capacity(size);
        offsets.push(0);
        for (idx, slot) in per_form.into_iter().enumerate() {
            match slot {
                Some(list) => {
                    let mut s = 0u128;
                    for &(id, _) in &list {
                        s |= 1u128 << (id % 128);
                    }
                    sig.push(s);
                    entries.extend(list);
                }
                None => {
                    assert_eq!(idx, 0, "every nonzero form has a divisor");
                    sig.push(0);
                }
            }
            offsets.push(entries.len() as u32);
        }
        Ok(FormTable {
            q,
            n,
            offsets,
            entries,
            sig,
            point_degree: points.iter().map(|c| c.degree() as u8).collect(),
            exact_sig: points.len() <= 128,
        })
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// `(point id, multiplicity)` pairs of the form with index `idx`; empty for
    /// constants and the zero form.
    #[inline]
    pub fn divisor(&self, idx: usize) -> &[(u16, u8)] {
        &self.entries[self.offsets[idx] as usize..self.offsets[idx + 1] as usize]
    }

    #[inline]
    pub fn signature(&self, idx: usize) -> u128 {
        self.sig[idx]
    }

    /// `true` when signatures determine coprimality exactly.
    pub fn exact_signatures(&self) -> bool {
        self.exact_sig
    }

    pub fn index_of(&self, form: &BinaryForm) -> usize {
        form.index(self.q)
    }

    fn point_deg(&self, id: u16) -> u32 {
        self.point_degree[id as usize] as u32
    }

    /// `true` when the pair `(a, b)` of forms of this degree has no common root.
    #[inline]
    pub fn coprime_pair(&self, a: usize, b: usize) -> bool {
        if a == 0 || b == 0 {
            // gcd is the other form (or everything); coprime only for nonzero constants
            return self.n == 0 && (a != 0 || b != 0);
        }
        if self.exact_sig {
            return self.sig[a] & self.sig[b] == 0;
        }
        self.sig[a] & self.sig[b] == 0 || gcd_len(self.divisor(a), self.divisor(b), |id| self.point_deg(id)) == 0
    }

    /// Degree of `gcd(a, b)` where `a` is indexed in `self` and `b` in `other`;
    /// `None` when both forms are zero.
    #[inline]
    pub fn gcd_degree(&self, a: usize, other: &FormTable, b: usize) -> Option<u32> {
        match (a == 0, b == 0) {
            (true, true) => None,
            (true, false) => Some(other.n as u32),
            (false, true) => Some(self.n as u32),
            (false, false) => {
                if self.sig[a] & other.sig[b] == 0 {
                    return Some(0);
                }
                let pd = if self.point_degree.len() >= other.point_degree.len() {
                    &self.point_degree
                } else {
                    &other.point_degree
                };
                Some(gcd_len(self.divisor(a), other.divisor(b), |id| pd[id as usize] as u32))
            }
        }
    }
}

fn gcd_len(a: &[(u16, u8)], b: &[(u16, u8)], deg: impl Fn(u16) -> u32) -> u32 {
    let (mut i, mut j, mut total) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                total += deg(a[i].0) * a[i].1.min(b[j].1) as u32;
                i += 1;
                j += 1;
            }
        }
    }
    total
}
