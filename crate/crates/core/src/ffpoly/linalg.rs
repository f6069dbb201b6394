//! Reduced row echelon forms over F_q.

use super::field::{FieldTable, Fq};

/// A subspace of row vectors in reduced row echelon form.
///
/// The representation is canonical: two `Rref` values with equal `rows`
/// span the same space.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rref {
    ncols: usize,
    rows: Vec<Vec<Fq>>,
}

fn leading(row: &[Fq]) -> Option<usize> {
    row.iter().position(|&c| c != 0)
}

impl Rref {
    pub fn empty(ncols: usize) -> Rref {
        Rref { ncols, rows: Vec::new() }
    }

    pub fn from_rows<I: IntoIterator<Item = Vec<Fq>>>(f: &FieldTable, ncols: usize, rows: I) -> Rref {
        let mut r = Rref::empty(ncols);
        for row in rows {
            r.insert(f, row);
        }
        r
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Dimension of the solution space `{x : row · x = 0 for all rows}`.
    pub fn nullity(&self) -> usize {
        self.ncols - self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Fq>] {
        &self.rows
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|r| leading(r).unwrap()).collect()
    }

    /// Reduces `row` against the stored rows.
    pub fn reduce(&self, f: &FieldTable, row: &mut [Fq]) {
        for r in &self.rows {
            let p = leading(r).unwrap();
            let c = row[p];
            if c != 0 {
                for j in p..self.ncols {
                    if r[j] != 0 {
                        row[j] = f.sub(row[j], f.mul(c, r[j]));
                    }
                }
            }
        }
    }

    pub fn contains(&self, f: &FieldTable, row: &[Fq]) -> bool {
        let mut v = row.to_vec();
        self.reduce(f, &mut v);
        v.iter().all(|&c| c == 0)
    }

    /// Adds a row; returns `true` when the rank grew.
    pub fn insert(&mut self, f: &FieldTable, mut row: Vec<Fq>) -> bool {
        assert_eq!(row.len(), self.ncols, "row length mismatch");
        self.reduce(f, &mut row);
        let Some(p) = leading(&row) else { return false };
        let inv = f.inv(row[p]);
        for c in row.iter_mut().skip(p) {
            *c = f.mul(*c, inv);
        }
        for r in self.rows.iter_mut() {
            let c = r[p];
            if c != 0 {
                for j in p..self.ncols {
                    if row[j] != 0 {
                        r[j] = f.sub(r[j], f.mul(c, row[j]));
                    }
                }
            }
        }
        let pos = self.rows.iter().position(|r| leading(r).unwrap() > p).unwrap_or(self.rows.len());
        self.rows.insert(pos, row);
        true
    }

    /// Row space of the sum `self + other`.
    pub fn join(&self, f: &FieldTable, other: &Rref) -> Rref {
        let (mut big, small) = if self.rank() >= other.rank() { (self.clone(), other) } else { (other.clone(), self) };
        for r in &small.rows {
            big.insert(f, r.clone());
        }
        big
    }

    /// `true` when every row of `other` lies in `self`.
    pub fn contains_space(&self, f: &FieldTable, other: &Rref) -> bool {
        other.rows.iter().all(|r| self.contains(f, r))
    }

    /// Basis of the solution space of `rows · x = 0`.
    pub fn kernel_basis(&self, f: &FieldTable) -> Vec<Vec<Fq>> {
        let pivots = self.pivots();
        let mut is_pivot = vec![false; self.ncols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut out = Vec::new();
        for j in (0..self.ncols).filter(|&j| !is_pivot[j]) {
            let mut v = vec![0; self.ncols];
            v[j] = 1;
            for (r, &p) in self.rows.iter().zip(&pivots) {
                v[p] = f.neg(r[j]);
            }
            out.push(v);
        }
        out
    }
}

/// Rank of a list of rows.
pub fn rank(f: &FieldTable, ncols: usize, rows: &[Vec<Fq>]) -> usize {
    Rref::from_rows(f, ncols, rows.iter().cloned()).rank()
}
