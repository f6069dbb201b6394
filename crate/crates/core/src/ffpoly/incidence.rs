//! Linear conditions `functional(F) ≡ 0 mod π^m` on pair-valued forms.

use super::field::{FieldTable, Fq};
use super::form::Functional;
use super::points::ClosedPoint;
use super::poly::{self, Poly};

/// Rows on the `2(n+1)` coefficients `[F1 | F2]` of a pair of degree-`n`
/// forms cutting out `functional(F1, F2) ≡ 0 mod pi^m`.
///
/// Returns `m * deg(pi)` rows; they can be dependent.
pub fn divisibility_rows(
    f: &FieldTable,
    n: usize,
    functional: Functional,
    pi: &ClosedPoint,
    m: u32,
) -> Vec<Vec<Fq>> {
    let width = 2 * (n + 1);
    let image_rows = image_rows(f, n, pi, m);
    image_rows
        .into_iter()
        .map(|r| {
            let mut row = vec![0; width];
            for j in 0..=n {
                row[j] = f.mul(functional.0, r[j]);
                row[n + 1 + j] = f.mul(functional.1, r[j]);
            }
            row
        })
        .collect()
}

/// Rows on the `n+1` coefficients of a single form `G` cutting out `pi^m | G`.
pub fn image_rows(f: &FieldTable, n: usize, pi: &ClosedPoint, m: u32) -> Vec<Vec<Fq>> {
    if pi.is_infinity() {
        // v^m | G iff c_j = 0 for j < m
        return (0..m as usize)
            .map(|r| {
                let mut row = vec![0; n + 1];
                if r <= n {
                    row[r] = 1;
                }
                row
            })
            .collect();
    }
    let modulus = poly::pow(f, pi.poly(), m);
    let len = (m * pi.degree()) as usize;
    // residue of T^(n-j) modulo pi^m, for the coefficient c_j
    let residues: Vec<Poly> = (0..=n)
        .map(|j| {
            let mut mono = vec![0; n - j + 1];
            mono[n - j] = 1;
            poly::rem(f, &mono, &modulus)
        })
        .collect();
    (0..len)
        .map(|r| (0..=n).map(|j| *residues[j].get(r).unwrap_or(&0)).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffpoly::divisor::divisor_of_form;
    use crate::ffpoly::form::BinaryForm;
    use crate::ffpoly::linalg::{rank, Rref};
    use crate::ffpoly::points::closed_points_upto;

    #[test]
    fn row_counts_and_ranks() {
        let f = FieldTable::get(3).unwrap();
        let c1 = ClosedPoint::affine(&f, 1);
        let c2 = crate::ffpoly::points::closed_points_of(&f, 2).unwrap()[0].clone();
        let id = Functional(1, 0);
        let r = divisibility_rows(&f, 2, id, &c1, 1);
        assert_eq!(r.len(), 1);
        assert_eq!(rank(&f, 6, &r), 1);
        let r = divisibility_rows(&f, 2, id, &c1, 3);
        assert_eq!((r.len(), rank(&f, 6, &r)), (3, 3));
        assert_eq!(divisibility_rows(&f, 2, id, &c2, 1).len(), 2);
    }

    #[test]
    fn kernel_matches_divisibility_exhaustively() {
        let f = FieldTable::get(3).unwrap();
        let n = 3;
        for pi in closed_points_upto(&f, 2).unwrap() {
            for m in 1..=3 {
                let rows = image_rows(&f, n, &pi, m);
                let r = Rref::from_rows(&f, n + 1, rows);
                for idx in 0..3usize.pow(n as u32 + 1) {
                    let g = BinaryForm::from_index(idx, n, 3);
                    let in_kernel = r
                        .rows()
                        .iter()
                        .all(|row| row.iter().zip(g.coeffs()).fold(0, |a, (&x, &y)| f.add(a, f.mul(x, y))) == 0);
                    let divisible = match divisor_of_form(&f, &g) {
                        None => true,
                        Some(d) => d.multiplicity(&pi) >= m,
                    };
                    assert_eq!(in_kernel, divisible, "{pi} m={m} {g:?}");
                }
            }
        }
    }

    #[test]
    fn rows_are_intersection_compatible() {
        let f = FieldTable::get(4).unwrap();
        let phi = Functional(2, 3);
        for pi in closed_points_upto(&f, 2).unwrap() {
            for m1 in 1..=3 {
                for m2 in 1..=3 {
                    let mut both = divisibility_rows(&f, 3, phi, &pi, m1);
                    both.extend(divisibility_rows(&f, 3, phi, &pi, m2));
                    let a = Rref::from_rows(&f, 8, both);
                    let b = Rref::from_rows(&f, 8, divisibility_rows(&f, 3, phi, &pi, m1.max(m2)));
                    assert_eq!(a, b);
                }
            }
        }
    }
}
