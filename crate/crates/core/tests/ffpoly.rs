use dp4::ffpoly::field::is_supported_order;
use dp4::ffpoly::poly::{self, is_irreducible};
use dp4::ffpoly::{
    closed_point_count, closed_points, divisor_of_form, divisors_of_degree, enumerate_uk, gcd_divisor, BinaryForm,
    FieldTable, Fq, Rref,
};
use proptest::prelude::*;

const ORDERS: [u32; 9] = [2, 3, 4, 5, 7, 8, 9, 16, 27];

fn field() -> impl Strategy<Value = u32> {
    proptest::sample::select(ORDERS.to_vec())
}

/// Monic irreducible polynomials of degree d, by trial over all monic ones.
fn irreducible_count(f: &FieldTable, d: u32) -> u128 {
    let q = f.q() as usize;
    let mut n = 0;
    for idx in 0..q.pow(d) {
        let mut p: Vec<Fq> = (0..d).map(|j| ((idx / q.pow(j)) % q) as Fq).collect();
        p.push(1);
        n += is_irreducible(f, &p) as u128;
    }
    n
}

#[test]
fn supported_orders() {
    for q in ORDERS {
        assert!(is_supported_order(q));
    }
    for q in [0, 1, 6, 10, 12] {
        assert!(!is_supported_order(q));
        assert!(FieldTable::get(q).is_err());
    }
}

#[test]
fn prime_fields_are_integers_mod_p() {
    for p in [2u32, 3, 5, 7] {
        let f = FieldTable::get(p).unwrap();
        for a in 0..p {
            for b in 0..p {
                let (x, y) = (f.from_vector(a).unwrap(), f.from_vector(b).unwrap());
                assert_eq!(f.as_vector(f.add(x, y)), (a + b) % p);
                assert_eq!(f.as_vector(f.mul(x, y)), (a * b) % p);
            }
        }
    }
}

#[test]
fn closed_points_match_irreducible_polynomials() {
    for q in [2u32, 3, 4, 5] {
        let f = FieldTable::get(q).unwrap();
        for d in 1..=4 {
            let brute = irreducible_count(&f, d) + (d == 1) as u128;
            assert_eq!(closed_point_count(q as u64, d), brute, "q = {q}, d = {d}");
            assert_eq!(closed_points(q, d).unwrap().len() as u128, brute);
        }
    }
}

#[test]
fn points_over_extensions() {
    // Σ_{d | n} d N_d = q^n + 1
    for q in [2u64, 3, 4, 5, 7] {
        for n in 1..=8u32 {
            let s: u128 = (1..=n).filter(|d| n % d == 0).map(|d| d as u128 * closed_point_count(q, d)).sum();
            assert_eq!(s, (q as u128).pow(n) + 1);
        }
    }
}

#[test]
fn divisor_counts() {
    for q in [2u32, 3, 4] {
        for n in 0..=4u32 {
            let want = ((q as usize).pow(n + 1) - 1) / (q as usize - 1);
            assert_eq!(divisors_of_degree(q, n).unwrap().len(), want);
        }
    }
}

#[test]
fn uk_matches_filtered_product() {
    for (q, k) in [(2u32, [1u32, 1, 1, 0]), (3, [1, 1, 1, 1]), (3, [2, 1, 0, 0]), (2, [2, 1, 0, 0])] {
        let divs: Vec<_> = k.iter().map(|&n| divisors_of_degree(q, n).unwrap()).collect();
        let mut brute = 0;
        for a in &divs[0] {
            for b in &divs[1] {
                for c in &divs[2] {
                    for d in &divs[3] {
                        let t = [a, b, c, d];
                        brute += (0..4).all(|i| (i + 1..4).all(|j| t[i].is_disjoint(t[j]))) as usize;
                    }
                }
            }
        }
        assert_eq!(enumerate_uk(q, k).unwrap().len(), brute, "q = {q}, k = {k:?}");
    }
    assert!(enumerate_uk(2, [1, 1, 1, 1]).unwrap().is_empty());
}

fn nonzero_form(q: u32, max_deg: usize) -> impl Strategy<Value = Vec<Fq>> {
    (1..=max_deg)
        .prop_flat_map(move |n| proptest::collection::vec(0..q as Fq, n + 1))
        .prop_filter("nonzero", |v| v.iter().any(|&c| c != 0))
}

proptest! {
    #[test]
    fn field_axioms(q in field(), a in 0u32..1000, b in 0u32..1000, c in 0u32..1000) {
        let f = FieldTable::get(q).unwrap();
        let (a, b, c) = ((a % q) as Fq, (b % q) as Fq, (c % q) as Fq);
        prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), 0);
        prop_assert_eq!(f.sub(f.add(a, b), b), a);
        if a != 0 {
            prop_assert_eq!(f.mul(a, f.inv(a)), 1);
            prop_assert_eq!(f.div(f.mul(a, b), a), b);
            prop_assert_eq!((q - 1) % f.order(a), 0);
        }
        prop_assert_eq!(f.pow(a, q as u64), a);
        prop_assert_eq!(f.frobenius(f.add(a, b)), f.add(f.frobenius(a), f.frobenius(b)));
        prop_assert_eq!(f.from_vector(f.as_vector(a)).unwrap(), a);
    }

    #[test]
    fn divisor_of_form_roundtrips((q, v) in field().prop_filter("small", |q| *q <= 9).prop_flat_map(|q| (Just(q), nonzero_form(q, 5)))) {
        let f = FieldTable::get(q).unwrap();
        let form = BinaryForm::new(v.clone());
        let d = divisor_of_form(&f, &form).unwrap();
        prop_assert_eq!(d.degree() as usize, form.degree());
        prop_assert_eq!(divisor_of_form(&f, &d.form(&f)).unwrap(), d.clone());
        // the form is a scalar multiple of the form of its divisor
        let g = d.form(&f);
        let lead = |c: &[Fq]| c.iter().rposition(|&x| x != 0).unwrap();
        let (i, j) = (lead(form.coeffs()), lead(g.coeffs()));
        prop_assert_eq!(i, j);
        let s = f.div(form.coeffs()[i], g.coeffs()[j]);
        prop_assert_eq!(g.scale(&f, s), form);
    }

    #[test]
    fn gcd_is_the_meet((q, a, b) in field().prop_filter("small", |q| *q <= 9).prop_flat_map(|q| (Just(q), nonzero_form(q, 4), nonzero_form(q, 4)))) {
        let f = FieldTable::get(q).unwrap();
        let (a, b) = (BinaryForm::new(a), BinaryForm::new(b));
        let meet = divisor_of_form(&f, &a).unwrap().meet(&divisor_of_form(&f, &b).unwrap());
        prop_assert_eq!(gcd_divisor(&f, &a, &b).degree(), Some(meet.degree()));
    }

    #[test]
    fn product_divisor_is_sum((q, a, b) in field().prop_filter("small", |q| *q <= 9).prop_flat_map(|q| (Just(q), nonzero_form(q, 3), nonzero_form(q, 3)))) {
        let f = FieldTable::get(q).unwrap();
        let (a, b) = (BinaryForm::new(a), BinaryForm::new(b));
        let da = divisor_of_form(&f, &a).unwrap();
        let db = divisor_of_form(&f, &b).unwrap();
        prop_assert_eq!(divisor_of_form(&f, &a.mul(&f, &b)).unwrap(), da.add(&db));
    }

    #[test]
    fn polynomial_division((q, a, b) in field().prop_filter("small", |q| *q <= 9).prop_flat_map(|q| (Just(q), nonzero_form(q, 6), nonzero_form(q, 3)))) {
        let f = FieldTable::get(q).unwrap();
        let (quo, r) = poly::divrem(&f, &a, &b);
        let mut b = b.clone();
        poly::trim(&mut b);
        prop_assert!(poly::degree(&r).is_none_or(|d| d < poly::degree(&b).unwrap()));
        let mut back = poly::add(&f, &poly::mul(&f, &quo, &b), &r);
        poly::trim(&mut back);
        let mut a = a.clone();
        poly::trim(&mut a);
        prop_assert_eq!(back, a);
    }

    #[test]
    fn kernel_is_annihilated(q in field().prop_filter("small", |q| *q <= 9), rows in proptest::collection::vec(proptest::collection::vec(0u16..9, 6), 0..6)) {
        let f = FieldTable::get(q).unwrap();
        let rows: Vec<Vec<Fq>> = rows.into_iter().map(|r| r.into_iter().map(|x| x % q as Fq).collect()).collect();
        let m = Rref::from_rows(&f, 6, rows.clone());
        let ker = m.kernel_basis(&f);
        prop_assert_eq!(m.rank() + ker.len(), 6);
        for v in &ker {
            for r in &rows {
                let dot = r.iter().zip(v).fold(0, |s, (x, y)| f.add(s, f.mul(*x, *y)));
                prop_assert_eq!(dot, 0);
            }
        }
        prop_assert_eq!(Rref::from_rows(&f, 6, ker).rank(), m.nullity());
    }
}
