use dp4::picard::{
    alpha_constant, chamber_decompose, chamber_generators, class_invariants, disjoint_triples, ell, ell_and_cone,
    presentations, AlphaMode, Cone, PicClass,
};
use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use proptest::prelude::*;

fn nef_classes_upto(hmax: i64) -> Vec<PicClass> {
    let mut out = Vec::new();
    for x in 0..=hmax {
        for y in 0..=hmax {
            for c1 in -hmax..=0 {
                for c2 in -hmax..=0 {
                    for c3 in -hmax..=0 {
                        for c4 in -hmax..=0 {
                            let a = PicClass([x, y, c1, c2, c3, c4]);
                            if a.h() <= hmax && a.is_nef() {
                                out.push(a);
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

#[test]
fn alpha_exact_matches_chamber_sum() {
    // each chamber is a unimodular simplicial cone, so its slice has volume 1/(6! Π h(g))
    let mut vol = BigRational::from_integer(BigInt::from(0));
    for &t in disjoint_triples() {
        let g = chamber_generators(t);
        let den: i64 = g.iter().map(|c| c.h()).product();
        vol += BigRational::new(BigInt::from(1), BigInt::from(720 * den));
    }
    let oracle = vol * BigRational::from_integer(BigInt::from(6));
    let got = alpha_constant(&Cone::nef(), AlphaMode::Exact, 0).unwrap().exact.unwrap();
    assert_eq!(got, oracle);
    assert_eq!(got, BigRational::new(BigInt::from(1), BigInt::from(180)));
}

#[test]
fn ehrhart_count_matches_brute_force() {
    let cone = Cone::nef();
    for m in 0..=5 {
        assert_eq!(cone.ehrhart_count(m).unwrap() as usize, nef_classes_upto(m).len(), "m = {m}");
    }
}

#[test]
fn lattice_mode_decreases_toward_exact() {
    let cone = Cone::nef();
    let v: Vec<f64> = [6, 12, 18].iter().map(|&m| alpha_constant(&cone, AlphaMode::Lattice, m).unwrap().approx).collect();
    assert!(v[0] > v[1] && v[1] > v[2] && v[2] > 1.0 / 180.0);
}

#[test]
fn shrunk_cone_falls_back_to_lattice() {
    let cone = Cone::shrunk(Ratio::new(1, 64));
    let v = alpha_constant(&cone, AlphaMode::Exact, 8).unwrap();
    assert!(v.warning.is_some());
    assert_eq!(v.mode, AlphaMode::Lattice);
    let full = alpha_constant(&Cone::nef(), AlphaMode::Lattice, 8).unwrap();
    assert!(v.approx <= full.approx);
}

#[test]
fn alpha_invariant_under_automorphisms() {
    let base = alpha_constant(&Cone::nef(), AlphaMode::Exact, 0).unwrap().exact.unwrap();
    for (perm, swap) in [([1, 0, 2, 3], false), ([3, 2, 1, 0], true), ([0, 1, 2, 3], true), ([1, 2, 3, 0], false)] {
        let c = Cone::nef().permuted(perm, swap).unwrap();
        assert_eq!(alpha_constant(&c, AlphaMode::Exact, 0).unwrap().exact.unwrap(), base);
    }
}

#[test]
fn every_small_nef_class_recomposes() {
    for a in nef_classes_upto(12) {
        let d = chamber_decompose(&a).unwrap();
        assert_eq!(d.recompose(), a);
        assert_eq!(4 * d.b + 5 * d.b3 + 6 * d.b2 + 3 * d.x + 2 * d.y1 + 2 * d.y2, a.h());
    }
}

#[test]
fn ell_examples() {
    assert_eq!(ell(&PicClass::MINUS_K), Ratio::from_integer(0));
    assert_eq!(ell(&PicClass::F), Ratio::from_integer(0));
    let a = PicClass::parse("6,6,1,1,1,1").unwrap();
    let (l, inside) = ell_and_cone(&a, Ratio::new(1, 1000));
    assert!(l > Ratio::from_integer(0));
    assert!(inside);
}

#[test]
fn invariants_of_standard_presentation() {
    let rho = &presentations()[0];
    let inv = class_invariants(&PicClass::MINUS_K, rho).unwrap();
    assert_eq!(inv.h, 4);
    assert!(class_invariants(&PicClass::e(1), rho).is_err());
}

fn nef_class() -> impl Strategy<Value = PicClass> {
    (0i64..8, 0i64..8, 0i64..5, 0i64..5, 0i64..5, 0i64..5)
        .prop_map(|(a, ap, k1, k2, k3, k4)| PicClass::from_invariants(a, ap, [k1, k2, k3, k4]))
        .prop_filter("nef", |a| a.is_nef())
}

proptest! {
    #[test]
    fn pairing_is_symmetric(u in prop::array::uniform6(-9i64..9), v in prop::array::uniform6(-9i64..9)) {
        prop_assert_eq!(PicClass(u).dot(&PicClass(v)), PicClass(v).dot(&PicClass(u)));
    }

    #[test]
    fn nef_is_preserved_by_automorphisms(a in nef_class(), swap in any::<bool>(), r in 0usize..4) {
        let perm = [r, (r + 1) % 4, (r + 2) % 4, (r + 3) % 4];
        let b = a.permuted(perm, swap);
        prop_assert!(b.is_nef());
        prop_assert_eq!(b.h(), a.h());
        prop_assert_eq!(ell(&b), ell(&a));
    }

    #[test]
    fn ell_is_homogeneous(a in nef_class(), n in 1i64..5) {
        prop_assert_eq!(ell(&(n * a)), ell(&a) * n);
    }

    #[test]
    fn chamber_decomposition_recomposes(a in nef_class()) {
        let d = chamber_decompose(&a).unwrap();
        prop_assert_eq!(d.recompose(), a);
    }

    #[test]
    fn invariants_relation(a in nef_class(), i in 0usize..80) {
        let rho = &presentations()[i];
        let inv = class_invariants(&a, rho).unwrap();
        prop_assert_eq!(inv.h, 2 * inv.a + 2 * inv.a_prime - inv.sum_k());
    }
}
