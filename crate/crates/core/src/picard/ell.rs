//! The piecewise linear function ℓ and membership in the shrunk cone.

use num_rational::Ratio;
use serde::Serialize;

use super::lattice::{presentations, PicClass};

/// `ℓ(α) = max_ρ min(𝔍_ρ(α), ℜ_ρ(α))`.
pub fn ell(alpha: &PicClass) -> Ratio<i64> {
    presentations()
        .iter()
        .map(|rho| {
            let inv = rho.invariants_unchecked(alpha);
            let s = inv.sum_k();
            let j = Ratio::new((2 * inv.a - s).min(2 * inv.a_prime - s), 32);
            let r = Ratio::from_integer(*inv.k.iter().min().unwrap());
            j.min(r)
        })
        .max()
        .unwrap()
}

#[derive(Clone, Debug, Serialize)]
pub struct EllReport {
    pub ell: String,
    pub member_of_shrunk_cone: bool,
}

/// `ell_and_cone(α, ε)`.
pub fn ell_and_cone(alpha: &PicClass, eps: Ratio<i64>) -> (Ratio<i64>, bool) {
    let l = ell(alpha);
    (l, l >= eps * alpha.h())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(ell(&PicClass::MINUS_K), Ratio::from_integer(0));
        let a = PicClass::MINUS_K + PicClass::MINUS_K + PicClass::F + PicClass::F_PRIME;
        assert_eq!(ell(&a), Ratio::new(1, 16));
        assert_eq!(ell(&(2 * a)), ell(&a) * 2);
        let (_, inside) = ell_and_cone(&a, Ratio::new(1, 1000));
        assert!(inside);
        let (_, inside) = ell_and_cone(&PicClass::MINUS_K, Ratio::new(1, 1000));
        assert!(!inside);
    }
}
