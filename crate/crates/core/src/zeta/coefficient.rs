//! Coefficients of the virtual height zeta function, two ways: from the
//! poset sum and from the expansion of the Euler product.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use super::euler::{point_factor, residue_compare, virtual_zeta_factor_series};
use crate::error::{Dp4Error, Result};
use crate::exact::{ratio_to_f64, Q};
use crate::ffpoly::points::closed_point_count;
use crate::ffpoly::FieldTable;
use crate::strata::main_term_virtual_matched;

/// The `t^k` coefficient of `Π_{deg c <= deg_max} Z_c(t)`.
pub fn product_coefficient(q: u64, k: [u32; 4], deg_max: u32) -> Q {
    let mut state: HashMap<[u32; 4], Q> = HashMap::from([([0; 4], Q::one())]);
    let top = *k.iter().max().unwrap();
    for d in 1..=deg_max {
        let series = virtual_zeta_factor_series(q, d, top);
        for _ in 0..closed_point_count(q, d) {
            let mut next: HashMap<[u32; 4], Q> = HashMap::new();
            for (used, coef) in &state {
                *next.entry(*used).or_insert_with(Q::zero) += coef * &series[0];
                for i in 0..4 {
                    for (j, c) in series.iter().enumerate().skip(1) {
                        if c.is_zero() || used[i] + j as u32 > k[i] {
                            continue;
                        }
                        let mut u = *used;
                        u[i] += j as u32;
                        *next.entry(u).or_insert_with(Q::zero) += coef * c;
                    }
                }
            }
            state = next;
        }
    }
    state.remove(&k).unwrap_or_else(Q::zero)
}

#[derive(Clone, Debug, Serialize)]
pub struct CoefficientRecord {
    pub q: u64,
    pub k: [u32; 4],
    pub deg_max: u32,
    #[serde(serialize_with = "crate::exact::serialize_ratio")]
    pub poset_sum: Q,
    #[serde(serialize_with = "crate::exact::serialize_ratio")]
    pub product_coefficient: Q,
    #[serde(serialize_with = "crate::exact::serialize_ratio")]
    pub difference: Q,
}

/// `q^Σk` times the poset sum over `w ∈ U_k`, `w <= x`, against the `t^k`
/// coefficient of the Euler product. Both sides use closed points of degree
/// at most the given bounds, which must agree.
pub fn mobius_coefficient_compare(q: u64, k: [u32; 4], poset_deg_max: u32, product_deg_max: u32) -> Result<CoefficientRecord> {
    if poset_deg_max != product_deg_max {
        return Err(Dp4Error::Config(format!(
            "truncations differ: poset sum to degree {poset_deg_max}, product to degree {product_deg_max}"
        )));
    }
    let f = FieldTable::get(q as u32)?;
    let sum_k: u32 = k.iter().sum();
    let poset_sum = main_term_virtual_matched(&f, k, poset_deg_max)? * Q::from_integer(BigInt::from(q).pow(sum_k));
    let product_coefficient = product_coefficient(q, k, product_deg_max);
    let difference = &poset_sum - &product_coefficient;
    Ok(CoefficientRecord { q, k, deg_max: poset_deg_max, poset_sum, product_coefficient, difference })
}

#[derive(Clone, Debug, Serialize)]
pub struct ConvergencePoint {
    pub m: u32,
    /// `t^(m,m,m,m)` coefficient of the product over degrees `<= truncation`.
    pub coefficient: f64,
    pub residue: f64,
    pub deviation: f64,
}

/// Coefficients along `k = (m, m, m, m)` against the residue, both over
/// closed points of degree at most `truncation`. Points of degree above `m`
/// only contribute their constant terms.
pub fn coefficient_convergence(q: u64, ms: &[u32], truncation: u32) -> Result<Vec<ConvergencePoint>> {
    let residue = residue_compare(q, truncation)?.closed_form.value;
    ms.iter()
        .map(|&m| {
            let low = m.min(truncation);
            let head = ratio_to_f64(&product_coefficient(q, [m; 4], low));
            let ln_rest: f64 = (low + 1..=truncation)
                .map(|d| {
                    let c0 = &virtual_zeta_factor_series(q, d, 0)[0];
                    closed_point_count(q, d) as f64 * ratio_to_f64(c0).ln()
                })
                .sum();
            let coefficient = head * ln_rest.exp();
            Ok(ConvergencePoint { m, coefficient, residue, deviation: (coefficient - residue).abs() })
        })
        .collect()
}

/// `Π_{deg c <= D} (1 - q^-|c|)^6 (1 + 6 q^-|c| + q^-2|c|)`, exact.
pub fn point_product(q: u64, truncation: u32) -> Q {
    let mut v = Q::one();
    for d in 1..=truncation {
        v *= num_traits::pow(point_factor(q, d), closed_point_count(q, d) as usize);
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_coefficient_is_the_product_of_constant_terms() {
        for q in [2u64, 3] {
            let mut expect = Q::one();
            for d in 1..=2 {
                let c0 = virtual_zeta_factor_series(q, d, 0)[0].clone();
                expect *= num_traits::pow(c0, closed_point_count(q, d) as usize);
            }
            assert_eq!(product_coefficient(q, [0; 4], 2), expect);
            assert!(mobius_coefficient_compare(q, [0; 4], 2, 2).unwrap().difference.is_zero());
        }
    }

    #[test]
    fn small_coefficients_agree() {
        assert!(mobius_coefficient_compare(2, [1, 0, 0, 0], 2, 2).unwrap().difference.is_zero());
        assert!(mobius_coefficient_compare(3, [1, 1, 0, 0], 2, 2).unwrap().difference.is_zero());
    }

    #[test]
    fn mismatched_truncations_are_rejected() {
        assert!(matches!(mobius_coefficient_compare(2, [0; 4], 2, 3), Err(Dp4Error::Config(_))));
    }
}
