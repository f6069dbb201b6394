//! The predicted main term of the curve count, and the Betti-bound constant.

use num_bigint::BigUint;
use num_rational::Ratio;
use serde::Serialize;

use super::euler::{tamagawa, DEFAULT_TRUNCATION};
use crate::error::{Dp4Error, Result};
use crate::picard::{alpha_constant, ell_and_cone, nef_classes_upto, AlphaMode, Cone};

#[derive(Clone, Debug, Serialize)]
pub struct PredictorReport {
    pub q: u64,
    pub eps: String,
    pub d: u32,
    pub alpha: f64,
    pub alpha_exact: Option<String>,
    pub alpha_note: Option<String>,
    pub tau: f64,
    pub tau_truncation: u32,
    /// `(1 - 1/q)^-1 α τ q^d d^5`.
    pub predicted: f64,
    /// `Σ τ q^h(β)` over classes `β` of the cone with `h(β) <= d`, for small `d`.
    pub ehrhart_sum: Option<f64>,
    pub ehrhart_ratio: Option<f64>,
}

/// Largest `d` for which the class sum is evaluated.
pub const EHRHART_SUM_MAX: u32 = 12;

/// Dilation used when the cone volume is only available by lattice count.
pub const LATTICE_DILATION: i64 = 12;

pub fn manin_predictor(q: u64, eps: Ratio<i64>, d: u32) -> Result<PredictorReport> {
    if eps < Ratio::from_integer(0) {
        return Err(Dp4Error::Config(format!("eps = {eps} is negative")));
    }
    let cone = if eps == Ratio::from_integer(0) { Cone::nef() } else { Cone::shrunk(eps) };
    let alpha = alpha_constant(&cone, AlphaMode::Exact, LATTICE_DILATION)?;
    let tau = tamagawa(q, DEFAULT_TRUNCATION)?;
    let qf = q as f64;
    let predicted = alpha.approx * tau.value * qf.powi(d as i32) * (d as f64).powi(5) / (1.0 - 1.0 / qf);
    let ehrhart_sum = (d <= EHRHART_SUM_MAX).then(|| {
        nef_classes_upto(d as i64)
            .iter()
            .filter(|b| eps == Ratio::from_integer(0) || ell_and_cone(b, eps).1)
            .map(|b| tau.value * qf.powi(b.h() as i32))
            .sum::<f64>()
    });
    Ok(PredictorReport {
        q,
        eps: eps.to_string(),
        d,
        alpha: alpha.approx,
        alpha_exact: alpha.exact.as_ref().map(crate::exact::ratio_text),
        alpha_note: alpha.warning.clone(),
        tau: tau.value,
        tau_truncation: tau.truncation,
        predicted,
        ehrhart_sum,
        ehrhart_ratio: ehrhart_sum.filter(|_| predicted > 0.0).map(|s| s / predicted),
    })
}

/// `(max(d_r, 2) + 2)^(2n + 4 + Σ d_i)` for nondecreasing degrees `d_1..d_r`.
pub fn betti_constant(n: u32, degrees: &[u32]) -> Result<BigUint> {
    let Some(&last) = degrees.last() else {
        return Err(Dp4Error::Config("no degrees given".into()));
    };
    if degrees.windows(2).any(|w| w[0] > w[1]) {
        return Err(Dp4Error::Config(format!("degrees {degrees:?} are not nondecreasing")));
    }
    let base = BigUint::from(last.max(2) + 2);
    Ok(base.pow(2 * n + 4 + degrees.iter().sum::<u32>()))
}
