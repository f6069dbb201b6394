//! Euler products, the virtual height zeta function and the predicted count.

pub mod coefficient;
pub mod euler;
pub mod predictor;

pub use coefficient::{
    coefficient_convergence, mobius_coefficient_compare, point_product, product_coefficient, CoefficientRecord,
    ConvergencePoint,
};
pub use euler::{
    log_tail_bound, normalized_factor_at_one, point_factor, residue_compare,
    surface_point_count, tamagawa, virtual_zeta_factor, virtual_zeta_factor_series, EulerProduct, ResidueRecord,
    DEFAULT_TRUNCATION,
};
pub use predictor::{betti_constant, manin_predictor, PredictorReport};
