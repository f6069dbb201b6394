//! Rational curves on split quartic del Pezzo surfaces over finite fields.

pub mod error;
pub mod exact;
pub mod ffpoly;
pub mod picard;
pub mod posetq;
pub mod strata;
pub mod zeta;

pub use error::{Dp4Error, Result};
