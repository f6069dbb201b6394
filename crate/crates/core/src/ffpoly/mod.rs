//! Finite fields, binary forms on P^1, closed points and divisors, and the
//! linear rows that incidence conditions impose on section coefficients.

pub mod divisor;
pub mod field;
pub mod form;
pub mod incidence;
pub mod linalg;
pub mod points;
pub mod poly;
pub mod table;

pub use divisor::{
    divisor_of_form, divisors_of_degree, divisors_of_degree_in, enumerate_uk, enumerate_uk_in,
    gcd_divisor, intersection_multiplicity, is_nowhere_vanishing, Divisor, GcdDivisor,
};
pub use field::{FieldTable, Fq};
pub use form::{BinaryForm, Functional};
pub use incidence::divisibility_rows;
pub use linalg::Rref;
pub use points::{closed_point_count, closed_points, closed_points_of, closed_points_upto, ClosedPoint};
