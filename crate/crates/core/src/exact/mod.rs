//! Exact scalars, polynomials and rational functions over Q, and elements of
//! real or imaginary quadratic fields Q(sqrt d).

mod field;
mod poly;
mod quad;
mod ratfunc;
mod rational;

pub use field::Field;
pub use poly::{poly_discriminant, poly_resultant, UniPoly};
pub use quad::{quad_arith, QuadExt, QuadOp, QuadValue};
pub use ratfunc::RatFunc;
pub use rational::{int, is_rational_square, rat, Rational};
