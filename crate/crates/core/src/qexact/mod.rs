//! Exact arithmetic: rationals, polynomials over Q, truncated Laurent series in t⁻¹,
//! integer polynomials, and the positive-degree series root used as the oracle.

mod intpoly;
mod laurent;
mod poly;
pub mod rational;
mod root;

pub use intpoly::IntPoly;
pub use laurent::LaurentTrunc;
pub use poly::{Poly, NEG_INF};
pub use rational::Rational;
pub use root::{cubic_from_ints, positive_root_seed, series_root, CubicEq};
