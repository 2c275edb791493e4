//! Exact arithmetic substrate: rationals, dense polynomials, truncated
//! series in `1/z`, and rational functions.

mod poly;
mod ratfunc;
pub mod rational;
mod series;

pub use poly::Poly;
pub use ratfunc::RationalFunction;
pub use rational::{format_rational, int, one, parse_rational, rat, zero, Rational};
pub use series::InvZSeries;
