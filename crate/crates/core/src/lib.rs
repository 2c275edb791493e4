//! Exact continued-fraction solutions of truncated moment problems.
//!
//! The one-dimensional machinery (`hankel`, `pfraction`, `sfraction`) turns a
//! finite list of moments into a continued fraction and then into a rational
//! function whose expansion at infinity reproduces the data. `multidim`
//! lifts this to moments in several variables.

pub mod arith;
pub mod error;
pub mod hankel;
pub mod linalg;
pub mod multidim;
pub mod pfraction;
pub mod sfraction;

pub use arith::{InvZSeries, Poly, Rational, RationalFunction};
pub use error::{Error, Result};
pub use hankel::{MomentSequence, NormalIndices};
pub use pfraction::{PFraction, Tail, TailClass, VerificationReport};
pub use multidim::{AtomicMeasure, MultiMomentSequence, MultiSolution, SolveOptions, Strategy};
pub use sfraction::{Parity, SFraction, StieltjesPolys};
