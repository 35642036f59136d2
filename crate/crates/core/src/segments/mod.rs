//! Per-segment expression engine: exact polynomials and rational functions,
//! one-sided limits, real root isolation, sign charts and certified suprema.

pub mod poly;
pub mod ratfunc;
pub mod roots;
pub mod sup;

pub use poly::Poly;
pub use ratfunc::{RationalFunc, Side};
pub use roots::{isolate, rf_roots, simplest_rational, RootInfo, SignChart};
pub use sup::{default_tol, sup_abs, Enclosure};
