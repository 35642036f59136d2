//! Exact arithmetic for Hausdorff continuous interval-valued functions on a
//! compact rational interval.
//!
//! Functions are represented piecewise: finitely many rational breakpoints
//! carrying extended interval values, and pairs of rational functions on the
//! open segments between them. All decisions are exact; suprema at irrational
//! critical points are returned as certified enclosures.

pub mod corpus;
pub mod error;
pub mod exreal;
pub mod metric;
pub mod piecewise;
pub mod regularize;
pub mod ring;
pub mod segments;

/// Arbitrary precision rational scalar.
pub type Rational = num_rational::BigRational;

pub use error::{Error, Location, Result};
pub use exreal::{add_iv, modulus, mul_iv, neg_iv, width, ExtReal, XInterval};
pub use metric::{
    cauchy_limit, density_approx, finite_envelopes, h_inf2, h_sup2, interpose, order_ball_check, rho,
    within_band, CauchyLimit, OrderBall, Verdict,
};
pub use piecewise::{refine, refine_all, FnSets, PiecewiseFn, Region, Segment};
pub use regularize::{
    h_extract, h_members_sample, is_h_continuous, is_quasi_minimal, is_s_continuous, regularity,
    Regularity,
};
pub use ring::{
    add_const, as_quotient, classify, dense_witness, h_add, h_inv, h_mul, is_continuous,
    is_zero_divisor, neg, pointwise_add, pointwise_mul, rep_homomorphism, scale, sub,
    Classification,
};
pub use segments::{default_tol, rf_roots, sup_abs, Enclosure, Poly, RationalFunc, Side};
