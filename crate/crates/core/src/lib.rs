//! Exact verification of hypergeometric generating relations.
//!
//! The crate expands both sides of the Bailey quadratic identities and of the
//! Exton and Malani generating relations as truncated formal power series with
//! arbitrary-precision rational coefficients, and compares them coefficient by
//! coefficient. A floating-point evaluator for `pFq` series provides an
//! independent numerical cross-check.
//!
//! All numeric code is generic over [`Scalar`], which is implemented for
//! [`Rational`] (exact), `f64` and `f32`. The aliases at the crate root name the
//! exact instantiations used throughout the verification code.

pub mod derivation;
pub mod error;
pub mod exact_arith;
pub mod hypergeom;
pub mod power_series;
pub mod relations;
pub mod sampling;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::Scalar;

/// Exact rational scalar: arbitrary-precision numerator over a positive
/// denominator, always in lowest terms.
pub type Rational = num_rational::BigRational;

/// Truncated power series with exact rational coefficients.
pub type TruncatedSeries = power_series::Series<Rational>;

/// `pFq` parameter lists with exact rational entries.
pub type ParamVec = hypergeom::Params<Rational>;

/// Coefficient sequence `A_n` with exact rational values.
pub type CoeffSeq = hypergeom::CoeffSeq<Rational>;

/// Relation parameters `(d, y, A)` with exact rational values.
pub type RelationParams = relations::RelationParams<Rational>;

/// Double-precision instantiations for the floating-point paths.
pub type ParamVecF64 = hypergeom::Params<f64>;
pub type CoeffSeqF64 = hypergeom::CoeffSeq<f64>;
