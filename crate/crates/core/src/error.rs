//! Error type shared by every module of the crate.

use thiserror::Error;

/// Crate-wide error enum. Variants correspond to contract violations of the
/// individual operations; none of them is recoverable by retrying with the
/// same inputs.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Inversion requires a nonzero lowest tracked coefficient.
    #[error("cannot invert: lowest tracked coefficient is zero")]
    ZeroLeadingCoefficient,

    /// Square root requires an even leading exponent (in unit steps) and a
    /// leading coefficient that is the square of a rational.
    #[error("not a square: {0}")]
    NotASquare(String),

    /// exp needs strictly positive valuation; log needs constant term 1;
    /// composition needs an inner series of strictly positive valuation.
    #[error("bad valuation: {0}")]
    BadValuation(String),

    /// Coefficient requested outside the window of known exponents.
    #[error("exponent {exp}/{unit_den} outside known window [{lo}, {hi}] (numerator units)")]
    OutOfWindow {
        exp: i64,
        unit_den: i64,
        lo: i64,
        hi: i64,
    },

    /// An operation that iterates coefficients order by order was handed a
    /// series whose window is unbounded; truncate first.
    #[error("operation requires a finite truncation window")]
    UnboundedWindow,

    /// Composition of a series with fractional exponents is not defined.
    #[error("outer series of a composition must have unit denominator 1")]
    FractionalCompose,

    /// Pairing index out of the admissible range 0..=n.
    #[error("pairing index {i} out of range 0..={n}")]
    IndexOutOfRange { i: i64, n: i64 },

    /// Integrand window does not cover the exponents 0..=n needed by the
    /// pairing.
    #[error("integrand window too small: needs [0, {need}], has [{lo}, {hi}]")]
    WindowTooSmall { need: i64, lo: i64, hi: i64 },

    /// The sign/normalization probe found no (or no unique) candidate that
    /// reconciles the first three orders. Signals an implementation bug, not
    /// a tunable.
    #[error("no consistent normalization among the four sign candidates")]
    NoConsistentNormalization,

    /// A theta-series coefficient failed the rationality reduction. Signals
    /// an enumeration-bound bug.
    #[error("non-rational coefficient at exponent {0}")]
    NonRationalCoefficient(i64),

    /// Hurwitz class numbers are defined for positive discriminant arguments.
    #[error("invalid discriminant {0}: must be positive")]
    InvalidDiscriminant(i64),

    /// Surface invariants require 12 | (c1^2 + c2).
    #[error("not integral: c1^2 + c2 = {0} is not divisible by 12")]
    NotIntegral(i64),

    /// Window arithmetic of a product came out inconsistent with the request.
    #[error("window inconsistent: {0}")]
    WindowInconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
