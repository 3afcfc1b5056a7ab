//! Exact-arithmetic kernels for rank-2 monopole-branch generating series on
//! root stacks and ADE quintics, plus the classical q-series they are
//! compared against.
//!
//! Everything is computed over arbitrary-precision rationals; there is no
//! floating point anywhere and every cross-check is an exact equality. The
//! series kernel ([`series::Series`]) is generic over the scalar type; the
//! crate-root aliases pin the exact-rational instantiation used throughout.

pub mod chern;
pub mod cyclotomic;
pub mod error;
pub mod hilb_euler;
pub mod modular;
pub mod rootstack;
pub mod scalar;
pub mod series;
pub mod table;
pub mod taut;
pub mod verify;

pub use error::{Error, Result};

/// Exact rational scalar used by all domain modules.
pub type Rat = num::BigRational;

/// Truncated Laurent/Puiseux series over exact rationals.
pub type QSeries = series::Series<Rat>;

/// Two-variable truncated power series over exact rationals (brute-force
/// diagonal oracle).
pub type BiSeries = series::bivariate::BiSeries<Rat>;

/// Default truncation order, in exponent units.
pub const DEFAULT_ORDER: i64 = 24;
