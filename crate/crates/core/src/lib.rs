//! Numerical engine for basic hypergeometric series.
//!
//! Provides q-Pochhammer arithmetic, unilateral and bilateral series with
//! adaptive truncation, the `(1-xy, y-x)` matrix inversion pair, a catalog of
//! two-sided identities and a randomized verification harness.

pub mod askey_wilson;
pub mod error;
pub mod harness;
pub mod identities;
pub mod inversion;
pub mod qcore;
pub mod scalar;
pub mod series;
pub mod term;

pub use error::{QError, QResult};
pub use qcore::{Param, QBase};
pub use scalar::{Dd, Precision, Real, Scalar, ScalarExt, Wide};
pub use series::{SeriesSpec, SumCtrl, SumResult, Variant};
