//! Exact certification of the zero locations of Ramanujan-type polynomials.
//!
//! Every verdict produced by this crate derives from exact rational
//! arithmetic. High-precision floating point appears only in the numeric
//! cross-checks ([`polycore::numeric_roots`]) and in the analytic residual
//! checks ([`analytic`]), and never influences a verdict field.

pub mod analytic;
pub mod certify;
pub mod criteria;
mod error;
pub mod exactnum;
pub mod polycore;
pub mod ramfam;
pub mod real;
pub mod serde_rational;

pub use error::{Error, Result};
pub use exactnum::BigRational;
pub use polycore::DensePoly;
pub use ramfam::Family;
