//! Exact symbolic kernel for twisted derivations of the Laurent polynomial
//! ring in one variable over the rational-function field Q(q).
//!
//! The crate is organized around the pair (s, q) defining the endomorphism
//! sigma(t) = q t^s:
//!
//! - [`scalars`]: the field Q(q) with exact arithmetic and specialization;
//! - [`laurent`]: the algebra A = Q(q)[t, t^-1] with divisibility, gcd and
//!   Euclidean division;
//! - [`twist`]: sigma and its derived objects g, d, lambda, T, delta and the
//!   generator Delta;
//! - [`derivation`]: the rank-one module of sigma-derivations, the twisted
//!   bracket, structure-constant formulas and identity checkers;
//! - [`canonical`]: the decomposition into a finite free part plus inner
//!   derivations, reduction modulo inner, and the cyclic grading;
//! - [`ssets`]: the derived space of brackets of inner derivations and the
//!   stabilizer-like subsets, with windowed theorem-level checks;
//! - [`ore`]: the skew polynomial extension A[X; sigma, Delta~] and the
//!   untwisting isomorphism for inner twists.
//!
//! All values are immutable and all operations pure, so everything is safe
//! to share across threads.

pub mod canonical;
pub mod derivation;
mod error;
pub mod laurent;
pub mod ore;
pub mod scalars;
pub mod ssets;
pub mod twist;

pub use error::{Error, Result};
pub use laurent::LaurentPoly;
pub use scalars::QRational;
pub use twist::{QMode, TwistContext};
