//! Rigorous numerical verification of series identities built from central
//! binomial coefficients, harmonic numbers, Catalan numbers and the
//! Fibonacci/Lucas sequences.
//!
//! The crate is layered bottom-up:
//!
//! * [`exact`]: big integers, rationals, the field Q(√5) and the
//!   combinatorial sequences;
//! * [`ball`]: midpoint–radius arbitrary-precision reals, elementary
//!   functions and named constants;
//! * [`expr`]: closed-form expression trees evaluated to balls;
//! * [`series`]: term streams and rigorous tail bounds;
//! * [`genfunc`]: generating-function closed forms and substitution points;
//! * [`registry`]: the catalog of identities;
//! * [`verifier`]: running identities and producing reports.

pub mod ball;
pub mod error;
pub mod exact;
pub mod expr;
pub mod genfunc;
pub mod registry;
pub mod series;
pub mod verifier;

pub use error::{Error, Result};
