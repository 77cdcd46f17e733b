//! Exact integer, rational and Q(√5) arithmetic.

mod binet;
mod cache;
mod seq;
mod surd;

pub use binet::{binet_sides, check_binet_identity, BinetIdentity};
pub use cache::SequenceCache;
pub use seq::{alpha_power, beta_power, catalan_number, central_binomial, double_factorial, fib, harmonic, lucas};
pub use surd::SurdQ5;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

/// Parses `"p/q"` or `"p"` into an exact rational.
pub fn parse_rational(s: &str) -> crate::Result<BigRational> {
    let bad = || crate::Error::usage(format!("`{s}` is not a rational of the form p/q"));
    let (p, q) = match s.trim().split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s.trim(), "1"),
    };
    let p: BigInt = p.parse().map_err(|_| bad())?;
    let q: BigInt = q.parse().map_err(|_| bad())?;
    if q == BigInt::from(0) {
        return Err(crate::Error::DivisionByZero(format!("`{s}` has a zero denominator")));
    }
    Ok(BigRational::new(p, q))
}

/// `p/q` as a `BigRational`; panics on `q = 0`.
pub fn ratio(p: i64, q: i64) -> BigRational {
    BigRational::new(p.into(), q.into())
}
