use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use super::{alpha_power, beta_power, fib, lucas, SurdQ5};
use crate::error::{Error, Result};

/// The five consequences of the Binet formulas used to rewrite the
/// substitution points as golden-ratio expressions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BinetIdentity {
    /// `α^{2m} = α^m F_m √5 − (−1)^{m+1}`
    AlphaFib,
    /// `α^{2m} = α^m L_m − (−1)^m`
    AlphaLucas,
    /// `β^{2m} = β^m L_m − (−1)^m`
    BetaLucas,
    /// `F_n² + (−1)^{n+m−1} F_m² = F_{n−m} F_{n+m}`
    FibSquares,
    /// `L_{n+m} + (−1)^m L_{n−m} = L_n L_m`
    LucasProduct,
}

impl BinetIdentity {
    pub const ALL: [BinetIdentity; 5] = [
        BinetIdentity::AlphaFib,
        BinetIdentity::AlphaLucas,
        BinetIdentity::BetaLucas,
        BinetIdentity::FibSquares,
        BinetIdentity::LucasProduct,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BinetIdentity::AlphaFib => "alpha-fib",
            BinetIdentity::AlphaLucas => "alpha-lucas",
            BinetIdentity::BetaLucas => "beta-lucas",
            BinetIdentity::FibSquares => "fib-squares",
            BinetIdentity::LucasProduct => "lucas-product",
        }
    }
}

impl fmt::Display for BinetIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BinetIdentity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BinetIdentity::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| Error::usage(format!("unknown Binet identity `{s}`")))
    }
}

fn minus_one_pow(k: i64) -> SurdQ5 {
    SurdQ5::from_integer(if k.rem_euclid(2) == 0 { 1 } else { -1 })
}

fn int(v: BigInt) -> SurdQ5 {
    SurdQ5::from_integer(v)
}

/// Both sides of the identity as exact field elements. The α/β identities
/// ignore `n`.
pub fn binet_sides(id: BinetIdentity, m: i64, n: i64) -> (SurdQ5, SurdQ5) {
    match id {
        BinetIdentity::AlphaFib => {
            let lhs = alpha_power(2 * m);
            let rhs = &(&(&alpha_power(m) * &int(fib(m))) * &SurdQ5::sqrt5()) - &minus_one_pow(m + 1);
            (lhs, rhs)
        }
        BinetIdentity::AlphaLucas => {
            let lhs = alpha_power(2 * m);
            let rhs = &(&alpha_power(m) * &int(lucas(m))) - &minus_one_pow(m);
            (lhs, rhs)
        }
        BinetIdentity::BetaLucas => {
            let lhs = beta_power(2 * m);
            let rhs = &(&beta_power(m) * &int(lucas(m))) - &minus_one_pow(m);
            (lhs, rhs)
        }
        BinetIdentity::FibSquares => {
            let (fn_, fm) = (fib(n), fib(m));
            let lhs = int(&fn_ * &fn_) + &minus_one_pow(n + m - 1) * &int(&fm * &fm);
            let rhs = int(fib(n - m) * fib(n + m));
            (lhs, rhs)
        }
        BinetIdentity::LucasProduct => {
            let lhs = int(lucas(n + m)) + &minus_one_pow(m) * &int(lucas(n - m));
            let rhs = int(lucas(n) * lucas(m));
            (lhs, rhs)
        }
    }
}

/// True iff both sides agree exactly.
pub fn check_binet_identity(id: BinetIdentity, m: i64, n: i64) -> bool {
    let (lhs, rhs) = binet_sides(id, m, n);
    lhs == rhs
}
