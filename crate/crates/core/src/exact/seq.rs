//! Integer and rational sequences that every series term is assembled from.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::SurdQ5;

/// `(F_k, F_{k+1})` by fast doubling, for `k ≥ 0`.
fn fib_pair(k: u64) -> (BigInt, BigInt) {
    if k == 0 {
        return (BigInt::zero(), BigInt::one());
    }
    let (a, b) = fib_pair(k >> 1);
    // F_2m = F_m (2 F_{m+1} − F_m),  F_{2m+1} = F_m² + F_{m+1}²
    let c = &a * (&b * 2u32 - &a);
    let d = &a * &a + &b * &b;
    if k & 1 == 0 {
        (c, d)
    } else {
        let e = &c + &d;
        (d, e)
    }
}

/// Fibonacci number `F_n` for any integer `n`, with `F_{−m} = (−1)^{m−1} F_m`.
pub fn fib(n: i64) -> BigInt {
    let m = n.unsigned_abs();
    let f = fib_pair(m).0;
    if n < 0 && m.is_multiple_of(2) {
        -f
    } else {
        f
    }
}

/// Lucas number `L_n` for any integer `n`, with `L_{−m} = (−1)^m L_m`.
pub fn lucas(n: i64) -> BigInt {
    let m = n.unsigned_abs();
    let (f, f1) = fib_pair(m);
    // L_m = 2 F_{m+1} − F_m
    let l = f1 * 2u32 - f;
    if n < 0 && m % 2 == 1 {
        -l
    } else {
        l
    }
}

/// Harmonic number `H_n = 1 + 1/2 + … + 1/n`, with `H_0 = 0`.
pub fn harmonic(n: u64) -> BigRational {
    // sum over a common denominator and reduce once at the end
    let mut num = BigInt::zero();
    let mut den = BigInt::one();
    for k in 1..=n {
        let k = BigInt::from(k);
        num = num * &k + &den;
        den *= k;
    }
    BigRational::new(num, den)
}

/// `binom(2n, n)` via the exact ratio recurrence `b_k = b_{k−1}·2(2k−1)/k`.
pub fn central_binomial(n: u64) -> BigInt {
    let mut b = BigInt::one();
    for k in 1..=n {
        b = b * (2 * (2 * k - 1)) / k;
    }
    b
}

/// Catalan number `C_n = binom(2n, n)/(n + 1)`.
pub fn catalan_number(n: u64) -> BigInt {
    central_binomial(n) / (n + 1)
}

/// `n!! = n·(n−2)·(n−4)·…`, ending at 1 or 2; `0!! = 1`.
pub fn double_factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    let mut k = n;
    while k > 1 {
        acc *= k;
        k -= 2;
    }
    acc
}

/// `α^n = (L_n + F_n·√5)/2`, exact for every integer `n`.
pub fn alpha_power(n: i64) -> SurdQ5 {
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    SurdQ5::new(
        BigRational::from_integer(lucas(n)) * &half,
        BigRational::from_integer(fib(n)) * half,
    )
}

/// `β^n = (L_n − F_n·√5)/2`.
pub fn beta_power(n: i64) -> SurdQ5 {
    alpha_power(n).conj()
}
