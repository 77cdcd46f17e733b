//! Named constants, memoized per (name, precision).

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;

use super::elementary::atan_inv;
use super::{Ball, Mag};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConstantName {
    Pi,
    Ln2,
    CatalanG,
    Zeta3,
    Sqrt5,
    Alpha,
    Zeta2,
}

impl ConstantName {
    pub const ALL: [ConstantName; 7] = [
        ConstantName::Pi,
        ConstantName::Ln2,
        ConstantName::CatalanG,
        ConstantName::Zeta3,
        ConstantName::Sqrt5,
        ConstantName::Alpha,
        ConstantName::Zeta2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ConstantName::Pi => "PI",
            ConstantName::Ln2 => "LN2",
            ConstantName::CatalanG => "CATALAN_G",
            ConstantName::Zeta3 => "ZETA3",
            ConstantName::Sqrt5 => "SQRT5",
            ConstantName::Alpha => "ALPHA",
            ConstantName::Zeta2 => "ZETA2",
        }
    }
}

impl fmt::Display for ConstantName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ConstantName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ConstantName::ALL
            .into_iter()
            .find(|c| c.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::usage(format!("unknown constant `{s}`")))
    }
}

type Memo = Mutex<HashMap<(ConstantName, u32), Ball>>;

fn memo() -> &'static Memo {
    static MEMO: OnceLock<Memo> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Enclosure of a named constant with `rad ≤ 2^{2−prec}·|mid|`.
///
/// Values are computed with 20 extra bits and cached; concurrent callers
/// may compute the same entry twice but always agree.
pub fn constant(name: ConstantName, prec: u32) -> Ball {
    let prec = prec.max(32);
    if let Some(b) = memo().lock().expect("constant memo poisoned").get(&(name, prec)) {
        return b.clone();
    }
    let wp = prec + 20;
    let value = match name {
        ConstantName::Pi => pi(wp),
        ConstantName::Ln2 => ln2(wp),
        ConstantName::CatalanG => catalan_g(wp),
        ConstantName::Zeta3 => zeta3(wp),
        ConstantName::Sqrt5 => Ball::from_int(5, wp).sqrt().expect("5 > 0"),
        ConstantName::Alpha => {
            let s5 = constant(ConstantName::Sqrt5, wp);
            (&Ball::one(wp) + &s5).mul_pow2(-1)
        }
        ConstantName::Zeta2 => zeta2(wp),
    }
    .with_prec(prec);
    memo()
        .lock()
        .expect("constant memo poisoned")
        .insert((name, prec), value.clone());
    value
}

/// Machin: `π = 16·atan(1/5) − 4·atan(1/239)`.
fn pi(wp: u32) -> Ball {
    let a = atan_inv(5, wp).mul_int(16);
    let b = atan_inv(239, wp).mul_int(4);
    &a - &b
}

/// `ln 2 = 2·Σ_{i≥0} 1/((2i+1)·3^{2i+1})`.
fn ln2(wp: u32) -> Ball {
    let mut power = Ball::one(wp).div_int(3);
    let mut sum = Ball::zero(wp);
    let eps = Mag::pow2(-i64::from(wp) - 4);
    let mut i = 0i64;
    loop {
        sum = &sum + &power.div_int(2 * i + 1);
        power = power.div_int(9);
        i += 1;
        if power.mag_upper() < eps {
            break;
        }
    }
    // terms fall by at least 1/9, so the tail is below 9/8 of the next power
    let tail = power.mag_upper().mul_up(&Mag::from_u64(9)).mul_pow2(-3);
    sum.add_error(tail).mul_pow2(1)
}

/// Catalan's constant `G = Σ_{k≥0} (−1)^k/(2k+1)²` with the
/// Cohen–Villegas–Zagier acceleration for alternating series.
///
/// The moments `1/(2k+1)² = ∫₀¹ t^k·w(t) dt` come from the positive weight
/// `w(t) = −ln t/(4√t)`, so after `n` steps the error is at most
/// `2·G/(3+√8)^n ≤ 2/d_n` with `d_n = ((3+√8)^n + (3−√8)^n)/2`.
fn catalan_g(wp: u32) -> Ball {
    let n = (f64::from(wp + 8) / 2.54) as i64 + 2;
    // u_k = (3+√8)^k + (3−√8)^k obeys u_{k+1} = 6u_k − u_{k−1}
    let (mut u0, mut u1) = (BigInt::from(2), BigInt::from(6));
    for _ in 1..n {
        let u2 = &u1 * 6 - &u0;
        u0 = u1;
        u1 = u2;
    }
    let d: BigInt = u1 / 2;
    let mut b = BigInt::from(-1);
    let mut c = -d.clone();
    let mut s = Ball::zero(wp);
    for k in 0..n {
        c = &b - &c;
        let a = (2 * k + 1) * (2 * k + 1);
        s = &s + &Ball::from_int(c.clone(), wp).div_int(a);
        // b ← (k+n)(k−n)·b / ((k+1/2)(k+1)), exact in the integers
        let num = &b * ((k + n) * (k - n)) * 2;
        b = num / ((2 * k + 1) * (k + 1));
    }
    let value = s.div_bigint(&d).expect("d > 0");
    let err = Mag::from_u64(2).div_up(&Mag::from_bigint_lower(&d, 0));
    value.add_error(err)
}

/// `ζ(3) = (5/2)·Σ_{n≥1} (−1)^{n−1}/(n³·binom(2n, n))`.
fn zeta3(wp: u32) -> Ball {
    let eps = Mag::pow2(-i64::from(wp) - 4);
    // inv_c = 1/binom(2n, n), updated by n/(2(2n−1))
    let mut inv_c = Ball::one(wp).div_int(2);
    let mut sum = Ball::zero(wp);
    let mut n = 1i64;
    loop {
        let term = inv_c.div_int(n * n * n);
        sum = if n % 2 == 1 { &sum + &term } else { &sum - &term };
        n += 1;
        inv_c = inv_c.mul_int(n).div_int(2 * (2 * n - 1));
        if term.mag_upper() < eps {
            break;
        }
    }
    // alternating with decreasing terms: the tail is below the next term
    let next = inv_c.div_int(n * n * n).mag_upper();
    sum.add_error(next).mul_int(5).mul_pow2(-1)
}

/// `ζ(2) = 3·Σ_{n≥1} 1/(n²·binom(2n, n))`, independent of π.
fn zeta2(wp: u32) -> Ball {
    let eps = Mag::pow2(-i64::from(wp) - 4);
    let mut inv_c = Ball::one(wp).div_int(2);
    let mut sum = Ball::zero(wp);
    let mut n = 1i64;
    loop {
        let term = inv_c.div_int(n * n);
        sum = &sum + &term;
        n += 1;
        inv_c = inv_c.mul_int(n).div_int(2 * (2 * n - 1));
        if term.mag_upper() < eps {
            break;
        }
    }
    // t_{n+1}/t_n < 1/4, so the tail is below 4/3 of the next term
    let next = inv_c.div_int(n * n).mag_upper();
    let tail = next.mul_up(&Mag::from_u64(4)).div_up(&Mag::from_u64(3));
    sum.add_error(tail).mul_int(3)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use num_traits::{One, Zero};

    fn relative_radius_ok(b: &Ball, prec: u32) -> bool {
        // rad ≤ 2^{2−prec}·|mid|
        let bound = b.mid().mag_lower().mul_lower(&Mag::pow2(2 - i64::from(prec)));
        b.rad() <= bound
    }

    #[test]
    fn pi_digits() {
        let p = constant(ConstantName::Pi, 128);
        assert!(p.to_decimal().starts_with("3.14159265358979323846"));
        let via_asin = Ball::one(128).asin().unwrap().mul_int(2);
        assert!(p.overlaps(&via_asin));
    }

    #[test]
    fn catalan_matches_defining_series() {
        let g = constant(ConstantName::CatalanG, 64);
        assert!(g.to_decimal().starts_with("0.9159655941"));
        // raw partial sums bracket G: S_{2m−1} < G < S_{2m}
        let mut s = BigRational::zero();
        for k in 0..2000i64 {
            let t = BigRational::new(BigInt::one(), BigInt::from((2 * k + 1) * (2 * k + 1)));
            s = if k % 2 == 0 { s + t } else { s - t };
        }
        let next = BigRational::new(BigInt::one(), BigInt::from(4001i64 * 4001));
        let lo = Ball::from_rational(&s, 128);
        let hi = Ball::from_rational(&(&s + &next), 128);
        let bracket = lo.hull(&hi);
        let g128 = constant(ConstantName::CatalanG, 128);
        assert!(bracket.contains(&g128));
    }

    #[test]
    fn zeta_values() {
        let z2 = constant(ConstantName::Zeta2, 64);
        assert!(z2.to_decimal().starts_with("1.6449340668"));
        let z3 = constant(ConstantName::Zeta3, 128);
        assert!(z3.to_decimal().starts_with("1.20205690315959428539"));
        for prec in [64, 128, 256, 1000] {
            let pi = constant(ConstantName::Pi, prec);
            let z2 = constant(ConstantName::Zeta2, prec);
            assert!(z2.overlaps(&pi.square().div_int(6)), "prec {prec}");
        }
    }

    #[test]
    fn radii_meet_the_contract() {
        for name in ConstantName::ALL {
            for prec in [32, 64, 200, 700] {
                let c = constant(name, prec);
                assert!(relative_radius_ok(&c, prec), "{name} at {prec}: {c:?}");
            }
        }
    }

    #[test]
    fn higher_precision_refines() {
        for name in ConstantName::ALL {
            let lo = constant(name, 64);
            let hi = constant(name, 256);
            assert!(lo.overlaps(&hi), "{name}");
            assert!(hi.rad() < lo.rad());
        }
    }

    #[test]
    fn names_parse() {
        assert_eq!("catalan_g".parse::<ConstantName>().unwrap(), ConstantName::CatalanG);
        assert!("e".parse::<ConstantName>().is_err());
    }
}
