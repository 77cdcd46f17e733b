//! Midpoint–radius arithmetic with rigorous error propagation.
//!
//! A [`Ball`] `[m ± r]` stands for every real in `[m − r, m + r]`. Each
//! operation returns a ball containing the exact image of its inputs:
//! midpoints are rounded to the working precision and the rounding error
//! is folded into the radius, which is always rounded upward.

mod constants;
mod dyadic;
mod elementary;
mod format;
mod mag;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

pub use constants::{constant, ConstantName};
pub use dyadic::Dyadic;
pub use mag::Mag;

use crate::error::{Error, Result};
use crate::exact::SurdQ5;

/// Default precision used when a ball is built without an explicit one.
pub const DEFAULT_PREC: u32 = 128;

/// Working precision in bits for `digits` decimal digits: `⌈D·log₂10⌉ + guard`.
pub fn bits_for_digits(digits: u32, guard_bits: u32) -> u32 {
    (f64::from(digits) * std::f64::consts::LOG2_10).ceil() as u32 + guard_bits
}

/// A real number enclosure `mid ± rad` carried at `prec` bits.
#[derive(Clone, PartialEq, Eq)]
pub struct Ball {
    mid: Dyadic,
    rad: Mag,
    prec: u32,
}

impl fmt::Debug for Ball {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ball[{}]", self.to_decimal())
    }
}

impl fmt::Display for Ball {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal())
    }
}

/// Rounded `x + y` plus an error bound.
fn add_round(x: &Dyadic, y: &Dyadic, prec: u32) -> (Dyadic, Mag) {
    if x.is_zero() {
        return y.round(prec);
    }
    if y.is_zero() {
        return x.round(prec);
    }
    let (big, small) = if x.top() >= y.top() { (x, y) } else { (y, x) };
    // an operand far below the last kept bit only widens the radius
    if small.top() < big.top() - i64::from(prec) - 8 && small.top() < big.exponent() {
        let (m, err) = big.round(prec);
        return (m, err.add_up(&small.mag_up()));
    }
    x.add(y).round(prec)
}

/// Rounded `x / y` (y ≠ 0) plus an error bound.
fn div_round(x: &Dyadic, y: &Dyadic, prec: u32) -> (Dyadic, Mag) {
    if x.is_zero() {
        return (Dyadic::zero(), Mag::zero());
    }
    let shift = (i64::from(prec) + 3 + y.bits() as i64 - x.bits() as i64).max(0);
    let num = x.mantissa() << shift as u64;
    let q = num / y.mantissa();
    let exp = x.exponent() - shift - y.exponent();
    let (m, err) = Dyadic::new(q, exp).round(prec);
    (m, err.add_up(&Mag::pow2(exp)))
}

impl Ball {
    /// Ball with the given midpoint rounded to `prec` bits.
    pub fn new(mid: Dyadic, rad: Mag, prec: u32) -> Self {
        let (mid, err) = mid.round(prec);
        Ball {
            mid,
            rad: rad.add_up(&err),
            prec,
        }
    }

    pub fn zero(prec: u32) -> Self {
        Ball {
            mid: Dyadic::zero(),
            rad: Mag::zero(),
            prec,
        }
    }

    pub fn one(prec: u32) -> Self {
        Self::from_int(1, prec)
    }

    pub fn from_int(v: impl Into<BigInt>, prec: u32) -> Self {
        Self::new(Dyadic::from_int(v), Mag::zero(), prec)
    }

    pub fn from_dyadic(d: Dyadic, prec: u32) -> Self {
        Self::new(d, Mag::zero(), prec)
    }

    pub fn from_rational(q: &BigRational, prec: u32) -> Self {
        let (mid, rad) = Dyadic::from_rational(q, prec);
        Ball { mid, rad, prec }
    }

    /// `p/q` for small integers; panics on `q = 0`.
    pub fn from_ratio(p: i64, q: i64, prec: u32) -> Self {
        Self::from_rational(&BigRational::new(p.into(), q.into()), prec)
    }

    /// Enclosure of `a + b√5` using the SQRT5 constant.
    pub fn from_surd(s: &SurdQ5, prec: u32) -> Self {
        let a = Self::from_rational(s.rational_part(), prec);
        if s.is_rational() {
            return a;
        }
        let b = Self::from_rational(s.surd_part(), prec);
        &a + &(&b * &constant(ConstantName::Sqrt5, prec))
    }

    /// Smallest representable ball containing `[lo, hi]`.
    pub fn from_endpoints(lo: &Dyadic, hi: &Dyadic, prec: u32) -> Self {
        debug_assert!(lo <= hi);
        let mid = lo.add(hi).mul_pow2(-1);
        let rad = hi.sub(lo).mul_pow2(-1).mag_up();
        Self::new(mid, rad, prec)
    }

    pub fn mid(&self) -> &Dyadic {
        &self.mid
    }

    pub fn rad(&self) -> Mag {
        self.rad
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn mid_f64(&self) -> f64 {
        self.mid.to_f64()
    }

    pub fn rad_f64(&self) -> f64 {
        self.rad.to_f64()
    }

    /// Same enclosure carried at a different precision.
    pub fn with_prec(&self, prec: u32) -> Self {
        Self::new(self.mid.clone(), self.rad, prec)
    }

    /// Widens the radius by `err`.
    pub fn add_error(&self, err: Mag) -> Self {
        Ball {
            mid: self.mid.clone(),
            rad: self.rad.add_up(&err),
            prec: self.prec,
        }
    }

    /// `[0 ± bound]`.
    pub fn zero_with_radius(bound: Mag, prec: u32) -> Self {
        Ball {
            mid: Dyadic::zero(),
            rad: bound,
            prec,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.rad.is_zero()
    }

    pub fn lower(&self) -> Dyadic {
        self.mid.sub(&Dyadic::from_mag(&self.rad))
    }

    pub fn upper(&self) -> Dyadic {
        self.mid.add(&Dyadic::from_mag(&self.rad))
    }

    /// Upper bound on `|x|` over the ball.
    pub fn mag_upper(&self) -> Mag {
        self.mid.mag_up().add_up(&self.rad)
    }

    /// Lower bound on `|x|` over the ball (zero if it contains zero).
    pub fn mag_lower(&self) -> Mag {
        self.mid.mag_lower().sub_lower(&self.rad)
    }

    pub fn contains_zero(&self) -> bool {
        self.mid.abs() <= Dyadic::from_mag(&self.rad)
    }

    /// Every point of the ball is `> 0`.
    pub fn is_positive(&self) -> bool {
        self.lower().sign() == num_bigint::Sign::Plus
    }

    /// Every point of the ball is `< 0`.
    pub fn is_negative(&self) -> bool {
        self.upper().sign() == num_bigint::Sign::Minus
    }

    pub fn is_nonnegative(&self) -> bool {
        self.lower().sign() != num_bigint::Sign::Minus
    }

    /// True iff the two intervals intersect.
    pub fn overlaps(&self, other: &Ball) -> bool {
        let gap = self.mid.sub(&other.mid).abs();
        let reach = Dyadic::from_mag(&self.rad).add(&Dyadic::from_mag(&other.rad));
        gap <= reach
    }

    /// True iff `other` lies inside `self`.
    pub fn contains(&self, other: &Ball) -> bool {
        self.lower() <= other.lower() && other.upper() <= self.upper()
    }

    pub fn contains_rational(&self, q: &BigRational) -> bool {
        self.lower().to_rational() <= *q && *q <= self.upper().to_rational()
    }

    /// Smallest ball containing both.
    pub fn hull(&self, other: &Ball) -> Ball {
        let lo = self.lower().min(other.lower());
        let hi = self.upper().max(other.upper());
        Ball::from_endpoints(&lo, &hi, self.prec.max(other.prec))
    }

    /// Leading decimal digits `d` with
    /// `|Δmid| + rx + ry ≤ 10^{−d}·max(|x.mid|, 1)`; `i64::MAX` when the
    /// balls are identical points.
    pub fn agreed_digits(&self, other: &Ball) -> i64 {
        let delta = self
            .mid
            .sub(&other.mid)
            .abs()
            .add(&Dyadic::from_mag(&self.rad))
            .add(&Dyadic::from_mag(&other.rad));
        if delta.is_zero() {
            return i64::MAX;
        }
        let scale = {
            let a = self.mid.abs();
            if a < Dyadic::from_int(1) {
                Dyadic::from_int(1)
            } else {
                a
            }
        };
        let delta = delta.to_rational();
        let scale = scale.to_rational();
        let holds = |d: i64| -> bool {
            let p = BigRational::from_integer(BigInt::from(10).pow(d.unsigned_abs() as u32));
            if d >= 0 {
                &delta * &p <= scale
            } else {
                delta <= &scale * &p
            }
        };
        let est = (log10_rational(&scale) - log10_rational(&delta)).floor() as i64;
        let mut d = est;
        while holds(d + 1) {
            d += 1;
        }
        while !holds(d) {
            d -= 1;
        }
        d
    }

    pub fn neg(&self) -> Ball {
        Ball {
            mid: self.mid.neg(),
            rad: self.rad,
            prec: self.prec,
        }
    }

    pub fn abs(&self) -> Ball {
        if !self.contains_zero() {
            return if self.mid.is_negative() {
                self.neg()
            } else {
                self.clone()
            };
        }
        // [R ± R] with R ≥ max|x|/2 keeps the lower end exactly at zero
        let half = self.mag_upper().mul_pow2(-1);
        Ball {
            mid: Dyadic::from_mag(&half),
            rad: half,
            prec: self.prec,
        }
    }

    pub fn add_ball(&self, other: &Ball) -> Ball {
        let prec = self.prec.max(other.prec);
        let (mid, err) = add_round(&self.mid, &other.mid, prec);
        Ball {
            mid,
            rad: self.rad.add_up(&other.rad).add_up(&err),
            prec,
        }
    }

    pub fn sub_ball(&self, other: &Ball) -> Ball {
        self.add_ball(&other.neg())
    }

    pub fn mul_ball(&self, other: &Ball) -> Ball {
        let prec = self.prec.max(other.prec);
        let (mid, err) = self.mid.mul(&other.mid).round(prec);
        let (ax, ay) = (self.mid.mag_up(), other.mid.mag_up());
        let rad = ax
            .mul_up(&other.rad)
            .add_up(&ay.mul_up(&self.rad))
            .add_up(&self.rad.mul_up(&other.rad))
            .add_up(&err);
        Ball { mid, rad, prec }
    }

    /// Division; fails with a domain error if the divisor contains zero.
    pub fn div(&self, other: &Ball) -> Result<Ball> {
        let prec = self.prec.max(other.prec);
        let my = other.mid.mag_lower();
        if other.mid.is_zero() || my <= other.rad {
            return Err(Error::domain("div", format!("divisor {other} contains zero")));
        }
        let (mid, err) = div_round(&self.mid, &other.mid, prec);
        if self.rad.is_zero() && other.rad.is_zero() {
            return Ok(Ball { mid, rad: err, prec });
        }
        let q = mid.mag_up().add_up(&err);
        let denom = my.sub_lower(&other.rad);
        let prop = self.rad.add_up(&q.mul_up(&other.rad)).div_up(&denom);
        Ok(Ball {
            mid,
            rad: prop.add_up(&err),
            prec,
        })
    }

    pub fn inv(&self) -> Result<Ball> {
        Ball::one(self.prec).div(self)
    }

    pub fn mul_int(&self, k: i64) -> Ball {
        let (mid, err) = self.mid.mul(&Dyadic::from_int(k)).round(self.prec);
        let rad = self.rad.mul_up(&Mag::from_u64(k.unsigned_abs())).add_up(&err);
        Ball {
            mid,
            rad,
            prec: self.prec,
        }
    }

    pub fn mul_bigint(&self, k: &BigInt) -> Ball {
        let (mid, err) = self.mid.mul(&Dyadic::from_int(k.clone())).round(self.prec);
        let rad = self.rad.mul_up(&Mag::from_bigint_up(k, 0)).add_up(&err);
        Ball {
            mid,
            rad,
            prec: self.prec,
        }
    }

    /// Division by a nonzero machine integer.
    pub fn div_int(&self, k: i64) -> Ball {
        assert!(k != 0, "Ball::div_int by zero");
        let d = Dyadic::from_int(k);
        let (mid, err) = div_round(&self.mid, &d, self.prec);
        let rad = self.rad.div_up(&Mag::from_u64(k.unsigned_abs())).add_up(&err);
        Ball {
            mid,
            rad,
            prec: self.prec,
        }
    }

    pub fn div_bigint(&self, k: &BigInt) -> Result<Ball> {
        if k.is_zero() {
            return Err(Error::DivisionByZero("ball divided by integer zero".into()));
        }
        let d = Dyadic::from_int(k.clone());
        let (mid, err) = div_round(&self.mid, &d, self.prec);
        let rad = self.rad.div_up(&Mag::from_bigint_lower(k, 0)).add_up(&err);
        Ok(Ball {
            mid,
            rad,
            prec: self.prec,
        })
    }

    pub fn mul_rational(&self, q: &BigRational) -> Ball {
        let t = self.mul_bigint(q.numer());
        t.div_bigint(q.denom()).expect("rational denominators are nonzero")
    }

    /// Exact scaling by `2^k`.
    pub fn mul_pow2(&self, k: i64) -> Ball {
        Ball {
            mid: self.mid.mul_pow2(k),
            rad: self.rad.mul_pow2(k),
            prec: self.prec,
        }
    }

    pub fn square(&self) -> Ball {
        if self.contains_zero() {
            // x² over a ball through zero lies in [0, max|x|²]
            let m = Dyadic::from_mag(&self.mag_upper());
            return Ball::from_endpoints(&Dyadic::zero(), &m.mul(&m), self.prec);
        }
        self.mul_ball(self)
    }

    /// Integer power by repeated squaring; negative `k` divides.
    pub fn pow_int(&self, k: i64) -> Result<Ball> {
        let mut base = if k < 0 {
            self.inv()
                .map_err(|_| Error::domain("pow_int", format!("negative power of {self}, which contains zero")))?
        } else {
            self.clone()
        };
        let mut e = k.unsigned_abs();
        let mut acc = Ball::one(self.prec);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        Ok(acc)
    }

    pub fn sqrt(&self) -> Result<Ball> {
        elementary::sqrt(self)
    }

    pub fn ln(&self) -> Result<Ball> {
        elementary::ln(self)
    }

    pub fn asin(&self) -> Result<Ball> {
        elementary::asin(self)
    }

    /// Decimal rendering `mid ± rad` that prints only digits justified by
    /// the radius.
    pub fn to_decimal(&self) -> String {
        format::to_decimal(self)
    }

    /// Decimal rendering with at most `sig` significant digits.
    pub fn to_decimal_sig(&self, sig: usize) -> String {
        format::to_decimal_sig(self, sig)
    }

    /// Compares two balls that are certainly ordered; `None` if they overlap.
    pub fn certain_cmp(&self, other: &Ball) -> Option<Ordering> {
        if self.upper() < other.lower() {
            Some(Ordering::Less)
        } else if other.upper() < self.lower() {
            Some(Ordering::Greater)
        } else {
            None
        }
    }
}

/// Approximate `log10` of a positive rational for initial guesses.
pub(crate) fn log10_rational(q: &BigRational) -> f64 {
    (log2_bigint(q.numer()) - log2_bigint(q.denom())) * std::f64::consts::LOG10_2
}

pub(crate) fn log2_bigint(v: &BigInt) -> f64 {
    use num_traits::ToPrimitive;
    let v = v.abs();
    let bits = v.bits();
    if bits <= 64 {
        return v.to_f64().unwrap_or(1.0).log2();
    }
    let top: BigInt = &v >> (bits - 64);
    top.to_f64().unwrap_or(1.0).log2() + (bits - 64) as f64
}

macro_rules! ball_binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl<'a> $tr<&'a Ball> for &'a Ball {
            type Output = Ball;
            fn $m(self, rhs: &Ball) -> Ball {
                self.$f(rhs)
            }
        }
        impl $tr<Ball> for Ball {
            type Output = Ball;
            fn $m(self, rhs: Ball) -> Ball {
                self.$f(&rhs)
            }
        }
    };
}
ball_binop!(Add, add, add_ball);
ball_binop!(Sub, sub, sub_ball);
ball_binop!(Mul, mul, mul_ball);

impl Neg for &Ball {
    type Output = Ball;
    fn neg(self) -> Ball {
        Ball::neg(self)
    }
}

impl Neg for Ball {
    type Output = Ball;
    fn neg(self) -> Ball {
        Ball::neg(&self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(p: i64, d: i64) -> BigRational {
        BigRational::new(p.into(), d.into())
    }

    #[test]
    fn exact_integer_addition() {
        let s = &Ball::from_int(1, 64) + &Ball::from_int(2, 64);
        assert!(s.contains_rational(&q(3, 1)));
        assert!(s.rad_f64() < 1e-18);
    }

    #[test]
    fn zero_absorbs_in_products() {
        let z = Ball::zero_with_radius(Mag::pow2(-10), 64);
        let p = &z * &Ball::from_ratio(-7, 3, 64);
        assert!(p.contains_zero());
    }

    #[test]
    fn one_third_is_enclosed() {
        let t = Ball::one(64).div(&Ball::from_int(3, 64)).unwrap();
        assert!(t.contains_rational(&q(1, 3)));
        assert!(t.rad_f64() < 1e-18);
        assert!(t.to_decimal().starts_with("0.333333333333"));
    }

    #[test]
    fn dividing_by_a_ball_through_zero_fails() {
        let z = Ball::zero_with_radius(Mag::pow2(-3), 64);
        let err = Ball::one(64).div(&z).unwrap_err();
        assert!(matches!(err, Error::Domain { ref function, .. } if function == "div"));
    }

    #[test]
    fn overlap_examples() {
        let x = Ball::new(Dyadic::from_int(1), Mag::from_f64_up(0.1), 64);
        let y = Ball::from_rational(&q(105, 100), 64).add_error(Mag::from_f64_up(0.01));
        assert!(x.overlaps(&y));
        let x = Ball::from_int(1, 64).add_error(Mag::from_f64_up(0.001));
        let y = Ball::from_int(2, 64).add_error(Mag::from_f64_up(0.001));
        assert!(!x.overlaps(&y));
        let pi = constant(ConstantName::Pi, 128).add_error(Mag::pow2(-100));
        assert!(pi.agreed_digits(&pi.clone()) >= 25);
    }

    #[test]
    fn agreed_digits_counts_relative_agreement() {
        let x = Ball::from_rational(&q(123_456, 100_000), 64);
        let y = Ball::from_rational(&q(123_457, 100_000), 64);
        // difference 1e-5 against scale 1.23456: 10^{-5}·1.23 ≥ 1e-5 + ε
        assert_eq!(x.agreed_digits(&y), 5);
        let five = Ball::from_int(5, 64);
        assert_eq!(five.agreed_digits(&five), i64::MAX);
        let big = Ball::from_int(1000, 64);
        let far = Ball::from_int(3000, 64);
        assert_eq!(big.agreed_digits(&far), -1);
    }

    #[test]
    fn abs_of_ball_through_zero() {
        let x = Ball::from_ratio(1, 10, 64).add_error(Mag::from_f64_up(0.5));
        let a = x.abs();
        assert!(a.is_nonnegative());
        assert!(a.contains(&Ball::from_ratio(6, 10, 64)));
    }

    #[test]
    fn surd_embedding() {
        let alpha = Ball::from_surd(&SurdQ5::alpha(), 128);
        assert!(alpha.to_decimal().starts_with("1.6180339887498948482"));
        let three = Ball::from_surd(&SurdQ5::from_integer(3), 128);
        assert!(three.contains_rational(&q(3, 1)));
        assert!(three.is_exact());
        let beta = Ball::from_surd(&SurdQ5::beta(), 128);
        assert!(beta.to_decimal().starts_with("-0.6180339887498948482"));
    }

    #[test]
    fn powers_of_alpha_match_exact_values() {
        let alpha = Ball::from_surd(&SurdQ5::alpha(), 200);
        for n in -30i64..=30 {
            let exact = Ball::from_surd(&crate::exact::alpha_power(n), 200);
            assert!(exact.overlaps(&alpha.pow_int(n).unwrap()), "n = {n}");
        }
    }

    fn ball_strategy() -> impl Strategy<Value = (i64, i64, u32)> {
        (-1_000_000i64..1_000_000, 1i64..1_000_000, 0u32..40)
    }

    proptest! {
        #[test]
        fn arithmetic_encloses_exact_rationals((a, b, ra) in ball_strategy(), (c, d, rc) in ball_strategy()) {
            let (x, y) = (q(a, b), q(c, d));
            let bx = Ball::from_rational(&x, 64).add_error(Mag::pow2(-(ra as i64)));
            let by = Ball::from_rational(&y, 64).add_error(Mag::pow2(-(rc as i64)));
            prop_assert!((&bx + &by).contains_rational(&(&x + &y)));
            prop_assert!((&bx - &by).contains_rational(&(&x - &y)));
            prop_assert!((&bx * &by).contains_rational(&(&x * &y)));
            if let Ok(qt) = bx.div(&by) {
                prop_assert!(!y.is_zero());
                prop_assert!(qt.contains_rational(&(&x / &y)));
            }
            prop_assert!(bx.abs().contains_rational(&x.abs()));
        }
    }
}
