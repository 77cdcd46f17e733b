//! `sqrt`, `ln` and `asin` on balls.
//!
//! Each function is monotone on its domain, so a ball's image is the hull of
//! the images of its two exact endpoints. Point values are computed with
//! series whose truncation error is added to the radius.

use num_bigint::{BigInt, Sign};
use num_traits::One;

use super::constants::{constant, ConstantName};
use super::{Ball, Dyadic, Mag};
use crate::error::{Error, Result};

/// Lower and upper bounds of `√d` for `d ≥ 0`, each with ~`prec` bits.
fn sqrt_bounds(d: &Dyadic, prec: u32) -> (Dyadic, Dyadic) {
    if d.is_zero() {
        return (Dyadic::zero(), Dyadic::zero());
    }
    let want = 2 * u64::from(prec) + 4;
    let mut s = want.saturating_sub(d.bits()) as i64;
    if (d.exponent() - s).rem_euclid(2) != 0 {
        s += 1;
    }
    let n: BigInt = d.mantissa() << s as u64;
    let r = n.sqrt();
    let half_exp = (d.exponent() - s) / 2;
    let exact = &r * &r == n;
    let lo = Dyadic::new(r.clone(), half_exp);
    let hi = if exact {
        lo.clone()
    } else {
        Dyadic::new(r + 1, half_exp)
    };
    (lo, hi)
}

pub(super) fn sqrt(x: &Ball) -> Result<Ball> {
    let lo = x.lower();
    if lo.sign() == Sign::Minus {
        return Err(Error::domain(
            "sqrt",
            format!("argument {x} is not certainly non-negative"),
        ));
    }
    let hi = x.upper();
    let (a, _) = sqrt_bounds(&lo, x.prec + 2);
    let (_, b) = sqrt_bounds(&hi, x.prec + 2);
    Ok(Ball::from_endpoints(&a, &b, x.prec))
}

pub(super) fn ln(x: &Ball) -> Result<Ball> {
    if !x.is_positive() {
        return Err(Error::domain("ln", format!("argument {x} is not certainly positive")));
    }
    if x.is_exact() {
        return Ok(ln_point(x.mid(), x.prec));
    }
    let lo = ln_point(&x.lower(), x.prec).lower();
    let hi = ln_point(&x.upper(), x.prec).upper();
    Ok(Ball::from_endpoints(&lo, &hi, x.prec))
}

pub(super) fn asin(x: &Ball) -> Result<Ball> {
    let one = Dyadic::from_int(1);
    let (lo, hi) = (x.lower(), x.upper());
    if lo < one.neg() || hi > one {
        return Err(Error::domain(
            "asin",
            format!("argument {x} is not certainly within [-1, 1]"),
        ));
    }
    if x.is_exact() {
        return Ok(asin_point(x.mid(), x.prec));
    }
    let a = asin_point(&lo, x.prec).lower();
    let b = asin_point(&hi, x.prec).upper();
    Ok(Ball::from_endpoints(&a, &b, x.prec))
}

/// Number of argument-halving steps used ahead of a power series.
fn reduction_steps(wp: u32) -> u32 {
    ((f64::from(wp)).sqrt() / 2.0) as u32
}

/// `ln d` for an exact `d > 0`.
fn ln_point(d: &Dyadic, prec: u32) -> Ball {
    // d = y·2^t with y in [1/√2, √2)
    let mut t = d.top();
    let mut y = d.mul_pow2(-t);
    if y.mul(&y) < Dyadic::new(BigInt::one(), -1) {
        t -= 1;
        y = y.mul_pow2(1);
    }
    let t_bits = 64 - t.unsigned_abs().leading_zeros();
    let k = reduction_steps(prec);
    let wp = prec + 20 + t_bits + k;
    let mut result = Ball::zero(wp);
    if y != Dyadic::from_int(1) {
        let mut yb = Ball::from_dyadic(y, wp);
        for _ in 0..k {
            yb = yb.sqrt().expect("reduced argument is positive");
        }
        let one = Ball::one(wp);
        let z = (&yb - &one).div(&(&yb + &one)).expect("y + 1 > 0");
        let z2 = z.square();
        let mut term = z.clone();
        let mut sum = z;
        let eps = Mag::pow2(-(i64::from(wp)) - 4);
        let mut j = 1i64;
        while term.mag_upper() > eps {
            term = &term * &z2;
            sum = &sum + &term.div_int(2 * j + 1);
            j += 1;
        }
        // remaining terms sum to at most |z|^{2j+1}/(1 − z²) ≤ |last term|
        sum = sum.add_error(term.mag_upper());
        result = sum.mul_pow2(i64::from(k) + 1);
    }
    if t != 0 {
        result = &result + &constant(ConstantName::Ln2, wp).mul_int(t);
    }
    result.with_prec(prec)
}

/// `atan z` for a ball with `|z|` at most about 2.
pub(super) fn atan_small(z: &Ball, prec: u32) -> Ball {
    let k = 4 + reduction_steps(prec);
    let wp = prec + 20 + k;
    let one = Ball::one(wp);
    let mut w = z.with_prec(wp);
    for _ in 0..k {
        // atan w = 2·atan(w / (1 + √(1 + w²)))
        let root = (&one + &w.square()).sqrt().expect("1 + w² > 0");
        w = w.div(&(&one + &root)).expect("1 + √(1 + w²) > 0");
    }
    let w2 = w.square();
    let mut power = w.clone();
    let mut sum = w;
    let eps = Mag::pow2(-(i64::from(wp)) - 4);
    let mut j = 1i64;
    while power.mag_upper() > eps {
        power = &power * &w2;
        let term = power.div_int(2 * j + 1);
        sum = if j % 2 == 1 { &sum - &term } else { &sum + &term };
        j += 1;
    }
    // alternating with decreasing terms: the tail is below the next term
    sum = sum.add_error(power.mag_upper());
    sum.mul_pow2(i64::from(k)).with_prec(prec)
}

/// `atan(1/m)` for an integer `m ≥ 2` by the alternating Gregory series.
pub(super) fn atan_inv(m: i64, prec: u32) -> Ball {
    let wp = prec + 20;
    let m2 = m * m;
    let mut power = Ball::one(wp).div_int(m);
    let mut sum = Ball::zero(wp);
    let eps = Mag::pow2(-(i64::from(wp)) - 4);
    let mut j = 0i64;
    loop {
        let term = power.div_int(2 * j + 1);
        sum = if j % 2 == 0 { &sum + &term } else { &sum - &term };
        power = power.div_int(m2);
        j += 1;
        if power.mag_upper() < eps {
            break;
        }
    }
    sum.add_error(power.mag_upper()).with_prec(prec)
}

/// `asin d` for an exact `|d| ≤ 1`.
fn asin_point(d: &Dyadic, prec: u32) -> Ball {
    if d.is_zero() {
        return Ball::zero(prec);
    }
    let wp = prec + 20;
    let half_pi = constant(ConstantName::Pi, wp).mul_pow2(-1);
    let negative = d.is_negative();
    let a = d.abs();
    let one = Dyadic::from_int(1);
    let res = if a == one {
        half_pi
    } else {
        let y = Ball::from_dyadic(a.clone(), wp);
        let c2 = Ball::from_dyadic(one.sub(&a.mul(&a)), wp);
        let c = c2.sqrt().expect("1 − d² > 0");
        if a.mul(&a) <= Dyadic::new(BigInt::one(), -1) {
            atan_small(&y.div(&c).expect("√(1 − d²) > 0"), wp)
        } else {
            &half_pi - &atan_small(&c.div(&y).expect("d ≠ 0"), wp)
        }
    };
    let res = if negative { res.neg() } else { res };
    res.with_prec(prec)
}
