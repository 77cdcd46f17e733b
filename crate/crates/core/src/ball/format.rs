//! Decimal rendering of balls as `mid ± rad`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::{log10_rational, Ball, Dyadic};

fn pow10(k: u32) -> BigInt {
    BigInt::from(10).pow(k)
}

/// `v·10^k` rounded to the nearest integer (ties away from zero).
fn scaled_round(v: &BigRational, k: i64) -> BigInt {
    let s = if k >= 0 {
        v * BigRational::from_integer(pow10(k as u32))
    } else {
        v / BigRational::from_integer(pow10((-k) as u32))
    };
    s.round().to_integer()
}

fn unscale(n: &BigInt, k: i64) -> BigRational {
    if k >= 0 {
        BigRational::new(n.clone(), pow10(k as u32))
    } else {
        BigRational::from_integer(n * pow10((-k) as u32))
    }
}

/// Integer `n` rendered as `n·10^{−k}` in positional notation.
fn positional(n: &BigInt, k: i64) -> String {
    let sign = if n.is_negative() { "-" } else { "" };
    let digits = n.abs().to_string();
    if k <= 0 {
        if n.is_zero() {
            return "0".into();
        }
        return format!("{sign}{digits}{}", "0".repeat((-k) as usize));
    }
    let k = k as usize;
    let padded = if digits.len() <= k {
        format!("{}{}", "0".repeat(k + 1 - digits.len()), digits)
    } else {
        digits
    };
    let (int, frac) = padded.split_at(padded.len() - k);
    format!("{sign}{int}.{frac}")
}

/// Upper bound of `r` rendered with two significant digits, e.g. `3.1e-21`.
pub(crate) fn radius_string(r: &BigRational) -> String {
    if r.is_zero() {
        return "0".into();
    }
    let mut e = log10_rational(r).floor() as i64;
    loop {
        // m = ⌈r / 10^{e−1}⌉ should land in [10, 100]
        let q = if e > 0 {
            r / BigRational::from_integer(pow10((e - 1) as u32))
        } else {
            r * BigRational::from_integer(pow10((1 - e) as u32))
        };
        let m = q.ceil().to_integer();
        if m > BigInt::from(100) {
            e += 1;
        } else if m < BigInt::from(10) {
            e -= 1;
        } else if m == BigInt::from(100) {
            return format!("1.0e{}", e + 1);
        } else {
            let m: u32 = m.try_into().expect("two digits");
            return format!("{}.{}e{}", m / 10, m % 10, e);
        }
    }
}

fn render(b: &Ball, decimals: i64) -> String {
    let mid = b.mid().to_rational();
    let n = scaled_round(&mid, decimals);
    let shown = unscale(&n, decimals);
    let err = (&mid - &shown).abs();
    let total = Dyadic::from_mag(&b.rad()).to_rational() + err;
    format!("{} ± {}", positional(&n, decimals), radius_string(&total))
}

/// Decimal places such that the last printed digit is at least the radius.
fn justified_decimals(b: &Ball) -> i64 {
    let rad = b.rad();
    let eff = if rad.is_zero() {
        // exact midpoint: show what the precision carries
        let top = if b.mid().is_zero() { 0 } else { b.mid().top() };
        (top - i64::from(b.prec())) as f64 * std::f64::consts::LOG10_2
    } else {
        let (m, e) = (rad.mantissa() as f64, rad.exponent());
        (m.log2() + e as f64) * std::f64::consts::LOG10_2
    };
    (-eff).floor() as i64
}

pub(super) fn to_decimal(b: &Ball) -> String {
    if b.mid().is_zero() && b.rad().is_zero() {
        return "0 ± 0".into();
    }
    render(b, justified_decimals(b))
}

pub(super) fn to_decimal_sig(b: &Ball, sig: usize) -> String {
    let mut decimals = justified_decimals(b);
    if !b.mid().is_zero() {
        let lead = log10_rational(&b.mid().to_rational().abs()).floor() as i64;
        decimals = decimals.min(sig as i64 - 1 - lead);
    }
    render(b, decimals)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ball::Mag;

    #[test]
    fn radius_rendering_rounds_up() {
        let r = BigRational::new(31.into(), BigInt::from(10).pow(22));
        assert_eq!(radius_string(&r), "3.1e-21");
        let r = BigRational::new(311.into(), BigInt::from(10).pow(23));
        assert_eq!(radius_string(&r), "3.2e-21");
        assert_eq!(radius_string(&BigRational::new(1.into(), 1.into())), "1.0e0");
        assert_eq!(radius_string(&BigRational::new(999.into(), 1000.into())), "1.0e0");
    }

    #[test]
    fn positional_rendering() {
        assert_eq!(positional(&BigInt::from(-5), 3), "-0.005");
        assert_eq!(positional(&BigInt::from(12345), 2), "123.45");
        assert_eq!(positional(&BigInt::from(12), -2), "1200");
    }

    #[test]
    fn digits_follow_the_radius() {
        let b = Ball::from_ratio(1, 3, 64).add_error(Mag::from_f64_up(2e-6));
        let s = b.to_decimal();
        assert_eq!(s, "0.33333 ± 5.4e-6");
        let t = Ball::from_ratio(22, 7, 128).to_decimal_sig(5);
        assert!(t.starts_with("3.1429 ± "), "{t}");
    }

    #[test]
    fn printed_interval_contains_the_ball() {
        let b = Ball::from_ratio(-2, 3, 80).add_error(Mag::from_f64_up(3e-9));
        let s = b.to_decimal();
        let (m, r) = s.split_once(" ± ").unwrap();
        let m: f64 = m.parse().unwrap();
        let r: f64 = r.parse().unwrap();
        assert!(m - r <= -2.0 / 3.0 - 3e-9 && -2.0 / 3.0 + 3e-9 <= m + r);
    }
}
