use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::mag::{ldexp, Mag};

/// Exact binary floating-point number `man·2^exp`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Dyadic {
    man: BigInt,
    exp: i64,
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Dyadic({}·2^{})", self.man, self.exp)
    }
}

impl Dyadic {
    pub fn new(man: BigInt, exp: i64) -> Self {
        Dyadic { man, exp }.trimmed()
    }

    pub fn zero() -> Self {
        Dyadic::default()
    }

    pub fn from_int(v: impl Into<BigInt>) -> Self {
        Self::new(v.into(), 0)
    }

    pub fn from_mag(m: &Mag) -> Self {
        let (man, exp) = m.to_bigint_exp();
        Self::new(man, exp)
    }

    /// Removes trailing zero bits so equal values share one representation.
    fn trimmed(mut self) -> Self {
        if self.man.is_zero() {
            self.exp = 0;
            return self;
        }
        let tz = self.man.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            self.man >>= tz;
            self.exp += tz as i64;
        }
        self
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.man
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.man.is_zero()
    }

    pub fn sign(&self) -> Sign {
        self.man.sign()
    }

    pub fn is_negative(&self) -> bool {
        self.man.is_negative()
    }

    /// Number of significant bits of the mantissa.
    pub fn bits(&self) -> u64 {
        self.man.bits()
    }

    /// Exponent just above the most significant bit: `|self| < 2^top`.
    pub fn top(&self) -> i64 {
        self.exp + self.bits() as i64
    }

    pub fn abs(&self) -> Self {
        Dyadic {
            man: self.man.abs(),
            exp: self.exp,
        }
    }

    pub fn neg(&self) -> Self {
        Dyadic {
            man: -&self.man,
            exp: self.exp,
        }
    }

    pub fn mul_pow2(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        Dyadic {
            man: self.man.clone(),
            exp: self.exp + k,
        }
    }

    pub fn add(&self, other: &Dyadic) -> Dyadic {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(other.exp);
        let a = &self.man << (self.exp - e) as u64;
        let b = &other.man << (other.exp - e) as u64;
        Dyadic::new(a + b, e)
    }

    pub fn sub(&self, other: &Dyadic) -> Dyadic {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Dyadic) -> Dyadic {
        Dyadic::new(&self.man * &other.man, self.exp + other.exp)
    }

    /// Upper bound on the absolute value.
    pub fn mag_up(&self) -> Mag {
        Mag::from_bigint_up(&self.man, self.exp)
    }

    pub fn mag_lower(&self) -> Mag {
        Mag::from_bigint_lower(&self.man, self.exp)
    }

    /// Rounds to at most `prec` significant bits; returns the rounded value
    /// and a bound on the rounding error.
    pub fn round(&self, prec: u32) -> (Dyadic, Mag) {
        let bits = self.bits();
        if bits <= u64::from(prec) {
            return (self.clone(), Mag::zero());
        }
        let s = bits - u64::from(prec);
        // round half away from zero on the magnitude
        let half = BigInt::from(1) << (s - 1);
        let mag = self.man.abs() + half;
        let mut m: BigInt = mag >> s;
        if self.man.is_negative() {
            m = -m;
        }
        let exp = self.exp + s as i64;
        (Dyadic::new(m, exp), Mag::pow2(exp - 1))
    }

    /// Floor of the value as an integer.
    pub fn floor(&self) -> BigInt {
        if self.exp >= 0 {
            &self.man << self.exp as u64
        } else {
            let d = BigInt::from(1) << (-self.exp) as u64;
            self.man.div_floor(&d)
        }
    }

    pub fn to_rational(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from_integer(&self.man << self.exp as u64)
        } else {
            BigRational::new(self.man.clone(), BigInt::from(1) << (-self.exp) as u64)
        }
    }

    /// Nearest-ish `f64`; exact for mantissas up to 53 bits.
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.bits();
        if bits <= 60 {
            return ldexp(self.man.to_f64().unwrap_or(0.0), self.exp);
        }
        let s = bits - 60;
        let top: BigInt = &self.man >> s;
        ldexp(top.to_f64().unwrap_or(0.0), self.exp + s as i64)
    }

    /// Rational `num/den` to `prec` bits, rounded toward zero; error < 2^(exp).
    pub fn from_rational(q: &BigRational, prec: u32) -> (Dyadic, Mag) {
        let (num, den) = (q.numer(), q.denom());
        if num.is_zero() {
            return (Dyadic::zero(), Mag::zero());
        }
        if den == &BigInt::from(1) {
            return Dyadic::from_int(num.clone()).round(prec);
        }
        if den.trailing_zeros() == Some(den.bits() - 1) {
            // power-of-two denominator: exact
            let d = Dyadic::new(num.clone(), -(den.bits() as i64 - 1));
            return d.round(prec);
        }
        let shift = i64::from(prec) + 2 + den.bits() as i64 - num.bits() as i64;
        let shift = shift.max(0);
        let n = num << shift as u64;
        let m = n / den;
        let (d, err) = Dyadic::new(m, -shift).round(prec);
        (d, err.add_up(&Mag::pow2(-shift)))
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (sa, sb) = (self.sign(), other.sign());
        if sa != sb {
            let rank = |s: Sign| match s {
                Sign::Minus => 0,
                Sign::NoSign => 1,
                Sign::Plus => 2,
            };
            return rank(sa).cmp(&rank(sb));
        }
        if sa == Sign::NoSign {
            return Ordering::Equal;
        }
        let mag_order = match self.top().cmp(&other.top()) {
            Ordering::Equal => {
                let e = self.exp.min(other.exp);
                let a = self.man.abs() << (self.exp - e) as u64;
                let b = other.man.abs() << (other.exp - e) as u64;
                a.cmp(&b)
            }
            o => o,
        };
        if sa == Sign::Minus {
            mag_order.reverse()
        } else {
            mag_order
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn d(m: i64, e: i64) -> Dyadic {
        Dyadic::new(m.into(), e)
    }

    #[test]
    fn representation_is_canonical() {
        assert_eq!(d(4, 0), d(1, 2));
        assert_eq!(d(0, 7), Dyadic::zero());
    }

    #[test]
    fn rounding_error_is_bounded() {
        let x = d(0b1011_0111, -3);
        let (r, err) = x.round(3);
        let diff = x.sub(&r).abs();
        assert!(diff.mag_up() <= err);
        assert!(r.bits() <= 3);
    }

    #[test]
    fn rational_conversion() {
        let third = BigRational::new(1.into(), 3.into());
        let (x, err) = Dyadic::from_rational(&third, 64);
        assert!((x.to_f64() - 1.0 / 3.0).abs() < 1e-16);
        assert!(err.to_f64() < 1e-18);
    }

    proptest! {
        #[test]
        fn ordering_matches_f64(a in -1_000_000i64..1_000_000, ea in -20i64..20, b in -1_000_000i64..1_000_000, eb in -20i64..20) {
            let (x, y) = (d(a, ea), d(b, eb));
            let (fx, fy) = (x.to_f64(), y.to_f64());
            prop_assert_eq!(x.cmp(&y), fx.partial_cmp(&fy).unwrap());
            prop_assert_eq!(x.add(&y).to_f64(), fx + fy);
        }
    }
}
