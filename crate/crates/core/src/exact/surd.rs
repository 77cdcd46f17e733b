use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// An exact element `a + b·√5` of the quadratic field Q(√5).
///
/// Both components are kept as canonical `BigRational`s, so two surds are
/// equal exactly when their components are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct SurdQ5 {
    a: BigRational,
    b: BigRational,
}

impl SurdQ5 {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        SurdQ5 { a, b }
    }

    pub fn from_rational(a: BigRational) -> Self {
        SurdQ5 {
            a,
            b: BigRational::zero(),
        }
    }

    pub fn from_integer(a: impl Into<BigInt>) -> Self {
        Self::from_rational(BigRational::from_integer(a.into()))
    }

    /// `p/q + (r/s)·√5` from small integers; panics on a zero denominator.
    pub fn from_ratios(p: i64, q: i64, r: i64, s: i64) -> Self {
        SurdQ5 {
            a: BigRational::new(p.into(), q.into()),
            b: BigRational::new(r.into(), s.into()),
        }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn sqrt5() -> Self {
        SurdQ5 {
            a: BigRational::zero(),
            b: BigRational::one(),
        }
    }

    /// The golden ratio α = (1 + √5)/2.
    pub fn alpha() -> Self {
        Self::from_ratios(1, 2, 1, 2)
    }

    /// The conjugate β = (1 − √5)/2.
    pub fn beta() -> Self {
        Self::from_ratios(1, 2, -1, 2)
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn surd_part(&self) -> &BigRational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Galois conjugate `a − b·√5`.
    pub fn conj(&self) -> Self {
        SurdQ5 {
            a: self.a.clone(),
            b: -&self.b,
        }
    }

    /// Field norm `a² − 5b²`.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - BigRational::from_integer(5.into()) * &self.b * &self.b
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        SurdQ5 {
            a: &self.a * k,
            b: &self.b * k,
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero("inverse of the zero surd".into()));
        }
        // the norm of a nonzero element is nonzero because √5 is irrational
        let n = self.norm();
        Ok(self.conj().scale(&n.recip()))
    }

    pub fn checked_div(&self, rhs: &SurdQ5) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    /// Integer power; negative exponents go through the exact inverse.
    pub fn pow(&self, k: i64) -> Result<Self> {
        let mut base = if k < 0 { self.inv()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = SurdQ5::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    /// Exact sign of the real number `a + b√5`.
    pub fn signum(&self) -> Ordering {
        let sa = self.a.cmp(&BigRational::zero());
        let sb = self.b.cmp(&BigRational::zero());
        match (sa, sb) {
            (Ordering::Equal, s) | (s, Ordering::Equal) => s,
            (x, y) if x == y => x,
            // opposite signs: compare a² with 5b²
            (sa, _) => {
                let a2 = &self.a * &self.a;
                let b2 = BigRational::from_integer(5.into()) * &self.b * &self.b;
                match a2.cmp(&b2) {
                    Ordering::Greater => sa,
                    Ordering::Less => sa.reverse(),
                    Ordering::Equal => Ordering::Equal,
                }
            }
        }
    }

    pub fn abs(&self) -> Self {
        if self.signum() == Ordering::Less {
            -self
        } else {
            self.clone()
        }
    }

    /// Rough `f64` value, for diagnostics only.
    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.a.to_f64().unwrap_or(f64::NAN) + self.b.to_f64().unwrap_or(f64::NAN) * 5f64.sqrt()
    }
}

impl PartialOrd for SurdQ5 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SurdQ5 {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum()
    }
}

impl From<BigRational> for SurdQ5 {
    fn from(a: BigRational) -> Self {
        SurdQ5::from_rational(a)
    }
}

impl From<i64> for SurdQ5 {
    fn from(a: i64) -> Self {
        SurdQ5::from_integer(a)
    }
}

impl fmt::Display for SurdQ5 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "{}·√5", self.b),
            (false, false) => {
                if self.b.is_negative() {
                    write!(f, "{} − {}·√5", self.a, -&self.b)
                } else {
                    write!(f, "{} + {}·√5", self.a, self.b)
                }
            }
        }
    }
}

impl<'a> Add<&'a SurdQ5> for &'a SurdQ5 {
    type Output = SurdQ5;
    fn add(self, rhs: &SurdQ5) -> SurdQ5 {
        SurdQ5 {
            a: &self.a + &rhs.a,
            b: &self.b + &rhs.b,
        }
    }
}

impl<'a> Sub<&'a SurdQ5> for &'a SurdQ5 {
    type Output = SurdQ5;
    fn sub(self, rhs: &SurdQ5) -> SurdQ5 {
        SurdQ5 {
            a: &self.a - &rhs.a,
            b: &self.b - &rhs.b,
        }
    }
}

impl<'a> Mul<&'a SurdQ5> for &'a SurdQ5 {
    type Output = SurdQ5;
    fn mul(self, rhs: &SurdQ5) -> SurdQ5 {
        let five = BigRational::from_integer(5.into());
        SurdQ5 {
            a: &self.a * &rhs.a + five * &self.b * &rhs.b,
            b: &self.a * &rhs.b + &self.b * &rhs.a,
        }
    }
}

impl Neg for &SurdQ5 {
    type Output = SurdQ5;
    fn neg(self) -> SurdQ5 {
        SurdQ5 {
            a: -&self.a,
            b: -&self.b,
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<SurdQ5> for SurdQ5 {
            type Output = SurdQ5;
            fn $m(self, rhs: SurdQ5) -> SurdQ5 {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for SurdQ5 {
    type Output = SurdQ5;
    fn neg(self) -> SurdQ5 {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> BigRational {
        BigRational::new(p.into(), d.into())
    }

    #[test]
    fn alpha_satisfies_its_minimal_polynomial() {
        let a = SurdQ5::alpha();
        assert_eq!(&a * &a, &a + &SurdQ5::one());
        assert_eq!(&a * &SurdQ5::beta(), SurdQ5::from_integer(-1));
        assert_eq!(&a + &SurdQ5::beta(), SurdQ5::one());
    }

    #[test]
    fn inverse_of_alpha_is_alpha_minus_one() {
        let a = SurdQ5::alpha();
        assert_eq!(a.inv().unwrap(), &a - &SurdQ5::one());
    }

    #[test]
    fn dividing_by_zero_is_an_error() {
        let err = SurdQ5::one().checked_div(&SurdQ5::zero()).unwrap_err();
        assert!(matches!(err, Error::DivisionByZero(_)));
        assert!(SurdQ5::zero().pow(-1).is_err());
    }

    #[test]
    fn signum_handles_mixed_components() {
        assert_eq!(SurdQ5::beta().signum(), Ordering::Less);
        assert_eq!(SurdQ5::new(q(9, 4), q(-1, 1)).signum(), Ordering::Greater);
        assert_eq!(SurdQ5::new(q(-9, 4), q(1, 1)).signum(), Ordering::Less);
        assert_eq!(SurdQ5::zero().signum(), Ordering::Equal);
        assert!(SurdQ5::alpha() > SurdQ5::from_integer(1));
        assert!(SurdQ5::alpha() < SurdQ5::from_integer(2));
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(SurdQ5::alpha().to_string(), "1/2 + 1/2·√5");
        assert_eq!(SurdQ5::beta().to_string(), "1/2 − 1/2·√5");
        assert_eq!(SurdQ5::sqrt5().to_string(), "1·√5");
    }
}
