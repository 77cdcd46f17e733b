use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

/// Mantissa width of a [`Mag`].
const MAG_BITS: u32 = 30;
const MAG_LO: u64 = 1 << (MAG_BITS - 1);
const MAG_HI: u64 = 1 << MAG_BITS;

/// Non-negative upper bound `man·2^exp` with a 30-bit mantissa.
///
/// Every operation rounds away from zero (or toward zero for the `_lower`
/// variants), so a `Mag` computed from upper bounds is itself an upper bound.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Mag {
    man: u64,
    exp: i64,
}

impl fmt::Debug for Mag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mag({:e})", self.to_f64())
    }
}

fn normalize(man: u128, exp: i64, up: bool) -> Mag {
    if man == 0 {
        return Mag::zero();
    }
    let bits = 128 - man.leading_zeros();
    if bits > MAG_BITS {
        let s = bits - MAG_BITS;
        let mut m = (man >> s) as u64;
        let mut e = exp + s as i64;
        if up && (u128::from(m) << s) != man {
            m += 1;
            if m == MAG_HI {
                m >>= 1;
                e += 1;
            }
        }
        Mag { man: m, exp: e }
    } else {
        let s = MAG_BITS - bits;
        Mag {
            man: (man << s) as u64,
            exp: exp - s as i64,
        }
    }
}

impl Mag {
    pub const fn zero() -> Self {
        Mag { man: 0, exp: 0 }
    }

    pub fn is_zero(&self) -> bool {
        self.man == 0
    }

    /// Exactly `2^e`.
    pub fn pow2(e: i64) -> Self {
        Mag {
            man: MAG_LO,
            exp: e - (MAG_BITS as i64 - 1),
        }
    }

    /// Exact small integer.
    pub fn from_u64(v: u64) -> Self {
        normalize(u128::from(v), 0, true)
    }

    /// Upper bound of `|v|·2^exp`.
    pub fn from_bigint_up(v: &BigInt, exp: i64) -> Self {
        Self::from_bigint(v, exp, true)
    }

    /// Lower bound of `|v|·2^exp`.
    pub fn from_bigint_lower(v: &BigInt, exp: i64) -> Self {
        Self::from_bigint(v, exp, false)
    }

    fn from_bigint(v: &BigInt, exp: i64, up: bool) -> Self {
        if v.is_zero() {
            return Mag::zero();
        }
        let mag = v.magnitude();
        let bits = mag.bits();
        if bits <= 120 {
            return normalize(mag.to_u128().unwrap_or(0), exp, up);
        }
        let s = bits - 64;
        let top: num_bigint::BigUint = mag >> s;
        let inexact = up && (&top << s) != *mag;
        let mut m = normalize(top.to_u128().unwrap_or(0), exp + s as i64, up);
        if inexact {
            m = m.add_up(&Mag::pow2(exp + s as i64));
        }
        m
    }

    /// Upper bound of a finite non-negative `f64`.
    pub fn from_f64_up(v: f64) -> Self {
        assert!(
            v.is_finite() && v >= 0.0,
            "Mag::from_f64_up needs a finite non-negative value"
        );
        if v == 0.0 {
            return Mag::zero();
        }
        let (m, e) = frexp(v);
        // m in [0.5, 1): 53-bit integer mantissa is exact
        let mi = (m * (1u64 << 53) as f64) as u64;
        normalize(u128::from(mi), i64::from(e) - 53, true)
    }

    pub fn mantissa(&self) -> u64 {
        self.man
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    /// Floor of log2 of the value; `None` for zero.
    pub fn log2_floor(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.exp + MAG_BITS as i64 - 1)
    }

    pub fn add_up(&self, other: &Mag) -> Mag {
        if self.is_zero() {
            return *other;
        }
        if other.is_zero() {
            return *self;
        }
        let (big, small) = if self.exp >= other.exp {
            (self, other)
        } else {
            (other, self)
        };
        let gap = big.exp - small.exp;
        if gap > 60 {
            // small < 2^(big.exp) so one unit of big absorbs it
            return normalize(u128::from(big.man) + 1, big.exp, true);
        }
        let sum = (u128::from(big.man) << gap) + u128::from(small.man);
        normalize(sum, small.exp, true)
    }

    /// Lower bound of `max(self − other, 0)`.
    pub fn sub_lower(&self, other: &Mag) -> Mag {
        if other.is_zero() {
            return *self;
        }
        if self <= other {
            return Mag::zero();
        }
        // normalized mantissas: self > other implies self.exp ≥ other.exp
        let gap = self.exp - other.exp;
        if gap > 60 {
            return normalize(u128::from(self.man) - 1, self.exp, false);
        }
        let d = (u128::from(self.man) << gap) - u128::from(other.man);
        normalize(d, other.exp, false)
    }

    pub fn mul_up(&self, other: &Mag) -> Mag {
        if self.is_zero() || other.is_zero() {
            return Mag::zero();
        }
        normalize(u128::from(self.man) * u128::from(other.man), self.exp + other.exp, true)
    }

    pub fn mul_lower(&self, other: &Mag) -> Mag {
        if self.is_zero() || other.is_zero() {
            return Mag::zero();
        }
        normalize(
            u128::from(self.man) * u128::from(other.man),
            self.exp + other.exp,
            false,
        )
    }

    /// Upper bound of `self / other`; `other` must be nonzero.
    pub fn div_up(&self, other: &Mag) -> Mag {
        assert!(!other.is_zero(), "Mag division by zero");
        if self.is_zero() {
            return Mag::zero();
        }
        let num = u128::from(self.man) << 64;
        let q = num / u128::from(other.man) + 1;
        normalize(q, self.exp - other.exp - 64, true)
    }

    pub fn div_lower(&self, other: &Mag) -> Mag {
        assert!(!other.is_zero(), "Mag division by zero");
        if self.is_zero() {
            return Mag::zero();
        }
        let num = u128::from(self.man) << 64;
        normalize(num / u128::from(other.man), self.exp - other.exp - 64, false)
    }

    pub fn mul_pow2(&self, k: i64) -> Mag {
        if self.is_zero() {
            return *self;
        }
        Mag {
            man: self.man,
            exp: self.exp + k,
        }
    }

    pub fn max(self, other: Mag) -> Mag {
        if self >= other {
            self
        } else {
            other
        }
    }

    /// Exact value as `(mantissa, exponent)` with a `BigInt` mantissa.
    pub fn to_bigint_exp(&self) -> (BigInt, i64) {
        (BigInt::from(self.man), self.exp)
    }

    /// Nearest `f64`; saturates to 0 or infinity far outside its range.
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        ldexp(self.man as f64, self.exp)
    }
}

impl PartialOrd for Mag {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Mag {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Less,
            (false, true) => Ordering::Greater,
            _ => self.exp.cmp(&other.exp).then(self.man.cmp(&other.man)),
        }
    }
}

/// `x·2^e` without intermediate overflow of the power.
pub(crate) fn ldexp(x: f64, e: i64) -> f64 {
    let mut v = x;
    let mut e = e;
    while e > 1000 {
        v *= 2f64.powi(1000);
        e -= 1000;
        if v.is_infinite() {
            return v;
        }
    }
    while e < -1000 {
        v *= 2f64.powi(-1000);
        e += 1000;
        if v == 0.0 {
            return v;
        }
    }
    v * 2f64.powi(e as i32)
}

fn frexp(v: f64) -> (f64, i32) {
    let bits = v.to_bits();
    let exp = ((bits >> 52) & 0x7ff) as i32;
    if exp == 0 {
        // subnormal: scale into the normal range first
        let (m, e) = frexp(v * 2f64.powi(64));
        return (m, e - 64);
    }
    let m = f64::from_bits((bits & !(0x7ffu64 << 52)) | (1022u64 << 52));
    (m, exp - 1022)
}
