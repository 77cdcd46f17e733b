//! Telescoping tails for slowly converging hypergeometric-harmonic sums.
//!
//! For a component `b_n^j·(r0 + r1·H_n + r2·H_{2n})` we build
//! `T(n) = b_n^j·(s0 + s1·H_n + s2·H_{2n})` whose forward difference matches
//! the summand up to a residual of much faster decay. Then
//! `Σ_{n≥M} t_n = −T(M) + Σ_{n≥M} residual_n`, and the residual sum is bounded
//! by an explicit integral.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::ratfn::{Poly, RatFn};
use super::term::Aux;
use crate::ball::{Ball, Mag};
use crate::error::{Error, Result};

/// Precision used for bound arithmetic; bounds need few correct bits.
const BOUND_PREC: u32 = 96;

#[derive(Clone, Debug, PartialEq)]
pub struct Antidifference {
    pub binom_power: u32,
    /// `s0, s1, s2` of `T`.
    pub s: [RatFn; 3],
    /// Parts of `t_n − (T(n+1) − T(n))`, same shape as the summand.
    pub residual: [RatFn; 3],
}

fn ratio_step(j: u32) -> RatFn {
    // b_{n+1}/b_n = (2n+1)/(2n+2)
    RatFn::new(Poly::from_ints(&[1, 2]).pow(j), &[(2, 2, j)])
}

/// `σ·n^k` as a rational function.
fn power(sigma: BigRational, k: i64) -> RatFn {
    if k >= 0 {
        RatFn::poly(Poly::monomial(sigma, k as usize))
    } else {
        RatFn::new(Poly::constant(sigma), &[(1, 0, (-k) as u32)])
    }
}

/// Forward difference of `b_n^j·s(n)·X_n` where `X` is `1`, `H_n` or `H_{2n}`:
/// returns its `(plain, same-harmonic)` parts.
fn difference(j: u32, part: usize, s: &RatFn) -> (RatFn, RatFn) {
    let shifted = ratio_step(j).mul(&s.shift(1));
    let same = shifted.sub(s);
    let jump = match part {
        0 => RatFn::zero(),
        1 => RatFn::recip_of(&[(1, 1, 1)]),
        _ => RatFn::recip_of(&[(2, 1, 1)]).add(&RatFn::recip_of(&[(2, 2, 1)])),
    };
    (shifted.mul(&jump), same)
}

fn min_decay(parts: &[RatFn; 3]) -> Option<i64> {
    parts.iter().filter_map(RatFn::decay).min()
}

impl Antidifference {
    /// Runs `steps` rounds of leading-term cancellation on each part.
    pub fn build(binom_power: u32, r: [&RatFn; 3], steps: u32) -> Result<Self> {
        let j = binom_power;
        let half_j = BigRational::new(BigInt::from(j), BigInt::from(2));
        let mut residual = [r[0].clone(), r[1].clone(), r[2].clone()];
        let mut s = [RatFn::zero(), RatFn::zero(), RatFn::zero()];
        if let Some(d) = min_decay(&residual) {
            if BigRational::from_integer(d.into()) + &half_j <= BigRational::one() {
                return Err(Error::usage("telescoping needs a convergent summand"));
            }
        }
        for _ in 0..steps {
            for part in [2, 1, 0] {
                let Some(d) = residual[part].decay() else { continue };
                let k = 1 - d;
                let denom = BigRational::from_integer(k.into()) - &half_j;
                if denom.is_zero() {
                    return Err(Error::usage("telescoping step hit a resonant exponent"));
                }
                let sigma = residual[part].leading_coeff() / denom;
                let add = power(sigma, k);
                let (plain, same) = difference(j, part, &add);
                residual[part] = residual[part].sub(&same);
                if part != 0 {
                    residual[0] = residual[0].sub(&plain);
                }
                s[part] = s[part].add(&add);
            }
        }
        Ok(Antidifference {
            binom_power,
            s,
            residual,
        })
    }

    /// Residual decay exponent `D`: residuals are `O(n^{−D}·ln n)`, as twice `D`.
    pub fn residual_decay_twice(&self) -> Option<i64> {
        min_decay(&self.residual).map(|d| 2 * d + i64::from(self.binom_power))
    }

    /// `T(M)` from the running quantities at index `M ≥ 1`.
    pub fn value_at(&self, aux: &Aux, prec: u32) -> Result<Ball> {
        let m = i64::try_from(aux.index).map_err(|_| Error::Resource("index too large".into()))?;
        let mut total = Ball::zero(prec);
        for (s, mult) in self.s.iter().zip([None, Some(&aux.h), Some(&aux.h2)]) {
            if s.is_zero() {
                continue;
            }
            let v = s
                .eval_int(m)
                .ok_or_else(|| Error::DivisionByZero(format!("antidifference has a pole at n = {m}")))?;
            let v = Ball::from_rational(&v, prec);
            total = &total + &mult.map_or_else(|| v.clone(), |h| &v * h);
        }
        for _ in 0..self.binom_power {
            total = &total * &aux.b;
        }
        Ok(total)
    }

    /// Upper bound of `Σ_{m>n} |residual_m|`, or `None` when the integral
    /// comparison is not yet valid at `n`.
    ///
    /// Uses `b_m ≤ 1/√(3m)`, `H_m ≤ ln m + 1`, `H_{2m} ≤ ln m + 2` and
    /// `|r_i(m)| ≤ A_i·m^{−d}` so the residual is below
    /// `f(x) = x^{−D}·(α + β·ln x)`, decreasing once `D·(α + β·ln x) ≥ β`, and
    /// `∫_n^∞ f = n^{1−D}·((α + β·ln n)/(D−1) + β/(D−1)²)`.
    pub fn residual_bound(&self, n: u64) -> Option<Mag> {
        let Some(d) = min_decay(&self.residual) else {
            return Some(Mag::zero());
        };
        if n < 2 {
            return None;
        }
        let p = BOUND_PREC;
        let mut a = Vec::with_capacity(3);
        for part in &self.residual {
            if part.is_zero() {
                a.push(Ball::zero(p));
            } else {
                a.push(Ball::from_rational(&part.decay_bound(n + 1)?, p));
            }
        }
        let third = Ball::from_ratio(1, 3, p).sqrt().ok()?;
        let mut scale = Ball::one(p);
        for _ in 0..self.binom_power {
            scale = &scale * &third;
        }
        let alpha = &scale * &(&(&a[0] + &a[1]) + &a[2].mul_int(2));
        let beta = &scale * &(&a[1] + &a[2]);
        let big_d = Ball::from_ratio(2 * d + i64::from(self.binom_power), 2, p);
        let d1 = &big_d - &Ball::one(p);
        if !d1.is_positive() {
            return None;
        }
        let nb = Ball::from_int(n, p);
        let ln_n = nb.ln().ok()?;
        let lead = &alpha + &(&beta * &ln_n);
        // f must already be decreasing at x = n
        if !(&(&big_d * &lead) - &beta).is_nonnegative() {
            return None;
        }
        // n^{1−D} = n^{1−d}·n^{−j/2}
        let mut np = nb.pow_int(1 - d).ok()?;
        let root = nb.sqrt().ok()?;
        for _ in 0..self.binom_power {
            np = np.div(&root).ok()?;
        }
        let body = &lead.div(&d1).ok()? + &beta.div(&d1.square()).ok()?;
        Some((&np * &body).mag_upper())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::SurdQ5;
    use crate::series::term::{Component, TermSpec, TermStream};

    fn eq36_parts() -> [RatFn; 3] {
        // n²/((2n−1)²(2n+1))
        let r0 = RatFn::new(Poly::from_ints(&[0, 0, 1]), &[(2, -1, 2), (2, 1, 1)]);
        [r0, RatFn::zero(), RatFn::zero()]
    }

    #[test]
    fn first_step_matches_hand_computation() {
        let r = eq36_parts();
        let ad = Antidifference::build(1, [&r[0], &r[1], &r[2]], 1).unwrap();
        // leading behaviour n^{−1}/8 with j = 1 gives s0 = −1/4
        assert_eq!(ad.s[0], RatFn::constant(BigRational::new((-1).into(), 4.into())));
        assert!(ad.residual[0].decay().unwrap() >= 2);
    }

    #[test]
    fn difference_identity_holds_exactly() {
        // t_n = D[T](n) + residual_n, checked on exact values with harmonic parts
        let r1 = RatFn::new(Poly::from_ints(&[1]), &[(1, 1, 1), (2, 3, 1)]);
        let r2 = RatFn::new(Poly::from_ints(&[-3]), &[(2, 1, 2)]);
        let r0 = RatFn::new(Poly::from_ints(&[0, 5]), &[(2, -1, 2), (2, 3, 1)]);
        let ad = Antidifference::build(1, [&r0, &r1, &r2], 4).unwrap();
        let spec = |parts: [&RatFn; 3]| {
            TermSpec::single(
                1,
                Component::new(SurdQ5::one(), 1)
                    .plain(parts[0].clone())
                    .h(parts[1].clone())
                    .h2(parts[2].clone()),
            )
        };
        let mut orig = TermStream::with_exact(&spec([&r0, &r1, &r2]), 64).unwrap();
        let res = &ad.residual;
        let mut resid = TermStream::with_exact(&spec([&res[0], &res[1], &res[2]]), 64).unwrap();
        let t_spec = spec([&ad.s[0], &ad.s[1], &ad.s[2]]);
        let mut t_vals = Vec::new();
        let mut ts = TermStream::with_exact(&t_spec, 64).unwrap();
        for _ in 0..12 {
            t_vals.push(ts.next_term().unwrap().exact.unwrap());
        }
        for k in 0..11 {
            let t = orig.next_term().unwrap().exact.unwrap();
            let r = resid.next_term().unwrap().exact.unwrap();
            let diff = &t_vals[k + 1] - &t_vals[k];
            assert_eq!(t, &diff + &r, "n = {}", k + 1);
        }
    }

    #[test]
    fn residual_bound_dominates_residual_sum() {
        let r = eq36_parts();
        let ad = Antidifference::build(1, [&r[0], &r[1], &r[2]], 3).unwrap();
        let res = &ad.residual;
        let spec = TermSpec::single(
            1,
            Component::new(SurdQ5::one(), 1)
                .plain(res[0].clone())
                .h(res[1].clone())
                .h2(res[2].clone()),
        );
        let mut s = TermStream::new(&spec, 96).unwrap();
        let mut abs_tail = Ball::zero(96);
        let mut terms = Vec::new();
        for _ in 0..2000 {
            terms.push(s.next_term().unwrap().value);
        }
        // Σ_{20 < m ≤ 2000} |res_m| is a lower bound of the true tail sum
        for t in &terms[20..] {
            abs_tail = &abs_tail + &t.abs();
        }
        let bound = ad.residual_bound(20).unwrap();
        assert!(
            abs_tail.mag_upper() <= bound,
            "{:?} vs {:?}",
            abs_tail.mag_upper(),
            bound
        );
    }
}
