//! Certified summation of hypergeometric-harmonic series.

mod cursor;
pub mod ratfn;
pub mod tail;
pub mod telescope;
pub mod term;

use num_bigint::BigInt;

use crate::ball::{Ball, Mag};
use crate::error::{Error, Result};
use crate::exact::SurdQ5;
use cursor::Cursor;
use tail::Prepared;

pub use ratfn::{LinFactor, Poly, RatFn};
pub use tail::{TailEstimate, TailKind, TailSign, TailStrategy};
pub use telescope::Antidifference;
pub use term::{Aux, Coefficient, Component, Term, TermSpec, TermStream, MAX_INDEX};

/// Default cap on summed terms.
pub const DEFAULT_MAX_TERMS: u64 = 10_000_000;

/// Enclosure of `Σ_{n=start}^{last} t_n`.
pub fn partial_sum(spec: &TermSpec, last: u64, prec: u32) -> Result<Ball> {
    let mut c = Cursor::new(spec, prec)?;
    c.advance_to(last)?;
    Ok(c.sum().clone())
}

/// Exact `Σ_{n=start}^{last} t_n` for specs with Q(√5) coefficients.
pub fn partial_sum_exact(spec: &TermSpec, last: u64) -> Result<SurdQ5> {
    let mut c = Cursor::exact(spec, 64)?;
    c.advance_to(last)?;
    Ok(c.exact_sum().cloned().unwrap_or_else(SurdQ5::zero))
}

/// A certified sum and how it was obtained.
#[derive(Clone, Debug)]
pub struct SumResult {
    pub value: Ball,
    /// Last index included in the partial sum.
    pub last_index: u64,
    pub terms_used: u64,
    pub tail: TailEstimate,
    pub strategy: TailKind,
}

#[derive(Clone, Debug)]
pub enum SumOutcome {
    Reached(SumResult),
    /// Best enclosure found before a resource cap.
    PrecisionNotReached(SumResult),
}

impl SumOutcome {
    pub fn result(&self) -> &SumResult {
        match self {
            SumOutcome::Reached(r) | SumOutcome::PrecisionNotReached(r) => r,
        }
    }

    pub fn into_result(self) -> SumResult {
        match self {
            SumOutcome::Reached(r) | SumOutcome::PrecisionNotReached(r) => r,
        }
    }

    pub fn reached(&self) -> bool {
        matches!(self, SumOutcome::Reached(_))
    }
}

/// Lower bound of `10^{−digits}`.
pub(crate) fn ten_pow_neg(digits: u32) -> Mag {
    let p = Ball::from_int(BigInt::from(10).pow(digits), 64);
    p.inv().expect("positive").mag_lower()
}

fn finish(cursor: &Cursor, est: TailEstimate, strategy: TailKind, digits: u32) -> SumOutcome {
    let value = (cursor.sum() + &est.correction).add_error(est.bound);
    let result = SumResult {
        value,
        last_index: cursor.last_index().unwrap_or(cursor.spec().start),
        terms_used: cursor.count(),
        tail: est,
        strategy,
    };
    if result.value.agreed_digits(&result.value) >= i64::from(digits) {
        SumOutcome::Reached(result)
    } else {
        SumOutcome::PrecisionNotReached(result)
    }
}

/// Sums until the enclosure carries `digits` correct digits, relative to
/// `max(|value|, 1)`, or `max_terms` terms have been used.
///
/// Hypothesis violations seen along the way are reported as errors.
pub fn sum_to_precision(
    spec: &TermSpec,
    strategy: &TailStrategy,
    digits: u32,
    max_terms: u64,
    prec: u32,
) -> Result<SumOutcome> {
    let mut cursor = Cursor::new(spec, prec)?;
    let prepared = Prepared::new(strategy, &cursor)?;
    let budget = ten_pow_neg(digits).mul_pow2(-2);
    let start = spec.start;
    let max_terms = max_terms.max(1);
    let cap = start + max_terms - 1;
    let kind = strategy.kind();
    if prepared.is_fixed() {
        let n = fixed_cutoff(&prepared, start, cap, budget);
        // hypothesis checks at powers of two on the way
        let mut check = 16u64;
        while check < n {
            cursor.advance_to(check)?;
            prepared.estimate(&mut cursor)?;
            check *= 4;
        }
        cursor.advance_to(n)?;
        return match prepared.estimate(&mut cursor)? {
            Some(est) => Ok(finish(&cursor, est, kind, digits)),
            None => Err(Error::Resource(format!(
                "no tail bound available within {max_terms} terms"
            ))),
        };
    }
    loop {
        cursor.step()?;
        let at_cap = cursor.count() >= max_terms;
        let next_small = cursor.peek()?.mag_upper() <= budget;
        if next_small || at_cap {
            if let Some(est) = prepared.estimate(&mut cursor)? {
                if est.bound <= budget || at_cap {
                    return Ok(finish(&cursor, est, kind, digits));
                }
            } else if at_cap {
                return Err(Error::Resource(format!(
                    "no tail bound available within {max_terms} terms"
                )));
            }
        }
    }
}

/// Smallest cut-off (up to doubling and bisection) whose static bound meets `budget`.
fn fixed_cutoff(prepared: &Prepared, start: u64, cap: u64, budget: Mag) -> u64 {
    let ok = |n: u64| prepared.static_bound(n).is_some_and(|b| b <= budget);
    let mut hi = start.max(16);
    while !ok(hi) {
        if hi >= cap {
            return cap;
        }
        hi = (hi * 2).min(cap);
    }
    let mut lo = (hi / 2).max(start);
    if ok(lo) {
        return lo;
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if ok(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// One probe of [`empirical_tail_check`].
#[derive(Clone, Debug)]
pub struct TailProbe {
    pub n: u64,
    /// `S(4n) − S(n)`.
    pub segment: Option<Ball>,
    /// Tail prediction for the same segment.
    pub predicted: Option<Ball>,
    pub passed: bool,
    pub note: Option<String>,
}

#[derive(Clone, Debug)]
pub struct TailCheckReport {
    pub probes: Vec<TailProbe>,
}

impl TailCheckReport {
    pub fn passed(&self) -> bool {
        self.probes.iter().all(|p| p.passed)
    }
}

/// Compares `S(4N) − S(N)` with the strategy's prediction
/// `tail(N) − tail(4N)` at each probe `N`.
///
/// Violations found by the inline checks are recorded as failures.
pub fn empirical_tail_check(
    spec: &TermSpec,
    strategy: &TailStrategy,
    probes: &[u64],
    prec: u32,
) -> Result<TailCheckReport> {
    let mut out = Vec::new();
    for &n in probes {
        out.push(match probe(spec, strategy, n, prec) {
            Ok(p) => p,
            Err(Error::TailHypothesisViolation { n: at, detail }) => TailProbe {
                n,
                segment: None,
                predicted: None,
                passed: false,
                note: Some(format!("hypothesis violated at n = {at}: {detail}")),
            },
            Err(e) => return Err(e),
        });
    }
    Ok(TailCheckReport { probes: out })
}

fn probe(spec: &TermSpec, strategy: &TailStrategy, n: u64, prec: u32) -> Result<TailProbe> {
    let mut cursor = Cursor::new(spec, prec)?;
    let prepared = Prepared::new(strategy, &cursor)?;
    let unavailable = |why: &str| TailProbe {
        n,
        segment: None,
        predicted: None,
        passed: false,
        note: Some(why.to_string()),
    };
    cursor.advance_to(n)?;
    let Some(near) = prepared.estimate(&mut cursor)? else {
        return Ok(unavailable("no tail bound at this cut-off"));
    };
    let s_near = cursor.sum().clone();
    cursor.advance_to(4 * n)?;
    let Some(far) = prepared.estimate(&mut cursor)? else {
        return Ok(unavailable("no tail bound at the far cut-off"));
    };
    let segment = cursor.sum() - &s_near;
    let predicted = (&near.correction - &far.correction).add_error(near.bound.add_up(&far.bound));
    Ok(TailProbe {
        n,
        passed: segment.overlaps(&predicted),
        segment: Some(segment),
        predicted: Some(predicted),
        note: None,
    })
}

#[cfg(test)]
mod tests;
