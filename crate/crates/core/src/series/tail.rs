//! Rigorous tail bounds `Σ_{n>N} t_n` under declared hypotheses.

use std::fmt;

use num_rational::BigRational;

use super::cursor::Cursor;
use super::telescope::Antidifference;
use crate::ball::{Ball, Dyadic, Mag};
use crate::error::{Error, Result};
use crate::exact::SurdQ5;

/// Sign information for a p-series tail.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TailSign {
    Positive,
    Negative,
    Mixed,
}

/// How the tail after the last summed index is enclosed.
#[derive(Clone, Debug, PartialEq)]
pub enum TailStrategy {
    /// `|t_{n+1}/t_n| ≤ ratio·(1 + 1/n)^growth` for `n ≥ from`.
    GeometricRatio { ratio: BigRational, growth: u32, from: u64 },
    /// `|t_n| ≤ constant·(ln n)^log_power / n^p` for `n ≥ from`, with
    /// `p = p_twice/2`.
    PSeries {
        constant: BigRational,
        p_twice: u32,
        log_power: u32,
        from: u64,
        sign: TailSign,
    },
    /// Signs alternate and `|t_n|` decreases for `n ≥ from`.
    Alternating { from: u64 },
    /// Exact antidifference with `steps` cancellation rounds per component.
    Telescoped { steps: u32 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TailKind {
    GeometricRatio,
    PSeries,
    Alternating,
    Telescoped,
}

impl TailKind {
    pub fn name(self) -> &'static str {
        match self {
            TailKind::GeometricRatio => "GeometricRatio",
            TailKind::PSeries => "PSeries",
            TailKind::Alternating => "Alternating",
            TailKind::Telescoped => "Telescoped",
        }
    }
}

impl fmt::Display for TailKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn fmt_q(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl TailStrategy {
    pub fn kind(&self) -> TailKind {
        match self {
            TailStrategy::GeometricRatio { .. } => TailKind::GeometricRatio,
            TailStrategy::PSeries { .. } => TailKind::PSeries,
            TailStrategy::Alternating { .. } => TailKind::Alternating,
            TailStrategy::Telescoped { .. } => TailKind::Telescoped,
        }
    }

    /// Geometric hypothesis whose ratio is a rational upper bound of `|base|`.
    pub fn geometric_for(base: &SurdQ5, growth: u32, from: u64) -> Self {
        let b = Ball::from_surd(&base.abs(), 64);
        TailStrategy::GeometricRatio {
            ratio: b.upper().to_rational(),
            growth,
            from,
        }
    }
}

impl fmt::Display for TailStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TailStrategy::GeometricRatio { ratio, growth, from } => {
                let g = match growth {
                    0 => String::new(),
                    1 => "·(1 + 1/n)".into(),
                    k => format!("·(1 + 1/n)^{k}"),
                };
                write!(f, "|t(n+1)/t(n)| ≤ {}{g} for n ≥ {from}", fmt_q(ratio))
            }
            TailStrategy::PSeries {
                constant,
                p_twice,
                log_power,
                from,
                sign,
            } => {
                let p = if p_twice % 2 == 0 {
                    (p_twice / 2).to_string()
                } else {
                    format!("{p_twice}/2")
                };
                let l = match log_power {
                    0 => String::new(),
                    1 => "·ln n".into(),
                    k => format!("·(ln n)^{k}"),
                };
                let s = match sign {
                    TailSign::Positive => ", terms positive",
                    TailSign::Negative => ", terms negative",
                    TailSign::Mixed => "",
                };
                write!(f, "|t(n)| ≤ {}{l}/n^{p} for n ≥ {from}{s}", fmt_q(constant))
            }
            TailStrategy::Alternating { from } => write!(f, "alternating with decreasing |t(n)| for n ≥ {from}"),
            TailStrategy::Telescoped { steps } => write!(f, "exact antidifference, {steps} cancellation rounds"),
        }
    }
}

/// Tail `Σ_{n>N} t_n ∈ correction ± bound`.
#[derive(Clone, Debug)]
pub struct TailEstimate {
    pub correction: Ball,
    pub bound: Mag,
}

/// Strategy with its precision-dependent data evaluated once.
pub(crate) enum Prepared {
    Geometric {
        ratio: Ball,
        growth: u32,
        from: u64,
    },
    PSeries {
        constant: Ball,
        p_twice: u32,
        log_power: u32,
        from: u64,
        sign: TailSign,
    },
    Alternating {
        from: u64,
    },
    Telescoped {
        parts: Vec<(Ball, Antidifference)>,
    },
}

fn violation(n: u64, detail: impl Into<String>) -> Error {
    Error::TailHypothesisViolation {
        n,
        detail: detail.into(),
    }
}

/// Precision for hypothesis arithmetic.
const CHECK_PREC: u32 = 96;

impl Prepared {
    pub(crate) fn new(strategy: &TailStrategy, cursor: &Cursor) -> Result<Self> {
        let p = CHECK_PREC;
        Ok(match strategy {
            TailStrategy::GeometricRatio { ratio, growth, from } => Prepared::Geometric {
                ratio: Ball::from_rational(ratio, p),
                growth: *growth,
                from: *from,
            },
            TailStrategy::PSeries {
                constant,
                p_twice,
                log_power,
                from,
                sign,
            } => {
                if *p_twice <= 2 {
                    return Err(Error::usage("p-series tail needs p > 1"));
                }
                Prepared::PSeries {
                    constant: Ball::from_rational(constant, p),
                    p_twice: *p_twice,
                    log_power: *log_power,
                    from: *from,
                    sign: *sign,
                }
            }
            TailStrategy::Alternating { from } => Prepared::Alternating { from: *from },
            TailStrategy::Telescoped { steps } => {
                let spec = cursor.spec();
                let coefs = cursor.coefficients();
                let mut parts = Vec::new();
                for (comp, coef) in spec.components.iter().zip(coefs) {
                    if comp.base != SurdQ5::one() {
                        return Err(Error::usage("telescoping needs unit base"));
                    }
                    let coef = match comp.sign {
                        None => coef,
                        Some((a, b)) if a % 2 == 0 => {
                            if b.rem_euclid(2) == 1 {
                                coef.neg()
                            } else {
                                coef
                            }
                        }
                        Some(_) => return Err(Error::usage("telescoping needs a constant sign")),
                    };
                    let ad = Antidifference::build(comp.binom_power, comp.rational_parts(), *steps)?;
                    parts.push((coef, ad));
                }
                Prepared::Telescoped { parts }
            }
        })
    }

    /// Strategies that fix the cut-off from the bound alone.
    pub(crate) fn is_fixed(&self) -> bool {
        matches!(self, Prepared::PSeries { .. } | Prepared::Telescoped { .. })
    }

    /// Tail bound at cut-off `n` that does not need any term values.
    pub(crate) fn static_bound(&self, n: u64) -> Option<Mag> {
        match self {
            Prepared::PSeries {
                constant,
                p_twice,
                log_power,
                from,
                sign,
            } => {
                let t = pseries_integral(constant, *p_twice, *log_power, *from, n)?;
                Some(match sign {
                    TailSign::Mixed => t,
                    _ => t.mul_pow2(-1),
                })
            }
            Prepared::Telescoped { parts } => {
                let mut total = Mag::zero();
                for (coef, ad) in parts {
                    total = total.add_up(&coef.mag_upper().mul_up(&ad.residual_bound(n)?));
                }
                Some(total)
            }
            _ => None,
        }
    }

    /// Tail enclosure after the cursor's last index, checking hypotheses.
    ///
    /// `Ok(None)` means the hypothesis does not yet yield a bound at this cut-off.
    pub(crate) fn estimate(&self, cursor: &mut Cursor) -> Result<Option<TailEstimate>> {
        let n = cursor.last_index().unwrap_or(0);
        let prec = cursor.prec();
        match self {
            Prepared::Geometric { ratio, growth, from } => {
                let next = cursor.peek()?.clone();
                if let Some(last) = cursor.last_term() {
                    if n >= *from && n >= 1 {
                        let q = growth_ratio(ratio, *growth, n);
                        let allowed = (&q * &last.abs()).mag_upper();
                        if next.mag_lower() > allowed {
                            return Err(violation(n + 1, "term ratio exceeds the declared geometric bound"));
                        }
                    }
                }
                if n + 1 < *from {
                    return Ok(None);
                }
                let q = growth_ratio(ratio, *growth, n + 1);
                let gap = (&Ball::one(CHECK_PREC) - &q).mag_lower();
                if !(&Ball::one(CHECK_PREC) - &q).is_positive() || gap.is_zero() {
                    return Ok(None);
                }
                Ok(Some(TailEstimate {
                    correction: Ball::zero(prec),
                    bound: next.mag_upper().div_up(&gap),
                }))
            }
            Prepared::Alternating { from } => {
                let next = cursor.peek()?.clone();
                if let Some(last) = cursor.last_term() {
                    if n >= *from {
                        let same_sign =
                            (next.is_positive() && last.is_positive()) || (next.is_negative() && last.is_negative());
                        if same_sign {
                            return Err(violation(n + 1, "consecutive terms share a sign"));
                        }
                        if next.mag_lower() > last.mag_upper() {
                            return Err(violation(n + 1, "term magnitude increased"));
                        }
                    }
                }
                if n + 1 < *from {
                    return Ok(None);
                }
                // the tail lies between 0 and t_{N+1}
                let half = next.mid().mul_pow2(-1);
                let bound = half.mag_up().add_up(&next.rad());
                Ok(Some(TailEstimate {
                    correction: Ball::from_dyadic(half, prec),
                    bound,
                }))
            }
            Prepared::PSeries {
                constant,
                p_twice,
                log_power,
                from,
                sign,
            } => {
                if let Some(last) = cursor.last_term() {
                    if n >= (*from).max(2) {
                        let cap = pseries_term_bound(constant, *p_twice, *log_power, n);
                        if cap.is_some_and(|c| last.mag_lower() > c) {
                            return Err(violation(n, "term exceeds the declared power-law bound"));
                        }
                        let wrong_sign = match sign {
                            TailSign::Positive => last.is_negative(),
                            TailSign::Negative => last.is_positive(),
                            TailSign::Mixed => false,
                        };
                        if wrong_sign {
                            return Err(violation(n, "term has the wrong sign"));
                        }
                    }
                }
                let Some(t) = pseries_integral(constant, *p_twice, *log_power, *from, n) else {
                    return Ok(None);
                };
                let half = t.mul_pow2(-1);
                let hb = Ball::from_dyadic(Dyadic::from_mag(&half), prec);
                Ok(Some(match sign {
                    TailSign::Mixed => TailEstimate {
                        correction: Ball::zero(prec),
                        bound: t,
                    },
                    TailSign::Positive => TailEstimate {
                        correction: hb,
                        bound: half,
                    },
                    TailSign::Negative => TailEstimate {
                        correction: hb.neg(),
                        bound: half,
                    },
                }))
            }
            Prepared::Telescoped { parts } => {
                let Some(bound) = self.static_bound(n) else {
                    return Ok(None);
                };
                let aux = cursor.aux_next();
                let mut correction = Ball::zero(prec);
                for (coef, ad) in parts {
                    correction = &correction - &(coef * &ad.value_at(&aux, prec)?);
                }
                Ok(Some(TailEstimate { correction, bound }))
            }
        }
    }
}

/// `ratio·((n+1)/n)^growth`.
fn growth_ratio(ratio: &Ball, growth: u32, n: u64) -> Ball {
    let step = Ball::from_int(n + 1, CHECK_PREC).div_int(n as i64);
    (0..growth).fold(ratio.clone(), |acc, _| &acc * &step)
}

/// `n^{−p}` with `p = p_twice/2`.
fn inv_pow_half(n: &Ball, p_twice: u32) -> Option<Ball> {
    let root = n.sqrt().ok()?;
    root.pow_int(-i64::from(p_twice)).ok()
}

fn pseries_term_bound(c: &Ball, p_twice: u32, log_power: u32, n: u64) -> Option<Mag> {
    let nb = Ball::from_int(n, CHECK_PREC);
    let ln_n = nb.ln().ok()?;
    let logs = (0..log_power).fold(Ball::one(CHECK_PREC), |acc, _| &acc * &ln_n);
    Some((&(c * &logs) * &inv_pow_half(&nb, p_twice)?).mag_upper())
}

/// `∫_n^∞ c·(ln x)^λ·x^{−p} dx` for `λ ∈ {0, 1}`, valid once the integrand
/// decreases on `[n, ∞)` and the hypothesis covers every index above `n`.
fn pseries_integral(c: &Ball, p_twice: u32, log_power: u32, from: u64, n: u64) -> Option<Mag> {
    if n + 1 < from || n < 2 || log_power > 1 {
        return None;
    }
    let p = Ball::from_ratio(i64::from(p_twice), 2, CHECK_PREC);
    let p1 = &p - &Ball::one(CHECK_PREC);
    let nb = Ball::from_int(n, CHECK_PREC);
    let ln_n = nb.ln().ok()?;
    let lam = Ball::from_int(log_power, CHECK_PREC);
    // decreasing iff p·ln x ≥ λ
    if log_power > 0 && !(&(&p * &ln_n) - &lam).is_nonnegative() {
        return None;
    }
    // n^{1−p}·((ln n)^λ/(p−1) + λ/(p−1)²)
    let lead = if log_power == 0 { Ball::one(CHECK_PREC) } else { ln_n };
    let body = &lead.div(&p1).ok()? + &lam.div(&p1.square()).ok()?;
    let scale = &nb * &inv_pow_half(&nb, p_twice)?;
    Some((&(c * &scale) * &body).mag_upper())
}
