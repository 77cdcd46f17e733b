//! Golden-ratio families obtained by substituting Fibonacci and Lucas points
//! into the `binom(2n,n)·H_n` and `binom(2n,n)·(H_{2n} − H_n)` generating
//! functions.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use super::{FamilyRef, IdentityEntry, Oracle, PaperEq, Status};
use crate::ball::ConstantName;
use crate::error::{Error, Result};
use crate::exact::{alpha_power, central_binomial, fib, harmonic, lucas, SurdQ5};
use crate::expr::{cst, int, ln, powi, sqrt, surd, ClosedForm};
use crate::genfunc::{substitution_point, SubstitutionFamily};
use crate::series::{Component, RatFn, TailStrategy, TermSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Family {
    /// `Σ binom(2n,n)·H_n/((4√5)^n·α^{rn}·F_r^n)`.
    Fib,
    /// `Σ binom(2n,n)·H_n/(4^n·α^{rn}·L_r^n)`.
    Lucas,
    /// `Σ binom(2n,n)·(H_{2n} − H_n)/(4^n·α^{rn}·L_r^n)`.
    HdLucas,
    /// `Σ binom(2n,n)·(H_{2n} − H_n)/((4√5)^n·α^{rn}·F_r^n)`.
    HdFib,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::Fib, Family::Lucas, Family::HdLucas, Family::HdFib];

    pub fn name(self) -> &'static str {
        match self {
            Family::Fib => "FIB",
            Family::Lucas => "LUCAS",
            Family::HdLucas => "HD_LUCAS",
            Family::HdFib => "HD_FIB",
        }
    }

    /// Equation number of the general display.
    pub fn general_eq(self) -> u32 {
        match self {
            Family::Fib => 5,
            Family::Lucas => 10,
            Family::HdLucas => 15,
            Family::HdFib => 16,
        }
    }

    fn substitution(self) -> SubstitutionFamily {
        match self {
            Family::Fib | Family::HdFib => SubstitutionFamily::Fib,
            Family::Lucas | Family::HdLucas => SubstitutionFamily::Lucas,
        }
    }

    fn is_hd(self) -> bool {
        matches!(self, Family::HdLucas | Family::HdFib)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::usage(format!("unknown family `{s}`")))
    }
}

/// `A = 1/(4x)`: `α^r·F_r·√5` or `α^r·L_r`.
fn big_a(family: Family, r: i64) -> SurdQ5 {
    let ar = alpha_power(r);
    match family.substitution() {
        SubstitutionFamily::Fib => (&ar * &SurdQ5::sqrt5()).scale(&BigRational::from_integer(fib(r))),
        SubstitutionFamily::Lucas => ar.scale(&BigRational::from_integer(lucas(r))),
    }
}

fn big(v: BigInt) -> ClosedForm {
    ClosedForm::Rational(BigRational::from_integer(v))
}

/// `top/q·ln(num/den)`, negated for the `H_{2n} − H_n` families.
fn shape(neg: bool, top: ClosedForm, q: ClosedForm, num: ClosedForm, den: ClosedForm) -> ClosedForm {
    let v = top / q * ln(num / den);
    if neg {
        -v
    } else {
        v
    }
}

/// General closed form in terms of `A`.
fn general_rhs(family: Family, a: &SurdQ5) -> ClosedForm {
    let p = sqrt(surd(a.clone()));
    let q = sqrt(surd(a.clone()) - int(1));
    if family.is_hd() {
        shape(true, p.clone(), q.clone(), p.clone() + q, int(2) * p)
    } else {
        shape(false, int(2) * p.clone(), q.clone(), p + q.clone(), int(2) * q)
    }
}

fn series_text(family: Family) -> &'static str {
    match family {
        Family::Fib | Family::Lucas => "Σ_{n≥1} binom(2n,n)·H_n·x^n",
        Family::HdLucas | Family::HdFib => "Σ_{n≥1} binom(2n,n)·(H_{2n} − H_n)·x^n",
    }
}

fn point_text(family: Family) -> &'static str {
    match family.substitution() {
        SubstitutionFamily::Fib => "x = 1/(4√5·α^r·F_r)",
        SubstitutionFamily::Lucas => "x = 1/(4·α^r·L_r)",
    }
}

/// Entry for a family member at a point `x = 1/(4A)`, any `r ≥ 0`.
pub(crate) fn member(family: Family, r: i64, x: SurdQ5) -> IdentityEntry {
    let four_x = x.scale(&BigRational::from_integer(4.into()));
    let comp = Component::new(four_x.clone(), 1);
    let comp = if family.is_hd() {
        comp.h2(RatFn::one()).h(RatFn::one().neg())
    } else {
        comp.h(RatFn::one())
    };
    let hd = family.is_hd();
    let xo = x.clone();
    let oracle = Oracle::exact(move |n| {
        let h = if hd { harmonic(2 * n) - harmonic(n) } else { harmonic(n) };
        let c = BigRational::from_integer(central_binomial(n)) * h;
        xo.pow(n as i64).expect("nonzero point").scale(&c)
    });
    IdentityEntry {
        id: format!("{}_R{r}", family.name()),
        paper_eq: PaperEq::Eq(family.general_eq()),
        lhs: TermSpec::single(1, comp),
        lhs_text: format!("{} at {}, r = {r}", series_text(family), point_text(family)),
        rhs: general_rhs(family, &big_a(family, r)),
        tail: TailStrategy::geometric_for(&four_x, 1, 1),
        status: Status::AsPrintedOk,
        family: Some(FamilyRef { family, r }),
        domain: format!("{}, r = {r}: 0 < x < 1/4", point_text(family)),
        notes: String::new(),
        pair: None,
        oracle,
    }
}

/// Member `r ≥ 1` of a family with the general closed form.
pub fn instantiate_family(family: Family, r: i64) -> Result<IdentityEntry> {
    if r < 1 {
        return Err(Error::usage(format!("family {family} needs r >= 1, got {r}")));
    }
    Ok(member(family, r, substitution_point(family.substitution(), r)?))
}

/// The `2r` member written in the even-parameter display (`FIB` and `LUCAS` only).
pub fn family_alias(family: Family, r: i64) -> Result<IdentityEntry> {
    let two_r = r.checked_mul(2).ok_or_else(|| Error::usage("r too large"))?;
    let mut e = instantiate_family(family, two_r)?;
    let alpha = cst(ConstantName::Alpha);
    let s5 = cst(ConstantName::Sqrt5);
    let (eq, inner) = match family {
        Family::Fib => (9, big(fib(two_r)) * s5),
        Family::Lucas => (14, big(lucas(two_r))),
        _ => return Err(Error::usage(format!("family {family} has no even-parameter display"))),
    };
    let ar = powi(alpha.clone(), r);
    let q = sqrt(powi(alpha, two_r) * inner.clone() - int(1));
    let lead = ar * sqrt(inner);
    e.rhs = shape(false, int(2) * lead.clone(), q.clone(), lead + q.clone(), int(2) * q);
    e.id = format!("{}_ALIAS_R{r}", family.name());
    e.paper_eq = PaperEq::Eq(eq);
    e.family = None;
    e.lhs_text = format!("{} at {}, r = 2·{r}", series_text(family), point_text(family));
    e.notes = format!("even-parameter form of the {family} family at r = {r}");
    Ok(e)
}

/// Family member displayed by equation `eq`, when it is one.
pub(crate) fn transcribed_member(eq: u32) -> Option<(Family, i64)> {
    match eq {
        6..=8 => Some((Family::Fib, i64::from(eq) - 5)),
        11..=13 => Some((Family::Lucas, i64::from(eq) - 10)),
        18..=20 => Some((Family::HdLucas, i64::from(eq) - 17)),
        21..=23 => Some((Family::HdFib, i64::from(eq) - 20)),
        _ => None,
    }
}

/// Closed form of equations (6)–(8), (11)–(13) and (18)–(23) as displayed.
pub fn hand_transcribed(eq: u32) -> Option<ClosedForm> {
    let a = || cst(ConstantName::Alpha);
    let s5 = || cst(ConstantName::Sqrt5);
    let r4_5 = || sqrt(s5());
    let a3 = || powi(a(), 3);
    let two = || int(2);
    Some(match eq {
        6 | 21 => {
            let p = sqrt(a() * s5());
            let q = sqrt(a() * s5() - int(1));
            if eq == 6 {
                shape(false, two() * p.clone(), q.clone(), p + q.clone(), two() * q)
            } else {
                shape(true, p.clone(), q.clone(), p.clone() + q, two() * p)
            }
        }
        7 | 22 => {
            let p = a() * r4_5();
            let q = sqrt(powi(a(), 2) * s5() - int(1));
            if eq == 7 {
                shape(false, two() * p.clone(), q.clone(), p + q.clone(), two() * q)
            } else {
                shape(true, p.clone(), q.clone(), p.clone() + q, two() * p)
            }
        }
        8 => {
            let q = sqrt(two() * a3() * s5() - int(1));
            let top = two() * sqrt(two()) * sqrt(a3() * s5());
            let num = sqrt(two() * a3() * s5()) + q.clone();
            shape(false, top, q.clone(), num, two() * q)
        }
        23 => {
            let p = sqrt(two()) * sqrt(a3() * s5());
            let q = sqrt(a3() * two() * s5() - int(1));
            shape(true, p.clone(), q.clone(), p.clone() + q, two() * p)
        }
        11 | 18 => {
            let p = sqrt(a());
            let q = sqrt(a() - int(1));
            if eq == 11 {
                shape(false, two() * p.clone(), q.clone(), p + q.clone(), two() * q)
            } else {
                shape(true, p.clone(), q.clone(), p.clone() + q, two() * p)
            }
        }
        12 | 19 => {
            let p = a() * sqrt(int(3));
            let q = sqrt(int(3) * powi(a(), 2) - int(1));
            if eq == 12 {
                shape(false, two() * p.clone(), q.clone(), p + q.clone(), two() * q)
            } else {
                shape(true, p.clone(), q.clone(), p.clone() + q, two() * p)
            }
        }
        13 => {
            let q = sqrt(int(4) * a3() - int(1));
            let num = two() * sqrt(a3()) + q.clone();
            shape(false, int(4) * sqrt(a3()), q.clone(), num, two() * q)
        }
        20 => {
            let q = sqrt(int(4) * a3() - int(1));
            let num = two() * sqrt(a3()) + q.clone();
            shape(true, two() * sqrt(a3()), q, num, int(4) * sqrt(a3()))
        }
        _ => return None,
    })
}
