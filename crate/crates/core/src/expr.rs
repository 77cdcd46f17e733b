//! Closed-form right-hand sides as small expression trees.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::Signed;
use serde::Serialize;

use crate::ball::{constant, Ball, ConstantName};
use crate::error::{Error, Result};
use crate::exact::SurdQ5;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClosedForm {
    Const(ConstantName),
    Rational(BigRational),
    Surd(SurdQ5),
    Add(Box<ClosedForm>, Box<ClosedForm>),
    Sub(Box<ClosedForm>, Box<ClosedForm>),
    Mul(Box<ClosedForm>, Box<ClosedForm>),
    Div(Box<ClosedForm>, Box<ClosedForm>),
    Neg(Box<ClosedForm>),
    Sqrt(Box<ClosedForm>),
    Ln(Box<ClosedForm>),
    Asin(Box<ClosedForm>),
    PowInt(Box<ClosedForm>, i64),
    /// `ψ = 2G + π − 2 − ln 2 − π·ln 2`.
    Psi,
    /// `ψ* = 2 + π − 2·ln 8`.
    PsiStar,
}

use ClosedForm as C;

pub fn cst(name: ConstantName) -> ClosedForm {
    C::Const(name)
}

pub fn pi() -> ClosedForm {
    C::Const(ConstantName::Pi)
}

pub fn ln2() -> ClosedForm {
    C::Const(ConstantName::Ln2)
}

pub fn catalan() -> ClosedForm {
    C::Const(ConstantName::CatalanG)
}

/// Exact rational `p/q`.
pub fn rat(p: i64, q: i64) -> ClosedForm {
    C::Rational(BigRational::new(p.into(), q.into()))
}

pub fn int(v: i64) -> ClosedForm {
    rat(v, 1)
}

pub fn surd(s: SurdQ5) -> ClosedForm {
    if s.is_rational() {
        C::Rational(s.rational_part().clone())
    } else {
        C::Surd(s)
    }
}

pub fn sqrt(x: ClosedForm) -> ClosedForm {
    C::Sqrt(Box::new(x))
}

pub fn ln(x: ClosedForm) -> ClosedForm {
    C::Ln(Box::new(x))
}

pub fn asin(x: ClosedForm) -> ClosedForm {
    C::Asin(Box::new(x))
}

pub fn powi(x: ClosedForm, k: i64) -> ClosedForm {
    C::PowInt(Box::new(x), k)
}

impl ClosedForm {
    /// Enclosure at working precision `prec`.
    ///
    /// Domain failures name the offending subexpression.
    pub fn eval(&self, prec: u32) -> Result<Ball> {
        let named = |e: Error| match e {
            Error::Domain { function, detail } => Error::Domain {
                function,
                detail: format!("{detail} in `{self}`"),
            },
            other => other,
        };
        Ok(match self {
            C::Const(name) => constant(*name, prec),
            C::Rational(q) => Ball::from_rational(q, prec),
            C::Surd(s) => Ball::from_surd(s, prec),
            C::Add(a, b) => &a.eval(prec)? + &b.eval(prec)?,
            C::Sub(a, b) => &a.eval(prec)? - &b.eval(prec)?,
            C::Mul(a, b) => &a.eval(prec)? * &b.eval(prec)?,
            C::Div(a, b) => a.eval(prec)?.div(&b.eval(prec)?).map_err(named)?,
            C::Neg(a) => a.eval(prec)?.neg(),
            C::Sqrt(a) => a.eval(prec)?.sqrt().map_err(named)?,
            C::Ln(a) => a.eval(prec)?.ln().map_err(named)?,
            C::Asin(a) => a.eval(prec)?.asin().map_err(named)?,
            C::PowInt(a, k) => a.eval(prec)?.pow_int(*k).map_err(named)?,
            C::Psi => {
                let g = constant(ConstantName::CatalanG, prec).mul_int(2);
                let pi = constant(ConstantName::Pi, prec);
                let l2 = constant(ConstantName::Ln2, prec);
                let pi_l2 = &pi * &l2;
                &(&(&(&g + &pi) - &Ball::from_int(2, prec)) - &l2) - &pi_l2
            }
            C::PsiStar => {
                let pi = constant(ConstantName::Pi, prec);
                let l2 = constant(ConstantName::Ln2, prec);
                &(&Ball::from_int(2, prec) + &pi) - &l2.mul_int(6)
            }
        })
    }

    fn is_atom(&self) -> bool {
        match self {
            C::Const(_) | C::Psi | C::PsiStar | C::Sqrt(_) | C::Ln(_) | C::Asin(_) => true,
            C::Rational(q) => q.is_integer() && !q.is_negative(),
            _ => false,
        }
    }

    fn is_product(&self) -> bool {
        self.is_atom() || matches!(self, C::Mul(..) | C::PowInt(..))
    }
}

struct Paren<'a>(&'a ClosedForm, bool);

impl fmt::Display for Paren<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.1 {
            write!(f, "{}", self.0)
        } else {
            write!(f, "({})", self.0)
        }
    }
}

impl fmt::Display for ClosedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            C::Const(name) => f.write_str(match name {
                ConstantName::Pi => "π",
                ConstantName::Ln2 => "ln 2",
                ConstantName::CatalanG => "G",
                ConstantName::Zeta3 => "ζ(3)",
                ConstantName::Sqrt5 => "√5",
                ConstantName::Alpha => "α",
                ConstantName::Zeta2 => "ζ(2)",
            }),
            C::Rational(q) if q.is_integer() => write!(f, "{}", q.numer()),
            C::Rational(q) => write!(f, "{}/{}", q.numer(), q.denom()),
            C::Surd(s) => write!(f, "({s})"),
            C::Add(a, b) => write!(f, "{a} + {b}"),
            C::Sub(a, b) => write!(f, "{a} − {}", Paren(b, b.is_product())),
            C::Mul(a, b) => write!(f, "{}·{}", Paren(a, a.is_product()), Paren(b, b.is_product())),
            C::Div(a, b) => write!(f, "{}/{}", Paren(a, a.is_product()), Paren(b, b.is_atom())),
            C::Neg(a) => write!(f, "−{}", Paren(a, a.is_product())),
            C::Sqrt(a) => write!(f, "√({a})"),
            C::Ln(a) => write!(f, "ln({a})"),
            C::Asin(a) => write!(f, "asin({a})"),
            C::PowInt(a, k) => write!(f, "{}^{k}", Paren(a, a.is_atom())),
            C::Psi => f.write_str("ψ"),
            C::PsiStar => f.write_str("ψ*"),
        }
    }
}

impl Serialize for ClosedForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $v:ident) => {
        impl $tr for ClosedForm {
            type Output = ClosedForm;
            fn $m(self, rhs: ClosedForm) -> ClosedForm {
                C::$v(Box::new(self), Box::new(rhs))
            }
        }
    };
}

binop!(Add, add, Add);
binop!(Sub, sub, Sub);
binop!(Mul, mul, Mul);
binop!(Div, div, Div);

impl Neg for ClosedForm {
    type Output = ClosedForm;
    fn neg(self) -> ClosedForm {
        C::Neg(Box::new(self))
    }
}

impl From<BigRational> for ClosedForm {
    fn from(q: BigRational) -> Self {
        C::Rational(q)
    }
}
