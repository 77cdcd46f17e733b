//! Closed-form generating functions and their series expansions.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::ball::{Ball, ConstantName, Mag};
use crate::error::{Error, Result};
use crate::exact::{catalan_number, central_binomial, fib, harmonic, lucas, ratio, SurdQ5};
use crate::expr::{self, ClosedForm};
use crate::series::{sum_to_precision, Coefficient, Component, Poly, RatFn, TailStrategy, TermSpec, TermStream};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GfName {
    /// `Σ binom(2n,n)·H_n·x^n`.
    M,
    /// `Σ binom(2n,n)·(H_{2n} − H_n)·x^n`.
    Hd,
    /// `Σ binom(2n,n)·H_{2n}·x^n`.
    H2n,
    /// `Σ C_n·(H_{2n} − H_n)·x^n`.
    CatHd,
    /// `Σ C_n·H_{2n}·x^n`.
    CatH2n,
    /// `Σ C_n·(H_{2n} − H_n/2)·x^n`.
    CatHalf,
    /// `Σ n·binom(2n,n)·x^{2n}/(4^n(2n−1)²(2n+1))`.
    Eq28,
    /// `Σ n·binom(2n,n)·x^{2n+3}/(4^n(2n−1)²(2n+1)(2n+3))`.
    Eq29,
    /// `Σ 2n²·binom(2n,n)·x^{2n−1}/(4^n(2n−1)²(2n+1))`.
    Eq30,
    /// `Σ_{m≥0} binom(2m+k, m)·x^m`.
    Shifted(u32),
}

impl GfName {
    pub const FIXED: [GfName; 9] = [
        GfName::M,
        GfName::Hd,
        GfName::H2n,
        GfName::CatHd,
        GfName::CatH2n,
        GfName::CatHalf,
        GfName::Eq28,
        GfName::Eq29,
        GfName::Eq30,
    ];

    /// Human-readable open domain of validity.
    pub fn domain(self) -> &'static str {
        match self {
            GfName::M => "-1/4 <= x < 1/4",
            GfName::Eq28 | GfName::Eq29 => "|x| <= 1",
            GfName::Eq30 => "0 < |x| <= 1",
            _ => "|x| < 1/4",
        }
    }

    /// Names whose closed form has a removable singularity at `x = 0`.
    fn has_removable_zero(self) -> bool {
        matches!(
            self,
            GfName::CatHd | GfName::CatH2n | GfName::CatHalf | GfName::Eq28 | GfName::Shifted(_)
        )
    }
}

impl fmt::Display for GfName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GfName::M => f.write_str("GF_M"),
            GfName::Hd => f.write_str("GF_HD"),
            GfName::H2n => f.write_str("GF_H2N"),
            GfName::CatHd => f.write_str("GF_CAT_HD"),
            GfName::CatH2n => f.write_str("GF_CAT_H2N"),
            GfName::CatHalf => f.write_str("GF_CAT_HALF"),
            GfName::Eq28 => f.write_str("GF_EQ28"),
            GfName::Eq29 => f.write_str("GF_EQ29"),
            GfName::Eq30 => f.write_str("GF_EQ30"),
            GfName::Shifted(k) => write!(f, "GF_SHIFTED({k})"),
        }
    }
}

impl FromStr for GfName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let up = s.trim().to_ascii_uppercase();
        if let Some(k) = up.strip_prefix("GF_SHIFTED(").and_then(|r| r.strip_suffix(')')) {
            let k: u32 = k.parse().map_err(|_| Error::usage(format!("bad shift in `{s}`")))?;
            return Ok(GfName::Shifted(k));
        }
        GfName::FIXED
            .into_iter()
            .find(|g| g.to_string() == up)
            .ok_or_else(|| Error::usage(format!("unknown generating function `{s}`")))
    }
}

/// Arithmetic shared by ball evaluation and expression building.
trait Arith: Clone {
    fn int(&self, v: i64) -> Self;
    fn ln2(&self) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Result<Self>;
    fn sqrt(&self) -> Result<Self>;
    fn ln(&self) -> Result<Self>;
    fn asin(&self) -> Result<Self>;
    fn powi(&self, k: u32) -> Self;
}

impl Arith for Ball {
    fn int(&self, v: i64) -> Self {
        Ball::from_int(v, self.prec())
    }
    fn ln2(&self) -> Self {
        crate::ball::constant(ConstantName::Ln2, self.prec())
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Result<Self> {
        Ball::div(self, o)
    }
    fn sqrt(&self) -> Result<Self> {
        Ball::sqrt(self)
    }
    fn ln(&self) -> Result<Self> {
        Ball::ln(self)
    }
    fn asin(&self) -> Result<Self> {
        Ball::asin(self)
    }
    fn powi(&self, k: u32) -> Self {
        (0..k).fold(self.int(1), |acc, _| &acc * self)
    }
}

impl Arith for ClosedForm {
    fn int(&self, v: i64) -> Self {
        expr::int(v)
    }
    fn ln2(&self) -> Self {
        expr::ln2()
    }
    fn add(&self, o: &Self) -> Self {
        self.clone() + o.clone()
    }
    fn sub(&self, o: &Self) -> Self {
        self.clone() - o.clone()
    }
    fn mul(&self, o: &Self) -> Self {
        self.clone() * o.clone()
    }
    fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.clone() / o.clone())
    }
    fn sqrt(&self) -> Result<Self> {
        Ok(expr::sqrt(self.clone()))
    }
    fn ln(&self) -> Result<Self> {
        Ok(expr::ln(self.clone()))
    }
    fn asin(&self) -> Result<Self> {
        Ok(expr::asin(self.clone()))
    }
    fn powi(&self, k: u32) -> Self {
        expr::powi(self.clone(), i64::from(k))
    }
}

/// The displayed closed form of `name` at `x`.
fn formula<T: Arith>(name: GfName, x: &T) -> Result<T> {
    let one = x.int(1);
    let two = x.int(2);
    // s = √(1 − 4x)
    let s = || one.sub(&x.int(4).mul(x)).sqrt();
    let two_x = two.mul(x);
    Ok(match name {
        GfName::M => {
            let s = s()?;
            two.div(&s)?.mul(&one.add(&s).div(&two.mul(&s))?.ln()?)
        }
        GfName::Hd => {
            let s = s()?;
            x.int(-1).div(&s)?.mul(&one.add(&s).div(&two)?.ln()?)
        }
        GfName::H2n => {
            let s = s()?;
            let inner = one.add(&s).div(&two)?.ln()?.sub(&two.mul(&s.ln()?));
            one.div(&s)?.mul(&inner)
        }
        GfName::CatHd => {
            let s = s()?;
            let body = one.sub(&s).add(&one.add(&s).mul(&one.add(&s).div(&two)?.ln()?));
            one.div(&two_x)?.mul(&body)
        }
        GfName::CatH2n => {
            let s = s()?;
            let body = one
                .sub(&s)
                .sub(&one.add(&s).mul(&one.add(&s).ln()?))
                .add(&x.ln2())
                .add(&s.mul(&two.sub(&x.int(8).mul(x)).ln()?));
            one.div(&two_x)?.mul(&body)
        }
        GfName::CatHalf => {
            let s = s()?;
            let body = one.sub(&s).add(&s.mul(&s.ln()?));
            one.div(&two_x)?.mul(&body)
        }
        GfName::Eq28 => {
            let a = x.asin()?;
            let r = one.sub(&x.mul(x)).sqrt()?;
            let body = r.add(&two.mul(x).mul(&a)).sub(&a.div(x)?);
            body.div(&x.int(8))?
        }
        GfName::Eq29 => {
            let a = x.asin()?;
            let r = one.sub(&x.mul(x)).sqrt()?;
            let x2 = x.mul(x);
            let poly = x.int(8).mul(&x2.mul(&x2)).sub(&x.int(8).mul(&x2)).add(&x.int(3));
            let odd = x.int(6).mul(&x2.mul(x)).sub(&x.int(3).mul(x));
            poly.mul(&a).add(&r.mul(&odd)).div(&x.int(128))?
        }
        GfName::Eq30 => {
            let a = x.asin()?;
            let r = one.sub(&x.mul(x)).sqrt()?;
            let x2 = x.mul(x);
            let body = two.mul(&x2).add(&one).mul(&a).sub(&x.mul(&r));
            body.div(&x.int(8).mul(&x2))?
        }
        GfName::Shifted(k) => {
            let s = s()?;
            one.div(&s)?.mul(&one.sub(&s).div(&two_x)?.powi(k))
        }
    })
}

fn domain_err(name: GfName, detail: impl Into<String>) -> Error {
    Error::domain(name.to_string(), detail)
}

/// Checks that every point of `x` lies inside the domain of `name`.
fn check_domain(name: GfName, x: &Ball) -> Result<()> {
    let quarter = Ball::from_ratio(1, 4, 64);
    let one = Ball::one(64);
    let lo = x.lower().to_rational();
    let hi = x.upper().to_rational();
    let q = ratio(1, 4);
    let inside = match name {
        GfName::M => lo >= -q.clone() && hi < q,
        GfName::Eq28 | GfName::Eq29 => x.abs().upper() <= one.upper(),
        GfName::Eq30 => x.abs().upper() <= one.upper() && !x.contains_zero(),
        _ => x.abs().upper() < quarter.lower(),
    };
    if inside {
        Ok(())
    } else {
        Err(domain_err(
            name,
            format!("x = {} is not inside {}", x.to_decimal(), name.domain()),
        ))
    }
}

/// Coefficient `c_n` and exponent of `x` for the small-|x| expansion.
fn taylor_coefficient(name: GfName, n: u64) -> (BigRational, u64) {
    let cat = || BigRational::from_integer(catalan_number(n));
    let hd = || harmonic(2 * n) - harmonic(n);
    match name {
        GfName::CatHd => (cat() * hd(), n),
        GfName::CatH2n => (cat() * harmonic(2 * n), n),
        GfName::CatHalf => (
            cat() * (harmonic(2 * n) - harmonic(n) / BigRational::from_integer(2.into())),
            n,
        ),
        GfName::Shifted(k) => {
            let k = u64::from(k);
            let c = central_binomial_general(2 * n + k, n);
            (BigRational::from_integer(c), n)
        }
        GfName::Eq28 => {
            let b = BigRational::new(central_binomial(n), BigInt::one() << (2 * n));
            let m = BigInt::from(n);
            let d = (&m * 2 - 1) * (&m * 2 - 1) * (&m * 2 + 1);
            (b * BigRational::new(m, d), 2 * n)
        }
        _ => unreachable!("no small-x expansion for {name}"),
    }
}

fn central_binomial_general(n: u64, k: u64) -> BigInt {
    let mut c = BigInt::one();
    for i in 0..k {
        c = c * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    c
}

/// First three expansion terms plus a rigorous remainder, for tiny `|x|`.
///
/// Uses `|c_n| ≤ K·n·Q^n·r^{a n}` (with `K = 2^k`, `Q = 4` for the Catalan
/// and shifted families, `K = Q = 1` for the `x^{2n}` one) and
/// `Σ_{n≥N} n·q^n ≤ (N + 1)·q^N/(1 − q)²` for `q ≤ 1/2`.
fn small_x(name: GfName, x: &Ball, prec: u32) -> Ball {
    let first = if matches!(name, GfName::Shifted(_)) { 0 } else { 1 };
    let count = 3u64;
    let mut sum = Ball::zero(prec);
    for n in first..first + count {
        let (c, e) = taylor_coefficient(name, n);
        let xe = (0..e).fold(Ball::one(prec), |acc, _| &acc * x);
        sum = &sum + &xe.mul_rational(&c);
    }
    let r = x.mag_upper();
    let (k, big_q, a) = match name {
        GfName::Shifted(k) => (Mag::pow2(i64::from(k)), Mag::from_u64(4), 1),
        GfName::Eq28 => (Mag::from_u64(1), Mag::from_u64(1), 2),
        _ => (Mag::from_u64(1), Mag::from_u64(4), 1),
    };
    let mut q = big_q;
    for _ in 0..a {
        q = q.mul_up(&r);
    }
    let n0 = first + count;
    let mut tail = k.mul_up(&Mag::from_u64(n0 + 1));
    for _ in 0..n0 {
        tail = tail.mul_up(&q);
    }
    let gap = Mag::from_u64(1).sub_lower(&q);
    let tail = tail.div_up(&gap.mul_lower(&gap));
    sum.add_error(tail)
}

/// Enclosure of the closed form of `name` at `x`.
///
/// Near the removable singularity at `x = 0` an expansion with a proven
/// remainder replaces the cancelling closed form.
pub fn gf_eval(name: GfName, x: &Ball, prec: u32) -> Result<Ball> {
    check_domain(name, x)?;
    let x = x.with_prec(prec);
    if name.has_removable_zero() {
        let threshold = Mag::pow2(-i64::from(prec / 4).max(4));
        if x.mag_upper() < threshold {
            return Ok(small_x(name, &x, prec));
        }
    }
    formula(name, &x)
}

/// [`gf_eval`] at an exact point.
pub fn gf_eval_exact(name: GfName, x: &SurdQ5, prec: u32) -> Result<Ball> {
    gf_eval(name, &Ball::from_surd(x, prec + 16), prec)
}

/// The closed form of `name` at an exact point, as an expression tree.
pub fn closed_form(name: GfName, x: &SurdQ5) -> Result<ClosedForm> {
    check_domain(name, &Ball::from_surd(x, 128))?;
    if name.has_removable_zero() && x.is_zero() {
        return Ok(expr::int(if matches!(name, GfName::Shifted(_)) { 1 } else { 0 }));
    }
    formula(name, &expr::surd(x.clone()))
}

/// Lucas or Fibonacci substitution family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SubstitutionFamily {
    Fib,
    Lucas,
}

/// `x = 1/(4(α^{2r} ± 1))` in exact form: `1/(4√5·α^r·F_r)` for `Fib` and
/// `1/(4·α^r·L_r)` for `Lucas`.
pub fn substitution_point(family: SubstitutionFamily, r: i64) -> Result<SurdQ5> {
    if r < 1 {
        return Err(Error::usage(format!("substitution point needs r >= 1, got {r}")));
    }
    let ar = crate::exact::alpha_power(r);
    let denom = match family {
        SubstitutionFamily::Fib => (&ar * &SurdQ5::sqrt5()).scale(&BigRational::from_integer(fib(r) * 4)),
        SubstitutionFamily::Lucas => ar.scale(&BigRational::from_integer(lucas(r) * 4)),
    };
    denom.inv()
}

/// Series side of a generating function with its tail hypothesis.
#[derive(Clone, Debug)]
pub struct GfSeries {
    pub spec: TermSpec,
    pub tail: TailStrategy,
}

/// Term description whose sum is `name` at `x`.
pub fn gf_series(name: GfName, x: &SurdQ5) -> Result<GfSeries> {
    check_domain(name, &Ball::from_surd(x, 128))?;
    let four_x = x.scale(&BigRational::from_integer(4.into()));
    let x2 = x * x;
    let one = || RatFn::one();
    let cat = || RatFn::recip_of(&[(1, 1, 1)]);
    // n/((2n−1)²(2n+1))
    let eq28_core = || RatFn::new(Poly::from_ints(&[0, 1]), &[(2, -1, 2), (2, 1, 1)]);
    let (comp, start, growth) = match name {
        GfName::M => (Component::new(four_x.clone(), 1).h(one()), 1, 1),
        GfName::Hd => (Component::new(four_x.clone(), 1).h2(one()).h(one().neg()), 1, 1),
        GfName::H2n => (Component::new(four_x.clone(), 1).h2(one()), 1, 1),
        GfName::CatHd => (Component::new(four_x.clone(), 1).h2(cat()).h(cat().neg()), 1, 1),
        GfName::CatH2n => (Component::new(four_x.clone(), 1).h2(cat()), 1, 1),
        GfName::CatHalf => {
            let half = cat().scale(&ratio(-1, 2));
            (Component::new(four_x.clone(), 1).h2(cat()).h(half), 1, 1)
        }
        GfName::Eq28 => (Component::new(x2.clone(), 1).plain(eq28_core()), 1, 0),
        GfName::Eq29 => {
            let r = eq28_core().mul(&RatFn::recip_of(&[(2, 3, 1)]));
            let c = Coefficient::Exact(&x2 * x);
            (Component::new(x2.clone(), 1).plain(r).coefficient(c), 1, 0)
        }
        GfName::Eq30 => {
            let r = eq28_core().mul(&RatFn::poly(Poly::from_ints(&[0, 2])));
            let c = Coefficient::Exact(x.inv()?);
            (Component::new(x2.clone(), 1).plain(r).coefficient(c), 1, 0)
        }
        GfName::Shifted(k) => {
            // binom(2m+k, m)·4^{−m}/b_m = Π_{i=1..k} (2m+i)/(m+i)
            let num = (1..=i64::from(k)).fold(Poly::from_ints(&[1]), |p, i| p.mul(&Poly::from_ints(&[i, 2])));
            let den: Vec<(i64, i64, u32)> = (1..=i64::from(k)).map(|i| (1, i, 1)).collect();
            (Component::new(four_x.clone(), 1).plain(RatFn::new(num, &den)), 0, k)
        }
    };
    let base = comp.base.clone();
    let spec = TermSpec::single(start, comp);
    let abs_base = base.abs();
    let tail = if abs_base < SurdQ5::one() {
        TailStrategy::geometric_for(&base, growth, 1)
    } else if matches!(name, GfName::Eq28 | GfName::Eq29 | GfName::Eq30) {
        TailStrategy::Telescoped { steps: 6 }
    } else {
        // GF_M at x = −1/4: b_n·H_n decreases from n = 3 on
        TailStrategy::Alternating { from: 3 }
    };
    Ok(GfSeries { spec, tail })
}

/// Stream of the series terms of `name` at `x`.
pub fn gf_series_stream(name: GfName, x: &SurdQ5, prec: u32) -> Result<TermStream> {
    TermStream::new(&gf_series(name, x)?.spec, prec)
}

/// Sums the series side of `name` at `x` to `digits` digits.
pub fn gf_series_sum(name: GfName, x: &SurdQ5, digits: u32, max_terms: u64, prec: u32) -> Result<Ball> {
    let s = gf_series(name, x)?;
    Ok(sum_to_precision(&s.spec, &s.tail, digits, max_terms, prec)?
        .into_result()
        .value)
}
