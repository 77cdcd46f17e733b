//! Rational functions of the summation index `n` with linear denominators.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::ball::Ball;
use crate::error::{Error, Result};

/// Polynomial in `n` with rational coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly(Vec<BigRational>);

fn q(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

impl Poly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly(coeffs)
    }

    pub fn zero() -> Self {
        Poly(Vec::new())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    /// Integer coefficients, lowest degree first.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| q(c)).collect())
    }

    /// `c·n^k`.
    pub fn monomial(c: BigRational, k: usize) -> Self {
        let mut v = vec![BigRational::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn leading(&self) -> BigRational {
        self.0.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.0.len().max(other.0.len());
        let zero = BigRational::zero();
        let v = (0..n)
            .map(|i| self.0.get(i).unwrap_or(&zero) + other.0.get(i).unwrap_or(&zero))
            .collect();
        Poly::new(v)
    }

    pub fn neg(&self) -> Poly {
        Poly(self.0.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &BigRational) -> Poly {
        Poly::new(self.0.iter().map(|c| c * k).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![BigRational::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Poly::new(v)
    }

    pub fn pow(&self, e: u32) -> Poly {
        (0..e).fold(Poly::constant(BigRational::one()), |acc, _| acc.mul(self))
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.0.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    /// `p(n + k)`.
    pub fn shift(&self, k: i64) -> Poly {
        let lin = Poly::from_ints(&[k, 1]);
        self.0
            .iter()
            .rev()
            .fold(Poly::zero(), |acc, c| acc.mul(&lin).add(&Poly::constant(c.clone())))
    }

    /// Quotient by `n − root`, assuming `root` is a root.
    fn div_root(&self, root: &BigRational) -> Poly {
        // synthetic division from the top coefficient down
        let mut out = vec![BigRational::zero(); self.0.len().saturating_sub(1)];
        let mut carry = BigRational::zero();
        for i in (1..self.0.len()).rev() {
            carry = &self.0[i] + &carry * root;
            out[i - 1] = carry.clone();
        }
        Poly::new(out)
    }
}

/// Linear factor `a·n + b` with `a > 0` and `gcd(a, b) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinFactor {
    pub a: i64,
    pub b: i64,
}

impl LinFactor {
    /// Splits `a·n + b` into a rational constant and a normalized factor.
    pub fn normalize(a: i64, b: i64) -> (BigRational, LinFactor) {
        assert!(a != 0, "linear factor needs a nonzero slope");
        let g = a.gcd(&b);
        let s = if a < 0 { -g } else { g };
        (q(s), LinFactor { a: a / s, b: b / s })
    }

    fn root(&self) -> BigRational {
        BigRational::new((-self.b).into(), self.a.into())
    }

    fn poly(&self) -> Poly {
        Poly::from_ints(&[self.b, self.a])
    }

    pub fn eval(&self, n: i64) -> i64 {
        self.a * n + self.b
    }
}

/// `num(n) / Π (a·n + b)^e`, kept reduced.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct RatFn {
    num: Poly,
    den: BTreeMap<LinFactor, u32>,
}

impl RatFn {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::poly(Poly::constant(c))
    }

    pub fn int(c: i64) -> Self {
        Self::constant(q(c))
    }

    pub fn poly(p: Poly) -> Self {
        RatFn {
            num: p,
            den: BTreeMap::new(),
        }
    }

    /// `num / Π (a·n + b)^e` from `(a, b, e)` triples.
    pub fn new(num: Poly, factors: &[(i64, i64, u32)]) -> Self {
        let mut c = BigRational::one();
        let mut den = BTreeMap::new();
        for &(a, b, e) in factors {
            let (k, f) = LinFactor::normalize(a, b);
            for _ in 0..e {
                c *= &k;
            }
            *den.entry(f).or_insert(0) += e;
        }
        RatFn {
            num: num.scale(&c.recip()),
            den,
        }
        .reduced()
    }

    /// `1 / Π (a·n + b)^e`.
    pub fn recip_of(factors: &[(i64, i64, u32)]) -> Self {
        Self::new(Poly::constant(BigRational::one()), factors)
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn factors(&self) -> impl Iterator<Item = (&LinFactor, &u32)> {
        self.den.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn den_degree(&self) -> i64 {
        self.den.values().map(|&e| i64::from(e)).sum()
    }

    /// `deg(den) − deg(num)`: the function behaves like `c·n^{−decay}`.
    pub fn decay(&self) -> Option<i64> {
        self.num.degree().map(|d| self.den_degree() - d as i64)
    }

    /// Coefficient `c` of the leading behaviour `c·n^{−decay}`.
    pub fn leading_coeff(&self) -> BigRational {
        let mut c = self.num.leading();
        for (f, &e) in &self.den {
            for _ in 0..e {
                c /= q(f.a);
            }
        }
        c
    }

    fn reduced(mut self) -> Self {
        if self.num.is_zero() {
            self.den.clear();
            return self;
        }
        for (f, e) in self.den.iter_mut() {
            let root = f.root();
            while *e > 0 && self.num.eval(&root).is_zero() {
                self.num = self
                    .num
                    .div_root(&root)
                    .scale(&BigRational::from_integer(f.a.into()).recip());
                *e -= 1;
            }
        }
        self.den.retain(|_, e| *e > 0);
        self
    }

    pub fn add(&self, other: &RatFn) -> RatFn {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let mut lcm = self.den.clone();
        for (f, &e) in &other.den {
            let slot = lcm.entry(*f).or_insert(0);
            *slot = (*slot).max(e);
        }
        let lift = |r: &RatFn| -> Poly {
            lcm.iter().fold(r.num.clone(), |acc, (f, &e)| {
                let have = r.den.get(f).copied().unwrap_or(0);
                acc.mul(&f.poly().pow(e - have))
            })
        };
        RatFn {
            num: lift(self).add(&lift(other)),
            den: lcm.clone(),
        }
        .reduced()
    }

    pub fn neg(&self) -> RatFn {
        RatFn {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &RatFn) -> RatFn {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &BigRational) -> RatFn {
        RatFn {
            num: self.num.scale(k),
            den: self.den.clone(),
        }
        .reduced()
    }

    pub fn mul(&self, other: &RatFn) -> RatFn {
        let mut den = self.den.clone();
        for (f, &e) in &other.den {
            *den.entry(*f).or_insert(0) += e;
        }
        RatFn {
            num: self.num.mul(&other.num),
            den,
        }
        .reduced()
    }

    /// `r(n + k)`.
    pub fn shift(&self, k: i64) -> RatFn {
        let mut c = BigRational::one();
        let mut den = BTreeMap::new();
        for (f, &e) in &self.den {
            let (s, g) = LinFactor::normalize(f.a, f.b + f.a * k);
            for _ in 0..e {
                c *= &s;
            }
            *den.entry(g).or_insert(0) += e;
        }
        RatFn {
            num: self.num.shift(k).scale(&c.recip()),
            den,
        }
        .reduced()
    }

    /// Exact value at `n`; `None` at a pole.
    pub fn eval_int(&self, n: i64) -> Option<BigRational> {
        let x = q(n);
        let mut d = BigRational::one();
        for (f, &e) in &self.den {
            let v = f.eval(n);
            if v == 0 {
                return None;
            }
            for _ in 0..e {
                d *= q(v);
            }
        }
        Some(self.num.eval(&x) / d)
    }

    /// Integer form for fast repeated evaluation.
    pub fn compile(&self) -> CompiledRatFn {
        let common = self
            .num
            .coeffs()
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = self
            .num
            .coeffs()
            .iter()
            .map(|c| (c * BigRational::from_integer(common.clone())).to_integer())
            .collect();
        CompiledRatFn {
            num,
            common,
            factors: self.den.iter().map(|(f, &e)| (f.a, f.b, e)).collect(),
        }
    }

    /// Upper bound `A` with `|r(n)| ≤ A·n^{−decay}` for every `n ≥ m`, or
    /// `None` if some denominator factor may vanish or change sign there.
    pub fn decay_bound(&self, m: u64) -> Option<BigRational> {
        let deg = self.num.degree()?;
        let m_q = BigRational::from_integer(m.into());
        let mut a = BigRational::zero();
        for (i, c) in self.num.coeffs().iter().enumerate() {
            // n^i ≤ n^deg·m^{i−deg} for n ≥ m
            let mut t = c.abs();
            for _ in i..deg {
                t /= &m_q;
            }
            a += t;
        }
        for (f, &e) in &self.den {
            // |a·n + b| ≥ a·n·(1 − max(0, −b)/(a·m))
            let slack = if f.b < 0 {
                BigRational::one() - BigRational::new((-f.b).into(), (f.a * m as i64).into())
            } else {
                BigRational::one()
            };
            if !slack.is_positive() {
                return None;
            }
            let lower = slack * q(f.a);
            for _ in 0..e {
                a /= &lower;
            }
        }
        Some(a)
    }
}

/// Integer-coefficient evaluator: `Σ num_i·n^i / (common·Π(a·n + b)^e)`.
#[derive(Clone, Debug)]
pub struct CompiledRatFn {
    num: Vec<BigInt>,
    common: BigInt,
    factors: Vec<(i64, i64, u32)>,
}

impl CompiledRatFn {
    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    /// Exact numerator and denominator at `n`.
    pub fn eval_parts(&self, n: u64) -> (BigInt, BigInt) {
        let x = BigInt::from(n);
        let p = self.num.iter().rev().fold(BigInt::zero(), |acc, c| acc * &x + c);
        let mut d = self.common.clone();
        for &(a, b, e) in &self.factors {
            let v = BigInt::from(a) * &x + b;
            for _ in 0..e {
                d *= &v;
            }
        }
        (p, d)
    }

    pub fn eval_ball(&self, n: u64, prec: u32) -> Result<Ball> {
        let (p, d) = self.eval_parts(n);
        if d.is_zero() {
            return Err(Error::DivisionByZero(format!(
                "rational term factor has a pole at n = {n}"
            )));
        }
        Ball::from_int(p, prec).div(&Ball::from_int(d, prec))
    }
}

fn fmt_rational(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    f.write_str("−")?;
                }
            } else {
                f.write_str(if neg { " − " } else { " + " })?;
            }
            first = false;
            let coeff = if a.is_one() && i > 0 {
                String::new()
            } else {
                fmt_rational(&a)
            };
            match i {
                0 => write!(f, "{coeff}")?,
                1 => write!(f, "{coeff}n")?,
                _ => write!(f, "{coeff}n^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Display for LinFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lead = if self.a == 1 {
            "n".to_string()
        } else {
            format!("{}n", self.a)
        };
        match self.b.cmp(&0) {
            std::cmp::Ordering::Equal => f.write_str(&lead),
            std::cmp::Ordering::Greater => write!(f, "({lead} + {})", self.b),
            std::cmp::Ordering::Less => write!(f, "({lead} − {})", -self.b),
        }
    }
}

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            return write!(f, "{}", self.num);
        }
        let num = if self.num.0.iter().filter(|c| !c.is_zero()).count() > 1 {
            format!("({})", self.num)
        } else {
            self.num.to_string()
        };
        let den: Vec<String> = self
            .den
            .iter()
            .map(|(lf, &e)| if e == 1 { lf.to_string() } else { format!("{lf}^{e}") })
            .collect();
        write!(f, "{num}/({})", den.join("·"))
    }
}
