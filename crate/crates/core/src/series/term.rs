//! Term descriptions and the streams that evaluate them.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::ratfn::{CompiledRatFn, RatFn};
use crate::ball::Ball;
use crate::error::{Error, Result};
use crate::exact::{central_binomial, harmonic, SurdQ5};
use crate::expr::ClosedForm;

/// Largest index a stream will produce.
pub const MAX_INDEX: u64 = 1 << 40;

/// Constant factor of a component.
#[derive(Clone, Debug, PartialEq)]
pub enum Coefficient {
    Exact(SurdQ5),
    Expr(ClosedForm),
}

impl Coefficient {
    pub fn eval(&self, prec: u32) -> Result<Ball> {
        match self {
            Coefficient::Exact(s) => Ok(Ball::from_surd(s, prec)),
            Coefficient::Expr(e) => e.eval(prec),
        }
    }

    pub fn as_exact(&self) -> Option<&SurdQ5> {
        match self {
            Coefficient::Exact(s) => Some(s),
            Coefficient::Expr(_) => None,
        }
    }
}

/// One summand family
/// `c·(−1)^{a·n+b}·base^n·b_n^j·(r0(n) + r1(n)·H_n + r2(n)·H_{2n})`
/// with `b_n = binom(2n, n)/4^n`.
#[derive(Clone, Debug, PartialEq)]
pub struct Component {
    pub coefficient: Coefficient,
    pub base: SurdQ5,
    pub binom_power: u32,
    pub sign: Option<(i64, i64)>,
    pub r0: RatFn,
    pub r1: RatFn,
    pub r2: RatFn,
}

impl Component {
    /// `base^n·b_n^j` with unit coefficient and no rational parts yet.
    pub fn new(base: SurdQ5, binom_power: u32) -> Self {
        Component {
            coefficient: Coefficient::Exact(SurdQ5::one()),
            base,
            binom_power,
            sign: None,
            r0: RatFn::zero(),
            r1: RatFn::zero(),
            r2: RatFn::zero(),
        }
    }

    pub fn coefficient(mut self, c: Coefficient) -> Self {
        self.coefficient = c;
        self
    }

    pub fn sign(mut self, a: i64, b: i64) -> Self {
        self.sign = Some((a, b));
        self
    }

    /// Adds `f(n)` to the harmonic-free part.
    pub fn plain(mut self, f: RatFn) -> Self {
        self.r0 = self.r0.add(&f);
        self
    }

    /// Adds `f(n)·H_n`.
    pub fn h(mut self, f: RatFn) -> Self {
        self.r1 = self.r1.add(&f);
        self
    }

    /// Adds `f(n)·H_{2n}`.
    pub fn h2(mut self, f: RatFn) -> Self {
        self.r2 = self.r2.add(&f);
        self
    }

    /// Adds `f(n)·H_{2n−1}`, using `H_{2n−1} = H_{2n} − 1/(2n)`.
    pub fn h2_minus_one(self, f: RatFn) -> Self {
        let shift = f.mul(&RatFn::recip_of(&[(2, 0, 1)])).neg();
        self.h2(f).plain(shift)
    }

    pub fn rational_parts(&self) -> [&RatFn; 3] {
        [&self.r0, &self.r1, &self.r2]
    }

    fn sign_at(&self, n: u64) -> i64 {
        match self.sign {
            Some((a, b)) if (i128::from(a) * i128::from(n) + i128::from(b)).rem_euclid(2) == 1 => -1,
            _ => 1,
        }
    }
}

/// Summand `t_n = Σ components`, for `n ≥ start`.
#[derive(Clone, Debug, PartialEq)]
pub struct TermSpec {
    pub start: u64,
    pub components: Vec<Component>,
}

impl TermSpec {
    pub fn new(start: u64, components: Vec<Component>) -> Self {
        TermSpec { start, components }
    }

    pub fn single(start: u64, c: Component) -> Self {
        Self::new(start, vec![c])
    }

    /// True when every coefficient is an element of Q(√5).
    pub fn is_exact(&self) -> bool {
        self.components.iter().all(|c| c.coefficient.as_exact().is_some())
    }
}

/// One evaluated summand.
#[derive(Clone, Debug)]
pub struct Term {
    pub index: u64,
    pub value: Ball,
    pub exact: Option<SurdQ5>,
}

/// `b_n`, `H_n` and `H_{2n}` at the stream's next index.
#[derive(Clone, Debug)]
pub struct Aux {
    pub index: u64,
    pub b: Ball,
    pub h: Ball,
    pub h2: Ball,
}

struct CompState {
    coef: Ball,
    base: Ball,
    power: Ball,
    r: [Option<CompiledRatFn>; 3],
}

struct ExactComp {
    coef: SurdQ5,
    base: SurdQ5,
    power: SurdQ5,
}

struct ExactState {
    binom: BigInt,
    four: BigInt,
    h: BigRational,
    h2: BigRational,
    comps: Vec<ExactComp>,
}

/// Sequential evaluator of `t_start, t_{start+1}, …`.
///
/// Running quantities are updated by their one-step recurrences, so each
/// term costs a fixed number of ball operations.
pub struct TermStream {
    spec: TermSpec,
    prec: u32,
    aux: Aux,
    comps: Vec<CompState>,
    exact: Option<ExactState>,
}

fn pow_u64(s: &SurdQ5, n: u64) -> Result<SurdQ5> {
    let k = i64::try_from(n).map_err(|_| Error::Resource(format!("power index {n} too large")))?;
    s.pow(k)
}

impl TermStream {
    /// Ball-only stream at working precision `prec`.
    pub fn new(spec: &TermSpec, prec: u32) -> Result<Self> {
        Self::build(spec, prec, false)
    }

    /// Stream that also carries exact values; every coefficient must be exact.
    pub fn with_exact(spec: &TermSpec, prec: u32) -> Result<Self> {
        if !spec.is_exact() {
            return Err(Error::usage("exact evaluation needs Q(√5) coefficients"));
        }
        Self::build(spec, prec, true)
    }

    fn build(spec: &TermSpec, prec: u32, exact: bool) -> Result<Self> {
        let n = spec.start;
        if n > MAX_INDEX {
            return Err(Error::Resource(format!("start index {n} exceeds {MAX_INDEX}")));
        }
        let binom = central_binomial(n);
        let four = BigInt::one() << (2 * n);
        let b = Ball::from_rational(&BigRational::new(binom.clone(), four.clone()), prec);
        let hn = harmonic(n);
        let h2n = harmonic(2 * n);
        let aux = Aux {
            index: n,
            b,
            h: Ball::from_rational(&hn, prec),
            h2: Ball::from_rational(&h2n, prec),
        };
        let mut comps = Vec::with_capacity(spec.components.len());
        let mut exact_comps = Vec::new();
        for c in &spec.components {
            let power = pow_u64(&c.base, n)?;
            let compile = |f: &RatFn| (!f.is_zero()).then(|| f.compile());
            comps.push(CompState {
                coef: c.coefficient.eval(prec)?,
                base: Ball::from_surd(&c.base, prec),
                power: Ball::from_surd(&power, prec),
                r: [compile(&c.r0), compile(&c.r1), compile(&c.r2)],
            });
            if exact {
                exact_comps.push(ExactComp {
                    coef: c.coefficient.as_exact().cloned().unwrap_or_else(SurdQ5::one),
                    base: c.base.clone(),
                    power,
                });
            }
        }
        let exact = exact.then_some(ExactState {
            binom,
            four,
            h: hn,
            h2: h2n,
            comps: exact_comps,
        });
        Ok(TermStream {
            spec: spec.clone(),
            prec,
            aux,
            comps,
            exact,
        })
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn spec(&self) -> &TermSpec {
        &self.spec
    }

    /// Index of the next term to be produced.
    pub fn index(&self) -> u64 {
        self.aux.index
    }

    /// Running quantities at the next index.
    pub fn aux(&self) -> &Aux {
        &self.aux
    }

    /// Coefficient enclosures, one per component.
    pub fn coefficients(&self) -> Vec<Ball> {
        self.comps.iter().map(|c| c.coef.clone()).collect()
    }

    pub fn next_term(&mut self) -> Result<Term> {
        let n = self.aux.index;
        if n > MAX_INDEX {
            return Err(Error::Resource(format!("term index exceeds {MAX_INDEX}")));
        }
        let prec = self.prec;
        let mut value = Ball::zero(prec);
        for (state, comp) in self.comps.iter().zip(&self.spec.components) {
            let mut inner = Ball::zero(prec);
            let multipliers = [None, Some(&self.aux.h), Some(&self.aux.h2)];
            for (r, m) in state.r.iter().zip(multipliers) {
                if let Some(r) = r {
                    let v = r.eval_ball(n, prec)?;
                    inner = &inner + &m.map_or_else(|| v.clone(), |m| &v * m);
                }
            }
            let mut t = &(&state.coef * &state.power) * &inner;
            for _ in 0..comp.binom_power {
                t = &t * &self.aux.b;
            }
            if comp.sign_at(n) < 0 {
                t = t.neg();
            }
            value = &value + &t;
        }
        let exact = match &self.exact {
            Some(ex) => Some(self.exact_term(ex, n)?),
            None => None,
        };
        self.advance(n);
        Ok(Term { index: n, value, exact })
    }

    fn exact_term(&self, ex: &ExactState, n: u64) -> Result<SurdQ5> {
        let at = |f: &RatFn| -> Result<BigRational> {
            if f.is_zero() {
                return Ok(BigRational::zero());
            }
            let k = i64::try_from(n).map_err(|_| Error::Resource("index too large".into()))?;
            f.eval_int(k)
                .ok_or_else(|| Error::DivisionByZero(format!("rational factor {f} has a pole at n = {n}")))
        };
        let b = BigRational::new(ex.binom.clone(), ex.four.clone());
        let mut total = SurdQ5::zero();
        for (state, comp) in ex.comps.iter().zip(&self.spec.components) {
            let mut q = at(&comp.r0)? + at(&comp.r1)? * &ex.h + at(&comp.r2)? * &ex.h2;
            for _ in 0..comp.binom_power {
                q *= &b;
            }
            if comp.sign_at(n) < 0 {
                q = -q;
            }
            total = &total + &(&state.coef * &state.power).scale(&q);
        }
        Ok(total)
    }

    fn advance(&mut self, n: u64) {
        let k = n as i64;
        let a = &mut self.aux;
        a.b = a.b.mul_int(2 * k + 1).div_int(2 * k + 2);
        a.h = &a.h + &Ball::one(self.prec).div_int(k + 1);
        let step = Ball::from_int(4 * k + 3, self.prec)
            .div_int(2 * k + 1)
            .div_int(2 * k + 2);
        a.h2 = &a.h2 + &step;
        a.index = n + 1;
        for c in &mut self.comps {
            c.power = &c.power * &c.base;
        }
        if let Some(ex) = &mut self.exact {
            ex.binom = &ex.binom * BigInt::from(2 * (2 * k + 1)) / BigInt::from(k + 1);
            ex.four <<= 2;
            ex.h += BigRational::new(BigInt::one(), BigInt::from(k + 1));
            ex.h2 += BigRational::new(BigInt::from(4 * k + 3), BigInt::from((2 * k + 1) * (2 * k + 2)));
            for c in &mut ex.comps {
                c.power = &c.power * &c.base;
            }
        }
    }
}

impl Iterator for TermStream {
    type Item = Result<Term>;

    fn next(&mut self) -> Option<Self::Item> {
        Some(self.next_term())
    }
}
