//! Running partial sum with one term of lookahead.

use super::term::{Aux, Term, TermSpec, TermStream};
use crate::ball::Ball;
use crate::error::Result;
use crate::exact::SurdQ5;

pub(crate) struct Cursor {
    stream: TermStream,
    sum: Ball,
    exact_sum: Option<SurdQ5>,
    last: Option<Term>,
    pending: Option<(Aux, Term)>,
}

impl Cursor {
    pub(crate) fn new(spec: &TermSpec, prec: u32) -> Result<Self> {
        Ok(Cursor {
            stream: TermStream::new(spec, prec)?,
            sum: Ball::zero(prec),
            exact_sum: None,
            last: None,
            pending: None,
        })
    }

    pub(crate) fn exact(spec: &TermSpec, prec: u32) -> Result<Self> {
        Ok(Cursor {
            stream: TermStream::with_exact(spec, prec)?,
            sum: Ball::zero(prec),
            exact_sum: Some(SurdQ5::zero()),
            last: None,
            pending: None,
        })
    }

    pub(crate) fn spec(&self) -> &TermSpec {
        self.stream.spec()
    }

    pub(crate) fn prec(&self) -> u32 {
        self.stream.prec()
    }

    pub(crate) fn coefficients(&self) -> Vec<Ball> {
        self.stream.coefficients()
    }

    pub(crate) fn sum(&self) -> &Ball {
        &self.sum
    }

    pub(crate) fn exact_sum(&self) -> Option<&SurdQ5> {
        self.exact_sum.as_ref()
    }

    pub(crate) fn last_index(&self) -> Option<u64> {
        self.last.as_ref().map(|t| t.index)
    }

    pub(crate) fn last_term(&self) -> Option<&Ball> {
        self.last.as_ref().map(|t| &t.value)
    }

    /// Number of terms summed so far.
    pub(crate) fn count(&self) -> u64 {
        self.last_index().map_or(0, |n| n + 1 - self.spec().start)
    }

    /// Sums one more term.
    pub(crate) fn step(&mut self) -> Result<()> {
        let term = match self.pending.take() {
            Some((_, t)) => t,
            None => self.stream.next_term()?,
        };
        self.sum = &self.sum + &term.value;
        if let (Some(s), Some(e)) = (&mut self.exact_sum, &term.exact) {
            *s = &*s + e;
        }
        self.last = Some(term);
        Ok(())
    }

    /// Sums through index `n` inclusive.
    pub(crate) fn advance_to(&mut self, n: u64) -> Result<()> {
        while self.last_index().is_none_or(|k| k < n) && n >= self.spec().start {
            self.step()?;
        }
        Ok(())
    }

    /// The next term, computed but not yet summed.
    pub(crate) fn peek(&mut self) -> Result<&Ball> {
        if self.pending.is_none() {
            let aux = self.stream.aux().clone();
            let t = self.stream.next_term()?;
            self.pending = Some((aux, t));
        }
        Ok(&self.pending.as_ref().expect("pending term").1.value)
    }

    /// Running quantities at the index after the last summed one.
    pub(crate) fn aux_next(&self) -> Aux {
        match &self.pending {
            Some((aux, _)) => aux.clone(),
            None => self.stream.aux().clone(),
        }
    }
}
