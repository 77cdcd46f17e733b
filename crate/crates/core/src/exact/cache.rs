use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::seq;

/// Memo tables for the sequences used by term oracles.
///
/// Tables grow incrementally up to `cap` (unbounded by default); indices past
/// the cap are computed fresh and not stored. A cache is plain owned state:
/// give each worker its own.
#[derive(Debug, Clone)]
pub struct SequenceCache {
    cap: Option<usize>,
    fib: Vec<BigInt>,
    lucas: Vec<BigInt>,
    harmonic: Vec<BigRational>,
    central: Vec<BigInt>,
    double_fact: Vec<BigInt>,
}

impl Default for SequenceCache {
    fn default() -> Self {
        Self::new()
    }
}

impl SequenceCache {
    pub fn new() -> Self {
        SequenceCache {
            cap: None,
            fib: vec![BigInt::zero(), BigInt::one()],
            lucas: vec![BigInt::from(2), BigInt::one()],
            harmonic: vec![BigRational::zero()],
            central: vec![BigInt::one()],
            double_fact: vec![BigInt::one(), BigInt::one()],
        }
    }

    /// Cache that stores indices `< cap` only.
    pub fn with_cap(cap: usize) -> Self {
        SequenceCache {
            cap: Some(cap),
            ..Self::new()
        }
    }

    fn storable(&self, n: usize) -> bool {
        self.cap.is_none_or(|c| n < c)
    }

    pub fn fib(&mut self, n: i64) -> BigInt {
        let m = n.unsigned_abs() as usize;
        if !self.storable(m) {
            return seq::fib(n);
        }
        while self.fib.len() <= m {
            let k = self.fib.len();
            let next = &self.fib[k - 1] + &self.fib[k - 2];
            self.fib.push(next);
        }
        let f = self.fib[m].clone();
        if n < 0 && m.is_multiple_of(2) {
            -f
        } else {
            f
        }
    }

    pub fn lucas(&mut self, n: i64) -> BigInt {
        let m = n.unsigned_abs() as usize;
        if !self.storable(m) {
            return seq::lucas(n);
        }
        while self.lucas.len() <= m {
            let k = self.lucas.len();
            let next = &self.lucas[k - 1] + &self.lucas[k - 2];
            self.lucas.push(next);
        }
        let l = self.lucas[m].clone();
        if n < 0 && m % 2 == 1 {
            -l
        } else {
            l
        }
    }

    pub fn harmonic(&mut self, n: u64) -> BigRational {
        let m = n as usize;
        if !self.storable(m) {
            return seq::harmonic(n);
        }
        while self.harmonic.len() <= m {
            let k = self.harmonic.len();
            let next = &self.harmonic[k - 1] + BigRational::new(BigInt::one(), BigInt::from(k));
            self.harmonic.push(next);
        }
        self.harmonic[m].clone()
    }

    pub fn central_binomial(&mut self, n: u64) -> BigInt {
        let m = n as usize;
        if !self.storable(m) {
            return seq::central_binomial(n);
        }
        while self.central.len() <= m {
            let k = self.central.len() as u64;
            let next = &self.central[k as usize - 1] * (2 * (2 * k - 1)) / k;
            self.central.push(next);
        }
        self.central[m].clone()
    }

    pub fn catalan_number(&mut self, n: u64) -> BigInt {
        self.central_binomial(n) / (n + 1)
    }

    pub fn double_factorial(&mut self, n: u64) -> BigInt {
        let m = n as usize;
        if !self.storable(m) {
            return seq::double_factorial(n);
        }
        while self.double_fact.len() <= m {
            let k = self.double_fact.len();
            let next = &self.double_fact[k - 2] * k;
            self.double_fact.push(next);
        }
        self.double_fact[m].clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cache_is_transparent() {
        let mut c = SequenceCache::new();
        // query out of order so both growth and lookup paths run
        for n in [40u64, 3, 17, 0, 40, 25] {
            assert_eq!(c.fib(n as i64), seq::fib(n as i64));
            assert_eq!(c.fib(-(n as i64)), seq::fib(-(n as i64)));
            assert_eq!(c.lucas(-(n as i64)), seq::lucas(-(n as i64)));
            assert_eq!(c.harmonic(n), seq::harmonic(n));
            assert_eq!(c.central_binomial(n), seq::central_binomial(n));
            assert_eq!(c.catalan_number(n), seq::catalan_number(n));
            assert_eq!(c.double_factorial(n), seq::double_factorial(n));
        }
    }

    #[test]
    fn capped_cache_still_answers() {
        let mut c = SequenceCache::with_cap(8);
        assert_eq!(c.fib(30), seq::fib(30));
        assert_eq!(c.harmonic(20), seq::harmonic(20));
        assert!(c.fib.len() <= 8);
        assert!(c.harmonic.len() <= 8);
    }
}
