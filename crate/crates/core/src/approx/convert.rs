//! Converters from weaker approximation schemes to integer oracles.

use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use super::{Oracle, PtcNumber, RationalOracle};
use crate::error::{Error, Result};
use crate::kernel::{round_nearest, sqrt_upper, dyadic_tol, Rational};

/// Rational oracle to integer oracle: `f(n) = ⌊n·F(4n)⌉`, `g(n) = ⌊n·G(4n)⌉`.
///
/// Total error is at most `1/(4n) + 1/(√2·n) < 1/n`.
pub fn from_rational_oracle(o: impl RationalOracle + 'static) -> PtcNumber {
    PtcNumber::with_oracle(RationalToInteger(o), false)
}

/// Real variant of [`from_rational_oracle`]; `g` is identically zero.
pub fn from_real_rational_oracle<F>(f: F) -> PtcNumber
where
    F: Fn(&BigUint) -> Result<Rational> + Send + Sync + 'static,
{
    PtcNumber::with_oracle(
        move |n: &BigUint| {
            let v = f(&(n * 4u32))?;
            let nn = Rational::from_integer(BigInt::from(n.clone()));
            Ok((round_nearest(&(&nn * &v)), BigInt::zero()))
        },
        true,
    )
}

struct RationalToInteger<O>(O);

impl<O: RationalOracle> Oracle for RationalToInteger<O> {
    fn approx(&self, n: &BigUint) -> Result<(BigInt, BigInt)> {
        let v = self.0.approx(&(n * 4u32))?;
        let nn = Rational::from_integer(BigInt::from(n.clone()));
        let f = round_nearest(&(&nn * &v.re));
        let g = if v.im.is_zero() { BigInt::zero() } else { round_nearest(&(&nn * &v.im)) };
        Ok((f, g))
    }
}

type Enumerator = dyn Fn(u64) -> BigUint + Send + Sync;

/// Strictly increasing naturals `s_0 < s_1 < …` with `s_{i+1} <= p(s_i)`.
#[derive(Clone)]
pub struct PolyIncreasingSequence {
    enumerate: Arc<Enumerator>,
    gap_poly: Vec<BigUint>,
    index_cap: u64,
}

const PREFIX_CHECK: u64 = 64;
const DEFAULT_INDEX_CAP: u64 = 1 << 48;

impl PolyIncreasingSequence {
    /// `gap_poly` holds the coefficients `c_0, c_1, …` of `p`. The first 64
    /// terms are checked against the defining inequalities.
    pub fn new<F>(enumerate: F, gap_poly: Vec<u64>) -> Result<Self>
    where
        F: Fn(u64) -> BigUint + Send + Sync + 'static,
    {
        let seq = PolyIncreasingSequence {
            enumerate: Arc::new(enumerate),
            gap_poly: gap_poly.into_iter().map(BigUint::from).collect(),
            index_cap: DEFAULT_INDEX_CAP,
        };
        seq.spot_check()?;
        Ok(seq)
    }

    /// `start, start + diff, start + 2·diff, …` with `p(X) = X + diff`.
    pub fn arithmetic(start: u64, diff: u64) -> Result<Self> {
        Self::new(move |i| BigUint::from(start) + BigUint::from(diff) * i, vec![diff, 1])
    }

    /// `start, start·ratio, start·ratio², …` with `p(X) = ratio·X`.
    pub fn geometric(start: u64, ratio: u64) -> Result<Self> {
        if ratio > 1 && ratio.is_power_of_two() && start == 1 {
            let shift = ratio.trailing_zeros() as u64;
            return Self::new(move |i| BigUint::one() << (shift * i), vec![0, ratio]);
        }
        Self::new(
            move |i| BigUint::from(start) * num_traits::pow(BigUint::from(ratio), i as usize),
            vec![0, ratio],
        )
    }

    /// Largest index the search may enumerate before giving up.
    pub fn with_index_cap(mut self, cap: u64) -> Self {
        self.index_cap = cap;
        self
    }

    pub fn term(&self, i: u64) -> BigUint {
        (self.enumerate)(i)
    }

    fn gap_bound(&self, s: &BigUint) -> BigUint {
        self.gap_poly.iter().rev().fold(BigUint::zero(), |acc, c| acc * s + c)
    }

    fn spot_check(&self) -> Result<()> {
        let mut prev = self.term(0);
        if prev.is_zero() {
            return Err(Error::InvalidSequence("terms must be at least 1".into()));
        }
        for i in 1..PREFIX_CHECK {
            let next = self.term(i);
            if next <= prev {
                return Err(Error::InvalidSequence(format!("not increasing at index {i}")));
            }
            if next > self.gap_bound(&prev) {
                return Err(Error::InvalidSequence(format!("gap exceeds p(s) at index {i}")));
            }
            prev = next;
        }
        Ok(())
    }

    /// Smallest element `>= target`, by galloping then bisection on the index.
    pub fn first_at_least(&self, target: &BigUint) -> Result<BigUint> {
        let s0 = self.term(0);
        if &s0 >= target {
            return Ok(s0);
        }
        let (mut lo, mut hi) = (0u64, 1u64);
        loop {
            let hi_clamped = hi.min(self.index_cap);
            let s = self.term(hi_clamped);
            if &s >= target {
                hi = hi_clamped;
                break;
            }
            if hi_clamped == self.index_cap {
                return Err(Error::SequenceExhausted { target: target.clone(), index_cap: self.index_cap });
            }
            lo = hi_clamped;
            hi = hi.saturating_mul(2).saturating_add(1);
        }
        // s_lo < target <= s_hi
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if &self.term(mid) >= target {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Ok(self.term(hi))
    }

    pub fn contains(&self, m: &BigUint) -> Result<bool> {
        Ok(&self.first_at_least(m)? == m)
    }
}

impl fmt::Debug for PolyIncreasingSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let head: Vec<_> = (0..4).map(|i| self.term(i)).collect();
        f.debug_struct("PolyIncreasingSequence")
            .field("head", &head)
            .field("gap_poly", &self.gap_poly)
            .finish()
    }
}

/// Rational upper bound of `2 + √2`.
fn two_plus_sqrt2() -> &'static Rational {
    static C: OnceLock<Rational> = OnceLock::new();
    C.get_or_init(|| {
        let two = Rational::from_integer(2);
        &two + &sqrt_upper(&two, &dyadic_tol(24)).expect("positive")
    })
}

/// Extends an oracle that is only valid on `seq` to all `m >= 1`.
///
/// Elements of the sequence pass through. Any other `m` is answered from the
/// smallest `n` in the sequence with `n >= (2+√2)·m`, rescaled:
/// `f(m) = ⌊f̂(n)·m/n⌉`.
pub fn from_partial_oracle(partial: impl Oracle + 'static, seq: PolyIncreasingSequence) -> PtcNumber {
    PtcNumber::with_oracle(PartialExtension { partial, seq }, false)
}

struct PartialExtension<O> {
    partial: O,
    seq: PolyIncreasingSequence,
}

impl<O: Oracle> Oracle for PartialExtension<O> {
    fn approx(&self, m: &BigUint) -> Result<(BigInt, BigInt)> {
        if self.seq.contains(m)? {
            return self.partial.approx(m);
        }
        let mq = Rational::from_integer(BigInt::from(m.clone()));
        let target = (two_plus_sqrt2() * &mq).ceil().to_biguint().expect("positive");
        let n = self.seq.first_at_least(&target)?;
        let (fh, gh) = self.partial.approx(&n)?;
        let ratio = &mq / &Rational::from_integer(BigInt::from(n));
        let f = round_nearest(&(&Rational::from_integer(fh) * &ratio));
        let g = if gh.is_zero() { BigInt::zero() } else { round_nearest(&(&Rational::from_integer(gh) * &ratio)) };
        Ok((f, g))
    }
}
