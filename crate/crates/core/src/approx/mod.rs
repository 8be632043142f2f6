//! Computable complex numbers as lazy integer-approximation oracles.
//!
//! A [`PtcNumber`] wraps an oracle `n ↦ (f(n), g(n))` with the contract
//!
//! ```text
//! |z - (f(n) + g(n) i) / n| <= 1 / n      for every n >= 1
//! ```
//!
//! Evaluations are memoized per exact `n`. Numbers are cheap to clone and
//! share (an `Arc` around the oracle and its cache); all work happens when
//! [`PtcNumber::eval`] is called.

mod convert;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::kernel::counter::{self, OpCounter};
use crate::kernel::{round_nearest, GaussianRational, Rational};

pub use convert::{from_partial_oracle, from_rational_oracle, from_real_rational_oracle, PolyIncreasingSequence};

/// An integer-approximation oracle: returns numerators `(f(n), g(n))`.
pub trait Oracle: Send + Sync {
    fn approx(&self, n: &BigUint) -> Result<(BigInt, BigInt)>;
}

impl<F> Oracle for F
where
    F: Fn(&BigUint) -> Result<(BigInt, BigInt)> + Send + Sync,
{
    fn approx(&self, n: &BigUint) -> Result<(BigInt, BigInt)> {
        self(n)
    }
}

/// A rational-approximation oracle: `|z - F(n)| <= 1/n` with `F(n)` in Q[i].
pub trait RationalOracle: Send + Sync {
    fn approx(&self, n: &BigUint) -> Result<GaussianRational>;
}

impl<F> RationalOracle for F
where
    F: Fn(&BigUint) -> Result<GaussianRational> + Send + Sync,
{
    fn approx(&self, n: &BigUint) -> Result<GaussianRational> {
        self(n)
    }
}

#[derive(Default)]
struct Stats {
    ops: OpCounter,
    oracle_calls: u64,
}

struct Inner {
    oracle: Box<dyn Oracle>,
    // imaginary oracle is identically zero
    real: bool,
    memo: Mutex<HashMap<BigUint, (BigInt, BigInt)>>,
    stats: Mutex<Stats>,
}

/// A polynomial-time computable complex number.
#[derive(Clone)]
pub struct PtcNumber(Arc<Inner>);

impl PtcNumber {
    pub(crate) fn with_oracle(oracle: impl Oracle + 'static, real: bool) -> Self {
        PtcNumber(Arc::new(Inner {
            oracle: Box::new(oracle),
            real,
            memo: Mutex::new(HashMap::new()),
            stats: Mutex::new(Stats::default()),
        }))
    }

    /// Wraps an arbitrary oracle. The caller vouches for the 1/n contract.
    pub fn from_oracle(oracle: impl Oracle + 'static) -> Self {
        Self::with_oracle(oracle, false)
    }

    /// Wraps a real oracle `n ↦ f(n)`; the imaginary numerator is fixed at 0.
    pub fn from_real_oracle<F>(f: F) -> Self
    where
        F: Fn(&BigUint) -> Result<BigInt> + Send + Sync + 'static,
    {
        Self::with_oracle(move |n: &BigUint| Ok((f(n)?, BigInt::zero())), true)
    }

    /// Exact Gaussian-rational constant: `f(n) = ⌊n·re⌉`, `g(n) = ⌊n·im⌉`.
    pub fn constant(c: GaussianRational) -> Self {
        let real = c.is_real();
        Self::with_oracle(
            move |n: &BigUint| {
                let n = Rational::from_integer(BigInt::from(n.clone()));
                let f = round_nearest(&(&n * &c.re));
                let g = if c.im.is_zero() { BigInt::zero() } else { round_nearest(&(&n * &c.im)) };
                Ok((f, g))
            },
            real,
        )
    }

    pub fn rational(q: Rational) -> Self {
        Self::constant(GaussianRational::from_real(q))
    }

    pub fn integer(k: i64) -> Self {
        Self::rational(Rational::from_integer(k))
    }

    pub fn zero() -> Self {
        Self::integer(0)
    }

    pub fn one() -> Self {
        Self::integer(1)
    }

    /// The imaginary unit; exact at every precision.
    pub fn i() -> Self {
        Self::constant(GaussianRational::i())
    }

    /// True when the imaginary oracle is known to be identically zero.
    pub fn is_real(&self) -> bool {
        self.0.real
    }

    /// The raw numerators `(f(n), g(n))`, memoized.
    pub fn numerators(&self, n: &BigUint) -> Result<(BigInt, BigInt)> {
        if n.is_zero() {
            return Err(Error::ZeroPrecision);
        }
        if let Some(hit) = self.0.memo.lock().expect("memo lock").get(n) {
            return Ok(hit.clone());
        }
        // lock is not held while the oracle runs: oracles recurse into other numbers
        let (out, ops) = counter::measure(|| self.0.oracle.approx(n));
        let out = out?;
        {
            let mut st = self.0.stats.lock().expect("stats lock");
            st.ops += ops;
            st.oracle_calls += 1;
        }
        self.0.memo.lock().expect("memo lock").insert(n.clone(), out.clone());
        Ok(out)
    }

    /// Real numerator `f(n)` only.
    pub(crate) fn re_numerator(&self, n: &BigUint) -> Result<BigInt> {
        Ok(self.numerators(n)?.0)
    }

    /// `(f(n) + g(n) i) / n`, within `1/n` of the represented value.
    pub fn eval(&self, n: impl Into<BigUint>) -> Result<GaussianRational> {
        self.eval_at(&n.into())
    }

    pub fn eval_at(&self, n: &BigUint) -> Result<GaussianRational> {
        let (f, g) = self.numerators(n)?;
        Ok(GaussianRational::from_numerators(&f, &g, n))
    }

    /// Rational operations spent in this number's own oracle calls
    /// (inclusive of the sub-numbers they evaluated).
    pub fn stats(&self) -> OpCounter {
        self.0.stats.lock().expect("stats lock").ops
    }

    /// Number of cache misses served by the oracle so far.
    pub fn oracle_calls(&self) -> u64 {
        self.0.stats.lock().expect("stats lock").oracle_calls
    }

    /// Fixed-point decimal with `digits` fractional digits, accurate to
    /// `10^-digits`.
    ///
    /// The oracle is queried at `n = 2·10^digits` and each part is rounded
    /// to the nearest multiple of `10^-digits`, so both errors are at most
    /// `10^-digits / 2`.
    pub fn to_decimal(&self, digits: usize) -> Result<String> {
        let scale = num_traits::pow(BigUint::from(10u32), digits);
        let n = &scale * 2u32;
        let v = self.eval_at(&n)?;
        let s = Rational::from_integer(BigInt::from(scale));
        let re = round_nearest(&(&v.re * &s));
        let im = round_nearest(&(&v.im * &s));
        let mut out = render_fixed(&re, digits);
        if !im.is_zero() {
            out.push_str(if im.is_negative() { " - " } else { " + " });
            out.push_str(&render_fixed(&im.abs(), digits));
            out.push('i');
        }
        Ok(out)
    }
}

impl fmt::Debug for PtcNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PtcNumber")
            .field("real", &self.0.real)
            .field("cached", &self.0.memo.lock().map(|m| m.len()).unwrap_or(0))
            .finish()
    }
}

/// Integer `k` rendered as `k / 10^digits`.
pub fn render_fixed(k: &BigInt, digits: usize) -> String {
    let neg = k.is_negative();
    let mut s = k.abs().to_string();
    if digits > 0 {
        if s.len() <= digits {
            s = format!("{}{}", "0".repeat(digits + 1 - s.len()), s);
        }
        s.insert(s.len() - digits, '.');
    }
    if neg {
        s.insert(0, '-');
    }
    s
}
