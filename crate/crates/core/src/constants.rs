//! Transcendental constants: `arctan(1/k)` from its Taylor series and π from
//! Machin's formula `π = 16·arctan(1/5) − 4·arctan(1/239)`.

use num_bigint::BigUint;

use crate::approx::{from_real_rational_oracle, PtcNumber};
use crate::error::{Error, Result};
use crate::field::{add, scale};
use crate::kernel::Rational;

/// Term count for `arctan(1/k)` at rational-oracle precision `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArctanPlan {
    pub k: u64,
    pub n: BigUint,
    /// Number of Taylor terms; the tail `k^-(2m+1) / (2m+1)` is at most `1/(2n)`.
    pub terms: u64,
}

impl ArctanPlan {
    /// Smallest `m` with `(2m+1)·k^(2m+1) >= 2n`, by direct search.
    pub fn new(k: u64, n: &BigUint) -> Result<Self> {
        if k < 2 {
            return Err(Error::ArctanArgument(k));
        }
        let target = n * 2u32;
        let k_big = BigUint::from(k);
        let k_sq = &k_big * &k_big;
        let mut m = 0u64;
        let mut k_pow = k_big; // k^(2m+1)
        while BigUint::from(2 * m + 1) * &k_pow < target {
            m += 1;
            k_pow *= &k_sq;
        }
        Ok(ArctanPlan { k, n: n.clone(), terms: m })
    }

    /// Whether `m` terms meet the tail bound for this plan's `k` and `n`.
    pub fn tail_ok(k: u64, n: &BigUint, m: u64) -> bool {
        let k_pow = num_traits::pow(BigUint::from(k), (2 * m + 1) as usize);
        BigUint::from(2 * m + 1) * k_pow >= n * 2u32
    }
}

/// `Σ_{i<m} (-1)^i / ((2i+1)·k^(2i+1))`, exact.
pub fn arctan_partial_sum(k: u64, terms: u64) -> Rational {
    let k_sq = Rational::from_integer(k * k);
    let mut power = Rational::from_integer(k); // k^(2i+1)
    let mut sum = Rational::zero();
    for i in 0..terms {
        let term = (&power * &Rational::from_integer(2 * i + 1)).recip();
        if i % 2 == 0 {
            sum += &term;
        } else {
            sum -= &term;
        }
        power *= &k_sq;
    }
    sum
}

/// `arctan(1/k)` for `k >= 2`.
pub fn arctan_inv(k: u64) -> Result<PtcNumber> {
    if k < 2 {
        return Err(Error::ArctanArgument(k));
    }
    Ok(from_real_rational_oracle(move |n: &BigUint| {
        let plan = ArctanPlan::new(k, n)?;
        Ok(arctan_partial_sum(k, plan.terms))
    }))
}

/// One `(coefficient, k)` term of Machin's formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MachinTerm {
    pub coefficient: i64,
    pub k: u64,
}

/// `π = 16·arctan(1/5) − 4·arctan(1/239)`.
pub const MACHIN_FORMULA: [MachinTerm; 2] =
    [MachinTerm { coefficient: 16, k: 5 }, MachinTerm { coefficient: -4, k: 239 }];

/// A fresh π. Each call builds an independent oracle tree with its own memo.
pub fn pi() -> PtcNumber {
    let [a, b] = MACHIN_FORMULA;
    let first = scale(&arctan_inv(a.k).expect("k >= 2"), a.coefficient);
    let second = scale(&arctan_inv(b.k).expect("k >= 2"), b.coefficient);
    add(&first, &second)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn two_term_sum() {
        assert_eq!(arctan_partial_sum(5, 2), Rational::new(74, 375));
        assert_eq!(arctan_partial_sum(7, 1), Rational::new(1, 7));
        assert_eq!(arctan_partial_sum(7, 0), Rational::zero());
    }

    #[test]
    fn plan_for_a_million() {
        // (2m+1)·5^(2m+1) >= 2·10^6: m = 3 gives 546875, m = 4 gives 17578125
        let plan = ArctanPlan::new(5, &BigUint::from(1_000_000u32)).unwrap();
        assert_eq!(plan.terms, 4);
    }

    #[test]
    fn plan_is_minimal() {
        for k in [2u64, 3, 5, 239] {
            for e in 0..40u32 {
                let n = BigUint::from(3u32).pow(e);
                let m = ArctanPlan::new(k, &n).unwrap().terms;
                assert!(ArctanPlan::tail_ok(k, &n, m));
                if m > 0 {
                    assert!(!ArctanPlan::tail_ok(k, &n, m - 1));
                }
            }
        }
    }

    #[test]
    fn bad_argument() {
        assert_eq!(arctan_inv(1).err(), Some(Error::ArctanArgument(1)));
        assert!(ArctanPlan::new(0, &BigUint::one()).is_err());
    }

    #[test]
    fn pi_coarse() {
        let p = pi();
        let v = p.eval(1u32).unwrap().re;
        assert!(v >= Rational::from_integer(2) && v <= Rational::from_integer(5));
        assert_eq!(p.to_decimal(3).unwrap().len(), 5);
    }
}
