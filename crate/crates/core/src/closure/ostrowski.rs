//! Root perturbation bounds and coefficient truncation.

use num_bigint::{BigInt, BigUint};
use num_traits::One;

use super::poly::{Polynomial, RationalPolynomial};
use crate::error::{Error, Result};
use crate::kernel::{dyadic_tol, root_upper, GaussianRational, Rational};

const ENCLOSURE_BITS: u32 = 64;

/// Outcome of [`ostrowski_bound`]: roots of the two polynomials can be
/// paired so that every pair is within `pairing_bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OstrowskiBound {
    pub gamma: Rational,
    pub epsilon: Rational,
    pub pairing_bound: Rational,
}

fn coeff_envelope(coeffs: &[Rational], n: usize) -> Result<Rational> {
    // max_j coeffs[n-j]^(1/j), upper
    let tol = dyadic_tol(ENCLOSURE_BITS);
    let mut best = Rational::zero();
    for j in 1..=n {
        let c = &coeffs[n - j];
        if c.is_zero() {
            continue;
        }
        best = best.max(root_upper(c, j as u32, &tol)?);
    }
    Ok(best)
}

/// `γ = 2·max |coeff_{n-j}|^{1/j}` over both polynomials,
/// `ε = (Σ |b_j − a_j|·γ^j)^{1/n}`, `pairing_bound = 2nε`. All upper enclosures.
pub fn ostrowski_bound(f: &RationalPolynomial, g: &RationalPolynomial) -> Result<OstrowskiBound> {
    let n = f.degree();
    if g.degree() != n {
        return Err(Error::DegreeMismatch(n, g.degree()));
    }
    let tol = dyadic_tol(ENCLOSURE_BITS);
    let abs = |c: &GaussianRational| c.abs_upper(&tol);
    let fa: Vec<Rational> = f.coeffs().iter().map(abs).collect();
    let ga: Vec<Rational> = g.coeffs().iter().map(abs).collect();
    let gamma = coeff_envelope(&fa, n)?.max(coeff_envelope(&ga, n)?) * Rational::from_integer(2);

    let mut sum = Rational::zero();
    let mut gamma_pow = Rational::one();
    for (a, b) in f.coeffs().iter().zip(g.coeffs()) {
        sum += &(&abs(&(b - a)) * &gamma_pow);
        gamma_pow *= &gamma;
    }
    let epsilon = root_upper(&sum, n as u32, &tol)?;
    let pairing_bound = &epsilon * &Rational::from_integer(2 * n as i64);
    Ok(OstrowskiBound { gamma, epsilon, pairing_bound })
}

/// Precision budget used by [`truncate_coefficients`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientPrecisionPlan {
    pub m: BigUint,
    pub k: BigUint,
    /// Upper bound on `2·max (|a_{n-j}| + 1)^{1/j}`, at least 1.
    pub gamma_bar: Rational,
    /// `1 / (k·γ̄^j)` for `j = 0..n`.
    pub per_coeff_error: Vec<Rational>,
    /// Oracle precision each coefficient was evaluated at, `⌈k·γ̄^j⌉`.
    pub precisions: Vec<BigUint>,
}

/// `k = 2^n · n^(n+1) · m^n`.
pub fn coefficient_budget(n: usize, m: &BigUint) -> BigUint {
    let nn = BigUint::from(n);
    (BigUint::one() << n) * num_traits::pow(nn, n + 1) * num_traits::pow(m.clone(), n)
}

/// Replaces each coefficient by a rational approximation accurate enough
/// that every root of the result is within `1/m` of a root of `f`.
pub fn truncate_coefficients(f: &Polynomial, m: &BigUint) -> Result<(RationalPolynomial, CoefficientPrecisionPlan)> {
    let n = f.degree();
    let tol = dyadic_tol(ENCLOSURE_BITS);
    let two = Rational::from_integer(2);
    // coarse |a_j| + 1 envelope: the n = 1 approximation is within 1 of a_j
    let mut envelope = Vec::with_capacity(n);
    for a in f.coeffs() {
        envelope.push(&a.eval(1u32)?.abs_upper(&tol) + &two);
    }
    let gamma_bar = (coeff_envelope(&envelope, n)? * two).max(Rational::one());

    let k = coefficient_budget(n, m);
    let kq = Rational::from_integer(BigInt::from(k.clone()));
    let mut coeffs = Vec::with_capacity(n);
    let mut per_coeff_error = Vec::with_capacity(n);
    let mut precisions = Vec::with_capacity(n);
    let mut scale = kq;
    for a in f.coeffs() {
        let nj = scale.ceil().to_biguint().expect("positive");
        coeffs.push(a.eval_at(&nj)?);
        per_coeff_error.push(scale.recip());
        precisions.push(nj);
        scale = &scale * &gamma_bar;
    }
    let plan = CoefficientPrecisionPlan { m: m.clone(), k, gamma_bar, per_coeff_error, precisions };
    Ok((RationalPolynomial::new(coeffs)?, plan))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::approx::PtcNumber;
    use crate::constants::pi;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn budget_example() {
        assert_eq!(coefficient_budget(2, &BigUint::from(10u32)), BigUint::from(3200u32));
    }

    #[test]
    fn rational_coefficients_unchanged() {
        let f = RationalPolynomial::from_integers(&[-2, 0]).unwrap();
        let (t, plan) = truncate_coefficients(&Polynomial::from_rational(&f), &BigUint::from(10u32)).unwrap();
        assert_eq!(t, f);
        assert_eq!(plan.k, BigUint::from(3200u32));
        assert!(plan.gamma_bar >= Rational::one());
    }

    #[test]
    fn truncation_errors_respected() {
        // X^2 - πX + 1
        let f = Polynomial::new(vec![PtcNumber::one(), -&pi()]).unwrap();
        let m = BigUint::from(1000u32);
        let (t, plan) = truncate_coefficients(&f, &m).unwrap();
        let pi_ref = q(314159265358979, 100000000000000);
        let err = (&t.coeffs()[1].re + &pi_ref).abs();
        assert!(err <= &plan.per_coeff_error[1] + &q(1, 100000000000000));
        assert_eq!(t.coeffs()[0], GaussianRational::one());
        let n0 = Rational::from_integer(BigInt::from(plan.precisions[0].clone()));
        assert!(&n0 * &plan.per_coeff_error[0] >= Rational::one());
    }

    #[test]
    fn identical_polynomials() {
        let f = RationalPolynomial::from_integers(&[3, -1, 2]).unwrap();
        let b = ostrowski_bound(&f, &f).unwrap();
        assert!(b.epsilon.is_zero());
        assert!(b.pairing_bound.is_zero());
    }

    #[test]
    fn quadratic_example() {
        let f = RationalPolynomial::from_integers(&[-2, 0]).unwrap();
        let g = RationalPolynomial::from_real(&[q(-202, 100), q(0, 1)]).unwrap();
        let b = ostrowski_bound(&f, &g).unwrap();
        // γ ≈ 2.8425, ε ≈ 0.1415, bound ≈ 0.566
        assert!(&b.gamma * &b.gamma >= q(808, 100) && b.gamma < q(28426, 10000));
        assert!(&b.epsilon * &b.epsilon >= q(2, 100) && b.epsilon < q(14143, 100000));
        assert_eq!(b.pairing_bound, &b.epsilon * &Rational::from_integer(4));
        assert!(b.pairing_bound >= q(707, 100000));
    }

    #[test]
    fn linear_example() {
        let f = RationalPolynomial::from_real(&[q(-3, 1)]).unwrap();
        let g = RationalPolynomial::from_real(&[q(-7, 2)]).unwrap();
        let b = ostrowski_bound(&f, &g).unwrap();
        assert_eq!(b.epsilon, q(1, 2));
        assert_eq!(b.pairing_bound, q(1, 1));
        assert_eq!(b.gamma, q(7, 1));
    }

    #[test]
    fn degree_mismatch() {
        let f = RationalPolynomial::from_integers(&[1]).unwrap();
        let g = RationalPolynomial::from_integers(&[1, 1]).unwrap();
        assert_eq!(ostrowski_bound(&f, &g).err(), Some(Error::DegreeMismatch(1, 2)));
    }
}
