//! Monic polynomials over computable and Gaussian-rational coefficients.

use std::fmt;

use num_complex::Complex64;

use crate::approx::PtcNumber;
use crate::error::{Error, Result};
use crate::kernel::{GaussianRational, Rational};

/// `X^n + a_{n-1} X^{n-1} + … + a_0` with computable coefficients.
#[derive(Clone, Debug)]
pub struct Polynomial {
    coeffs: Vec<PtcNumber>,
}

impl Polynomial {
    /// `coeffs` are `a_0, …, a_{n-1}`; the leading 1 is implicit.
    pub fn new(coeffs: Vec<PtcNumber>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::ConstantPolynomial);
        }
        Ok(Polynomial { coeffs })
    }

    /// Lifts a rational polynomial with exact constant coefficients.
    pub fn from_rational(f: &RationalPolynomial) -> Self {
        Polynomial { coeffs: f.coeffs().iter().cloned().map(PtcNumber::constant).collect() }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[PtcNumber] {
        &self.coeffs
    }
}

/// Monic polynomial with Gaussian-rational coefficients `ã_0, …, ã_{n-1}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalPolynomial {
    coeffs: Vec<GaussianRational>,
}

impl RationalPolynomial {
    pub fn new(coeffs: Vec<GaussianRational>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::ConstantPolynomial);
        }
        Ok(RationalPolynomial { coeffs })
    }

    pub fn from_real(coeffs: &[Rational]) -> Result<Self> {
        Self::new(coeffs.iter().cloned().map(GaussianRational::from_real).collect())
    }

    pub fn from_integers(coeffs: &[i64]) -> Result<Self> {
        Self::from_real(&coeffs.iter().map(|&c| Rational::from_integer(c)).collect::<Vec<_>>())
    }

    /// `Π (X - r)` over the given roots.
    pub fn from_roots(roots: &[GaussianRational]) -> Result<Self> {
        let mut full = vec![GaussianRational::one()];
        for r in roots {
            let mut next = vec![GaussianRational::zero(); full.len() + 1];
            for (i, c) in full.iter().enumerate() {
                next[i + 1] = &next[i + 1] + c;
                next[i] = &next[i] - &(c * r);
            }
            full = next;
        }
        full.pop();
        Self::new(full)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    /// `ã_0, …, ã_{n-1}`.
    pub fn coeffs(&self) -> &[GaussianRational] {
        &self.coeffs
    }

    /// All `n + 1` coefficients, lowest first, leading 1 included.
    pub fn full_coeffs(&self) -> Vec<GaussianRational> {
        let mut v = self.coeffs.clone();
        v.push(GaussianRational::one());
        v
    }

    pub fn is_real(&self) -> bool {
        self.coeffs.iter().all(GaussianRational::is_real)
    }

    pub fn eval(&self, z: &GaussianRational) -> GaussianRational {
        self.coeffs.iter().rev().fold(GaussianRational::one(), |acc, c| &(&acc * z) + c)
    }

    /// `(f(z), f'(z))` in one Horner pass.
    pub fn eval_with_derivative(&self, z: &GaussianRational) -> (GaussianRational, GaussianRational) {
        let mut p = GaussianRational::one();
        let mut d = GaussianRational::zero();
        for c in self.coeffs.iter().rev() {
            d = &(&d * z) + &p;
            p = &(&p * z) + c;
        }
        (p, d)
    }

    /// Coefficients of `f'`, lowest first (not monic).
    pub fn derivative(&self) -> Vec<GaussianRational> {
        self.full_coeffs()
            .iter()
            .enumerate()
            .skip(1)
            .map(|(j, c)| c.scale(&Rational::from_integer(j as i64)))
            .collect()
    }

    pub fn to_complex64(&self) -> Vec<Complex64> {
        self.full_coeffs()
            .iter()
            .map(|c| {
                let (re, im) = c.to_f64_pair();
                Complex64::new(re, im)
            })
            .collect()
    }

    /// Whether `gcd(f, f')` over Q[i] is constant.
    pub fn is_squarefree(&self) -> bool {
        gcd_degree(self.full_coeffs(), self.derivative()) == 0
    }
}

fn trim(p: &mut Vec<GaussianRational>) {
    while p.last().is_some_and(GaussianRational::is_zero) {
        p.pop();
    }
}

/// Remainder of `a` by a nonzero `b`, both lowest-first.
fn rem(mut a: Vec<GaussianRational>, b: &[GaussianRational]) -> Vec<GaussianRational> {
    let lead = b.last().expect("nonzero divisor");
    trim(&mut a);
    while a.len() >= b.len() {
        let q = a.last().expect("nonempty") / lead;
        let shift = a.len() - b.len();
        for (i, c) in b.iter().enumerate() {
            a[shift + i] = &a[shift + i] - &(&q * c);
        }
        a.pop();
        trim(&mut a);
    }
    a
}

fn make_monic(p: &mut [GaussianRational]) {
    if let Some(lead) = p.last().cloned() {
        for c in p.iter_mut() {
            *c = &*c / &lead;
        }
    }
}

/// Degree of `gcd(a, b)` by the Euclidean algorithm.
fn gcd_degree(mut a: Vec<GaussianRational>, mut b: Vec<GaussianRational>) -> usize {
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        make_monic(&mut b);
        let r = rem(a, &b);
        a = b;
        b = r;
    }
    a.len().saturating_sub(1)
}

impl fmt::Display for RationalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.degree();
        write!(f, "X^{n}")?;
        for (j, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            write!(f, " + ({c})")?;
            match j {
                0 => {}
                1 => write!(f, "X")?,
                _ => write!(f, "X^{j}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for RationalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(re: i64, im: i64) -> GaussianRational {
        GaussianRational::new(Rational::from_integer(re), Rational::from_integer(im))
    }

    #[test]
    fn horner_and_derivative() {
        let f = RationalPolynomial::from_integers(&[-2, 0]).unwrap();
        let z = GaussianRational::from_real(Rational::new(3, 2));
        let (v, d) = f.eval_with_derivative(&z);
        assert_eq!(v, GaussianRational::from_real(Rational::new(1, 4)));
        assert_eq!(d, g(3, 0));
        assert_eq!(f.eval(&z), v);
        assert_eq!(f.derivative(), vec![g(0, 0), g(2, 0)]);
    }

    #[test]
    fn from_roots_expands() {
        let f = RationalPolynomial::from_roots(&[g(0, 1), g(0, -1)]).unwrap();
        assert_eq!(f, RationalPolynomial::from_integers(&[1, 0]).unwrap());
        assert!(f.eval(&g(0, 1)).is_zero());
    }

    #[test]
    fn squarefree_check() {
        assert!(RationalPolynomial::from_integers(&[-2, 0]).unwrap().is_squarefree());
        assert!(RationalPolynomial::from_integers(&[-5]).unwrap().is_squarefree());
        let double = RationalPolynomial::from_roots(&[g(1, 1), g(1, 1), g(3, 0)]).unwrap();
        assert!(!double.is_squarefree());
        let near = RationalPolynomial::from_roots(&[
            g(1, 0),
            GaussianRational::from_real(Rational::new(1_000_001, 1_000_000)),
        ])
        .unwrap();
        assert!(near.is_squarefree());
    }

    #[test]
    fn empty_rejected() {
        assert_eq!(RationalPolynomial::new(vec![]).err(), Some(Error::ConstantPolynomial));
        assert!(Polynomial::new(vec![]).is_err());
    }

    #[test]
    fn display() {
        let f = RationalPolynomial::from_integers(&[-2, 0, 1]).unwrap();
        assert_eq!(f.to_string(), "X^3 + (1)X^2 + (-2)");
    }
}
