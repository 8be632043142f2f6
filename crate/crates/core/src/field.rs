//! Field operations on [`PtcNumber`].
//!
//! Real operations follow explicit rational-oracle constructions and are
//! packaged through the `⌊n·F(4n)⌉` converter:
//!
//! * sum: `S(n) = (f(2n) + g(2n)) / 2n`
//! * product: `P(n) = f(cn)·g(cn) / (c²n²)` with `c = |f(1)| + |g(1)| + 4`
//! * inverse: `I(n) = p(n) / f(p(n))` with `p(X) = 2k²X + k`, `|f(k)| > 1`
//!
//! Complex operations are assembled from real and imaginary parts and
//! recombined with [`combine_complex`].

use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::approx::{Oracle, PtcNumber};
use crate::error::{Error, Result};
use crate::kernel::{round_nearest, Rational};

/// Default upper limit for the inversion witness search.
pub fn default_zero_cap() -> BigUint {
    BigUint::one() << 64u32
}

fn rat(n: &BigUint) -> Rational {
    Rational::from_integer(BigInt::from(n.clone()))
}

/// `⌊n·v⌉`, the integer oracle value for a rational oracle evaluated at `4n`.
fn to_integer_oracle(n: &BigUint, v: &Rational) -> BigInt {
    round_nearest(&(&rat(n) * v))
}

struct RealSum {
    x: PtcNumber,
    y: PtcNumber,
}

impl RealSum {
    fn rational_at(&self, n: &BigUint) -> Result<Rational> {
        let two_n = n * 2u32;
        let s = self.x.re_numerator(&two_n)? + self.y.re_numerator(&two_n)?;
        Ok(Rational::new(s, BigInt::from(two_n)))
    }
}

impl Oracle for RealSum {
    fn approx(&self, n: &BigUint) -> Result<(BigInt, BigInt)> {
        let v = self.rational_at(&(n * 4u32))?;
        Ok((to_integer_oracle(n, &v), BigInt::zero()))
    }
}

/// The multiplication constant `c = |f(1)| + |g(1)| + 4`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductScaling {
    pub c: BigUint,
}

/// Computes the product constant from the operands' real numerators at 1.
pub fn product_scaling(x: &PtcNumber, y: &PtcNumber) -> Result<ProductScaling> {
    let one = BigUint::one();
    let c = x.re_numerator(&one)?.magnitude() + y.re_numerator(&one)?.magnitude() + 4u32;
    Ok(ProductScaling { c })
}

struct RealProduct {
    x: PtcNumber,
    y: PtcNumber,
}

impl RealProduct {
    fn rational_at(&self, n: &BigUint) -> Result<Rational> {
        // recomputed on every call; f(1) and g(1) are memoized anyway
        let ProductScaling { c } = product_scaling(&self.x, &self.y)?;
        let cn = &c * n;
        let num = self.x.re_numerator(&cn)? * self.y.re_numerator(&cn)?;
        let den = &cn * &cn;
        Ok(Rational::new(num, BigInt::from(den)))
    }
}

impl Oracle for RealProduct {
    fn approx(&self, n: &BigUint) -> Result<(BigInt, BigInt)> {
        let v = self.rational_at(&(n * 4u32))?;
        Ok((to_integer_oracle(n, &v), BigInt::zero()))
    }
}

/// Witness that a real operand is bounded away from zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InversionWitness {
    pub k: BigUint,
    /// `(2k², k)`, the coefficients of `p(X) = 2k²X + k`.
    pub p_coeffs: (BigUint, BigUint),
}

impl InversionWitness {
    pub fn p(&self, n: &BigUint) -> BigUint {
        &self.p_coeffs.0 * n + &self.p_coeffs.1
    }
}

/// Doubling search `k = 1, 2, 4, …` for `|f(k)| > 1`, up to `cap`.
pub fn inversion_witness(x: &PtcNumber, cap: &BigUint) -> Result<InversionWitness> {
    let mut k = BigUint::one();
    while &k <= cap {
        if x.re_numerator(&k)?.magnitude() > &BigUint::one() {
            let p_coeffs = (&k * &k * 2u32, k.clone());
            return Ok(InversionWitness { k, p_coeffs });
        }
        k <<= 1u32;
    }
    Err(Error::PossiblyZero { cap: cap.clone() })
}

struct RealInverse {
    x: PtcNumber,
    cap: BigUint,
    witness: OnceLock<InversionWitness>,
}

impl RealInverse {
    fn witness(&self) -> Result<&InversionWitness> {
        if let Some(w) = self.witness.get() {
            return Ok(w);
        }
        let w = inversion_witness(&self.x, &self.cap)?;
        Ok(self.witness.get_or_init(|| w))
    }

    fn rational_at(&self, n: &BigUint) -> Result<Rational> {
        let p = self.witness()?.p(n);
        let fp = self.x.re_numerator(&p)?;
        // |f(p(n))| >= p(n)/k - 1 > 0 once |f(k)| > 1
        debug_assert!(!fp.is_zero());
        Ok(Rational::new(BigInt::from(p), fp))
    }
}

impl Oracle for RealInverse {
    fn approx(&self, n: &BigUint) -> Result<(BigInt, BigInt)> {
        let v = self.rational_at(&(n * 4u32))?;
        Ok((to_integer_oracle(n, &v), BigInt::zero()))
    }
}

struct Combine {
    x: PtcNumber,
    y: PtcNumber,
}

/// `(f + κ) / 3` with `κ ∈ {-1, 0, 1}` chosen so the division is exact.
fn third_adjusted(f: BigInt) -> BigInt {
    let r = f.mod_floor(&BigInt::from(3));
    let kappa = if r.is_zero() {
        0
    } else if r.is_one() {
        -1
    } else {
        1
    };
    (f + kappa) / 3
}

impl Oracle for Combine {
    fn approx(&self, n: &BigUint) -> Result<(BigInt, BigInt)> {
        let three_n = n * 3u32;
        let xi = third_adjusted(self.x.re_numerator(&three_n)?);
        let eta = third_adjusted(self.y.re_numerator(&three_n)?);
        Ok((xi, eta))
    }
}

#[derive(Clone, Copy)]
enum Part {
    Re,
    Im,
}

struct Project {
    z: PtcNumber,
    part: Part,
}

impl Oracle for Project {
    fn approx(&self, n: &BigUint) -> Result<(BigInt, BigInt)> {
        let (f, g) = self.z.numerators(n)?;
        Ok(match self.part {
            Part::Re => (f, BigInt::zero()),
            Part::Im => (g, BigInt::zero()),
        })
    }
}

struct Negate {
    z: PtcNumber,
}

impl Oracle for Negate {
    fn approx(&self, n: &BigUint) -> Result<(BigInt, BigInt)> {
        let (f, g) = self.z.numerators(n)?;
        Ok((-f, -g))
    }
}

struct Scale {
    z: PtcNumber,
    factor: i64,
}

impl Oracle for Scale {
    fn approx(&self, n: &BigUint) -> Result<(BigInt, BigInt)> {
        if self.factor == 0 {
            return Ok((BigInt::zero(), BigInt::zero()));
        }
        // |s·z - f(|s|n)/n| = |s|·|z - f(|s|n)/(|s|n)| <= 1/n
        let (f, g) = self.z.numerators(&(n * self.factor.unsigned_abs()))?;
        if self.factor < 0 { Ok((-f, -g)) } else { Ok((f, g)) }
    }
}

/// Real part, as a real number.
pub fn re(z: &PtcNumber) -> PtcNumber {
    if z.is_real() {
        return z.clone();
    }
    PtcNumber::with_oracle(Project { z: z.clone(), part: Part::Re }, true)
}

/// Imaginary part, as a real number.
pub fn im(z: &PtcNumber) -> PtcNumber {
    if z.is_real() {
        return PtcNumber::zero();
    }
    PtcNumber::with_oracle(Project { z: z.clone(), part: Part::Im }, true)
}

/// `x + y·i` from two real numbers.
pub fn combine_complex(x: &PtcNumber, y: &PtcNumber) -> Result<PtcNumber> {
    if !x.is_real() || !y.is_real() {
        return Err(Error::NonRealOperand);
    }
    Ok(PtcNumber::with_oracle(Combine { x: x.clone(), y: y.clone() }, false))
}

fn combine_parts(x: PtcNumber, y: PtcNumber) -> PtcNumber {
    combine_complex(&x, &y).expect("parts are real")
}

pub fn negate(z: &PtcNumber) -> PtcNumber {
    PtcNumber::with_oracle(Negate { z: z.clone() }, z.is_real())
}

/// Exact scaling by a small integer, without the product machinery.
pub fn scale(z: &PtcNumber, factor: i64) -> PtcNumber {
    PtcNumber::with_oracle(Scale { z: z.clone(), factor }, z.is_real())
}

fn real_add(x: &PtcNumber, y: &PtcNumber) -> PtcNumber {
    PtcNumber::with_oracle(RealSum { x: x.clone(), y: y.clone() }, true)
}

fn real_mul(x: &PtcNumber, y: &PtcNumber) -> PtcNumber {
    PtcNumber::with_oracle(RealProduct { x: x.clone(), y: y.clone() }, true)
}

fn real_inv(x: &PtcNumber, cap: &BigUint) -> PtcNumber {
    PtcNumber::with_oracle(RealInverse { x: x.clone(), cap: cap.clone(), witness: OnceLock::new() }, true)
}

pub fn add(x: &PtcNumber, y: &PtcNumber) -> PtcNumber {
    match (x.is_real(), y.is_real()) {
        (true, true) => real_add(x, y),
        (true, false) => combine_parts(real_add(x, &re(y)), im(y)),
        (false, true) => combine_parts(real_add(&re(x), y), im(x)),
        (false, false) => combine_parts(real_add(&re(x), &re(y)), real_add(&im(x), &im(y))),
    }
}

pub fn sub(x: &PtcNumber, y: &PtcNumber) -> PtcNumber {
    add(x, &negate(y))
}

/// `(a + bi)(c + di) = (ac - bd) + (ad + bc)i`, each real product with its
/// own scaling constant.
pub fn multiply(x: &PtcNumber, y: &PtcNumber) -> PtcNumber {
    match (x.is_real(), y.is_real()) {
        (true, true) => real_mul(x, y),
        (true, false) => combine_parts(real_mul(x, &re(y)), real_mul(x, &im(y))),
        (false, true) => combine_parts(real_mul(&re(x), y), real_mul(&im(x), y)),
        (false, false) => {
            let (a, b, c, d) = (re(x), im(x), re(y), im(y));
            let real = real_add(&real_mul(&a, &c), &negate(&real_mul(&b, &d)));
            let imag = real_add(&real_mul(&a, &d), &real_mul(&b, &c));
            combine_parts(real, imag)
        }
    }
}

/// Reciprocal. Real operands use the direct construction; complex ones go
/// through `(a - bi) / (a² + b²)` with a single real inversion.
///
/// The witness search runs lazily at first evaluation and fails with
/// [`Error::PossiblyZero`] if no `k <= cap` has `|f(k)| > 1`.
pub fn invert(x: &PtcNumber, cap: &BigUint) -> PtcNumber {
    if x.is_real() {
        return real_inv(x, cap);
    }
    let (a, b) = (re(x), im(x));
    let norm = real_add(&real_mul(&a, &a), &real_mul(&b, &b));
    let inv = real_inv(&norm, cap);
    combine_parts(real_mul(&a, &inv), negate(&real_mul(&b, &inv)))
}

pub fn divide(x: &PtcNumber, y: &PtcNumber, cap: &BigUint) -> PtcNumber {
    multiply(x, &invert(y, cap))
}

/// `z^k` by repeated multiplication; `z^0 = 1`.
pub fn int_pow(z: &PtcNumber, k: u32) -> PtcNumber {
    if k == 0 {
        return PtcNumber::one();
    }
    let mut acc = z.clone();
    for _ in 1..k {
        acc = multiply(&acc, z);
    }
    acc
}

impl PtcNumber {
    pub fn re(&self) -> PtcNumber {
        re(self)
    }

    pub fn im(&self) -> PtcNumber {
        im(self)
    }

    pub fn recip(&self) -> PtcNumber {
        invert(self, &default_zero_cap())
    }

    pub fn recip_with_cap(&self, cap: &BigUint) -> PtcNumber {
        invert(self, cap)
    }

    pub fn scale(&self, factor: i64) -> PtcNumber {
        scale(self, factor)
    }

    pub fn pow(&self, k: u32) -> PtcNumber {
        int_pow(self, k)
    }
}

impl Add for &PtcNumber {
    type Output = PtcNumber;
    fn add(self, rhs: &PtcNumber) -> PtcNumber {
        add(self, rhs)
    }
}

impl Sub for &PtcNumber {
    type Output = PtcNumber;
    fn sub(self, rhs: &PtcNumber) -> PtcNumber {
        sub(self, rhs)
    }
}

impl Mul for &PtcNumber {
    type Output = PtcNumber;
    fn mul(self, rhs: &PtcNumber) -> PtcNumber {
        multiply(self, rhs)
    }
}

impl Div for &PtcNumber {
    type Output = PtcNumber;
    fn div(self, rhs: &PtcNumber) -> PtcNumber {
        divide(self, rhs, &default_zero_cap())
    }
}

impl Neg for &PtcNumber {
    type Output = PtcNumber;
    fn neg(self) -> PtcNumber {
        negate(self)
    }
}

impl Neg for PtcNumber {
    type Output = PtcNumber;
    fn neg(self) -> PtcNumber {
        negate(&self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::GaussianRational;
    use num_traits::Signed;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn within(z: &PtcNumber, exact: &GaussianRational, n: u64) -> bool {
        let e = z.eval(n).unwrap();
        let b = q(1, n as i64);
        (&e - exact).norm_sqr() <= &b * &b
    }

    fn two_exact() -> PtcNumber {
        PtcNumber::from_real_oracle(|n: &BigUint| Ok(BigInt::from(n.clone()) * 2))
    }

    #[test]
    fn add_halves_exact() {
        let h = PtcNumber::rational(q(1, 2));
        let s = &h + &h;
        // S(16) = (8 + 8)/32, ⌊4·1/2⌉ … evaluates to 1 exactly
        assert_eq!(s.eval(4u32).unwrap(), GaussianRational::one());
    }

    #[test]
    fn product_scaling_example() {
        let two = two_exact();
        assert_eq!(product_scaling(&two, &two).unwrap().c, BigUint::from(8u32));
        let p = &two * &two;
        for n in 1..30u32 {
            assert_eq!(p.eval(n).unwrap(), GaussianRational::from_real(q(4, 1)));
        }
    }

    #[test]
    fn inversion_example() {
        let two = two_exact();
        let w = inversion_witness(&two, &default_zero_cap()).unwrap();
        assert_eq!(w.k, BigUint::one());
        assert_eq!(w.p_coeffs, (BigUint::from(2u32), BigUint::one()));
        let direct = RealInverse { x: two.clone(), cap: default_zero_cap(), witness: OnceLock::new() };
        for n in 1..30u32 {
            // I(n) = (2n + 1) / (2(2n + 1))
            assert_eq!(direct.rational_at(&BigUint::from(n)).unwrap(), q(1, 2));
        }
        let inv = two.recip();
        for n in (2..30u32).step_by(2) {
            assert_eq!(inv.eval(n).unwrap().re, q(1, 2));
        }
    }

    #[test]
    fn invert_zero_is_possibly_zero() {
        let cap = BigUint::one() << 16u32;
        let z = PtcNumber::zero().recip_with_cap(&cap);
        assert_eq!(z.eval(10u32), Err(Error::PossiblyZero { cap }));
    }

    #[test]
    fn invert_third() {
        let z = PtcNumber::rational(q(1, 3)).recip();
        for n in [1u64, 2, 10, 1000, 1_000_000] {
            assert!(within(&z, &GaussianRational::from_real(q(3, 1)), n));
        }
    }

    #[test]
    fn negate_examples() {
        let t = PtcNumber::rational(q(1, 3));
        let n1 = -&t;
        let n2 = -&n1;
        for n in 1..40u32 {
            assert_eq!(n1.eval(n).unwrap(), -t.eval(n).unwrap());
            assert_eq!(n2.eval(n).unwrap(), t.eval(n).unwrap());
            assert!((-PtcNumber::zero()).eval(n).unwrap().is_zero());
        }
    }

    #[test]
    fn combine_examples() {
        let z = combine_complex(&PtcNumber::zero(), &PtcNumber::one()).unwrap();
        for n in 1..30u64 {
            if n % 3 == 0 {
                assert_eq!(z.eval(n).unwrap(), GaussianRational::i());
            }
            assert!(within(&z, &GaussianRational::i(), n));
        }
        let w = combine_complex(&PtcNumber::rational(q(1, 2)), &PtcNumber::rational(q(-1, 2))).unwrap();
        assert!(within(&w, &GaussianRational::new(q(1, 2), q(-1, 2)), 10));
        assert_eq!(combine_complex(&PtcNumber::i(), &PtcNumber::one()).err(), Some(Error::NonRealOperand));
    }

    #[test]
    fn projections() {
        assert!(re(&PtcNumber::i()).eval(7u32).unwrap().is_zero());
        assert_eq!(im(&PtcNumber::i()).eval(7u32).unwrap(), GaussianRational::one());
        let a = PtcNumber::rational(q(2, 3));
        let b = PtcNumber::rational(q(-5, 7));
        let z = combine_complex(&a, &b).unwrap();
        for n in 1..50u64 {
            assert!(within(&im(&z), &GaussianRational::from_real(q(-5, 7)), n));
            let two = q(2, n as i64);
            assert!((&re(&z).eval(n).unwrap().re - &a.eval(n).unwrap().re).abs() <= two);
        }
    }

    #[test]
    fn complex_mul_and_div() {
        let u = GaussianRational::new(q(3, 2), q(-2, 5));
        let v = GaussianRational::new(q(-1, 3), q(7, 4));
        let (x, y) = (PtcNumber::constant(u.clone()), PtcNumber::constant(v.clone()));
        for n in [1u64, 2, 3, 10, 1000, 1_000_000] {
            assert!(within(&(&x * &y), &(&u * &v), n));
            assert!(within(&(&x / &y), &(&u / &v), n));
            assert!(within(&(&x + &y), &(&u + &v), n));
            assert!(within(&(&x - &y), &(&u - &v), n));
        }
    }

    #[test]
    fn scale_is_exact_on_numerators() {
        let t = PtcNumber::rational(q(1, 3));
        let s = scale(&t, -16);
        for n in [1u64, 5, 99] {
            assert!(within(&s, &GaussianRational::from_real(q(-16, 3)), n));
        }
        assert!(scale(&t, 0).eval(3u32).unwrap().is_zero());
    }

    #[test]
    fn kappa_adjustment() {
        for f in -10i64..10 {
            let xi: BigInt = third_adjusted(BigInt::from(f));
            assert!((BigInt::from(f) - &xi * BigInt::from(3)).abs() <= BigInt::one());
        }
    }
}
