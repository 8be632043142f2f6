//! Exact arithmetic kernel: rationals, Gaussian rationals, nearest-integer
//! rounding and outward-rounded root enclosures.

pub mod counter;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
pub use counter::OpCounter;

/// Canonical arbitrary-precision rational (denominator positive, reduced).
///
/// Arithmetic goes through the operator impls below, each of which is
/// recorded by [`counter`].
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    /// Panics if `den` is zero.
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Self {
        Rational(BigRational::new(num.into(), den.into()))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn from_big(q: BigRational) -> Self {
        Rational(q)
    }

    /// Exact binary value of a finite float.
    pub fn from_f64(x: f64) -> Option<Self> {
        BigRational::from_float(x).map(Rational)
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }

    pub fn into_big(self) -> BigRational {
        self.0
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn recip(&self) -> Self {
        counter::record(self.bits());
        Rational(self.0.recip())
    }

    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    pub fn ceil(&self) -> BigInt {
        self.0.ceil().to_integer()
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Bit length of numerator plus denominator.
    pub fn bits(&self) -> u64 {
        self.0.numer().bits() + self.0.denom().bits()
    }

    /// Exact power by repeated squaring.
    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Rational::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn min(self, other: Self) -> Self {
        if self <= other { self } else { other }
    }

    pub fn max(self, other: Self) -> Self {
        if self >= other { self } else { other }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational::from_integer(n)
    }
}

macro_rules! rational_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                counter::record(self.bits() + rhs.bits());
                Rational($trait::$method(&self.0, &rhs.0))
            }
        }
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                $trait::$method(&self, &rhs)
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                $trait::$method(&self, rhs)
            }
        }
        impl $trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                $trait::$method(self, &rhs)
            }
        }
    };
}

rational_binop!(Add, add);
rational_binop!(Sub, sub);
rational_binop!(Mul, mul);
rational_binop!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Rational> for Rational {
    fn mul_assign(&mut self, rhs: &Rational) {
        *self = &*self * rhs;
    }
}

/// Exact complex number with rational parts, an element of Q[i].
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    pub fn from_real(re: Rational) -> Self {
        GaussianRational { re, im: Rational::zero() }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_real(Rational::one())
    }

    pub fn i() -> Self {
        GaussianRational { re: Rational::zero(), im: Rational::one() }
    }

    pub fn from_f64(re: f64, im: f64) -> Option<Self> {
        Some(GaussianRational { re: Rational::from_f64(re)?, im: Rational::from_f64(im)? })
    }

    /// `(num_re + num_im i) / den`.
    pub fn from_numerators(num_re: &BigInt, num_im: &BigInt, den: &BigUint) -> Self {
        let d = BigInt::from(den.clone());
        GaussianRational {
            re: Rational::new(num_re.clone(), d.clone()),
            im: Rational::new(num_im.clone(), d),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussianRational { re: self.re.clone(), im: -&self.im }
    }

    /// `re² + im²`, exact.
    pub fn norm_sqr(&self) -> Rational {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    pub fn scale(&self, s: &Rational) -> Self {
        GaussianRational { re: &self.re * s, im: &self.im * s }
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = GaussianRational::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Upper enclosure of the modulus, within `tol` of the true value.
    pub fn abs_upper(&self, tol: &Rational) -> Rational {
        if self.im.is_zero() {
            return self.re.abs();
        }
        if self.re.is_zero() {
            return self.im.abs();
        }
        sqrt_upper(&self.norm_sqr(), tol).expect("norm is non-negative")
    }

    /// Lower enclosure of the modulus, within `tol` of the true value.
    pub fn abs_lower(&self, tol: &Rational) -> Rational {
        if self.im.is_zero() {
            return self.re.abs();
        }
        if self.re.is_zero() {
            return self.im.abs();
        }
        sqrt_lower(&self.norm_sqr(), tol).expect("norm is non-negative")
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }

    pub fn bits(&self) -> u64 {
        self.re.bits() + self.im.bits()
    }

    /// Lexicographic order on `(re, im)`.
    pub fn lex_cmp(&self, other: &Self) -> Ordering {
        self.re.cmp(&other.re).then_with(|| self.im.cmp(&other.im))
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{}i", self.im)
        } else if self.im.is_negative() {
            write!(f, "{} - {}i", self.re, -&self.im)
        } else {
            write!(f, "{} + {}i", self.re, self.im)
        }
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<Rational> for GaussianRational {
    fn from(re: Rational) -> Self {
        GaussianRational::from_real(re)
    }
}

impl Add<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl Sub<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl Mul<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        if self.im.is_zero() && rhs.im.is_zero() {
            return GaussianRational::from_real(&self.re * &rhs.re);
        }
        GaussianRational {
            re: &(&self.re * &rhs.re) - &(&self.im * &rhs.im),
            im: &(&self.re * &rhs.im) + &(&self.im * &rhs.re),
        }
    }
}

impl Div<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    /// Panics on division by zero.
    fn div(self, rhs: &GaussianRational) -> GaussianRational {
        if rhs.im.is_zero() {
            return GaussianRational { re: &self.re / &rhs.re, im: &self.im / &rhs.re };
        }
        let n = rhs.norm_sqr();
        let num = self * &rhs.conj();
        GaussianRational { re: &num.re / &n, im: &num.im / &n }
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational { re: -&self.re, im: -&self.im }
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        -&self
    }
}

macro_rules! gaussian_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: GaussianRational) -> GaussianRational {
                $trait::$method(&self, &rhs)
            }
        }
        impl $trait<&GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: &GaussianRational) -> GaussianRational {
                $trait::$method(&self, rhs)
            }
        }
        impl $trait<GaussianRational> for &GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: GaussianRational) -> GaussianRational {
                $trait::$method(self, &rhs)
            }
        }
    };
}

gaussian_owned_binop!(Add, add);
gaussian_owned_binop!(Sub, sub);
gaussian_owned_binop!(Mul, mul);
gaussian_owned_binop!(Div, div);

/// Nearest integer to `q`; ties go to the even neighbour.
pub fn round_nearest(q: &Rational) -> BigInt {
    counter::record(q.bits());
    let num = q.numer();
    let den = q.denom();
    let (fl, rem) = num.div_mod_floor(den);
    // rem in [0, den); compare 2·rem with den
    let twice = &rem << 1usize;
    match twice.cmp(den) {
        Ordering::Less => fl,
        Ordering::Greater => fl + 1,
        Ordering::Equal => {
            if fl.is_even() {
                fl
            } else {
                fl + 1
            }
        }
    }
}

/// Scale `S = 2^e` with `2 / S <= tol`.
fn enclosure_scale(tol: &Rational) -> BigUint {
    let x = (Rational::from_integer(2) / tol).ceil();
    BigUint::one() << x.magnitude().bits()
}

fn exact_root(q: &Rational, k: u32) -> Option<Rational> {
    let n = q.numer().magnitude();
    let d = q.denom().magnitude();
    let rn = n.nth_root(k);
    let rd = d.nth_root(k);
    if num_traits::pow(rn.clone(), k as usize) == *n && num_traits::pow(rd.clone(), k as usize) == *d {
        Some(Rational::new(BigInt::from(rn), BigInt::from(rd)))
    } else {
        None
    }
}

fn check_root_args(q: &Rational, tol: &Rational) -> Result<()> {
    if q.is_negative() {
        return Err(Error::NegativeSqrt);
    }
    if !tol.is_positive() {
        return Err(Error::NonPositiveTolerance);
    }
    Ok(())
}

/// Rational `r` with `r^k >= q` and `r - q^(1/k) <= tol`.
pub fn root_upper(q: &Rational, k: u32, tol: &Rational) -> Result<Rational> {
    check_root_args(q, tol)?;
    assert!(k >= 1, "root degree must be positive");
    if let Some(r) = exact_root(q, k) {
        return Ok(r);
    }
    let s = enclosure_scale(tol);
    let scaled = q * &Rational::from_integer(BigInt::from(num_traits::pow(s.clone(), k as usize)));
    let c = scaled.ceil().to_biguint().expect("non-negative");
    let mut r = c.nth_root(k);
    if num_traits::pow(r.clone(), k as usize) < c {
        r += 1u32;
    }
    Ok(Rational::new(BigInt::from(r), BigInt::from(s)))
}

/// Rational `r` with `r^k <= q` and `q^(1/k) - r <= tol`.
pub fn root_lower(q: &Rational, k: u32, tol: &Rational) -> Result<Rational> {
    check_root_args(q, tol)?;
    assert!(k >= 1, "root degree must be positive");
    if let Some(r) = exact_root(q, k) {
        return Ok(r);
    }
    let s = enclosure_scale(tol);
    let scaled = q * &Rational::from_integer(BigInt::from(num_traits::pow(s.clone(), k as usize)));
    let fl = scaled.floor().to_biguint().expect("non-negative");
    Ok(Rational::new(BigInt::from(fl.nth_root(k)), BigInt::from(s)))
}

/// Outward-rounded upper enclosure of `√q`.
pub fn sqrt_upper(q: &Rational, tol: &Rational) -> Result<Rational> {
    root_upper(q, 2, tol)
}

/// Lower enclosure of `√q`, the mirror of [`sqrt_upper`].
pub fn sqrt_lower(q: &Rational, tol: &Rational) -> Result<Rational> {
    root_lower(q, 2, tol)
}

/// `2^-bits` relative to the magnitude of `√q`; zero for `q = 0`.
fn relative_sqrt_tol(q: &Rational, bits: u32) -> Option<Rational> {
    if q.is_zero() {
        return None;
    }
    let e = (q.numer().bits() as i64 - q.denom().bits() as i64 - 1).div_euclid(2) - bits as i64;
    Some(pow2(e))
}

/// `2^e` for any integer `e`.
pub fn pow2(e: i64) -> Rational {
    if e >= 0 {
        Rational::from_integer(BigInt::one() << e as u64)
    } else {
        Rational::new(BigInt::one(), BigInt::one() << (-e) as u64)
    }
}

/// [`sqrt_upper`] with a tolerance of about `2^-bits·√q`.
pub fn sqrt_upper_rel(q: &Rational, bits: u32) -> Result<Rational> {
    match relative_sqrt_tol(q, bits) {
        None => Ok(Rational::zero()),
        Some(t) => sqrt_upper(q, &t),
    }
}

/// [`sqrt_lower`] with a tolerance of about `2^-bits·√q`.
pub fn sqrt_lower_rel(q: &Rational, bits: u32) -> Result<Rational> {
    match relative_sqrt_tol(q, bits) {
        None => Ok(Rational::zero()),
        Some(t) => sqrt_lower(q, &t),
    }
}

/// Smallest multiple of `2^(e - bits)` that is `>= q`, where `2^e` is
/// roughly the size of `q`. Keeps about `bits` significant bits.
pub fn round_up_rel(q: &Rational, bits: u32) -> Rational {
    if q.is_zero() {
        return Rational::zero();
    }
    let e = q.numer().bits() as i64 - q.denom().bits() as i64;
    let unit = pow2(e - bits as i64);
    let k = (q / &unit).ceil();
    &Rational::from_integer(k) * &unit
}

/// `1 / 2^bits` as a rational.
pub fn dyadic_tol(bits: u32) -> Rational {
    Rational::new(BigInt::one(), BigInt::one() << bits)
}

/// Round `q` to the nearest multiple of `2^-bits`.
pub fn round_dyadic(q: &Rational, bits: u32) -> Rational {
    let scale = BigInt::one() << bits;
    let n = round_nearest(&(q * &Rational::from_integer(scale.clone())));
    Rational::new(n, scale)
}
