//! Kantorovich certificates for Newton's method and certified refinement.

use std::fmt;

use num_bigint::BigUint;
use num_traits::One;

use super::poly::RationalPolynomial;
use crate::error::{Error, Result};
use crate::kernel::{dyadic_tol, round_dyadic, round_up_rel, sqrt_lower_rel, sqrt_upper_rel, GaussianRational, Rational};

const REL_BITS: u32 = 96;

/// Accepted convergence certificate for Newton's method from `zeta`.
///
/// With `h = a·b·L <= 1/2`, the iteration from `zeta` stays in the closed disc
/// of radius `t_star_upper` about `zeta` and converges to the unique root there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KantorovichCertificate {
    pub zeta: GaussianRational,
    pub disc_radius: Rational,
    /// Upper bound for `|f''|` on the disc of radius `disc_radius`, at least 1/2.
    pub lipschitz: Rational,
    pub a: Rational,
    pub b: Rational,
    pub h: Rational,
    /// Upper bound on `1 − √(1 − 2h)`.
    pub theta_upper: Rational,
    pub t_star_upper: Rational,
}

impl KantorovichCertificate {
    /// `zeta=… a=… b=… L=… h=… t*=…`, all exact fractions.
    pub fn dump_line(&self) -> String {
        format!(
            "zeta={} a={} b={} L={} h={} t*={}",
            self.zeta, self.a, self.b, self.lipschitz, self.h, self.t_star_upper
        )
    }

    /// Whether `z` lies in the certified disc, exactly.
    pub fn contains(&self, z: &GaussianRational) -> bool {
        (z - &self.zeta).norm_sqr() <= &self.t_star_upper * &self.t_star_upper
    }
}

/// Why a candidate seed was not certified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reject {
    DerivativeZero,
    HTooLarge { h: Rational },
    DiscTooSmall { t_star_upper: Rational, disc_radius: Rational },
}

impl fmt::Display for Reject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Reject::DerivativeZero => write!(f, "derivative-zero"),
            Reject::HTooLarge { h } => write!(f, "h-too-large (h = {:.3e})", h.to_f64()),
            Reject::DiscTooSmall { t_star_upper, disc_radius } => {
                write!(f, "disc-too-small (t* = {:.3e} > r = {:.3e})", t_star_upper.to_f64(), disc_radius.to_f64())
            }
        }
    }
}

/// `Σ j(j−1)|c_j|·R^(j−2)` with `R = |ζ| + r`, floored at 1/2.
fn second_derivative_bound(f: &RationalPolynomial, zeta: &GaussianRational, r: &Rational) -> Rational {
    let tol = dyadic_tol(64);
    let radius = &zeta.abs_upper(&tol) + r;
    let mut sum = Rational::zero();
    let mut power = Rational::one(); // R^(j-2)
    for (j, c) in f.full_coeffs().iter().enumerate().skip(2) {
        let w = Rational::from_integer((j * (j - 1)) as i64);
        sum += &(&(&w * &c.abs_upper(&tol)) * &power);
        power *= &radius;
    }
    sum.max(Rational::new(1, 2))
}

/// Checks the Kantorovich condition for `f` at `zeta` on the disc of radius
/// `disc_radius`. A [`Reject`] is a verdict, not a failure.
pub fn kantorovich_certify(
    f: &RationalPolynomial,
    zeta: &GaussianRational,
    disc_radius: &Rational,
) -> std::result::Result<KantorovichCertificate, Reject> {
    let (fz, dfz) = f.eval_with_derivative(zeta);
    if dfz.is_zero() {
        return Err(Reject::DerivativeZero);
    }
    let d2 = dfz.norm_sqr();
    let a = sqrt_upper_rel(&d2.recip(), REL_BITS).expect("positive");
    let b = sqrt_upper_rel(&(&fz.norm_sqr() / &d2), REL_BITS).expect("nonnegative");
    let lipschitz = second_derivative_bound(f, zeta, disc_radius);
    let h = &(&a * &b) * &lipschitz;
    if h > Rational::new(1, 2) {
        return Err(Reject::HTooLarge { h });
    }
    // 1 − √(1−2h) = 2h / (1 + √(1−2h)); a lower bound on the root keeps this an upper bound
    let two_h = &h * &Rational::from_integer(2);
    let s = sqrt_lower_rel(&(&Rational::one() - &two_h), REL_BITS).expect("nonnegative");
    let theta_upper = round_up_rel(&(&two_h / &(&Rational::one() + &s)), REL_BITS);
    let t_star_upper = round_up_rel(&(&theta_upper / &(&a * &lipschitz)), REL_BITS);
    if &t_star_upper > disc_radius {
        return Err(Reject::DiscTooSmall { t_star_upper, disc_radius: disc_radius.clone() });
    }
    Ok(KantorovichCertificate {
        zeta: zeta.clone(),
        disc_radius: disc_radius.clone(),
        lipschitz,
        a,
        b,
        h,
        theta_upper,
        t_star_upper,
    })
}

/// A certified Newton run.
#[derive(Clone, Debug)]
pub struct NewtonRun {
    /// `ρ⁽⁰⁾ = ζ, ρ⁽¹⁾, …, ρ⁽ᵛ⁾`.
    pub iterates: Vec<GaussianRational>,
    pub nu: usize,
    /// Upper bound on `1 / (−ln θ)`; `None` when `h = 1/2`.
    pub c0: Option<Rational>,
    bounds: Vec<Rational>,
    // certificate the tail of the run is measured against, and steps taken from its centre
    theta_upper: Rational,
    a_l: Rational,
    steps: usize,
}

impl NewtonRun {
    /// Upper bound on `|ρ⁽ᵛ⁾ − root|`. While iterates are exact this is
    /// `θ^(2^ν) / (2^ν·a·L)`; past the last iterate it extrapolates the same
    /// formula from the most recent certificate.
    pub fn error_bound_at(&self, nu: usize) -> Rational {
        match self.bounds.get(nu) {
            Some(b) => b.clone(),
            None => error_bound(&self.theta_upper, &self.a_l, self.steps + (nu - self.nu)),
        }
    }

    pub fn last(&self) -> &GaussianRational {
        self.iterates.last().expect("nonempty")
    }
}

fn error_bound(theta: &Rational, a_l: &Rational, nu: usize) -> Rational {
    let mut t = theta.clone();
    for _ in 0..nu {
        t = round_up_rel(&(&t * &t), REL_BITS);
    }
    let denom = a_l * &Rational::from_integer(num_bigint::BigInt::one() << nu);
    round_up_rel(&(&t / &denom), REL_BITS)
}

/// Lower bound on the radius within which the certified root is the only one.
fn uniqueness_radius(c: &KantorovichCertificate) -> Rational {
    // (1 + √(1−2h)) / (aL) = (2 − θ) / (aL)
    let two = Rational::from_integer(2);
    let num = &two - &c.theta_upper;
    let q = &num / &(&c.a * &c.lipschitz);
    // round down by rounding up the reciprocal
    round_up_rel(&q.recip(), REL_BITS).recip()
}

/// Runs Newton's method from a certified seed until the certified error is
/// at most `1/m`.
///
/// Iterates stay exact while they are small. Once an iterate outgrows a size
/// budget tied to `m` it is rounded to a dyadic point, and the rounded point
/// replaces it only if it stays in the seed's disc and certifies afresh with
/// the known root inside its uniqueness radius; the bounds then continue from
/// that certificate. Every iterate lies in the seed's certified disc.
pub fn newton_refine(f: &RationalPolynomial, cert: &KantorovichCertificate, m: &BigUint) -> Result<NewtonRun> {
    let target = Rational::new(1, num_bigint::BigInt::from(m.clone()));
    let frac_bits = 2 * m.bits() as u32 + 64;
    let size_budget = 2 * frac_bits as u64 + 64;
    let tol = dyadic_tol(frac_bits + 8);

    let mut cur = cert.clone();
    let mut a_l = &cur.a * &cur.lipschitz;
    let mut steps = 0;
    let mut iterates = vec![cert.zeta.clone()];
    let mut bounds = vec![error_bound(&cur.theta_upper, &a_l, 0)];
    while bounds.last().expect("nonempty") > &target {
        let rho = iterates.last().expect("nonempty");
        let (fz, dfz) = f.eval_with_derivative(rho);
        if fz.is_zero() {
            // exact root
            *bounds.last_mut().expect("nonempty") = Rational::zero();
            break;
        }
        let nu = iterates.len();
        if dfz.is_zero() {
            return Err(Error::LeftCertifiedDisc(nu));
        }
        let next = rho - &(&fz / &dfz);
        if !cur.contains(&next) || !cert.contains(&next) {
            return Err(Error::LeftCertifiedDisc(nu));
        }
        steps += 1;
        let e = error_bound(&cur.theta_upper, &a_l, steps);
        if next.bits() > size_budget {
            let rounded = GaussianRational::new(round_dyadic(&next.re, frac_bits), round_dyadic(&next.im, frac_bits));
            let e2 = round_up_rel(&(&e + &(&rounded - &next).abs_upper(&tol)), REL_BITS);
            let radius = &e2 * &Rational::from_integer(4);
            let fresh = if cert.contains(&rounded) { kantorovich_certify(f, &rounded, &radius).ok() } else { None };
            if let Some(c2) = fresh {
                if e2 < uniqueness_radius(&c2) {
                    a_l = &c2.a * &c2.lipschitz;
                    steps = 0;
                    bounds.push(e2.min(c2.t_star_upper.clone()));
                    iterates.push(rounded);
                    cur = c2;
                    continue;
                }
            }
        }
        bounds.push(e);
        iterates.push(next);
    }
    let nu = iterates.len() - 1;
    Ok(NewtonRun {
        iterates,
        nu,
        c0: c0_upper(&cert.theta_upper),
        bounds,
        theta_upper: cur.theta_upper,
        a_l,
        steps,
    })
}

/// `1 / (−ln θ)` from above, using a lower bound on `ln(1/θ)`.
fn c0_upper(theta: &Rational) -> Option<Rational> {
    if theta.is_zero() {
        return Some(Rational::zero());
    }
    if theta >= &Rational::one() {
        return None;
    }
    let ln = ln_lower(&theta.recip());
    (ln.is_positive()).then(|| round_up_rel(&ln.recip(), REL_BITS))
}

/// `2·Σ_{i<K} t^(2i+1)/(2i+1)` with `t = (y−1)/(y+1)`: partial sums of
/// `ln y` with positive terms, hence lower bounds.
fn ln_series_lower(y: &Rational) -> Rational {
    let one = Rational::one();
    let t = &(y - &one) / &(y + &one);
    let t2 = &t * &t;
    let mut power = t;
    let mut sum = Rational::zero();
    for i in 0..40 {
        sum += &(&power / &Rational::from_integer(2 * i + 1));
        power = round_down_pos(&(&power * &t2));
    }
    &sum * &Rational::from_integer(2)
}

fn round_down_pos(q: &Rational) -> Rational {
    // keep term sizes bounded; rounding down preserves the lower bound
    if q.is_zero() {
        return Rational::zero();
    }
    let unit = dyadic_tol(200);
    &Rational::from_integer((q / &unit).floor()) * &unit
}

/// Lower bound on `ln x` for `x >= 1`.
fn ln_lower(x: &Rational) -> Rational {
    let two = Rational::from_integer(2);
    let mut e = x.numer().bits() as i64 - x.denom().bits() as i64;
    let mut y = x / &crate::kernel::pow2(e);
    while y < Rational::one() {
        y = &y * &two;
        e -= 1;
    }
    while y >= two {
        y = &y / &two;
        e += 1;
    }
    let ln2 = ln_series_lower(&two);
    &(&ln2 * &Rational::from_integer(e)) + &ln_series_lower(&y)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn real(n: i64, d: i64) -> GaussianRational {
        GaussianRational::from_real(q(n, d))
    }

    fn x2m2() -> RationalPolynomial {
        RationalPolynomial::from_integers(&[-2, 0]).unwrap()
    }

    #[test]
    fn hand_case() {
        let c = kantorovich_certify(&x2m2(), &real(3, 2), &q(1, 2)).unwrap();
        assert_eq!(c.a, q(1, 3));
        assert_eq!(c.b, q(1, 12));
        assert_eq!(c.lipschitz, q(2, 1));
        assert_eq!(c.h, q(1, 18));
        // t* = (3 − 2√2)/2 ≈ 0.0857864
        let t = c.t_star_upper.to_f64();
        assert!((t - (3.0 - 2.0 * 2f64.sqrt()) / 2.0).abs() < 1e-15);
        // the root sits on the boundary: (3/2 − t*)² <= 2
        let inner = &q(3, 2) - &c.t_star_upper;
        assert!(&inner * &inner <= q(2, 1));
    }

    #[test]
    fn exact_root_seed() {
        let f = RationalPolynomial::from_integers(&[-4, 0]).unwrap();
        let c = kantorovich_certify(&f, &real(2, 1), &q(1, 1)).unwrap();
        assert!(c.b.is_zero() && c.h.is_zero() && c.t_star_upper.is_zero());
        let run = newton_refine(&f, &c, &BigUint::from(10u32).pow(30)).unwrap();
        assert_eq!(run.nu, 0);
        assert_eq!(run.c0, Some(Rational::zero()));
    }

    #[test]
    fn rejections() {
        assert_eq!(kantorovich_certify(&x2m2(), &real(0, 1), &q(1, 1)), Err(Reject::DerivativeZero));
        assert!(matches!(kantorovich_certify(&x2m2(), &real(1, 10), &q(1, 1)), Err(Reject::HTooLarge { .. })));
        assert!(matches!(
            kantorovich_certify(&x2m2(), &real(3, 2), &q(1, 100)),
            Err(Reject::DiscTooSmall { .. })
        ));
    }

    #[test]
    fn hand_iterates() {
        let f = x2m2();
        let c = kantorovich_certify(&f, &real(3, 2), &q(1, 2)).unwrap();
        let run = newton_refine(&f, &c, &BigUint::from(1_000_000u32)).unwrap();
        assert_eq!(run.iterates[1], real(17, 12));
        assert_eq!(run.iterates[2], real(577, 408));
        assert_eq!(run.error_bound_at(0), c.t_star_upper);
        assert!(run.error_bound_at(run.nu) <= q(1, 1_000_000));
        assert!(run.error_bound_at(run.nu - 1) > q(1, 1_000_000));
        let c0 = run.c0.clone().unwrap().to_f64();
        // θ = 1 − √(8/9) = (3 − 2√2)/3, written without cancellation
        let theta = (1.0 / 9.0) / (1.0 + (8.0f64 / 9.0).sqrt());
        let expect = 1.0 / -theta.ln();
        assert!((c0 - expect).abs() < 1e-12, "{c0} vs {expect}");
    }

    #[test]
    fn ln_lower_is_tight() {
        for (n, d) in [(2i64, 1i64), (3, 1), (10, 1), (1_000_003, 7), (1, 1)] {
            let x = q(n, d);
            let lo = ln_lower(&x).to_f64();
            let exact = (n as f64 / d as f64).ln();
            assert!(lo <= exact + 1e-15 && exact - lo < 1e-12, "{n}/{d}");
        }
    }

    #[test]
    fn long_runs_round_their_iterates() {
        // cube root of 2 to 200 digits: exact iterates would triple in size each step
        let f = RationalPolynomial::from_integers(&[-2, 0, 0]).unwrap();
        let c = kantorovich_certify(&f, &real(5, 4), &q(1, 4)).unwrap();
        let m = BigUint::from(10u32).pow(200);
        let run = newton_refine(&f, &c, &m).unwrap();
        assert!(run.iterates.iter().all(|z| z.bits() < 8000 && c.contains(z)));
        let tol = Rational::new(1, num_bigint::BigInt::from(10u32).pow(210));
        let root = crate::reference::bisect_real_root(&f, &q(1, 1), &q(2, 1), &tol).unwrap();
        for (nu, rho) in run.iterates.iter().enumerate() {
            let err = (&rho.re - &root).abs();
            assert!(err <= &run.error_bound_at(nu) + &tol, "step {nu}");
        }
        assert!(run.error_bound_at(run.nu) <= Rational::new(1, num_bigint::BigInt::from(m)));
    }

    #[test]
    fn dump_line_is_exact() {
        let c = kantorovich_certify(&x2m2(), &real(3, 2), &q(1, 2)).unwrap();
        assert!(c.dump_line().starts_with("zeta=3/2 a=1/3 b=1/12 L=2 h=1/18 t*="));
    }
}
