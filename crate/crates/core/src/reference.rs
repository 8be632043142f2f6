//! Independent reference machinery for tests: bisection, a stored π,
//! brute-force complex roots, bottleneck root matching and oracles that use
//! the full `1/n` error allowance.

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::approx::PtcNumber;
use crate::closure::RationalPolynomial;
use crate::error::{Error, Result};
use crate::kernel::{round_dyadic, sqrt_upper_rel, GaussianRational, Rational};

/// π to 100 decimal places.
pub const PI_DIGITS: &str = "3.\
1415926535897932384626433832795028841971693993751058209749445923078164062862089986280348253421170679";

/// π truncated to `digits` decimal places.
pub fn reference_pi(digits: usize) -> Result<Rational> {
    let frac = &PI_DIGITS[2..];
    if digits > frac.len() {
        return Err(Error::DigitsTooLarge { requested: digits, available: frac.len() });
    }
    let num: BigInt = format!("3{}", &frac[..digits]).parse().expect("digits");
    Ok(Rational::new(num, num_traits::pow(BigInt::from(10), digits)))
}

fn sign(q: &Rational) -> Ordering {
    q.cmp(&Rational::zero())
}

/// Bisection on a real polynomial with exact sign evaluation. Returns a
/// point of a sign-change bracket of width at most `tol` (or an exact root).
pub fn bisect_real_root(f: &RationalPolynomial, lo: &Rational, hi: &Rational, tol: &Rational) -> Result<Rational> {
    let (lo, hi) = bisect_bracket(f, lo, hi, tol)?;
    Ok(if lo == hi { lo } else { &(&lo + &hi) / &Rational::from_integer(2) })
}

/// Like [`bisect_real_root`] but returns the final bracket `(lo, hi)`;
/// `lo == hi` means an exact root was hit.
pub fn bisect_bracket(
    f: &RationalPolynomial,
    lo: &Rational,
    hi: &Rational,
    tol: &Rational,
) -> Result<(Rational, Rational)> {
    if !f.is_real() {
        return Err(Error::NonRealPolynomial);
    }
    if !tol.is_positive() {
        return Err(Error::NonPositiveTolerance);
    }
    let at = |x: &Rational| f.eval(&GaussianRational::from_real(x.clone())).re;
    let (mut lo, mut hi) = if lo <= hi { (lo.clone(), hi.clone()) } else { (hi.clone(), lo.clone()) };
    let (mut slo, shi) = (sign(&at(&lo)), sign(&at(&hi)));
    if slo == Ordering::Equal {
        return Ok((lo.clone(), lo));
    }
    if shi == Ordering::Equal {
        return Ok((hi.clone(), hi));
    }
    if slo == shi {
        return Err(Error::NoSignChange);
    }
    let two = Rational::from_integer(2);
    while &(&hi - &lo) > tol {
        let mid = &(&lo + &hi) / &two;
        match sign(&at(&mid)) {
            Ordering::Equal => return Ok((mid.clone(), mid)),
            s if s == slo => {
                lo = mid;
                slo = s;
            }
            _ => hi = mid,
        }
    }
    Ok((lo, hi))
}

/// An approximate root with a disc radius that contains a root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootEnclosure {
    pub center: GaussianRational,
    /// `n·|f(center)/f'(center)|`, rounded up.
    pub radius: Rational,
}

/// All complex roots of `f` by Durand–Kerner in `f64`, polished with Newton
/// steps on dyadic rationals of `bits` bits.
pub fn brute_force_roots(f: &RationalPolynomial, bits: u32) -> Vec<RootEnclosure> {
    let n = f.degree();
    let coeffs: Vec<Complex64> = f.to_complex64();
    let eval = |x: Complex64| coeffs.iter().rev().fold(Complex64::zero(), |acc, c| acc * x + c);
    let mut z: Vec<Complex64> = (0..n).map(|k| Complex64::new(0.4, 0.9).powu(k as u32)).collect();
    for _ in 0..2000 {
        let mut delta = 0.0f64;
        for k in 0..n {
            let mut den = Complex64::one();
            for j in (0..n).filter(|&j| j != k) {
                den *= z[k] - z[j];
            }
            let step = eval(z[k]) / den;
            if step.is_finite() {
                z[k] -= step;
                delta = delta.max(step.norm());
            }
        }
        if delta < 1e-16 {
            break;
        }
    }
    let round = |w: &GaussianRational| GaussianRational::new(round_dyadic(&w.re, bits), round_dyadic(&w.im, bits));
    let nq = Rational::from_integer(n as i64);
    let grid = crate::kernel::dyadic_tol(2 * bits);
    z.into_iter()
        .map(|c| {
            let mut w = GaussianRational::from_f64(c.re, c.im).unwrap_or_else(GaussianRational::zero);
            for _ in 0..(bits / 16).max(4) {
                let (p, d) = f.eval_with_derivative(&w);
                if p.is_zero() || d.is_zero() {
                    break;
                }
                let step = &p / &d;
                w = round(&(&w - &step));
                if step.norm_sqr() < grid {
                    break;
                }
            }
            let (p, d) = f.eval_with_derivative(&w);
            let radius = if p.is_zero() {
                Rational::zero()
            } else if d.is_zero() {
                Rational::one()
            } else {
                &nq * &sqrt_upper_rel(&(&p.norm_sqr() / &d.norm_sqr()), 32).expect("nonnegative")
            };
            RootEnclosure { center: w, radius }
        })
        .collect()
}

/// A perfect matching between two root lists minimizing the largest distance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootMatching {
    /// `(root of f, root of g, distance)`; distance rounded up.
    pub pairs: Vec<(GaussianRational, GaussianRational, Rational)>,
    /// Exact squared bottleneck distance.
    pub max_distance_sqr: Rational,
    /// Upper enclosure of the bottleneck distance.
    pub max_distance: Rational,
}

fn perfect_matching(n: usize, allowed: &dyn Fn(usize, usize) -> bool) -> Option<Vec<usize>> {
    // Kuhn's augmenting paths; match_g[j] = index in f matched to j
    fn augment(i: usize, n: usize, allowed: &dyn Fn(usize, usize) -> bool, seen: &mut [bool], match_g: &mut [Option<usize>]) -> bool {
        for j in 0..n {
            if allowed(i, j) && !seen[j] {
                seen[j] = true;
                if match_g[j].is_none_or(|k| augment(k, n, allowed, seen, match_g)) {
                    match_g[j] = Some(i);
                    return true;
                }
            }
        }
        false
    }
    let mut match_g = vec![None; n];
    for i in 0..n {
        if !augment(i, n, allowed, &mut vec![false; n], &mut match_g) {
            return None;
        }
    }
    let mut assign = vec![0; n];
    for (j, i) in match_g.into_iter().enumerate() {
        assign[i.expect("perfect")] = j;
    }
    Some(assign)
}

fn build_matching(f: &[GaussianRational], g: &[GaussianRational], assign: &[usize]) -> RootMatching {
    let mut max_distance_sqr = Rational::zero();
    let pairs = assign
        .iter()
        .enumerate()
        .map(|(i, &j)| {
            let d2 = (&f[i] - &g[j]).norm_sqr();
            let d = sqrt_upper_rel(&d2, 64).expect("nonnegative");
            max_distance_sqr = max_distance_sqr.clone().max(d2);
            (f[i].clone(), g[j].clone(), d)
        })
        .collect();
    let max_distance = sqrt_upper_rel(&max_distance_sqr, 64).expect("nonnegative");
    RootMatching { pairs, max_distance_sqr, max_distance }
}

/// Bottleneck matching: the smallest threshold admitting a perfect matching,
/// found by bisection over the sorted pairwise distances.
pub fn match_roots(f: &[GaussianRational], g: &[GaussianRational]) -> Result<RootMatching> {
    let n = f.len();
    if g.len() != n {
        return Err(Error::LengthMismatch(n, g.len()));
    }
    let d2: Vec<Vec<Rational>> = f.iter().map(|a| g.iter().map(|b| (a - b).norm_sqr()).collect()).collect();
    let mut thresholds: Vec<Rational> = d2.iter().flatten().cloned().collect();
    thresholds.sort();
    thresholds.dedup();
    if thresholds.is_empty() {
        return Ok(build_matching(f, g, &[]));
    }
    let feasible = |t: &Rational| perfect_matching(n, &|i, j| &d2[i][j] <= t);
    let (mut lo, mut hi) = (0, thresholds.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if feasible(&thresholds[mid]).is_some() {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let assign = feasible(&thresholds[lo]).expect("largest threshold is always feasible");
    Ok(build_matching(f, g, &assign))
}

/// Bottleneck matching by trying all `n!` permutations.
pub fn match_roots_exhaustive(f: &[GaussianRational], g: &[GaussianRational]) -> Result<RootMatching> {
    let n = f.len();
    if g.len() != n {
        return Err(Error::LengthMismatch(n, g.len()));
    }
    let mut perm: Vec<usize> = (0..n).collect();
    let cost = |p: &[usize]| p.iter().enumerate().map(|(i, &j)| (&f[i] - &g[j]).norm_sqr()).max();
    let mut best = perm.clone();
    let mut best_cost = cost(&perm);
    // Heap's algorithm
    let mut c = vec![0; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            let k = cost(&perm);
            if k < best_cost {
                best_cost = k;
                best = perm.clone();
            }
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    Ok(build_matching(f, g, &best))
}

fn n_rational(n: &BigUint) -> Rational {
    Rational::from_integer(BigInt::from(n.clone()))
}

/// Integer point within distance 1 of `n·z`, as far from it as possible.
/// Ties alternate with the parity of `n`.
fn farthest_lattice_point(z: &GaussianRational, n: &BigUint) -> (BigInt, BigInt) {
    let nq = n_rational(n);
    let (x, y) = (&nq * &z.re, &nq * &z.im);
    let odd = n.bit(0);
    let mut best: Option<((BigInt, BigInt), Rational)> = None;
    let (fx, fy) = (x.floor(), y.floor());
    for dx in -1..=2i64 {
        for dy in -1..=2i64 {
            let (a, b) = (&fx + dx, &fy + dy);
            let d2 = (&x - &Rational::from_integer(a.clone())).pow(2) + (&y - &Rational::from_integer(b.clone())).pow(2);
            if d2 > Rational::one() {
                continue;
            }
            let better = match &best {
                None => true,
                Some((_, bd)) => d2 > *bd || (d2 == *bd && odd),
            };
            if better {
                best = Some(((a, b), d2));
            }
        }
    }
    best.expect("the nearest lattice point is within 1").0
}

/// A constant whose oracle returns the lattice point farthest from `n·z`
/// that still meets the contract, so the full `1/n` slack is used.
pub fn saturating_constant(z: GaussianRational) -> PtcNumber {
    if z.is_real() {
        let re = z.re.clone();
        return PtcNumber::from_real_oracle(move |n: &BigUint| {
            let x = &n_rational(n) * &re;
            let candidates = [x.floor() - 1, x.floor(), x.ceil(), x.ceil() + 1];
            let ok = candidates.into_iter().filter(|v| (&Rational::from_integer(v.clone()) - &x).abs() <= Rational::one());
            let far = |v: &BigInt| (&Rational::from_integer(v.clone()) - &x).abs();
            let best = if n.bit(0) { ok.max_by_key(far) } else { ok.min_by_key(|v| -far(v)) };
            Ok(best.expect("nearest integer is within 1/2"))
        });
    }
    PtcNumber::from_oracle(move |n: &BigUint| Ok(farthest_lattice_point(&z, n)))
}

/// A rational oracle `z ± 1/n`, rotating the offset through `1, i, −1, −i`.
pub fn saturating_rational_oracle(z: GaussianRational) -> impl Fn(&BigUint) -> Result<GaussianRational> + Send + Sync {
    move |n: &BigUint| {
        let e = n_rational(n).recip();
        let offset = match (n % 4u32).to_u32_digits().first().copied().unwrap_or(0) {
            0 => GaussianRational::from_real(e),
            1 => GaussianRational::new(Rational::zero(), e),
            2 => GaussianRational::from_real(-&e),
            _ => GaussianRational::new(Rational::zero(), -&e),
        };
        Ok(&z + &offset)
    }
}

/// Decimal tolerance `10^-d`.
pub fn decimal_tol(d: u32) -> Rational {
    Rational::new(BigInt::one(), num_traits::pow(BigInt::from(10), d as usize))
}

/// `|a − b| <= 1/n`, exactly.
pub fn within_inverse(a: &GaussianRational, b: &GaussianRational, n: &BigUint) -> bool {
    let nq = n_rational(n);
    &(a - b).norm_sqr() * &(&nq * &nq) <= Rational::one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn g(re: Rational, im: Rational) -> GaussianRational {
        GaussianRational::new(re, im)
    }

    #[test]
    fn pi_prefixes() {
        assert_eq!(reference_pi(5).unwrap(), q(314159, 100000));
        assert_eq!(reference_pi(1).unwrap(), q(31, 10));
        assert_eq!(reference_pi(0).unwrap(), q(3, 1));
        assert_eq!(reference_pi(101), Err(Error::DigitsTooLarge { requested: 101, available: 100 }));
    }

    /// Chudnovsky series with an integer square root; shares nothing with
    /// the stored digits or with Machin's formula.
    fn chudnovsky_pi(digits: usize) -> BigInt {
        let scale = num_traits::pow(BigInt::from(10), digits + 20);
        let mut sum = Rational::zero();
        let mut term_num = BigInt::one(); // (6k)!
        let mut term_den = BigInt::one(); // (3k)!(k!)^3 640320^(3k)
        let c3 = num_traits::pow(BigInt::from(640320), 3);
        for k in 0..(digits / 14 + 2) as i64 {
            if k > 0 {
                for j in 6 * k - 5..=6 * k {
                    term_num *= j;
                }
                for j in 3 * k - 2..=3 * k {
                    term_den *= j;
                }
                term_den *= BigInt::from(k).pow(3);
                term_den *= &c3;
            }
            let lin = BigInt::from(13591409) + BigInt::from(545140134) * k;
            let t = Rational::new(&term_num * lin, term_den.clone());
            if k % 2 == 0 {
                sum += &t;
            } else {
                sum -= &t;
            }
        }
        let root = (BigInt::from(10005) * &scale * &scale).sqrt();
        let pi_scaled = Rational::from_integer(BigInt::from(426880) * root) / sum;
        pi_scaled.floor() / num_traits::pow(BigInt::from(10), 20)
    }

    #[test]
    fn stored_pi_matches_chudnovsky() {
        let digits = 100;
        let c = chudnovsky_pi(digits);
        let stored = reference_pi(digits).unwrap();
        let scaled = &stored * &Rational::from_integer(num_traits::pow(BigInt::from(10), digits));
        assert!(scaled.is_integer());
        let diff = (scaled.floor() - c).abs();
        assert!(diff <= BigInt::one(), "diff {diff}");
    }

    #[test]
    fn bisection_examples() {
        let f = RationalPolynomial::from_integers(&[-2, 0]).unwrap();
        let tol = decimal_tol(6);
        let (lo, hi) = bisect_bracket(&f, &q(1, 1), &q(2, 1), &tol).unwrap();
        assert!(&lo * &lo < q(2, 1) && &hi * &hi > q(2, 1) && &hi - &lo <= tol);
        let r = bisect_real_root(&f, &q(1, 1), &q(2, 1), &tol).unwrap();
        assert!((r.to_f64() - 1.414213).abs() < 1e-6);

        let lin = RationalPolynomial::from_integers(&[-5]).unwrap();
        assert_eq!(bisect_real_root(&lin, &q(0, 1), &q(10, 1), &tol).unwrap(), q(5, 1));

        let cube = RationalPolynomial::from_integers(&[-2, 0, 0]).unwrap();
        let r = bisect_real_root(&cube, &q(1, 1), &q(2, 1), &tol).unwrap();
        assert!((r.to_f64() - 1.259921).abs() < 1e-6);
    }

    #[test]
    fn bisection_errors() {
        let f = RationalPolynomial::from_integers(&[1, 0]).unwrap();
        let tol = decimal_tol(3);
        assert_eq!(bisect_real_root(&f, &q(-1, 1), &q(1, 1), &tol), Err(Error::NoSignChange));
        let c = RationalPolynomial::new(vec![GaussianRational::i()]).unwrap();
        assert_eq!(bisect_real_root(&c, &q(-1, 1), &q(1, 1), &tol), Err(Error::NonRealPolynomial));
    }

    #[test]
    fn matching_examples() {
        let a = vec![g(q(1, 1), q(0, 1)), g(q(-1, 1), q(0, 1))];
        let b = vec![g(q(-101, 100), q(0, 1)), g(q(101, 100), q(0, 1))];
        let m = match_roots(&a, &b).unwrap();
        assert_eq!(m.max_distance_sqr, q(1, 10000));
        assert_eq!(m.pairs[0].1, b[1]);
        assert_eq!(match_roots(&a, &a).unwrap().max_distance, Rational::zero());
        let one = match_roots(&a[..1], &b[..1]).unwrap();
        assert_eq!(one.max_distance_sqr, q(201, 100).pow(2));
        assert_eq!(match_roots(&a, &b[..1]), Err(Error::LengthMismatch(2, 1)));
    }

    #[test]
    fn brute_force_roots_of_quartic() {
        let roots = [g(q(1, 2), q(0, 1)), g(q(-3, 1), q(1, 1)), g(q(0, 1), q(-2, 1)), g(q(2, 1), q(2, 1))];
        let f = RationalPolynomial::from_roots(&roots).unwrap();
        let found = brute_force_roots(&f, 256);
        let centers: Vec<_> = found.iter().map(|e| e.center.clone()).collect();
        let m = match_roots(&roots, &centers).unwrap();
        assert!(m.max_distance < decimal_tol(40));
        assert!(found.iter().all(|e| e.radius < decimal_tol(30)));
    }

    #[test]
    fn saturating_oracles_meet_contract() {
        for z in [g(q(1, 3), q(0, 1)), g(q(-7, 5), q(2, 3)), g(q(0, 1), q(0, 1))] {
            let c = saturating_constant(z.clone());
            let o = saturating_rational_oracle(z.clone());
            for n in 1..40u32 {
                let n = BigUint::from(n);
                assert!(within_inverse(&c.eval_at(&n).unwrap(), &z, &n));
                assert!(within_inverse(&o(&n).unwrap(), &z, &n));
            }
            let n = BigUint::from(10u32);
            let e = c.eval_at(&n).unwrap();
            assert!((&e - &z).norm_sqr() >= q(1, 400), "{z} -> {e}");
        }
    }
}
