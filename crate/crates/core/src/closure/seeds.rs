//! Heuristic root finding followed by exact certification.

use num_bigint::BigUint;
use num_complex::Complex64;
use num_traits::One;

use super::kantorovich::{kantorovich_certify, KantorovichCertificate};
use super::poly::RationalPolynomial;
use crate::error::{Error, Result};
use crate::kernel::{dyadic_tol, round_dyadic, sqrt_lower_rel, GaussianRational, Rational};

/// Certified seeds for every root of a polynomial, sorted by `(re, im)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeedCertificate {
    pub seeds: Vec<KantorovichCertificate>,
    /// Precision at and above which these seeds are reused.
    pub precision_floor: BigUint,
}

impl SeedCertificate {
    /// One [`KantorovichCertificate::dump_line`] per seed.
    pub fn dump(&self) -> String {
        self.seeds
            .iter()
            .enumerate()
            .map(|(j, c)| format!("seed {j}: {}", c.dump_line()))
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// Knobs for [`find_seeds_with`].
#[derive(Clone, Debug)]
pub struct SeedConfig {
    /// Number of precision doublings tried after the f64 stage.
    pub max_depth: usize,
    /// Extra gap required between certification discs.
    pub margin: Rational,
    pub precision_floor: BigUint,
}

impl Default for SeedConfig {
    fn default() -> Self {
        SeedConfig { max_depth: 8, margin: Rational::zero(), precision_floor: BigUint::one() }
    }
}

/// Certified seeds with the default configuration.
pub fn find_seeds(f: &RationalPolynomial) -> Result<SeedCertificate> {
    find_seeds_with(f, &SeedConfig::default())
}

/// Finds and certifies a seed for every root of `f`.
///
/// Candidates come from Aberth iteration, first in `f64`, then on dyadic
/// rationals with 64·2^rung bits. Each rung tries to certify all candidates;
/// the first rung that succeeds wins.
pub fn find_seeds_with(f: &RationalPolynomial, config: &SeedConfig) -> Result<SeedCertificate> {
    if !f.is_squarefree() {
        return Err(Error::NotSquarefree);
    }
    let mut candidates: Vec<GaussianRational> = aberth_f64(&f.to_complex64())
        .into_iter()
        .map(|z| GaussianRational::from_f64(z.re, z.im).unwrap_or_else(GaussianRational::zero))
        .collect();
    let mut last_reason = String::new();
    for rung in 0..=config.max_depth {
        if rung > 0 {
            candidates = aberth_precise(f, candidates, 64 << rung);
        }
        match certify_all(f, &candidates, &config.margin) {
            Ok(mut seeds) => {
                seeds.sort_by(|x, y| x.zeta.lex_cmp(&y.zeta));
                return Ok(SeedCertificate { seeds, precision_floor: config.precision_floor.clone() });
            }
            Err(reason) => last_reason = reason,
        }
    }
    Err(Error::PrecisionExhausted { depth: config.max_depth, reason: last_reason })
}

/// Certifies every candidate with a disc of a third of its separation.
fn certify_all(
    f: &RationalPolynomial,
    zs: &[GaussianRational],
    margin: &Rational,
) -> std::result::Result<Vec<KantorovichCertificate>, String> {
    let n = zs.len();
    let mut certs = Vec::with_capacity(n);
    for (j, z) in zs.iter().enumerate() {
        let radius = if n == 1 {
            Rational::one()
        } else {
            let sep2 = zs
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != j)
                .map(|(_, w)| (z - w).norm_sqr())
                .min()
                .expect("n >= 2");
            let sep = sqrt_lower_rel(&sep2, 32).expect("nonnegative");
            let room = &sep - margin;
            if !room.is_positive() {
                return Err(format!("candidates {j} too close"));
            }
            &room / &Rational::from_integer(3)
        };
        match kantorovich_certify(f, z, &radius) {
            Ok(c) => certs.push(c),
            Err(r) => return Err(format!("seed {j}: {r}")),
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            let d2 = (&certs[i].zeta - &certs[j].zeta).norm_sqr();
            let reach = &(&certs[i].disc_radius + &certs[j].disc_radius) + margin;
            if d2 <= &reach * &reach {
                return Err(format!("discs {i} and {j} overlap"));
            }
        }
    }
    Ok(certs)
}

/// Aberth–Ehrlich iteration in `f64`. `full` is lowest first with a nonzero
/// leading coefficient.
pub fn aberth_f64(full: &[Complex64]) -> Vec<Complex64> {
    let n = full.len() - 1;
    let lead = full[n];
    let monic: Vec<Complex64> = full.iter().map(|c| c / lead).collect();
    let radius = 1.0 + monic[..n].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius * 0.5, 0.4 + std::f64::consts::TAU * k as f64 / n as f64))
        .collect();
    let eval = |x: Complex64| {
        let mut p = Complex64::new(1.0, 0.0);
        let mut d = Complex64::new(0.0, 0.0);
        for c in monic[..n].iter().rev() {
            d = d * x + p;
            p = p * x + c;
        }
        (p, d)
    };
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for k in 0..n {
            let (p, d) = eval(z[k]);
            if p.norm() == 0.0 {
                continue;
            }
            let w = p / d;
            let s: Complex64 = (0..n).filter(|&j| j != k).map(|j| 1.0 / (z[k] - z[j])).sum();
            let step = w / (1.0 - w * s);
            if step.is_finite() {
                z[k] -= step;
                moved = moved.max(step.norm() / (1.0 + z[k].norm()));
            } else {
                z[k] += Complex64::new(1e-3, 1e-3);
                moved = 1.0;
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

/// Aberth iteration on dyadic Gaussian rationals with `bits` fractional bits.
fn aberth_precise(f: &RationalPolynomial, mut z: Vec<GaussianRational>, bits: u32) -> Vec<GaussianRational> {
    let n = z.len();
    let round = |w: &GaussianRational| GaussianRational::new(round_dyadic(&w.re, bits), round_dyadic(&w.im, bits));
    let nudge = GaussianRational::new(dyadic_tol(bits / 2), dyadic_tol(bits / 2 + 1));
    let stop = dyadic_tol(2 * (bits - 8));
    z = z.iter().map(round).collect();
    for _ in 0..4 * bits {
        let mut moved = false;
        for k in 0..n {
            let (p, d) = f.eval_with_derivative(&z[k]);
            if p.is_zero() {
                continue;
            }
            let mut s = GaussianRational::zero();
            let mut clash = d.is_zero();
            for j in (0..n).filter(|&j| j != k) {
                let diff = &z[k] - &z[j];
                if diff.is_zero() {
                    clash = true;
                    break;
                }
                s = &s + &(&GaussianRational::one() / &diff);
            }
            let w = if clash { None } else { Some(&p / &d) };
            let denom = w.as_ref().map(|w| &GaussianRational::one() - &(w * &s));
            match (w, denom) {
                (Some(w), Some(den)) if !den.is_zero() => {
                    let step = &w / &den;
                    z[k] = round(&(&z[k] - &step));
                    if step.norm_sqr() > stop {
                        moved = true;
                    }
                }
                _ => {
                    z[k] = &z[k] + &nudge;
                    moved = true;
                }
            }
        }
        if !moved {
            break;
        }
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closure::newton_refine;

    fn g(re: i64, im: i64) -> GaussianRational {
        GaussianRational::new(Rational::from_integer(re), Rational::from_integer(im))
    }

    fn check_disjoint(cert: &SeedCertificate) {
        for (i, a) in cert.seeds.iter().enumerate() {
            for b in &cert.seeds[i + 1..] {
                let d2 = (&a.zeta - &b.zeta).norm_sqr();
                let r = &a.t_star_upper + &b.t_star_upper;
                assert!(d2 > &r * &r);
            }
        }
    }

    #[test]
    fn plus_minus_i() {
        let f = RationalPolynomial::from_integers(&[1, 0]).unwrap();
        assert!(f.eval(&g(0, 1)).is_zero());
        let cert = find_seeds(&f).unwrap();
        assert_eq!(cert.seeds.len(), 2);
        check_disjoint(&cert);
        assert!(cert.seeds[0].contains(&g(0, -1)));
        assert!(cert.seeds[1].contains(&g(0, 1)));
    }

    #[test]
    fn linear_seed_is_exact() {
        let f = RationalPolynomial::from_integers(&[-5]).unwrap();
        let cert = find_seeds(&f).unwrap();
        assert_eq!(cert.seeds[0].zeta, g(5, 0));
        assert!(cert.seeds[0].b.is_zero());
    }

    #[test]
    fn near_double_root_certifies() {
        let f = RationalPolynomial::from_roots(&[
            g(1, 0),
            GaussianRational::from_real(Rational::new(1_000_001, 1_000_000)),
        ])
        .unwrap();
        let cert = find_seeds(&f).unwrap();
        check_disjoint(&cert);
        assert!(cert.seeds[0].contains(&g(1, 0)));
        let closer = RationalPolynomial::from_roots(&[
            g(1, 0),
            GaussianRational::from_real(Rational::new(1_000_000_000_000_001i64, 1_000_000_000_000_000i64)),
        ])
        .unwrap();
        check_disjoint(&find_seeds(&closer).unwrap());
        let shallow = SeedConfig { max_depth: 0, ..SeedConfig::default() };
        assert!(matches!(find_seeds_with(&closer, &shallow), Err(Error::PrecisionExhausted { .. })));
    }

    #[test]
    fn double_root_rejected() {
        let f = RationalPolynomial::from_roots(&[g(2, 1), g(2, 1)]).unwrap();
        assert_eq!(find_seeds(&f), Err(Error::NotSquarefree));
    }

    #[test]
    fn quintic_roots_refine() {
        let roots = [g(1, 0), g(-2, 1), g(-2, -1), g(0, 3), g(3, -1)];
        let f = RationalPolynomial::from_roots(&roots).unwrap();
        let cert = find_seeds(&f).unwrap();
        check_disjoint(&cert);
        for c in &cert.seeds {
            let run = newton_refine(&f, c, &BigUint::from(10u32).pow(40)).unwrap();
            assert!(roots.iter().any(|r| c.contains(r)));
            assert!(run.nu <= 4);
        }
    }

    #[test]
    fn dump_has_a_line_per_seed() {
        let f = RationalPolynomial::from_integers(&[-2, 0, 0]).unwrap();
        let cert = find_seeds(&f).unwrap();
        assert_eq!(cert.dump().lines().count(), 3);
    }
}
