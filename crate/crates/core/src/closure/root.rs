//! Roots of computable polynomials as computable numbers.

use std::sync::{Arc, Mutex, RwLock};

use num_bigint::{BigInt, BigUint};
use num_traits::One;

use super::kantorovich::{kantorovich_certify, newton_refine, KantorovichCertificate};
use super::ostrowski::{truncate_coefficients, CoefficientPrecisionPlan};
use super::poly::{Polynomial, RationalPolynomial};
use super::seeds::{find_seeds_with, SeedCertificate, SeedConfig};
use crate::approx::{from_rational_oracle, PtcNumber};
use crate::error::{Error, Result};
use crate::kernel::{dyadic_tol, round_dyadic, GaussianRational, Rational};

/// Configuration of the seed ladder.
#[derive(Clone, Debug)]
pub struct RootConfig {
    /// First precision floor `m0`; each retry squares it.
    pub initial_floor: BigUint,
    /// Number of retries after the first floor.
    pub max_depth: usize,
    /// Depth of the per-floor candidate refinement.
    pub seed_depth: usize,
}

impl Default for RootConfig {
    fn default() -> Self {
        RootConfig { initial_floor: BigUint::one() << 10u32, max_depth: 5, seed_depth: 6 }
    }
}

/// How a root is picked out of the sorted seed list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RootSelector {
    Index(usize),
    /// The seed closest to this point.
    Near(GaussianRational),
}

/// Record of the most recent refinement of one root.
#[derive(Clone, Debug)]
pub struct RootRun {
    /// Internal precision: `max(m, floor)`.
    pub m: BigUint,
    pub newton_iterations: usize,
    pub certificate: KantorovichCertificate,
    pub plan: CoefficientPrecisionPlan,
}

/// All roots of one polynomial, sharing a single seed certificate.
///
/// The certificate is computed once, on the truncation at twice the
/// precision floor `m0`, with discs separated by an extra `1/m0`. Later
/// truncations move every root by at most `1/(2m0)`, so a disc keeps tracking
/// the same root of `f`; each query re-certifies the cached seed against the
/// finer truncation before refining it.
pub struct RootSystem {
    poly: Polynomial,
    config: RootConfig,
    seeds: RwLock<Option<SeedCertificate>>,
    runs: Mutex<Vec<Option<RootRun>>>,
}

impl RootSystem {
    pub fn new(poly: Polynomial) -> Arc<Self> {
        Self::with_config(poly, RootConfig::default())
    }

    pub fn with_config(poly: Polynomial, config: RootConfig) -> Arc<Self> {
        let n = poly.degree();
        Arc::new(RootSystem { poly, config, seeds: RwLock::new(None), runs: Mutex::new(vec![None; n]) })
    }

    pub fn polynomial(&self) -> &Polynomial {
        &self.poly
    }

    /// The shared seed certificate, computed on first use.
    pub fn certificate(&self) -> Result<SeedCertificate> {
        if let Some(c) = self.seeds.read().expect("seed lock").as_ref() {
            return Ok(c.clone());
        }
        let mut slot = self.seeds.write().expect("seed lock");
        if let Some(c) = slot.as_ref() {
            return Ok(c.clone());
        }
        let c = self.search()?;
        *slot = Some(c.clone());
        Ok(c)
    }

    fn search(&self) -> Result<SeedCertificate> {
        let mut floor = self.config.initial_floor.clone();
        let mut reason = String::new();
        for _ in 0..=self.config.max_depth {
            let (ft, _) = truncate_coefficients(&self.poly, &(&floor * 2u32))?;
            let config = SeedConfig {
                max_depth: self.config.seed_depth,
                margin: Rational::new(BigInt::one(), BigInt::from(floor.clone())),
                precision_floor: floor.clone(),
            };
            match find_seeds_with(&ft, &config) {
                Ok(c) => return Ok(c),
                Err(Error::NotSquarefree) => reason = "truncation not squarefree".into(),
                Err(Error::PrecisionExhausted { reason: r, .. }) => reason = r,
                Err(e) => return Err(e),
            }
            floor = &floor * &floor;
        }
        Err(Error::PrecisionExhausted { depth: self.config.max_depth, reason })
    }

    /// Index of the seed matching `sel`.
    pub fn select(&self, sel: &RootSelector) -> Result<usize> {
        let cert = self.certificate()?;
        match sel {
            RootSelector::Index(j) if *j < cert.seeds.len() => Ok(*j),
            RootSelector::Index(j) => Err(Error::RootIndex { index: *j, degree: cert.seeds.len() }),
            RootSelector::Near(p) => Ok(cert
                .seeds
                .iter()
                .enumerate()
                .min_by(|(_, a), (_, b)| (&a.zeta - p).norm_sqr().cmp(&(&b.zeta - p).norm_sqr()))
                .map(|(j, _)| j)
                .expect("degree >= 1")),
        }
    }

    /// A Gaussian rational within `1/m` of root `which`.
    pub fn approximate(&self, which: usize, m: &BigUint) -> Result<GaussianRational> {
        let cert = self.certificate()?;
        let seed = cert
            .seeds
            .get(which)
            .ok_or(Error::RootIndex { index: which, degree: cert.seeds.len() })?;
        let big_m = m.max(&cert.precision_floor).clone();
        let two_m = &big_m * 2u32;
        let (ft, plan) = truncate_coefficients(&self.poly, &two_m)?;
        let local = recertify(&ft, seed, &two_m)?;
        let run = newton_refine(&ft, &local, &two_m)?;
        let out = run.last().clone();
        self.runs.lock().expect("runs lock")[which] =
            Some(RootRun { m: big_m, newton_iterations: run.nu, certificate: local, plan });
        Ok(out)
    }

    /// Root `which` as a computable number.
    pub fn root(self: &Arc<Self>, which: usize) -> PtcNumber {
        let sys = Arc::clone(self);
        from_rational_oracle(move |n: &BigUint| sys.approximate(which, n))
    }

    pub fn root_by(self: &Arc<Self>, sel: &RootSelector) -> Result<PtcNumber> {
        Ok(self.root(self.select(sel)?))
    }

    pub fn last_run(&self, which: usize) -> Option<RootRun> {
        self.runs.lock().expect("runs lock").get(which).cloned().flatten()
    }
}

/// Certifies `seed` for the finer truncation `ft`, polishing it with a few
/// Newton steps inside the original disc if the cached center is too coarse.
fn recertify(ft: &RationalPolynomial, seed: &KantorovichCertificate, m: &BigUint) -> Result<KantorovichCertificate> {
    let mut last = match kantorovich_certify(ft, &seed.zeta, &seed.disc_radius) {
        Ok(c) => return Ok(c),
        Err(r) => r.to_string(),
    };
    let bits = 2 * m.bits() as u32 + 64;
    let tol = dyadic_tol(64);
    let mut z = seed.zeta.clone();
    for _ in 0..8 {
        let (fz, dfz) = ft.eval_with_derivative(&z);
        if dfz.is_zero() {
            break;
        }
        let next = &z - &(&fz / &dfz);
        z = GaussianRational::new(round_dyadic(&next.re, bits), round_dyadic(&next.im, bits));
        let room = &seed.disc_radius - &(&z - &seed.zeta).abs_upper(&tol);
        if !room.is_positive() {
            break;
        }
        match kantorovich_certify(ft, &z, &room) {
            Ok(c) => return Ok(c),
            Err(r) => last = r.to_string(),
        }
    }
    Err(Error::PrecisionExhausted { depth: 0, reason: format!("re-certification failed: {last}") })
}

/// Root `which` (in `(re, im)` order of the certified seeds) of `f`.
pub fn root_number(f: &Polynomial, which: usize) -> PtcNumber {
    RootSystem::new(f.clone()).root(which)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::pi;

    fn within(z: &GaussianRational, re: f64, im: f64, tol: f64) -> bool {
        let (a, b) = z.to_f64_pair();
        (a - re).abs() <= tol && (b - im).abs() <= tol
    }

    fn int_poly(c: &[i64]) -> Polynomial {
        Polynomial::from_rational(&RationalPolynomial::from_integers(c).unwrap())
    }

    #[test]
    fn sqrt_two() {
        let sys = RootSystem::new(int_poly(&[-2, 0]));
        let r = sys.root(1);
        let v = r.eval(1_000_000u32).unwrap();
        assert!(within(&v, 1.4142135623730951, 0.0, 1e-6));
        assert!(sys.last_run(1).unwrap().newton_iterations <= 3);
        let neg = sys.root(0).eval(1000u32).unwrap();
        assert!(within(&neg, -1.4142135623730951, 0.0, 1e-3));
    }

    #[test]
    fn cube_root_two() {
        let sys = RootSystem::new(int_poly(&[-2, 0, 0]));
        let j = sys.select(&RootSelector::Near(GaussianRational::one())).unwrap();
        let v = sys.root(j).eval(1_000_000u32).unwrap();
        assert!(within(&v, 1.2599210498948732, 0.0, 1e-6));
    }

    #[test]
    fn linear_root() {
        let c = Rational::new(-7, 3);
        let f = Polynomial::new(vec![PtcNumber::rational(-&c)]).unwrap();
        let z = root_number(&f, 0);
        for n in [1u32, 7, 100, 12345] {
            let v = z.eval(n).unwrap();
            let e = &v.re - &c;
            assert!(&e * &e <= Rational::new(1, (n as i64) * (n as i64)));
        }
    }

    #[test]
    fn transcendental_coefficients() {
        // X^2 − π: roots ±√π
        let f = Polynomial::new(vec![-&pi(), PtcNumber::zero()]).unwrap();
        let v = root_number(&f, 1).eval(10u32.pow(8)).unwrap();
        assert!(within(&v, std::f64::consts::PI.sqrt(), 0.0, 1e-8));
    }

    #[test]
    fn double_root_exhausts() {
        // X^2 − 2πX + π^2
        let p = pi();
        let f = Polynomial::new(vec![p.pow(2), p.scale(-2)]).unwrap();
        let config = RootConfig { max_depth: 2, seed_depth: 3, ..RootConfig::default() };
        let sys = RootSystem::with_config(f, config);
        assert!(matches!(sys.certificate(), Err(Error::PrecisionExhausted { .. })));
        assert!(matches!(sys.root(0).eval(10u32), Err(Error::PrecisionExhausted { .. })));
    }

    #[test]
    fn bad_index() {
        let sys = RootSystem::new(int_poly(&[1, 0]));
        assert_eq!(sys.root(2).eval(10u32), Err(Error::RootIndex { index: 2, degree: 2 }));
        assert!(sys.select(&RootSelector::Index(5)).is_err());
    }
}
