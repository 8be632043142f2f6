//! Certifying a Newton seed and watching the error bound collapse.

use num_bigint::BigUint;
use ptcnum::closure::{kantorovich_certify, newton_refine, RationalPolynomial};
use ptcnum::{GaussianRational, Rational};

fn main() -> ptcnum::Result<()> {
    let f = RationalPolynomial::from_integers(&[-2, 0])?;
    let zeta = GaussianRational::from_real(Rational::new(3, 2));
    let cert = kantorovich_certify(&f, &zeta, &Rational::new(1, 2)).expect("3/2 is a good seed for sqrt(2)");
    println!("{}", cert.dump_line());

    let run = newton_refine(&f, &cert, &BigUint::from(10u32).pow(30))?;
    for (nu, rho) in run.iterates.iter().enumerate() {
        println!("rho({nu}) = {:<40} error <= {:.3e}", rho.to_string(), run.error_bound_at(nu).to_f64());
    }
    if let Some(c0) = &run.c0 {
        println!("c0 <= {:.6}", c0.to_f64());
    }

    for bad in [Rational::zero(), Rational::new(1, 10)] {
        let verdict = kantorovich_certify(&f, &GaussianRational::from_real(bad.clone()), &Rational::one());
        println!("seed {bad}: {}", verdict.err().map_or("accepted".into(), |r| r.to_string()));
    }
    Ok(())
}
