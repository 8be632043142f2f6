//! Roots of polynomials whose coefficients are themselves computable numbers.

use num_bigint::BigUint;
use ptcnum::closure::{Polynomial, RootSystem};
use ptcnum::constants::pi;
use ptcnum::PtcNumber;

fn main() -> ptcnum::Result<()> {
    // x^3 - pi·x + 1
    let f = Polynomial::new(vec![PtcNumber::one(), -&pi(), PtcNumber::zero()])?;
    let roots = RootSystem::new(f);
    let cert = roots.certificate()?;
    println!("seeds certified at precision floor {}:", cert.precision_floor);
    for (j, seed) in cert.seeds.iter().enumerate() {
        let (re, im) = seed.zeta.to_f64_pair();
        println!("  #{j}: zeta ~ {re:.6} {im:+.6}i, disc radius {:.3e}", seed.disc_radius.to_f64());
    }
    let m = BigUint::from(10u32).pow(40);
    for j in 0..3 {
        let r = roots.root(j);
        println!("root #{j} = {}", r.to_decimal(40)?);
        let run = roots.last_run(j).expect("just evaluated");
        println!("  newton iterations at m = {}: {}", run.m, run.newton_iterations);
    }
    // the sum of the roots is 0: the x^2 coefficient
    let total = &(&roots.root(0) + &roots.root(1)) + &roots.root(2);
    println!("sum of roots at 1/{m}: {}", total.eval_at(&m)?);
    Ok(())
}
