//! Arithmetic on computable complex numbers and what each oracle returns.

use num_bigint::BigUint;
use ptcnum::constants::pi;
use ptcnum::field::{inversion_witness, product_scaling};
use ptcnum::{GaussianRational, PtcNumber, Rational};

fn main() -> ptcnum::Result<()> {
    let z = PtcNumber::constant(GaussianRational::new(Rational::new(3, 2), Rational::new(-1, 3)));
    let w = &pi() * &PtcNumber::i();

    let sum = &z + &w;
    let prod = &z * &w;
    let quot = &z / &w;
    for (name, x) in [("z + w", &sum), ("z * w", &prod), ("z / w", &quot)] {
        println!("{name:6} = {}", x.to_decimal(15)?);
    }

    // the raw oracle at n = 1000: numerators (f, g) with |x - (f + gi)/1000| <= 1/1000
    let (f, g) = quot.numerators(&BigUint::from(1000u32))?;
    println!("z / w at n = 1000: ({f}, {g})");

    let c = product_scaling(&z.re(), &w.im())?;
    println!("product scaling constant for re(z)·im(w): c = {}", c.c);
    let k = inversion_witness(&w.im(), &ptcnum::field::default_zero_cap())?;
    println!("inversion witness for im(w): k = {}, p(X) = {}X + {}", k.k, k.p_coeffs.0, k.p_coeffs.1);

    println!("re(z^5) = {}", z.pow(5).re().to_decimal(12)?);
    Ok(())
}
