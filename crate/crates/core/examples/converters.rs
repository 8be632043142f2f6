//! Building numbers from weaker approximation schemes.

use num_bigint::{BigInt, BigUint};
use ptcnum::approx::{from_partial_oracle, from_real_rational_oracle, PolyIncreasingSequence};
use ptcnum::kernel::round_nearest;
use ptcnum::Rational;

fn main() -> ptcnum::Result<()> {
    // √2 from a rational oracle: Newton's iterates from 3/2 stop once the
    // step is below 1/(4n)
    let sqrt2 = from_real_rational_oracle(|n: &BigUint| {
        let target = Rational::new(BigInt::from(1), BigInt::from(n.clone()) * 4);
        let mut x = Rational::new(3, 2);
        loop {
            let next = &(&x + &(&Rational::from_integer(2) / &x)) / &Rational::from_integer(2);
            if (&next - &x).abs() < target {
                return Ok(next);
            }
            x = next;
        }
    });
    println!("sqrt(2) ~ {}", sqrt2.to_decimal(30)?);

    // 1/7 known only at powers of two, extended to every precision
    let seq = PolyIncreasingSequence::geometric(1, 2)?;
    let seventh = from_partial_oracle(
        |n: &BigUint| {
            let nq = Rational::from_integer(BigInt::from(n.clone()));
            Ok((round_nearest(&(&nq / &Rational::from_integer(7))), BigInt::from(0)))
        },
        seq,
    );
    for m in [3u32, 10, 1000, 1024] {
        println!("1/7 at m = {m}: {}", seventh.eval(m)?);
    }
    Ok(())
}
