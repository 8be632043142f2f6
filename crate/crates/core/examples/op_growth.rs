//! Rational-operation counts for π as the precision doubles in bit length.

use num_bigint::BigUint;
use ptcnum::constants::pi;
use ptcnum::kernel::counter;

fn main() {
    let mut prev: Option<u64> = None;
    for p in [4u32, 8, 16, 32, 64, 128, 256, 512] {
        let n = BigUint::from(1u32) << p;
        let (_, ops) = counter::measure(|| pi().eval_at(&n).expect("pi"));
        let ratio = prev.map_or(String::new(), |q| format!("  x{:.2}", ops.rational_ops as f64 / q as f64));
        println!("n = 2^{p:<4} ops = {:>8}{ratio}", ops.rational_ops);
        prev = Some(ops.rational_ops);
    }
}
