//! Digits of π from Machin's formula, with the work each precision took.
//!
//!     cargo run --example pi_digits -- 50

use ptcnum::constants::pi;
use ptcnum::kernel::counter;

fn main() {
    let digits: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(40);
    let p = pi();
    let (text, ops) = counter::measure(|| p.to_decimal(digits).expect("pi never fails"));
    println!("{text}");
    println!("{} rational operations, bit proxy {}", ops.rational_ops, ops.bit_ops_proxy);
}
