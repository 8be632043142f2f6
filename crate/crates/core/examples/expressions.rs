//! Parsing and evaluating the expression language used by the `ptc` binary.

use num_bigint::BigUint;
use ptcnum::expr::{evaluate, parse};

fn main() -> ptcnum::Result<()> {
    let n = BigUint::from(10u32).pow(20);
    for src in [
        "1/3 + 1/6",
        "16*atan_inv(5) - 4*atan_inv(239)",
        "(1 + 2*i)^3 / (3 - i)",
        "root(x^2 - 2, 1.4) * root(x^2 - 2, -1.4)",
        "re(root(x^3 - 2, -0.6 + 1.1i))",
        "root(x^2 - pi*x + 1, #1)",
    ] {
        let e = parse(src)?;
        let (v, report) = evaluate(&e, &n)?;
        let (re, im) = v.to_f64_pair();
        println!("{src:45} ~ {re:.15} {im:+.15}i  ({} ops)", report.ops.rational_ops);
        println!("{:45}   parsed as {e}", "");
    }
    match parse("root(x^2 / x)") {
        Err(err) => println!("{err}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
