//! `ptc`: evaluate an expression to a guaranteed precision.

use std::process::ExitCode;

use clap::{ArgGroup, Parser};
use num_bigint::{BigInt, BigUint};
use ptcnum::approx::render_fixed;
use ptcnum::expr::{evaluate_with, parse, EvalOptions};
use ptcnum::kernel::{round_nearest, GaussianRational, Rational};
use ptcnum::Error;

#[derive(Parser, Debug)]
#[command(name = "ptc", version, about = "Evaluate an expression over computable complex numbers")]
#[command(group(ArgGroup::new("precision").args(["prec", "digits"])))]
struct Args {
    /// Expression, e.g. "root(x^2 - 2, 1.4) * pi"
    #[arg(allow_hyphen_values = true)]
    expr: String,

    /// Guarantee an error of at most 1/N
    #[arg(long, value_name = "N")]
    prec: Option<BigUint>,

    /// Guarantee D correct decimals (error at most 10^-D) [default: 10]
    #[arg(long, value_name = "D")]
    digits: Option<usize>,

    /// Print operation counts and root certificates to stderr
    #[arg(long)]
    stats: bool,

    /// Print the exact fraction returned by the oracle
    #[arg(long)]
    rational: bool,

    /// Search cap for proving a divisor nonzero
    #[arg(long, value_name = "K")]
    zero_cap: Option<BigUint>,

    /// Root used by root(...) without a seed
    #[arg(long, value_name = "J", default_value_t = 0)]
    seed_index: usize,
}

fn fixed(q: &Rational, digits: usize) -> String {
    let scale = Rational::from_integer(num_traits::pow(BigInt::from(10), digits));
    render_fixed(&round_nearest(&(q * &scale)), digits)
}

fn render(v: &GaussianRational, digits: Option<usize>) -> String {
    let part = |q: &Rational| match digits {
        Some(d) => fixed(q, d),
        None => q.to_string(),
    };
    let re = part(&v.re);
    let im = part(&v.im.abs());
    let im_is_zero = im.chars().all(|c| c == '0' || c == '.');
    if im_is_zero {
        re
    } else {
        format!("{re} {} {im}i", if v.im.is_negative() { "-" } else { "+" })
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    let e = match parse(&args.expr) {
        Ok(e) => e,
        Err(err) => {
            eprintln!("ptc: {err}");
            return ExitCode::from(2);
        }
    };
    // --digits D queries at 2·10^D and rounds to D places; --prec N queries at N
    // and prints ceil(log10 N) places
    let (n, digits) = match (&args.prec, args.digits) {
        (Some(n), _) => {
            if n == &BigUint::from(0u32) {
                eprintln!("ptc: --prec must be at least 1");
                return ExitCode::from(2);
            }
            let d = if n == &BigUint::from(1u32) { 0 } else { (n - 1u32).to_string().len() };
            (n.clone(), d)
        }
        (None, d) => {
            let d = d.unwrap_or(10);
            (num_traits::pow(BigUint::from(10u32), d) * 2u32, d)
        }
    };
    let mut options = EvalOptions { seed_index: args.seed_index, ..EvalOptions::default() };
    if let Some(cap) = args.zero_cap {
        options.zero_cap = cap;
    }
    match evaluate_with(&e, &n, &options) {
        Ok((v, report)) => {
            println!("{}", render(&v, (!args.rational).then_some(digits)));
            if args.stats {
                eprintln!("precision: 1/{n}");
                eprintln!("rational_ops: {}", report.ops.rational_ops);
                eprintln!("bit_ops_proxy: {}", report.ops.bit_ops_proxy);
                for r in &report.roots {
                    let iters = r.newton_iterations.map_or("-".to_string(), |k| k.to_string());
                    eprintln!("root #{}: newton_iterations={iters} {}", r.index, r.certificate);
                }
            }
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("ptc: {err}");
            ExitCode::from(match err {
                Error::Parse { .. } | Error::RootIndex { .. } | Error::ConstantPolynomial => 2,
                Error::PossiblyZero { .. } => 3,
                Error::PrecisionExhausted { .. } => 4,
                _ => 1,
            })
        }
    }
}
