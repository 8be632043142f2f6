//! A small expression language over computable numbers.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := '-' factor | atom ('^' nat)?
//! atom   := rational | 'i' | 'pi' | 'atan_inv(' nat ')' | 're(' expr ')'
//!         | 'im(' expr ')' | 'root(' poly (',' seed)? ')' | '(' expr ')'
//! ```
//!
//! `p/q` written without spaces is a single rational literal, as is a
//! decimal such as `1.25`. A `poly` is an expression in `x`; it is expanded
//! and divided by its leading coefficient. A `seed` is `#J` (the J-th root in
//! `(re, im)` order) or a point such as `1.4` or `-0.5 + 0.87i`.

mod eval;
mod parse;

use std::fmt;

use crate::kernel::{GaussianRational, Rational};

pub use eval::{evaluate, evaluate_with, lower, EvalOptions, Report, RootReport};
pub use parse::parse;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Rational(Rational),
    ImaginaryUnit,
    Pi,
    ArctanInv(u64),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    IntPow(Box<Expr>, u32),
    /// Root of `x^n + c_{n-1} x^{n-1} + … + c_0`; `coeffs` are `c_0..c_{n-1}`.
    Root { coeffs: Vec<Expr>, seed: SeedHint },
    Re(Box<Expr>),
    Im(Box<Expr>),
}

/// Which root of a polynomial an expression refers to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeedHint {
    None,
    Index(usize),
    Near(GaussianRational),
}

impl Expr {
    pub fn lit(q: Rational) -> Self {
        Expr::Rational(q)
    }

    pub fn int(k: i64) -> Self {
        Expr::Rational(Rational::from_integer(k))
    }
}

fn write_rational(f: &mut fmt::Formatter<'_>, q: &Rational) -> fmt::Result {
    if q.is_negative() {
        write!(f, "(-{})", q.abs())
    } else {
        write!(f, "{q}")
    }
}

/// Fully parenthesized, so printing and reparsing gives the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Rational(q) => write_rational(f, q),
            Expr::ImaginaryUnit => write!(f, "i"),
            Expr::Pi => write!(f, "pi"),
            Expr::ArctanInv(k) => write!(f, "atan_inv({k})"),
            Expr::Neg(a) => write!(f, "(-{a})"),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Sub(a, b) => write!(f, "({a} - {b})"),
            Expr::Mul(a, b) => write!(f, "({a} * {b})"),
            Expr::Div(a, b) => write!(f, "({a} / {b})"),
            Expr::IntPow(a, k) => write!(f, "({a})^{k}"),
            Expr::Re(a) => write!(f, "re({a})"),
            Expr::Im(a) => write!(f, "im({a})"),
            Expr::Root { coeffs, seed } => {
                let n = coeffs.len();
                match n {
                    1 => write!(f, "root(x")?,
                    _ => write!(f, "root(x^{n}")?,
                }
                for (j, c) in coeffs.iter().enumerate().rev() {
                    match j {
                        0 => write!(f, " + ({c})")?,
                        1 => write!(f, " + ({c})*x")?,
                        _ => write!(f, " + ({c})*x^{j}")?,
                    }
                }
                match seed {
                    SeedHint::None => {}
                    SeedHint::Index(j) => write!(f, ", #{j}")?,
                    SeedHint::Near(z) => {
                        write!(f, ", {}{}{}i", z.re, if z.im.is_negative() { " - " } else { " + " }, z.im.abs())?;
                    }
                }
                write!(f, ")")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::reference::{reference_pi, within_inverse};
    use num_bigint::BigUint;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn b(e: Expr) -> Box<Expr> {
        Box::new(e)
    }

    #[test]
    fn parse_examples() {
        assert_eq!(parse("pi").unwrap(), Expr::Pi);
        let e = parse("(1 + 2*i)/3").unwrap();
        let want = Expr::Div(b(Expr::Add(b(Expr::int(1)), b(Expr::Mul(b(Expr::int(2)), b(Expr::ImaginaryUnit))))), b(Expr::int(3)));
        assert_eq!(e, want);
        let r = parse("root(x^3 - 2, 1.3)").unwrap();
        let want = Expr::Root {
            coeffs: vec![Expr::Neg(b(Expr::int(2))), Expr::int(0), Expr::int(0)],
            seed: SeedHint::Near(GaussianRational::from_real(q(13, 10))),
        };
        assert_eq!(r, want);
    }

    #[test]
    fn literals_and_precedence() {
        assert_eq!(parse("1/3").unwrap(), Expr::lit(q(1, 3)));
        assert_eq!(parse("1 / 3").unwrap(), Expr::Div(b(Expr::int(1)), b(Expr::int(3))));
        assert_eq!(parse("0.25").unwrap(), Expr::lit(q(1, 4)));
        assert_eq!(parse("-2^2").unwrap(), Expr::Neg(b(Expr::IntPow(b(Expr::int(2)), 2))));
        assert_eq!(
            parse("1 - 2 - 3").unwrap(),
            Expr::Sub(b(Expr::Sub(b(Expr::int(1)), b(Expr::int(2)))), b(Expr::int(3)))
        );
        assert_eq!(parse("atan_inv(239)").unwrap(), Expr::ArctanInv(239));
    }

    #[test]
    fn polynomial_normalization() {
        let e = parse("root(2*x^2 - 4, #1)").unwrap();
        let Expr::Root { coeffs, seed } = e else { panic!() };
        assert_eq!(seed, SeedHint::Index(1));
        assert_eq!(coeffs.len(), 2);
        assert!(matches!(&coeffs[0], Expr::Div(..)));
        let e = parse("root((x - 1)*(x + 1), -0.5 - 2i)").unwrap();
        let Expr::Root { coeffs, seed } = e else { panic!() };
        assert_eq!(coeffs.len(), 2);
        assert_eq!(seed, SeedHint::Near(GaussianRational::new(q(-1, 2), q(-2, 1))));
        let Expr::Root { seed, .. } = parse("root(x^2 + 1, 1i)").unwrap() else { panic!() };
        assert_eq!(seed, SeedHint::Near(GaussianRational::i()));
    }

    #[test]
    fn parse_errors_have_offsets() {
        let err = |s: &str| match parse(s) {
            Err(Error::Parse { offset, .. }) => offset,
            other => panic!("{s}: {other:?}"),
        };
        assert_eq!(err("1 + foo"), 4);
        assert_eq!(err("(1 + 2"), 6);
        assert_eq!(err("2 $ 3"), 2);
        assert_eq!(err("x + 1"), 0);
        assert_eq!(err("root(5)"), 5);
        assert_eq!(err("root(x^2 / x)"), 11);
        assert_eq!(err("1/0"), 2);
        assert_eq!(err("2^x"), 2);
        assert_eq!(err("atan_inv(1)"), 9);
    }

    #[test]
    fn printing_round_trips() {
        for s in ["pi", "(1 + 2*i)/3", "root(x^3 - 2, 1.3)", "-(2/3)^4 * re(atan_inv(5) - i)", "root(x^2 + pi*x - 1, #0)", "root(x - 7/2)"] {
            let e = parse(s).unwrap();
            assert_eq!(parse(&e.to_string()).unwrap(), e, "{s} -> {e}");
        }
    }

    #[test]
    fn evaluation_examples() {
        let n = BigUint::from(1_000_000u32);
        let (v, report) = evaluate(&parse("pi").unwrap(), &n).unwrap();
        let pi_ref = GaussianRational::from_real(reference_pi(30).unwrap());
        assert!(within_inverse(&v, &pi_ref, &(&n / 2u32)));
        assert!(report.ops.rational_ops > 0);

        let n = BigUint::from(100u32);
        let (v, _) = evaluate(&parse("1/3 + 1/6").unwrap(), &n).unwrap();
        assert!(within_inverse(&v, &GaussianRational::from_real(q(1, 2)), &n));

        let n = BigUint::from(1_000_000u32);
        let (v, report) = evaluate(&parse("root(x^2 - 2, 1.4)").unwrap(), &n).unwrap();
        assert!((v.re.to_f64() - std::f64::consts::SQRT_2).abs() <= 1e-6);
        assert_eq!(report.roots.len(), 1);
        assert!(report.roots[0].certificate.starts_with("zeta="));
    }

    #[test]
    fn division_by_zero_surfaces() {
        let opts = EvalOptions { zero_cap: BigUint::from(1u32) << 12u32, ..EvalOptions::default() };
        let r = evaluate_with(&parse("1/(pi - pi)").unwrap(), &BigUint::from(10u32), &opts);
        assert!(matches!(r, Err(Error::PossiblyZero { .. })));
    }
}
