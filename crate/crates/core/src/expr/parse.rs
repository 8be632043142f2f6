//! Recursive-descent parser for [`Expr`].

use num_bigint::BigInt;
use num_traits::Zero;

use super::{Expr, SeedHint};
use crate::error::{Error, Result};
use crate::kernel::{GaussianRational, Rational};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    /// Numeric literal; `integer` when written as plain digits.
    Num { value: Rational, integer: bool },
    Ident(String),
    Sym(char),
    End,
}

struct Lexer;

impl Lexer {
    fn run(src: &str) -> Result<Vec<(usize, Tok)>> {
        let bytes = src.as_bytes();
        let mut out = Vec::new();
        let mut i = 0;
        let digits = |mut j: usize| {
            while j < bytes.len() && bytes[j].is_ascii_digit() {
                j += 1;
            }
            j
        };
        while i < bytes.len() {
            let c = bytes[i];
            if c.is_ascii_whitespace() {
                i += 1;
            } else if c.is_ascii_digit() || (c == b'.' && i + 1 < bytes.len() && bytes[i + 1].is_ascii_digit()) {
                let start = i;
                let int_end = digits(i);
                let whole: BigInt = if int_end > start { src[start..int_end].parse().expect("digits") } else { BigInt::zero() };
                if int_end < bytes.len() && bytes[int_end] == b'.' {
                    let frac_end = digits(int_end + 1);
                    let frac = &src[int_end + 1..frac_end];
                    let scale = num_traits::pow(BigInt::from(10), frac.len());
                    let f: BigInt = if frac.is_empty() { BigInt::zero() } else { frac.parse().expect("digits") };
                    out.push((start, Tok::Num { value: Rational::new(whole * &scale + f, scale), integer: false }));
                    i = frac_end;
                } else if int_end + 1 < bytes.len() && bytes[int_end] == b'/' && bytes[int_end + 1].is_ascii_digit() {
                    let den_end = digits(int_end + 1);
                    let den: BigInt = src[int_end + 1..den_end].parse().expect("digits");
                    if den.is_zero() {
                        return Err(Error::Parse { offset: int_end + 1, message: "zero denominator".into() });
                    }
                    out.push((start, Tok::Num { value: Rational::new(whole, den), integer: false }));
                    i = den_end;
                } else {
                    out.push((start, Tok::Num { value: Rational::from_integer(whole), integer: true }));
                    i = int_end;
                }
            } else if c.is_ascii_alphabetic() || c == b'_' {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(src[start..i].to_string())));
            } else if "+-*/^(),#".contains(c as char) {
                out.push((i, Tok::Sym(c as char)));
                i += 1;
            } else {
                let ch = src[i..].chars().next().expect("in bounds");
                return Err(Error::Parse { offset: i, message: format!("unexpected character '{ch}'") });
            }
        }
        out.push((src.len(), Tok::End));
        Ok(out)
    }
}

/// Intermediate value inside a root polynomial: either free of `x`, or
/// expanded into per-degree coefficients (`None` is an absent term).
enum PolyVal {
    Const(Expr),
    Poly(Vec<Option<Expr>>),
}

fn is_one(e: &Expr) -> bool {
    matches!(e, Expr::Rational(q) if q == &Rational::one())
}

fn coeff_mul(a: &Expr, b: &Expr) -> Expr {
    if is_one(b) {
        a.clone()
    } else if is_one(a) {
        b.clone()
    } else {
        Expr::Mul(Box::new(a.clone()), Box::new(b.clone()))
    }
}

impl PolyVal {
    fn into_terms(self) -> Vec<Option<Expr>> {
        match self {
            PolyVal::Const(c) => vec![Some(c)],
            PolyVal::Poly(p) => p,
        }
    }

    fn combine(self, other: PolyVal, sub: bool) -> PolyVal {
        match (self, other) {
            (PolyVal::Const(a), PolyVal::Const(b)) => PolyVal::Const(if sub {
                Expr::Sub(Box::new(a), Box::new(b))
            } else {
                Expr::Add(Box::new(a), Box::new(b))
            }),
            (a, b) => {
                let (a, b) = (a.into_terms(), b.into_terms());
                let n = a.len().max(b.len());
                let out = (0..n)
                    .map(|j| match (a.get(j).cloned().flatten(), b.get(j).cloned().flatten()) {
                        (x, None) => x,
                        (None, Some(y)) => Some(if sub { Expr::Neg(Box::new(y)) } else { y }),
                        (Some(x), Some(y)) => Some(if sub {
                            Expr::Sub(Box::new(x), Box::new(y))
                        } else {
                            Expr::Add(Box::new(x), Box::new(y))
                        }),
                    })
                    .collect();
                PolyVal::Poly(out)
            }
        }
    }

    fn mul(self, other: PolyVal) -> PolyVal {
        match (self, other) {
            (PolyVal::Const(a), PolyVal::Const(b)) => PolyVal::Const(Expr::Mul(Box::new(a), Box::new(b))),
            (a, b) => {
                let (a, b) = (a.into_terms(), b.into_terms());
                let mut out: Vec<Option<Expr>> = vec![None; a.len() + b.len() - 1];
                for (i, x) in a.iter().enumerate() {
                    for (j, y) in b.iter().enumerate() {
                        if let (Some(x), Some(y)) = (x, y) {
                            let t = coeff_mul(x, y);
                            out[i + j] = Some(match out[i + j].take() {
                                None => t,
                                Some(acc) => Expr::Add(Box::new(acc), Box::new(t)),
                            });
                        }
                    }
                }
                PolyVal::Poly(out)
            }
        }
    }

    fn neg(self) -> PolyVal {
        match self {
            PolyVal::Const(a) => PolyVal::Const(Expr::Neg(Box::new(a))),
            PolyVal::Poly(p) => PolyVal::Poly(p.into_iter().map(|c| c.map(|c| Expr::Neg(Box::new(c)))).collect()),
        }
    }
}

/// Exact value of an expression built from literals and `i` only.
fn const_value(e: &Expr) -> Option<GaussianRational> {
    Some(match e {
        Expr::Rational(q) => GaussianRational::from_real(q.clone()),
        Expr::ImaginaryUnit => GaussianRational::i(),
        Expr::Neg(a) => -&const_value(a)?,
        Expr::Add(a, b) => &const_value(a)? + &const_value(b)?,
        Expr::Sub(a, b) => &const_value(a)? - &const_value(b)?,
        Expr::Mul(a, b) => &const_value(a)? * &const_value(b)?,
        Expr::Div(a, b) => {
            let d = const_value(b)?;
            if d.is_zero() {
                return None;
            }
            &const_value(a)? / &d
        }
        Expr::IntPow(a, k) => const_value(a)?.pow(*k),
        _ => return None,
    })
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

/// Parses an expression; errors carry the byte offset of the problem.
pub fn parse(src: &str) -> Result<Expr> {
    let mut p = Parser { toks: Lexer::run(src)?, pos: 0 };
    let e = p.expr()?;
    match p.peek() {
        Tok::End => Ok(e),
        t => Err(p.error(format!("unexpected {}", describe(t)))),
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Num { value, .. } => format!("number {value}"),
        Tok::Ident(s) => format!("'{s}'"),
        Tok::Sym(c) => format!("'{c}'"),
        Tok::End => "end of input".into(),
    }
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].0
    }

    fn error(&self, message: String) -> Error {
        Error::Parse { offset: self.offset(), message }
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].1.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == &Tok::Sym(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected '{c}', found {}", describe(self.peek()))))
        }
    }

    fn nat(&mut self) -> Result<BigInt> {
        match self.peek().clone() {
            Tok::Num { value, integer: true } => {
                self.bump();
                Ok(value.numer().clone())
            }
            t => Err(self.error(format!("expected a natural number, found {}", describe(&t)))),
        }
    }

    fn small_nat<T: TryFrom<BigInt>>(&mut self, what: &str) -> Result<T> {
        let at = self.offset();
        let n = self.nat()?;
        T::try_from(n).map_err(|_| Error::Parse { offset: at, message: format!("{what} too large") })
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut e = self.term()?;
        loop {
            if self.eat('+') {
                e = Expr::Add(Box::new(e), Box::new(self.term()?));
            } else if self.eat('-') {
                e = Expr::Sub(Box::new(e), Box::new(self.term()?));
            } else {
                return Ok(e);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut e = self.factor()?;
        loop {
            if self.eat('*') {
                e = Expr::Mul(Box::new(e), Box::new(self.factor()?));
            } else if self.eat('/') {
                e = Expr::Div(Box::new(e), Box::new(self.factor()?));
            } else {
                return Ok(e);
            }
        }
    }

    fn factor(&mut self) -> Result<Expr> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.factor()?)));
        }
        let a = self.atom()?;
        if self.eat('^') {
            let k = self.small_nat::<u32>("exponent")?;
            return Ok(Expr::IntPow(Box::new(a), k));
        }
        Ok(a)
    }

    fn call_arg(&mut self) -> Result<Expr> {
        self.expect('(')?;
        let e = self.expr()?;
        self.expect(')')?;
        Ok(e)
    }

    fn atom(&mut self) -> Result<Expr> {
        let at = self.offset();
        match self.bump() {
            Tok::Num { value, .. } => Ok(Expr::Rational(value)),
            Tok::Sym('(') => {
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Ident(name) => match name.as_str() {
                "i" => Ok(Expr::ImaginaryUnit),
                "pi" => Ok(Expr::Pi),
                "re" => Ok(Expr::Re(Box::new(self.call_arg()?))),
                "im" => Ok(Expr::Im(Box::new(self.call_arg()?))),
                "atan_inv" => {
                    self.expect('(')?;
                    let k_at = self.offset();
                    let k = self.small_nat::<u64>("atan_inv argument")?;
                    if k < 2 {
                        return Err(Error::Parse { offset: k_at, message: "atan_inv needs k >= 2".into() });
                    }
                    self.expect(')')?;
                    Ok(Expr::ArctanInv(k))
                }
                "root" => self.root(),
                "x" => Err(Error::Parse { offset: at, message: "'x' is only allowed inside root(...)".into() }),
                _ => Err(Error::Parse { offset: at, message: format!("unknown identifier '{name}'") }),
            },
            t => Err(Error::Parse { offset: at, message: format!("unexpected {}", describe(&t)) }),
        }
    }

    fn root(&mut self) -> Result<Expr> {
        self.expect('(')?;
        let at = self.offset();
        let terms = self.poly_expr()?.into_terms();
        let seed = if self.eat(',') { self.seed()? } else { SeedHint::None };
        self.expect(')')?;
        let mut terms: Vec<Expr> = terms.into_iter().map(|c| c.unwrap_or_else(|| Expr::int(0))).collect();
        while terms.last().and_then(const_value).is_some_and(|v| v.is_zero()) {
            terms.pop();
        }
        let lead = match terms.pop() {
            Some(l) if !terms.is_empty() => l,
            _ => return Err(Error::Parse { offset: at, message: "root needs a polynomial of degree at least 1".into() }),
        };
        let coeffs = if const_value(&lead).is_some_and(|v| v == GaussianRational::one()) {
            terms
        } else {
            terms.into_iter().map(|c| Expr::Div(Box::new(c), Box::new(lead.clone()))).collect()
        };
        Ok(Expr::Root { coeffs, seed })
    }

    fn poly_expr(&mut self) -> Result<PolyVal> {
        let mut e = self.poly_term()?;
        loop {
            if self.eat('+') {
                e = e.combine(self.poly_term()?, false);
            } else if self.eat('-') {
                e = e.combine(self.poly_term()?, true);
            } else {
                return Ok(e);
            }
        }
    }

    fn poly_term(&mut self) -> Result<PolyVal> {
        let mut e = self.poly_factor()?;
        loop {
            if self.eat('*') {
                e = e.mul(self.poly_factor()?);
            } else if self.eat('/') {
                let at = self.offset();
                e = match (e, self.poly_factor()?) {
                    (PolyVal::Const(a), PolyVal::Const(b)) => PolyVal::Const(Expr::Div(Box::new(a), Box::new(b))),
                    (PolyVal::Poly(p), PolyVal::Const(b)) => PolyVal::Poly(
                        p.into_iter().map(|c| c.map(|c| Expr::Div(Box::new(c), Box::new(b.clone())))).collect(),
                    ),
                    _ => return Err(Error::Parse { offset: at, message: "cannot divide by a polynomial in x".into() }),
                };
            } else {
                return Ok(e);
            }
        }
    }

    fn poly_factor(&mut self) -> Result<PolyVal> {
        if self.eat('-') {
            return Ok(self.poly_factor()?.neg());
        }
        let a = self.poly_atom()?;
        if self.eat('^') {
            let k = self.small_nat::<u32>("exponent")?;
            return Ok(match a {
                PolyVal::Const(c) => PolyVal::Const(Expr::IntPow(Box::new(c), k)),
                p => {
                    let mut acc = PolyVal::Const(Expr::int(1));
                    let terms = p.into_terms();
                    for _ in 0..k {
                        acc = acc.mul(PolyVal::Poly(terms.clone()));
                    }
                    match acc {
                        PolyVal::Const(c) => PolyVal::Poly(vec![Some(c)]),
                        p => p,
                    }
                }
            });
        }
        Ok(a)
    }

    fn poly_atom(&mut self) -> Result<PolyVal> {
        match self.peek() {
            Tok::Ident(name) if name == "x" => {
                self.bump();
                Ok(PolyVal::Poly(vec![None, Some(Expr::int(1))]))
            }
            Tok::Sym('(') => {
                self.bump();
                let e = self.poly_expr()?;
                self.expect(')')?;
                Ok(e)
            }
            _ => Ok(PolyVal::Const(self.atom()?)),
        }
    }

    fn seed_number(&mut self) -> Result<Rational> {
        let neg = self.eat('-');
        match self.peek().clone() {
            Tok::Num { value, .. } => {
                self.bump();
                Ok(if neg { -&value } else { value })
            }
            t => Err(self.error(format!("expected a seed number, found {}", describe(&t)))),
        }
    }

    fn eat_i(&mut self) -> bool {
        if matches!(self.peek(), Tok::Ident(s) if s == "i") {
            self.bump();
            true
        } else {
            false
        }
    }

    fn seed(&mut self) -> Result<SeedHint> {
        if self.eat('#') {
            let j = self.small_nat::<usize>("seed index")?;
            return Ok(SeedHint::Index(j));
        }
        let first = self.seed_number()?;
        if self.eat_i() {
            return Ok(SeedHint::Near(GaussianRational::new(Rational::zero(), first)));
        }
        let sign = if self.eat('+') {
            Some(false)
        } else if self.eat('-') {
            Some(true)
        } else {
            None
        };
        let im = match sign {
            None => Rational::zero(),
            Some(neg) => {
                let v = self.seed_number()?;
                if !self.eat_i() {
                    return Err(self.error("expected 'i' after the imaginary part of a seed".into()));
                }
                if neg {
                    -&v
                } else {
                    v
                }
            }
        };
        Ok(SeedHint::Near(GaussianRational::new(first, im)))
    }
}
