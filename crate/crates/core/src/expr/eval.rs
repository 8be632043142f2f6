//! Lowering expressions to computable numbers and evaluating them.

use std::sync::Arc;

use num_bigint::BigUint;

use super::{Expr, SeedHint};
use crate::approx::PtcNumber;
use crate::closure::{Polynomial, RootSelector, RootSystem};
use crate::constants::{arctan_inv, pi};
use crate::error::Result;
use crate::field::{default_zero_cap, divide};
use crate::kernel::counter::{self, OpCounter};
use crate::kernel::GaussianRational;

#[derive(Clone, Debug)]
pub struct EvalOptions {
    /// Search cap for inversion witnesses.
    pub zero_cap: BigUint,
    /// Root picked when a `root(...)` has no seed of its own.
    pub seed_index: usize,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions { zero_cap: default_zero_cap(), seed_index: 0 }
    }
}

/// Statistics for one `root(...)` occurrence.
#[derive(Clone, Debug)]
pub struct RootReport {
    pub index: usize,
    pub newton_iterations: Option<usize>,
    pub certificate: String,
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub ops: OpCounter,
    pub roots: Vec<RootReport>,
}

struct Lowering<'a> {
    options: &'a EvalOptions,
    pi: Option<PtcNumber>,
    roots: Vec<(Arc<RootSystem>, usize)>,
}

impl Lowering<'_> {
    fn lower(&mut self, e: &Expr) -> Result<PtcNumber> {
        Ok(match e {
            Expr::Rational(q) => PtcNumber::rational(q.clone()),
            Expr::ImaginaryUnit => PtcNumber::i(),
            Expr::Pi => self.pi.get_or_insert_with(pi).clone(),
            Expr::ArctanInv(k) => arctan_inv(*k)?,
            Expr::Neg(a) => -&self.lower(a)?,
            Expr::Add(a, b) => &self.lower(a)? + &self.lower(b)?,
            Expr::Sub(a, b) => &self.lower(a)? - &self.lower(b)?,
            Expr::Mul(a, b) => &self.lower(a)? * &self.lower(b)?,
            Expr::Div(a, b) => divide(&self.lower(a)?, &self.lower(b)?, &self.options.zero_cap),
            Expr::IntPow(a, k) => self.lower(a)?.pow(*k),
            Expr::Re(a) => self.lower(a)?.re(),
            Expr::Im(a) => self.lower(a)?.im(),
            Expr::Root { coeffs, seed } => {
                let cs = coeffs.iter().map(|c| self.lower(c)).collect::<Result<Vec<_>>>()?;
                let sys = RootSystem::new(Polynomial::new(cs)?);
                let which = sys.select(&match seed {
                    SeedHint::None => RootSelector::Index(self.options.seed_index),
                    SeedHint::Index(j) => RootSelector::Index(*j),
                    SeedHint::Near(z) => RootSelector::Near(z.clone()),
                })?;
                self.roots.push((Arc::clone(&sys), which));
                sys.root(which)
            }
        })
    }
}

/// The computable number denoted by `e`.
pub fn lower(e: &Expr, options: &EvalOptions) -> Result<PtcNumber> {
    Lowering { options, pi: None, roots: Vec::new() }.lower(e)
}

/// [`evaluate_with`] using default options.
pub fn evaluate(e: &Expr, n: &BigUint) -> Result<(GaussianRational, Report)> {
    evaluate_with(e, n, &EvalOptions::default())
}

/// A Gaussian rational within `1/n` of the value of `e`, with statistics.
pub fn evaluate_with(e: &Expr, n: &BigUint, options: &EvalOptions) -> Result<(GaussianRational, Report)> {
    let mut lowering = Lowering { options, pi: None, roots: Vec::new() };
    let (value, ops) = counter::measure(|| -> Result<GaussianRational> {
        let z = lowering.lower(e)?;
        z.eval_at(n)
    });
    let value = value?;
    let roots = lowering
        .roots
        .iter()
        .map(|(sys, which)| {
            let run = sys.last_run(*which);
            RootReport {
                index: *which,
                newton_iterations: run.as_ref().map(|r| r.newton_iterations),
                certificate: run.map(|r| r.certificate.dump_line()).unwrap_or_default(),
            }
        })
        .collect();
    Ok((value, Report { ops, roots }))
}
