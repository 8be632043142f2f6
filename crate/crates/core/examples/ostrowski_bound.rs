//! How far roots can move when coefficients do, against brute-forced roots.

use ptcnum::closure::{ostrowski_bound, RationalPolynomial};
use ptcnum::reference::{brute_force_roots, match_roots};
use ptcnum::{GaussianRational, Rational};

fn main() -> ptcnum::Result<()> {
    let f = RationalPolynomial::from_integers(&[-1, 3, 0, -2])?;
    let nudge = GaussianRational::new(Rational::new(1, 1_000_000), Rational::new(-1, 2_000_000));
    let mut coeffs = f.coeffs().to_vec();
    coeffs[1] = &coeffs[1] + &nudge;
    let g = RationalPolynomial::new(coeffs)?;

    let bound = ostrowski_bound(&f, &g)?;
    println!("f = {f}");
    println!("gamma <= {:.6}, epsilon <= {:.6}", bound.gamma.to_f64(), bound.epsilon.to_f64());
    println!("pairing bound 2n*epsilon = {:.6}", bound.pairing_bound.to_f64());

    let rf: Vec<_> = brute_force_roots(&f, 128).into_iter().map(|e| e.center).collect();
    let rg: Vec<_> = brute_force_roots(&g, 128).into_iter().map(|e| e.center).collect();
    let m = match_roots(&rf, &rg)?;
    println!("actual largest displacement  = {:.3e}", m.max_distance.to_f64());
    Ok(())
}
