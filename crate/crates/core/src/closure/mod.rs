//! Roots of monic squarefree polynomials with computable coefficients.
//!
//! Coefficients are truncated to Gaussian rationals with a precision budget
//! from Ostrowski's root-perturbation bound, candidate roots are certified by
//! Kantorovich's condition in exact arithmetic, and Newton's method refines
//! them to the requested precision.

mod kantorovich;
mod ostrowski;
mod poly;
mod root;
mod seeds;

pub use kantorovich::{kantorovich_certify, newton_refine, KantorovichCertificate, NewtonRun, Reject};
pub use ostrowski::{coefficient_budget, ostrowski_bound, truncate_coefficients, CoefficientPrecisionPlan, OstrowskiBound};
pub use poly::{Polynomial, RationalPolynomial};
pub use root::{root_number, RootConfig, RootRun, RootSelector, RootSystem};
pub use seeds::{aberth_f64, find_seeds, find_seeds_with, SeedCertificate, SeedConfig};
