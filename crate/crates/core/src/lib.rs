pub mod approx;
pub mod closure;
pub mod constants;
pub mod error;
pub mod expr;
pub mod field;
pub mod kernel;
pub mod reference;

pub use approx::PtcNumber;
pub use error::{Error, Result};
pub use kernel::{GaussianRational, Rational};
