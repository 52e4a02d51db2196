//! Exact sparse multivariate polynomial arithmetic over interchangeable
//! coefficient domains, with a text parser and canonical printer. The
//! substrate for every other module.

mod exponent;
mod polynomial;
mod series;
mod text;

pub use exponent::ExponentVector;
pub use polynomial::{Coefficient, Domain, ParamAssignment, Polynomial};
pub use series::TruncatedSeries;
pub use text::Symbols;

pub(crate) use polynomial::{rational_mod, Scalar};
