//! jetforge: exact computational machinery for jet schemes of hypersurface
//! families, the Newton polyhedron/fan toolkit that certifies when such
//! families resolve simultaneously, and finite-field point-counting
//! diagnostics that exhibit (non-)flatness of jet-space families at desk
//! scale.
//!
//! All coefficient arithmetic is exact: arbitrary-precision rationals,
//! residues modulo a prime, or polynomials in declared parameters. No
//! floating point enters any algebraic computation (dimension *estimates*
//! from point counts are the one deliberately numeric diagnostic).
//!
//! The main entry points, by module:
//!
//! - [`poly`]: polynomials, truncated series, parsing and printing.
//! - [`jets`]: defining ideals of spaces of m-jets of a hypersurface
//!   (family), truncation, specialization, the monomial local model, and
//!   the Leibniz convolution check.
//! - [`newton`]: Newton polyhedra, support functions, face polynomials,
//!   nondegeneracy, Gamma-deformation validation, monomial integral
//!   closure.
//! - [`fan`]: rational polyhedral fans subdividing the positive orthant,
//!   Newton fans, regularity, admissibility, stellar subdivision and
//!   resolution to a regular admissible subdivision.
//! - [`flatness`]: exact fiber point counts over small prime fields,
//!   dimension estimates, and the flatness diagnostic.

pub mod error;
pub mod fan;
pub mod flatness;
pub mod jets;
pub mod newton;
pub mod poly;

pub use error::{Error, Result};
pub use fan::{Cone, Fan};
pub use flatness::{
    CountReport, DimensionEstimate, EnumerationConfig, FiberSpec, FlatnessReport, FlatnessVerdict,
    SmoothBundleReport,
};
pub use jets::{FamilyPolynomial, JetIdeal, JetStem, JetVariable, SpecValue};
pub use newton::{
    DegeneracyWitness, Face, GammaReport, NewtonPolyhedron, NondegeneracyMode, NondegeneracyVerdict,
};
pub use poly::{
    Coefficient, Domain, ExponentVector, ParamAssignment, Polynomial, Symbols, TruncatedSeries,
};
