//! Newton polyhedron toolkit: boundary faces, support function, face
//! polynomials, nondegeneracy, Gamma(f)-deformation validation, and the
//! monomial integral-closure membership test.

pub(crate) mod linalg;
mod nondegenerate;
mod polyhedron;

pub use nondegenerate::{
    nondegenerate, DegeneracyWitness, NondegeneracyMode, NondegeneracyVerdict, WitnessKind,
};
pub use polyhedron::{
    exponent_support, face_polynomial, newton_polyhedron, Face, Facet, NewtonPolyhedron,
    DIMENSION_CAP,
};

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::Polynomial;

/// One exponent of a perturbation that escapes the Newton polyhedron of the
/// base polynomial. Perturbation indices are 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaViolation {
    pub perturbation: usize,
    pub exponent: Vec<u32>,
}

/// Outcome of the Gamma(f)-deformation test, with every violating exponent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaReport {
    pub valid: bool,
    pub violations: Vec<GammaViolation>,
}

/// Check P(g_j) subset of P(f) for every perturbation g_j, reduced to
/// pointwise membership of each exponent of g_j.
pub fn gamma_deformation_valid(
    f: &Polynomial,
    perturbations: &[Polynomial],
) -> Result<GammaReport> {
    let p = newton_polyhedron(f)?;
    let mut violations = Vec::new();
    for (j, g) in perturbations.iter().enumerate() {
        if g.variable_count() != f.variable_count() {
            return Err(Error::ArityMismatch(format!(
                "perturbation {} has {} variables, base has {}",
                j + 1,
                g.variable_count(),
                f.variable_count()
            )));
        }
        if g.parameter_count() != 0 {
            return Err(Error::ParametricInput(
                "perturbations must be plain polynomials",
            ));
        }
        for e in g.exponent_support() {
            let point: Vec<i64> = e.iter().map(|&x| i64::from(x)).collect();
            if !p.contains(&point)? {
                violations.push(GammaViolation {
                    perturbation: j + 1,
                    exponent: e,
                });
            }
        }
    }
    Ok(GammaReport {
        valid: violations.is_empty(),
        violations,
    })
}

/// Monomial integral-closure membership: x^e lies in the integral closure of
/// (x_1^{a_1}, ..., x_n^{a_n}) iff sum_i e_i / a_i >= 1, in exact rational
/// arithmetic.
pub fn integral_closure_member(e: &[u32], powers: &[u32]) -> Result<bool> {
    if e.len() != powers.len() {
        return Err(Error::DimensionMismatch {
            expected: powers.len(),
            got: e.len(),
        });
    }
    let mut total = BigRational::zero();
    for (i, (&ei, &ai)) in e.iter().zip(powers).enumerate() {
        if ai == 0 {
            return Err(Error::ZeroPurePower(i + 1));
        }
        total += BigRational::new(ei.into(), ai.into());
    }
    Ok(total >= BigRational::one())
}

/// Whole-polynomial form of the membership test: every term must pass.
pub fn integral_closure_member_poly(f: &Polynomial, powers: &[u32]) -> Result<bool> {
    let support = exponent_support(f)?;
    for e in support {
        if !integral_closure_member(&e, powers)? {
            return Ok(false);
        }
    }
    Ok(true)
}
