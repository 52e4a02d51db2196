//! Nondegeneracy of a polynomial with respect to its Newton boundary: every
//! compact-face polynomial f_gamma must have no common zero of all its
//! partial derivatives on the torus (K*)^{n+1}.
//!
//! In two ambient variables the question is decided exactly: faces are
//! vertices or segments, a segment face polynomial is quasi-homogeneous, and
//! a torus singularity exists precisely when the univariate dehomogenization
//! along the segment has a repeated nonzero root, detected by an exact gcd.
//! In higher dimension only the sampling falsifier is available: a common
//! zero of the face partials over some F_q* is reported as a definitive
//! witness, and exhausting the primes without one is honestly inconclusive.

use num_rational::BigRational;
use num_traits::Zero;

use super::polyhedron::{face_polynomial, newton_polyhedron};
use crate::error::{Error, Result};
use crate::flatness::check_prime;
use crate::poly::{Domain, Polynomial};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NondegeneracyMode {
    /// Exact decision, two ambient variables only.
    Exact2d,
    /// Search (F_q*)^{n+1} for each listed prime; optional cap on the number
    /// of torus points enumerated per face and prime.
    Sample {
        primes: Vec<u64>,
        bound: Option<u64>,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub enum NondegeneracyVerdict {
    Nondegenerate,
    Degenerate(DegeneracyWitness),
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DegeneracyWitness {
    /// Supporting direction of the offending compact face.
    pub face_direction: Vec<i64>,
    pub kind: WitnessKind,
}

#[derive(Clone, Debug, PartialEq)]
pub enum WitnessKind {
    /// A torus point over F_q at which every partial of f_gamma vanishes.
    TorusPoint { q: u64, point: Vec<u64> },
    /// Exact 2d certificate: the univariate reduction of the face polynomial
    /// shares a factor of this degree with its derivative.
    RepeatedRoot { gcd_degree: usize },
}

pub fn nondegenerate(f: &Polynomial, mode: &NondegeneracyMode) -> Result<NondegeneracyVerdict> {
    if f.domain() != Domain::Rational {
        return Err(Error::DomainMismatch(
            "nondegeneracy expects a rational, parameter-free polynomial".into(),
        ));
    }
    match mode {
        NondegeneracyMode::Exact2d => exact_2d(f),
        NondegeneracyMode::Sample { primes, bound } => sample(f, primes, *bound),
    }
}

fn exact_2d(f: &Polynomial) -> Result<NondegeneracyVerdict> {
    if f.variable_count() != 2 {
        return Err(Error::Exact2dOnly(f.variable_count()));
    }
    let p = newton_polyhedron(f)?;
    for face in p.compact_faces()? {
        let fg = face_polynomial(f, &face.direction)?;
        match face_is_degenerate_2d(&fg)? {
            None => {}
            Some(gcd_degree) => {
                // prefer a concrete torus point as the witness
                let kind = hunt_torus_witness(&fg, &[3, 5, 7, 11, 13])
                    .map(|(q, point)| WitnessKind::TorusPoint { q, point })
                    .unwrap_or(WitnessKind::RepeatedRoot { gcd_degree });
                return Ok(NondegeneracyVerdict::Degenerate(DegeneracyWitness {
                    face_direction: face.direction,
                    kind,
                }));
            }
        }
    }
    Ok(NondegeneracyVerdict::Nondegenerate)
}

/// Degeneracy decision for one compact face polynomial in 2 variables.
/// Returns the degree of gcd(g, g') when degenerate.
fn face_is_degenerate_2d(fg: &Polynomial) -> Result<Option<usize>> {
    let support = fg.exponent_support();
    if support.len() == 1 {
        // monomial c x^a y^b: a partial vanishes on the torus only when its
        // variable is absent, so the only degenerate monomial is a constant
        return Ok(if support[0].iter().all(|&e| e == 0) {
            Some(0)
        } else {
            None
        });
    }
    // segment: write exponents as e_first + k * step
    let mut points = support;
    points.sort();
    let first = points[0].clone();
    let last = points[points.len() - 1].clone();
    let diff: Vec<i64> = last
        .iter()
        .zip(&first)
        .map(|(&a, &b)| i64::from(a) - i64::from(b))
        .collect();
    let g = super::linalg::gcd(i128::from(diff[0]), i128::from(diff[1])) as i64;
    let step: Vec<i64> = diff.iter().map(|&d| d / g).collect();
    let span = if step[0] != 0 {
        diff[0] / step[0]
    } else {
        diff[1] / step[1]
    };
    let mut coeffs = vec![BigRational::zero(); span as usize + 1];
    for e in &points {
        let offset: Vec<i64> = e
            .iter()
            .zip(&first)
            .map(|(&a, &b)| i64::from(a) - i64::from(b))
            .collect();
        let k = if step[0] != 0 {
            offset[0] / step[0]
        } else {
            offset[1] / step[1]
        };
        if offset != step.iter().map(|&s| s * k).collect::<Vec<_>>() {
            return Err(Error::Internal(
                "face support points are not collinear".into(),
            ));
        }
        match fg.coefficient_of(e) {
            crate::poly::Coefficient::Rational(r) => coeffs[k as usize] = r,
            _ => unreachable!("face polynomial is rational"),
        }
    }
    let g = UniPoly::new(coeffs);
    let gcd = UniPoly::gcd(&g, &g.derivative());
    Ok(match gcd.degree() {
        Some(d) if d >= 1 => Some(d),
        _ => None,
    })
}

fn sample(f: &Polynomial, primes: &[u64], bound: Option<u64>) -> Result<NondegeneracyVerdict> {
    if primes.is_empty() {
        return Err(Error::EmptyPrimes);
    }
    for &q in primes {
        check_prime(q)?;
    }
    let dim = f.variable_count();
    let p = newton_polyhedron(f)?;
    for face in p.compact_faces()? {
        let fg = face_polynomial(f, &face.direction)?;
        for &q in primes {
            if let Some(b) = bound {
                let size = (u128::from(q) - 1).pow(dim as u32);
                if size > u128::from(b) {
                    return Err(Error::BudgetExceeded {
                        size,
                        budget: u128::from(b),
                    });
                }
            }
            if let Some(point) = torus_witness(&fg, q)? {
                return Ok(NondegeneracyVerdict::Degenerate(DegeneracyWitness {
                    face_direction: face.direction,
                    kind: WitnessKind::TorusPoint { q, point },
                }));
            }
        }
    }
    if dim == 2 {
        // the exact path settles what sampling could not falsify
        return exact_2d(f);
    }
    Ok(NondegeneracyVerdict::Inconclusive)
}

/// First torus point of (F_q*)^dim, in lexicographic order, where every
/// partial derivative of `fg` vanishes. Primes under which some partial
/// loses terms (a coefficient or denominator collapsing mod q) are skipped:
/// the reduced system would not be the partials of f_gamma any more, and a
/// zero of it would witness nothing about the characteristic-zero question.
fn torus_witness(fg: &Polynomial, q: u64) -> Result<Option<Vec<u64>>> {
    let dim = fg.variable_count();
    let mut partials = Vec::with_capacity(dim);
    for i in 1..=dim {
        let exact = fg.partial_derivative(i)?;
        let reduced = match exact.to_modular(q) {
            Ok(r) => r,
            Err(Error::BadReduction { .. }) => return Ok(None),
            Err(e) => return Err(e),
        };
        if reduced.term_count() != exact.term_count() {
            return Ok(None);
        }
        partials.push(reduced);
    }
    let mut point = vec![1u64; dim];
    loop {
        if partials
            .iter()
            .all(|p| p.evaluate(&point).expect("point matches arity") == 0)
        {
            return Ok(Some(point));
        }
        // lexicographic odometer over {1..q-1}^dim
        let mut i = dim;
        loop {
            if i == 0 {
                return Ok(None);
            }
            i -= 1;
            point[i] += 1;
            if point[i] < q {
                break;
            }
            point[i] = 1;
        }
    }
}

fn hunt_torus_witness(fg: &Polynomial, primes: &[u64]) -> Option<(u64, Vec<u64>)> {
    for &q in primes {
        if let Ok(Some(point)) = torus_witness(fg, q) {
            return Some((q, point));
        }
    }
    None
}

/// Dense univariate polynomial over Q, little-endian coefficients.
struct UniPoly {
    coeffs: Vec<BigRational>,
}

impl UniPoly {
    fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    fn derivative(&self) -> UniPoly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * BigRational::from_integer(k.into()))
            .collect();
        UniPoly::new(coeffs)
    }

    fn rem(&self, divisor: &UniPoly) -> UniPoly {
        let d = divisor.degree().expect("division by zero polynomial");
        let lead = divisor.coeffs[d].clone();
        let mut rest = self.coeffs.clone();
        while rest.len() > d {
            let k = rest.len() - 1;
            let factor = &rest[k] / &lead;
            if !factor.is_zero() {
                for j in 0..=d {
                    let delta = &factor * &divisor.coeffs[j];
                    rest[k - d + j] -= delta;
                }
            }
            rest.pop();
        }
        UniPoly::new(rest)
    }

    fn gcd(a: &UniPoly, b: &UniPoly) -> UniPoly {
        let mut a = UniPoly::new(a.coeffs.clone());
        let mut b = UniPoly::new(b.coeffs.clone());
        while !b.coeffs.is_empty() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Symbols;

    fn poly2(text: &str) -> Polynomial {
        Symbols::new(["x", "y"], Vec::<String>::new())
            .unwrap()
            .parse(text)
            .unwrap()
    }

    #[test]
    fn cusp_is_nondegenerate() {
        let v = nondegenerate(&poly2("x^2 + y^3"), &NondegeneracyMode::Exact2d).unwrap();
        assert_eq!(v, NondegeneracyVerdict::Nondegenerate);
    }

    #[test]
    fn perfect_square_is_degenerate() {
        let v = nondegenerate(&poly2("x^2 + 2*x*y + y^2"), &NondegeneracyMode::Exact2d).unwrap();
        match v {
            NondegeneracyVerdict::Degenerate(w) => match w.kind {
                WitnessKind::TorusPoint { q, point } => {
                    // the witness zeroes both partials 2x + 2y
                    assert_eq!((point[0] + point[1]) % q, 0);
                }
                WitnessKind::RepeatedRoot { .. } => panic!("expected a torus point witness"),
            },
            other => panic!("expected degenerate, got {other:?}"),
        }
    }

    #[test]
    fn single_monomial_is_nondegenerate() {
        let v = nondegenerate(&poly2("x^3"), &NondegeneracyMode::Exact2d).unwrap();
        assert_eq!(v, NondegeneracyVerdict::Nondegenerate);
        // but a constant term makes the origin a compact face with vanishing
        // partials everywhere
        let v = nondegenerate(&poly2("x + 1"), &NondegeneracyMode::Exact2d).unwrap();
        assert!(matches!(v, NondegeneracyVerdict::Degenerate(_)));
    }

    #[test]
    fn sampling_finds_square_witness() {
        let mode = NondegeneracyMode::Sample {
            primes: vec![5],
            bound: None,
        };
        let v = nondegenerate(&poly2("x^2 + 2*x*y + y^2"), &mode).unwrap();
        assert!(matches!(v, NondegeneracyVerdict::Degenerate(_)));
    }

    #[test]
    fn sampling_in_three_variables_is_inconclusive() {
        let f = Symbols::new(["x", "y", "z"], Vec::<String>::new())
            .unwrap()
            .parse("x^2 + y^2 + z^2")
            .unwrap();
        let mode = NondegeneracyMode::Sample {
            primes: vec![3, 5],
            bound: None,
        };
        assert_eq!(
            nondegenerate(&f, &mode).unwrap(),
            NondegeneracyVerdict::Inconclusive
        );
    }

    #[test]
    fn sampling_upgrades_to_exact_in_2d() {
        let mode = NondegeneracyMode::Sample {
            primes: vec![3],
            bound: None,
        };
        assert_eq!(
            nondegenerate(&poly2("x^2 + y^3"), &mode).unwrap(),
            NondegeneracyVerdict::Nondegenerate
        );
    }

    #[test]
    fn mode_errors() {
        let f = Symbols::new(["x", "y", "z"], Vec::<String>::new())
            .unwrap()
            .parse("x + y + z")
            .unwrap();
        assert!(matches!(
            nondegenerate(&f, &NondegeneracyMode::Exact2d),
            Err(Error::Exact2dOnly(3))
        ));
        let mode = NondegeneracyMode::Sample {
            primes: vec![],
            bound: None,
        };
        assert!(matches!(
            nondegenerate(&poly2("x + y"), &mode),
            Err(Error::EmptyPrimes)
        ));
        let mode = NondegeneracyMode::Sample {
            primes: vec![4],
            bound: None,
        };
        assert!(matches!(
            nondegenerate(&poly2("x + y"), &mode),
            Err(Error::NotPrime(4))
        ));
    }

    #[test]
    fn torus_enumeration_bound_is_enforced() {
        let mode = NondegeneracyMode::Sample {
            primes: vec![13],
            bound: Some(10),
        };
        assert!(matches!(
            nondegenerate(&poly2("x^2 + y^3"), &mode),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn univariate_gcd() {
        let r = |n: i64| BigRational::from_integer(n.into());
        // (1+w)^2 against its derivative
        let g = UniPoly::new(vec![r(1), r(2), r(1)]);
        let gcd = UniPoly::gcd(&g, &g.derivative());
        assert_eq!(gcd.degree(), Some(1));
        // squarefree 1 + w
        let g = UniPoly::new(vec![r(1), r(1)]);
        let gcd = UniPoly::gcd(&g, &g.derivative());
        assert_eq!(gcd.degree(), Some(0));
    }
}
