//! Shared helpers for the integration and acceptance suites: an exact
//! rational linear-feasibility oracle for polyhedron membership, a brute
//! force Hilbert-basis oracle for 2d cone resolutions, and seeded random
//! polynomial generators. These stay independent of the library paths they
//! check.
#![allow(dead_code)]
// indexed loops are the clearest form for the simplex tableau arithmetic
#![allow(clippy::needless_range_loop, clippy::manual_is_multiple_of)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::rngs::StdRng;
use rand::Rng;

use jetforge::poly::{Domain, Polynomial, Symbols};

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Exact feasibility of e in conv(points) + R^d_{>=0}, by phase-one simplex
/// with Bland's rule over exact rationals: find lambda >= 0, mu >= 0 with
/// sum lambda_i p_i + mu = e and sum lambda_i = 1.
pub fn conv_plus_orthant_contains(points: &[Vec<i64>], e: &[i64]) -> bool {
    let d = e.len();
    let n = points.len();
    let rows = d + 1;
    let structural = n + d;
    let cols = structural + rows + 1; // + artificials + rhs
    let mut tab: Vec<Vec<BigRational>> = vec![vec![BigRational::zero(); cols]; rows];
    for i in 0..d {
        for (j, p) in points.iter().enumerate() {
            tab[i][j] = rat(p[i]);
        }
        tab[i][n + i] = BigRational::one(); // mu_i
        tab[i][structural + i] = BigRational::one(); // artificial
        tab[i][cols - 1] = rat(e[i]);
    }
    for j in 0..n {
        tab[d][j] = BigRational::one(); // sum lambda = 1
    }
    tab[d][structural + d] = BigRational::one();
    tab[d][cols - 1] = BigRational::one();

    // phase-one objective: minimize the artificial sum; reduced costs start
    // as minus the column sums over all rows
    let mut obj: Vec<BigRational> = (0..cols)
        .map(|j| -(0..rows).fold(BigRational::zero(), |acc, i| acc + &tab[i][j]))
        .collect();
    for j in structural..structural + rows {
        obj[j] = BigRational::zero();
    }
    let mut basis: Vec<usize> = (structural..structural + rows).collect();

    // Bland: smallest-index entering column with a negative reduced cost
    while let Some(enter) = (0..cols - 1).find(|&j| obj[j].is_negative()) {
        let mut leave: Option<usize> = None;
        let mut best: Option<BigRational> = None;
        for i in 0..rows {
            if tab[i][enter].is_positive() {
                let ratio = &tab[i][cols - 1] / &tab[i][enter];
                let better = match &best {
                    None => true,
                    Some(b) => ratio < *b || (ratio == *b && basis[i] < basis[leave.unwrap()]),
                };
                if better {
                    best = Some(ratio);
                    leave = Some(i);
                }
            }
        }
        let Some(leave) = leave else {
            // unbounded phase-one objective cannot happen; treat as infeasible
            return false;
        };
        let pivot = tab[leave][enter].clone();
        for x in &mut tab[leave] {
            *x /= &pivot;
        }
        for i in 0..rows {
            if i != leave && !tab[i][enter].is_zero() {
                let f = tab[i][enter].clone();
                for j in 0..cols {
                    let delta = &f * &tab[leave][j];
                    tab[i][j] -= delta;
                }
            }
        }
        if !obj[enter].is_zero() {
            let f = obj[enter].clone();
            for j in 0..cols {
                let delta = &f * &tab[leave][j];
                obj[j] -= delta;
            }
        }
        basis[leave] = enter;
    }
    // feasible iff all artificials were driven to zero
    let total = (0..rows).fold(BigRational::zero(), |acc, i| {
        if basis[i] >= structural {
            acc + &tab[i][cols - 1]
        } else {
            acc
        }
    });
    total.is_zero()
}

/// Brute-force Hilbert basis of a two-dimensional rational cone: the
/// irreducible nonzero lattice points, searched in a box that contains the
/// generators. These are exactly the rays of the minimal resolution.
pub fn hilbert_basis_2d(u: &[i64], v: &[i64]) -> Vec<Vec<i64>> {
    let det = |a: &[i64], b: &[i64]| a[0] * b[1] - a[1] * b[0];
    let inside = |p: &[i64]| -> bool {
        if det(u, v) >= 0 {
            det(u, p) >= 0 && det(p, v) >= 0
        } else {
            det(v, p) >= 0 && det(p, u) >= 0
        }
    };
    let bound = u
        .iter()
        .chain(v.iter())
        .map(|&x| x.abs())
        .max()
        .unwrap()
        .max(1)
        * 2;
    let mut members = Vec::new();
    for x in 0..=bound {
        for y in 0..=bound {
            if (x, y) != (0, 0) && inside(&[x, y]) {
                members.push(vec![x, y]);
            }
        }
    }
    let mut basis: Vec<Vec<i64>> = members
        .iter()
        .filter(|p| {
            // irreducible: not a sum of two nonzero cone points
            !members.iter().any(|a| {
                let rest = [p[0] - a[0], p[1] - a[1]];
                rest != [0, 0]
                    && rest[0] >= 0
                    && rest[1] >= 0
                    && members.iter().any(|b| b[0] == rest[0] && b[1] == rest[1])
            })
        })
        .cloned()
        .collect();
    basis.sort();
    basis
}

/// Random sparse polynomial over the requested domain with the exact
/// variable/parameter shape of `symbols`.
pub fn random_polynomial(
    rng: &mut StdRng,
    symbols: &Symbols,
    domain: &Domain,
    max_degree: u32,
    max_terms: usize,
) -> Polynomial {
    let vars = symbols.vars().len();
    let params = symbols.params().len();
    loop {
        let mut p = Polynomial::zero(vars, domain);
        let terms = rng.gen_range(1..=max_terms);
        for _ in 0..terms {
            let mut exps = vec![0u32; vars + params];
            let mut budget = max_degree;
            for e in exps.iter_mut() {
                let step = rng.gen_range(0..=budget);
                *e = step;
                budget -= step;
                if budget == 0 {
                    break;
                }
            }
            let coeff = match domain {
                Domain::Modular(q) => jetforge::poly::Coefficient::Residue {
                    value: rng.gen_range(0..*q),
                    modulus: *q,
                },
                _ => jetforge::poly::Coefficient::Rational(rat(rng.gen_range(-6..=6i64))),
            };
            let monomial = match domain {
                Domain::Modular(q) => {
                    Polynomial::from_modular_terms(vars, *q, [(exps, 1u64)]).unwrap()
                }
                _ => Polynomial::from_rational_terms(vars, params, [(exps, BigRational::one())])
                    .unwrap(),
            };
            p = p.try_add(&monomial.scale(&coeff).unwrap()).unwrap();
        }
        if !p.is_zero() {
            return p;
        }
    }
}

/// Convenience: parse with freshly declared symbols.
pub fn parse(vars: &[&str], params: &[&str], text: &str) -> Polynomial {
    Symbols::new(vars.iter().copied(), params.iter().copied())
        .unwrap()
        .parse(text)
        .unwrap()
}

/// Build the one-parameter family f + s*g from two plain rational
/// polynomials, through the public term accessors only.
pub fn one_parameter_family(f: &Polynomial, g: &Polynomial) -> Polynomial {
    assert_eq!(f.variable_count(), g.variable_count());
    let mut terms: Vec<(Vec<u32>, BigRational)> = Vec::new();
    for (poly, s_exp) in [(f, 0u32), (g, 1u32)] {
        for e in poly.exponent_support() {
            let c = match poly.coefficient_of(&e) {
                jetforge::poly::Coefficient::Rational(r) => r,
                other => panic!("expected rational coefficient, got {other:?}"),
            };
            let mut joint = e;
            joint.push(s_exp);
            terms.push((joint, c));
        }
    }
    Polynomial::from_rational_terms(f.variable_count(), 1, terms).unwrap()
}
