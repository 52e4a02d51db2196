//! Rational polyhedral cones inside the closed positive orthant, stored by
//! their primitive extreme rays with a derived exact H-representation
//! (facet inequalities plus span equalities) for membership and face
//! computations.
//!
//! All rays live in the orthant, so every cone here is automatically
//! strongly convex.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::newton::linalg;
use crate::newton::linalg::combinations;

#[derive(Clone, Debug)]
pub struct Cone {
    dim: usize,
    rays: Vec<Vec<i64>>,
    facets: Vec<Vec<i64>>,
    span_orth: Vec<Vec<i64>>,
}

impl PartialEq for Cone {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.rays == other.rays
    }
}

impl Eq for Cone {}

impl PartialOrd for Cone {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Cone {
    fn cmp(&self, other: &Self) -> Ordering {
        self.dim
            .cmp(&other.dim)
            .then_with(|| self.rays.cmp(&other.rays))
    }
}

impl Cone {
    /// Cone generated by the given rays; generators are primitivized,
    /// deduplicated, and reduced to the extreme rays.
    pub fn new(dim: usize, generators: Vec<Vec<i64>>) -> Result<Cone> {
        let mut rays: Vec<Vec<i64>> = Vec::new();
        for g in generators {
            if g.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: g.len(),
                });
            }
            if g.iter().any(|&x| x < 0) {
                return Err(Error::InvalidFan(format!(
                    "ray {g:?} lies outside the positive orthant"
                )));
            }
            if g.iter().all(|&x| x == 0) {
                continue;
            }
            let p = linalg::to_i64_vec(&linalg::primitive(
                &g.iter().map(|&x| i128::from(x)).collect::<Vec<_>>(),
            ));
            if !rays.contains(&p) {
                rays.push(p);
            }
        }
        rays.sort();
        let mut cone = Cone {
            dim,
            rays,
            facets: Vec::new(),
            span_orth: Vec::new(),
        };
        cone.span_orth = linalg::kernel_basis(&cone.rays, dim)
            .iter()
            .map(|v| linalg::to_i64_vec(v))
            .collect();
        cone.facets = cone.compute_facets();
        cone.drop_non_extreme_rays();
        Ok(cone)
    }

    pub fn origin(dim: usize) -> Cone {
        Cone::new(dim, Vec::new()).expect("origin cone is valid")
    }

    fn compute_facets(&self) -> Vec<Vec<i64>> {
        let cd = self.cone_dim();
        if cd == 0 {
            return Vec::new();
        }
        let mut facets: BTreeSet<Vec<i64>> = BTreeSet::new();
        for subset in combinations(self.rays.len(), cd - 1) {
            let mut rows: Vec<Vec<i64>> = subset.iter().map(|&i| self.rays[i].clone()).collect();
            rows.extend(self.span_orth.iter().cloned());
            let Some(kernel) = linalg::kernel_vector(&rows, self.dim) else {
                continue;
            };
            let w = linalg::to_i64_vec(&kernel);
            let dots: Vec<i128> = self.rays.iter().map(|r| linalg::dot(&w, r)).collect();
            let oriented = if dots.iter().all(|&d| d >= 0) {
                w
            } else if dots.iter().all(|&d| d <= 0) {
                w.iter().map(|&x| -x).collect()
            } else {
                continue;
            };
            let zero_rays: Vec<Vec<i64>> = self
                .rays
                .iter()
                .filter(|r| linalg::dot(&oriented, r) == 0)
                .cloned()
                .collect();
            let mut rank_rows = zero_rays;
            rank_rows.extend(self.span_orth.iter().cloned());
            if linalg::rank(&rank_rows) + 1 == self.dim {
                facets.insert(oriented);
            }
        }
        facets.into_iter().collect()
    }

    fn drop_non_extreme_rays(&mut self) {
        let needed = self.cone_dim().saturating_sub(1) + self.span_orth.len();
        self.rays.retain(|r| {
            let mut rows: Vec<Vec<i64>> = self
                .facets
                .iter()
                .filter(|w| linalg::dot(w, r) == 0)
                .cloned()
                .collect();
            rows.extend(self.span_orth.iter().cloned());
            linalg::rank(&rows) == needed
        });
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    /// Dimension of the cone itself (rank of its rays).
    pub fn cone_dim(&self) -> usize {
        self.dim - self.span_orth.len()
    }

    pub fn rays(&self) -> &[Vec<i64>] {
        &self.rays
    }

    pub fn is_simplicial(&self) -> bool {
        self.rays.len() == self.cone_dim()
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        self.span_orth.iter().all(|u| linalg::dot(u, x) == 0)
            && self.facets.iter().all(|w| linalg::dot(w, x) >= 0)
    }

    pub fn contains_in_relative_interior(&self, x: &[i64]) -> bool {
        if self.cone_dim() == 0 {
            return x.iter().all(|&v| v == 0);
        }
        self.span_orth.iter().all(|u| linalg::dot(u, x) == 0)
            && self.facets.iter().all(|w| linalg::dot(w, x) > 0)
    }

    pub fn contains_cone(&self, other: &Cone) -> bool {
        other.rays.iter().all(|r| self.contains(r))
    }

    /// All faces, the cone itself and the origin included.
    pub fn faces(&self) -> Vec<Cone> {
        assert!(
            self.facets.len() < 60,
            "face enumeration over too many facets"
        );
        let mut out: BTreeSet<Cone> = BTreeSet::new();
        for mask in 0u64..(1u64 << self.facets.len()) {
            let selected: Vec<&Vec<i64>> = self
                .facets
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, w)| w)
                .collect();
            let rays: Vec<Vec<i64>> = self
                .rays
                .iter()
                .filter(|r| selected.iter().all(|w| linalg::dot(w, r) == 0))
                .cloned()
                .collect();
            out.insert(Cone::new(self.dim, rays).expect("face of a valid cone is valid"));
        }
        out.insert(Cone::origin(self.dim));
        out.into_iter().collect()
    }

    /// Proper faces of one dimension less than the cone.
    pub fn facet_faces(&self) -> Vec<Cone> {
        let cd = self.cone_dim();
        self.faces()
            .into_iter()
            .filter(|f| cd > 0 && f.cone_dim() == cd - 1)
            .collect()
    }

    pub fn join(&self, ray: &[i64]) -> Result<Cone> {
        let mut generators = self.rays.clone();
        generators.push(ray.to_vec());
        Cone::new(self.dim, generators)
    }

    /// Lattice multiplicity of a simplicial cone: the gcd of the maximal
    /// minors of its ray matrix; 1 exactly when the rays extend to a basis
    /// of the integer lattice.
    pub fn multiplicity(&self) -> Result<i128> {
        if self.rays.is_empty() {
            return Err(Error::EmptyCone);
        }
        if !self.is_simplicial() {
            return Err(Error::InvalidFan(
                "multiplicity of a non-simplicial cone".into(),
            ));
        }
        let k = self.rays.len();
        let mut g: i128 = 0;
        for cols in combinations(self.dim, k) {
            let minor: Vec<Vec<i64>> = self
                .rays
                .iter()
                .map(|r| cols.iter().map(|&c| r[c]).collect())
                .collect();
            g = linalg::gcd(g, det(&minor));
        }
        Ok(g)
    }

    /// Regularity: simplicial with multiplicity 1. Non-simplicial cones are
    /// reported as not regular.
    pub fn is_regular(&self) -> Result<bool> {
        if self.rays.is_empty() {
            return Err(Error::EmptyCone);
        }
        if !self.is_simplicial() {
            return Ok(false);
        }
        Ok(self.multiplicity()? == 1)
    }

    /// Intersection of two cones over the combined H-representation.
    pub fn intersect(&self, other: &Cone) -> Result<Cone> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        let equalities: Vec<Vec<i64>> = self
            .span_orth
            .iter()
            .chain(&other.span_orth)
            .cloned()
            .collect();
        let inequalities: Vec<Vec<i64>> =
            self.facets.iter().chain(&other.facets).cloned().collect();
        let rays = rays_from_hrep(self.dim, &equalities, &inequalities);
        Cone::new(self.dim, rays)
    }
}

/// Extreme rays of {x : E x = 0, A x >= 0}, for a cone known to be pointed
/// (contained in the positive orthant).
pub(crate) fn rays_from_hrep(
    dim: usize,
    equalities: &[Vec<i64>],
    inequalities: &[Vec<i64>],
) -> Vec<Vec<i64>> {
    let mut constraints: Vec<Vec<i64>> = equalities.to_vec();
    constraints.extend(inequalities.iter().cloned());
    let mut rays: BTreeSet<Vec<i64>> = BTreeSet::new();
    if dim == 0 {
        return Vec::new();
    }
    for subset in combinations(constraints.len(), dim - 1) {
        let rows: Vec<Vec<i64>> = subset.iter().map(|&i| constraints[i].clone()).collect();
        let Some(kernel) = linalg::kernel_vector(&rows, dim) else {
            continue;
        };
        let v = linalg::to_i64_vec(&kernel);
        for candidate in [v.clone(), v.iter().map(|&x| -x).collect::<Vec<_>>()] {
            let eq_ok = equalities.iter().all(|e| linalg::dot(e, &candidate) == 0);
            let ineq_ok = inequalities.iter().all(|a| linalg::dot(a, &candidate) >= 0);
            if eq_ok && ineq_ok {
                rays.insert(candidate);
                break;
            }
        }
    }
    rays.into_iter().collect()
}

/// Exact determinant by Laplace expansion; matrices here are at most 4x4
/// with small entries.
pub(crate) fn det(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    match n {
        0 => 1,
        1 => i128::from(m[0][0]),
        _ => {
            let mut total: i128 = 0;
            for (j, &top) in m[0].iter().enumerate() {
                if top == 0 {
                    continue;
                }
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(c, _)| *c != j)
                            .map(|(_, &x)| x)
                            .collect()
                    })
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                total += sign * i128::from(top) * det(&minor);
            }
            total
        }
    }
}
