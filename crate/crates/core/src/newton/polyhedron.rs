//! Newton polyhedron of a polynomial: P(f) = conv(E(f)) + R^{n+1}_{>=0},
//! computed exactly over the integers.
//!
//! Facet candidates are enumerated from subsets of the exponent support
//! together with coordinate directions, validated by an exact rank test.
//! This is correct and simple for ambient dimension up to 4, which covers
//! the desk-scale inputs this crate targets.

use std::collections::{BTreeMap, BTreeSet};

use super::linalg;
use super::linalg::combinations;
use crate::error::{Error, Result};
use crate::poly::Polynomial;

pub const DIMENSION_CAP: usize = 4;
const SUPPORT_CAP: usize = 48;
const FACET_SUBSET_CAP: usize = 16;

/// One facet inequality <normal, x> >= offset with a primitive inner normal
/// in the closed positive orthant.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Facet {
    pub normal: Vec<i64>,
    pub offset: i64,
}

/// A compact face of the polyhedron, recorded with one strictly interior
/// supporting direction and the vertices attaining it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub direction: Vec<i64>,
    pub vertices: Vec<Vec<i64>>,
    pub compact: bool,
}

/// Vertices and facet inequalities of P(f).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolyhedron {
    dim: usize,
    vertices: Vec<Vec<i64>>,
    facets: Vec<Facet>,
}

/// Exponents of f with nonzero coefficient, sorted. Defined for nonzero,
/// parameter-free polynomials.
pub fn exponent_support(f: &Polynomial) -> Result<Vec<Vec<u32>>> {
    if f.parameter_count() != 0 {
        return Err(Error::ParametricInput(
            "Newton data is taken of a single polynomial, not a family",
        ));
    }
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(f.exponent_support())
}

/// The Newton polyhedron of a nonzero polynomial in at most 4 variables.
pub fn newton_polyhedron(f: &Polynomial) -> Result<NewtonPolyhedron> {
    let support = exponent_support(f)?;
    let dim = f.variable_count();
    if dim > DIMENSION_CAP {
        return Err(Error::DimensionCap {
            dim,
            cap: DIMENSION_CAP,
        });
    }
    if support.len() > SUPPORT_CAP {
        return Err(Error::FaceEnumerationCap(format!(
            "{} support points exceed the cap of {SUPPORT_CAP}",
            support.len()
        )));
    }
    let points: Vec<Vec<i64>> = support
        .iter()
        .map(|e| e.iter().map(|&x| i64::from(x)).collect())
        .collect();

    let mut candidates: BTreeSet<Vec<i64>> = BTreeSet::new();
    for k in 1..=dim.min(points.len()) {
        for subset in combinations(points.len(), k) {
            for units in combinations(dim, dim - k) {
                let mut rows: Vec<Vec<i64>> = Vec::with_capacity(dim - 1);
                let base = &points[subset[0]];
                for &idx in &subset[1..] {
                    rows.push(points[idx].iter().zip(base).map(|(a, b)| a - b).collect());
                }
                for &u in &units {
                    let mut e = vec![0i64; dim];
                    e[u] = 1;
                    rows.push(e);
                }
                let Some(kernel) = linalg::kernel_vector(&rows, dim) else {
                    continue;
                };
                let oriented = if kernel.iter().all(|&x| x <= 0) {
                    kernel.iter().map(|&x| -x).collect::<Vec<_>>()
                } else {
                    kernel
                };
                if oriented.iter().any(|&x| x < 0) || oriented.iter().all(|&x| x == 0) {
                    continue;
                }
                candidates.insert(linalg::to_i64_vec(&oriented));
            }
        }
    }

    let mut facets: Vec<Facet> = Vec::new();
    for p in candidates {
        let h = points
            .iter()
            .map(|e| linalg::dot(&p, e))
            .min()
            .expect("support is nonempty");
        let attaining: Vec<&Vec<i64>> = points.iter().filter(|e| linalg::dot(&p, e) == h).collect();
        let mut rows: Vec<Vec<i64>> = Vec::new();
        let base = attaining[0];
        for e in &attaining[1..] {
            rows.push(e.iter().zip(base).map(|(a, b)| a - b).collect());
        }
        for (i, &pi) in p.iter().enumerate() {
            if pi == 0 {
                let mut u = vec![0i64; dim];
                u[i] = 1;
                rows.push(u);
            }
        }
        if linalg::rank(&rows) == dim - 1 {
            facets.push(Facet {
                normal: p,
                offset: i64::try_from(h).expect("offset fits i64"),
            });
        }
    }
    facets.sort();
    facets.dedup();

    let vertices: Vec<Vec<i64>> = points
        .iter()
        .filter(|e| {
            let active: Vec<Vec<i64>> = facets
                .iter()
                .filter(|fct| linalg::dot(&fct.normal, e) == i128::from(fct.offset))
                .map(|fct| fct.normal.clone())
                .collect();
            linalg::rank(&active) == dim
        })
        .cloned()
        .collect();

    debug_assert!(points.iter().all(|e| facets
        .iter()
        .all(|f| linalg::dot(&f.normal, e) >= i128::from(f.offset))));

    Ok(NewtonPolyhedron {
        dim,
        vertices,
        facets,
    })
}

impl NewtonPolyhedron {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vec<i64>] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    /// h_f(p) = min over the vertices of <p, .>, for p in the positive
    /// orthant (outside it the infimum over P is -infinity).
    pub fn support_function(&self, p: &[i64]) -> Result<i64> {
        if p.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: p.len(),
            });
        }
        if p.iter().any(|&x| x < 0) {
            return Err(Error::NegativeDirection);
        }
        let h = self
            .vertices
            .iter()
            .map(|v| linalg::dot(p, v))
            .min()
            .expect("polyhedron has a vertex");
        Ok(i64::try_from(h).expect("support value fits i64"))
    }

    /// Membership test via the facet inequalities.
    pub fn contains(&self, e: &[i64]) -> Result<bool> {
        if e.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: e.len(),
            });
        }
        Ok(self
            .facets
            .iter()
            .all(|f| linalg::dot(&f.normal, e) >= i128::from(f.offset)))
    }

    /// The face selected by a direction p >= 0, p != 0, with its compactness
    /// decided two ways (strict positivity of p, and absence of recession
    /// directions) and cross-checked.
    pub fn face(&self, p: &[i64]) -> Result<Face> {
        let h = self.support_function(p)?;
        if p.iter().all(|&x| x == 0) {
            return Err(Error::ZeroDirection);
        }
        let vertices: Vec<Vec<i64>> = self
            .vertices
            .iter()
            .filter(|v| linalg::dot(p, v) == i128::from(h))
            .cloned()
            .collect();
        let strictly_positive = p.iter().all(|&x| x > 0);
        // e_i is a recession direction of the face iff stepping a face point
        // by e_i keeps the supporting value, i.e. <p, e_i> = 0
        let has_recession = (0..self.dim).any(|i| {
            let mut step = vertices[0].clone();
            step[i] += 1;
            linalg::dot(p, &step) == i128::from(h)
        });
        assert_eq!(strictly_positive, !has_recession);
        Ok(Face {
            direction: p.to_vec(),
            vertices,
            compact: strictly_positive,
        })
    }

    /// All compact faces of the polyhedron (the Newton boundary), each with
    /// one strictly positive supporting direction. Enumerated from sums of
    /// facet-normal subsets, which reach the relative interior of every
    /// normal cone.
    pub fn compact_faces(&self) -> Result<Vec<Face>> {
        if self.facets.len() > FACET_SUBSET_CAP {
            return Err(Error::FaceEnumerationCap(format!(
                "{} facets exceed the cap of {FACET_SUBSET_CAP}",
                self.facets.len()
            )));
        }
        let mut seen: BTreeMap<Vec<Vec<i64>>, Face> = BTreeMap::new();
        for mask in 1u32..(1u32 << self.facets.len()) {
            let mut p = vec![0i128; self.dim];
            for (i, f) in self.facets.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    for (pc, &nc) in p.iter_mut().zip(&f.normal) {
                        *pc += i128::from(nc);
                    }
                }
            }
            if p.contains(&0) {
                continue;
            }
            let direction = linalg::to_i64_vec(&linalg::primitive(&p));
            let face = self.face(&direction)?;
            seen.entry(face.vertices.clone()).or_insert(face);
        }
        Ok(seen.into_values().collect())
    }

    /// JSON form:
    /// `{ "vertices": [[int...]...], "facets": [{"normal": [int...], "offset": int}...] }`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "vertices": self.vertices,
            "facets": self
                .facets
                .iter()
                .map(|f| serde_json::json!({"normal": f.normal, "offset": f.offset}))
                .collect::<Vec<_>>(),
        })
    }
}

/// Terms of f attaining the support value of p: f_gamma for the face
/// selected by p.
pub fn face_polynomial(f: &Polynomial, p: &[i64]) -> Result<Polynomial> {
    let support = exponent_support(f)?;
    if p.len() != f.variable_count() {
        return Err(Error::DimensionMismatch {
            expected: f.variable_count(),
            got: p.len(),
        });
    }
    if p.iter().any(|&x| x < 0) {
        return Err(Error::NegativeDirection);
    }
    if p.iter().all(|&x| x == 0) {
        return Err(Error::ZeroDirection);
    }
    let value = |e: &[u32]| -> i128 {
        e.iter()
            .zip(p)
            .map(|(&a, &b)| i128::from(a) * i128::from(b))
            .sum()
    };
    let h = support.iter().map(|e| value(e)).min().expect("nonzero f");
    Ok(f.filter_terms(|e| value(&e.entries()[..f.variable_count()]) == h))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Symbols;

    fn poly(vars: &[&str], text: &str) -> Polynomial {
        Symbols::new(vars.iter().copied(), Vec::<String>::new())
            .unwrap()
            .parse(text)
            .unwrap()
    }

    #[test]
    fn cusp_polyhedron() {
        let p = newton_polyhedron(&poly(&["x", "y"], "x^2 + y^3")).unwrap();
        assert_eq!(p.vertices(), &[vec![0, 3], vec![2, 0]]);
        assert_eq!(
            p.facets(),
            &[
                Facet {
                    normal: vec![0, 1],
                    offset: 0
                },
                Facet {
                    normal: vec![1, 0],
                    offset: 0
                },
                Facet {
                    normal: vec![3, 2],
                    offset: 6
                },
            ]
        );
    }

    #[test]
    fn single_monomial() {
        let p = newton_polyhedron(&poly(&["x", "y"], "x^3*y^2")).unwrap();
        assert_eq!(p.vertices(), &[vec![3, 2]]);
        assert_eq!(
            p.facets(),
            &[
                Facet {
                    normal: vec![0, 1],
                    offset: 2
                },
                Facet {
                    normal: vec![1, 0],
                    offset: 3
                },
            ]
        );
    }

    #[test]
    fn fermat_quartic_surface() {
        let p = newton_polyhedron(&poly(&["x", "y", "z"], "x^4 + y^4 + z^4")).unwrap();
        assert_eq!(p.vertices(), &[vec![0, 0, 4], vec![0, 4, 0], vec![4, 0, 0]]);
        let compact: Vec<&Facet> = p
            .facets()
            .iter()
            .filter(|f| f.normal.iter().all(|&x| x > 0))
            .collect();
        assert_eq!(compact.len(), 1);
        assert_eq!(compact[0].normal, vec![1, 1, 1]);
        assert_eq!(compact[0].offset, 4);
    }

    #[test]
    fn support_function_values() {
        let p = newton_polyhedron(&poly(&["x", "y"], "x^2 + y^3")).unwrap();
        assert_eq!(p.support_function(&[1, 1]).unwrap(), 2);
        assert_eq!(p.support_function(&[0, 0]).unwrap(), 0);
        assert_eq!(p.support_function(&[3, 2]).unwrap(), 6);
        assert!(matches!(
            p.support_function(&[-1, 1]),
            Err(Error::NegativeDirection)
        ));
        let q = newton_polyhedron(&poly(&["x", "y", "z"], "x^4 + y^4 + z^4")).unwrap();
        assert_eq!(q.support_function(&[1, 2, 3]).unwrap(), 4);
    }

    #[test]
    fn face_polynomials() {
        let f = poly(&["x", "y"], "x^2 + y^3");
        assert_eq!(face_polynomial(&f, &[3, 2]).unwrap(), f);
        assert_eq!(
            face_polynomial(&f, &[1, 0]).unwrap(),
            poly(&["x", "y"], "y^3")
        );
        let m = poly(&["x", "y"], "5*x^2*y");
        assert_eq!(face_polynomial(&m, &[1, 1]).unwrap(), m);
        assert!(matches!(
            face_polynomial(&f, &[0, 0]),
            Err(Error::ZeroDirection)
        ));
    }

    #[test]
    fn membership() {
        let p = newton_polyhedron(&poly(&["x", "y"], "x^4 + y^4")).unwrap();
        assert!(p.contains(&[2, 2]).unwrap());
        assert!(!p.contains(&[1, 1]).unwrap());
        for v in p.vertices() {
            assert!(p.contains(v).unwrap());
        }
        assert!(matches!(
            p.contains(&[1, 1, 1]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn compact_face_enumeration() {
        let p = newton_polyhedron(&poly(&["x", "y"], "x^2 + y^3")).unwrap();
        let faces = p.compact_faces().unwrap();
        // two vertex faces and the segment
        assert_eq!(faces.len(), 3);
        assert!(faces.iter().all(|f| f.compact));
        assert!(faces.iter().any(|f| f.vertices.len() == 2));
        // single monomial x*y: only the vertex face, supported by (1,1)
        let m = newton_polyhedron(&poly(&["x", "y"], "x*y")).unwrap();
        let faces = m.compact_faces().unwrap();
        assert_eq!(faces.len(), 1);
        assert_eq!(faces[0].vertices, vec![vec![1, 1]]);
    }

    #[test]
    fn zero_and_parametric_rejected() {
        let z = Polynomial::zero(2, &crate::poly::Domain::Rational);
        assert!(matches!(newton_polyhedron(&z), Err(Error::ZeroPolynomial)));
        let s = Symbols::new(["x"], ["s"]).unwrap();
        let f = s.parse("x + s").unwrap();
        assert!(matches!(
            newton_polyhedron(&f),
            Err(Error::ParametricInput(_))
        ));
    }

    #[test]
    fn dimension_cap() {
        let s = Symbols::new(["a", "b", "c", "d", "e"], Vec::<String>::new()).unwrap();
        let f = s.parse("a + b + c + d + e").unwrap();
        assert!(matches!(
            newton_polyhedron(&f),
            Err(Error::DimensionCap { dim: 5, cap: 4 })
        ));
    }

    #[test]
    fn combinations_enumerate() {
        assert_eq!(combinations(4, 2).len(), 6);
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
        assert_eq!(combinations(2, 3), Vec::<Vec<usize>>::new());
    }
}
