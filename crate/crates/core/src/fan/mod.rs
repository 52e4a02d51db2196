//! Fans subdividing the standard cone (the closed positive orthant):
//! construction from maximal cones with exact face-closure and pairwise
//! intersection checks, the Newton fan of a polyhedron, the admissibility
//! property for coordinate cones on which the support function vanishes,
//! stellar subdivision, and resolution to a regular admissible subdivision.

mod cone;
mod resolve;

pub use cone::Cone;
pub use resolve::resolve;

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::newton::linalg;
use crate::newton::linalg::combinations;
use crate::newton::NewtonPolyhedron;

/// A face-closed set of cones subdividing (part of) the standard cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    dim: usize,
    maximal: Vec<Cone>,
    cones: BTreeSet<Cone>,
}

impl Fan {
    /// Build a fan from its maximal cones: faces are closed over, cones
    /// contained in others are absorbed, and every pairwise intersection is
    /// verified to be a common face.
    pub fn from_maximal(dim: usize, cones: Vec<Cone>) -> Result<Fan> {
        if cones.is_empty() {
            return Err(Error::InvalidFan("a fan needs at least one cone".into()));
        }
        let mut maximal: Vec<Cone> = Vec::new();
        for c in cones {
            if c.ambient_dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: c.ambient_dim(),
                });
            }
            if !maximal.contains(&c) {
                maximal.push(c);
            }
        }
        // absorb cones that are faces of others
        let snapshot = maximal.clone();
        maximal.retain(|c| {
            !snapshot
                .iter()
                .any(|other| other != c && other.contains_cone(c))
        });
        maximal.sort();

        let mut all: BTreeSet<Cone> = BTreeSet::new();
        for c in &maximal {
            for f in c.faces() {
                all.insert(f);
            }
        }
        for (i, a) in maximal.iter().enumerate() {
            for b in &maximal[i + 1..] {
                let inter = a.intersect(b)?;
                if !all.contains(&inter) {
                    return Err(Error::InvalidFan(format!(
                        "cones {:?} and {:?} intersect in {:?}, which is not a common face",
                        a.rays(),
                        b.rays(),
                        inter.rays()
                    )));
                }
            }
        }
        Ok(Fan {
            dim,
            maximal,
            cones: all,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn maximal_cones(&self) -> &[Cone] {
        &self.maximal
    }

    /// Every cone of the fan, faces included, in canonical order.
    pub fn cones(&self) -> impl Iterator<Item = &Cone> {
        self.cones.iter()
    }

    pub fn contains_cone(&self, c: &Cone) -> bool {
        self.cones.contains(c)
    }

    /// Union of the rays of all cones, sorted.
    pub fn rays(&self) -> Vec<Vec<i64>> {
        let mut rays: BTreeSet<Vec<i64>> = BTreeSet::new();
        for c in &self.maximal {
            for r in c.rays() {
                rays.insert(r.clone());
            }
        }
        rays.into_iter().collect()
    }

    pub fn supports_point(&self, x: &[i64]) -> bool {
        self.maximal.iter().any(|c| c.contains(x))
    }

    pub fn is_regular(&self) -> Result<bool> {
        for c in &self.maximal {
            if !c.is_regular()? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Sampling check that the fan tiles the standard cone: every nonzero
    /// lattice point of [0, bound]^dim lies in at least one maximal cone and
    /// in the relative interior of exactly one cone.
    pub fn validate_subdivision(&self, bound: i64) -> Result<()> {
        let mut point = vec![0i64; self.dim];
        loop {
            if point.iter().any(|&x| x != 0) {
                if !self.supports_point(&point) {
                    return Err(Error::NotSubdivision(format!(
                        "{point:?} is not covered by any maximal cone"
                    )));
                }
                let homes = self
                    .cones
                    .iter()
                    .filter(|c| c.contains_in_relative_interior(&point))
                    .count();
                if homes != 1 {
                    return Err(Error::NotSubdivision(format!(
                        "{point:?} lies in the relative interior of {homes} cones"
                    )));
                }
            }
            let mut i = self.dim;
            loop {
                if i == 0 {
                    return Ok(());
                }
                i -= 1;
                point[i] += 1;
                if point[i] <= bound {
                    break;
                }
                point[i] = 0;
            }
        }
    }

    /// JSON form:
    /// `{ "dim": int, "rays": [[int...]...], "maximal_cones": [[ray index...]...] }`.
    pub fn to_json(&self) -> serde_json::Value {
        let rays = self.rays();
        let mut maximal: Vec<Vec<usize>> = self
            .maximal
            .iter()
            .map(|c| {
                let mut idx: Vec<usize> = c
                    .rays()
                    .iter()
                    .map(|r| rays.iter().position(|s| s == r).expect("ray is listed"))
                    .collect();
                idx.sort_unstable();
                idx
            })
            .collect();
        maximal.sort();
        serde_json::json!({
            "dim": self.dim,
            "rays": rays,
            "maximal_cones": maximal,
        })
    }
}

/// The Newton fan: the normal fan of P restricted to the standard cone.
/// Directions lie in one cone exactly when they select the same face of P;
/// maximal cones correspond to the vertices.
pub fn newton_fan(p: &NewtonPolyhedron) -> Result<Fan> {
    let dim = p.dim();
    let mut maximal = Vec::new();
    for v in p.vertices() {
        let mut inequalities: Vec<Vec<i64>> = Vec::new();
        for i in 0..dim {
            let mut unit = vec![0i64; dim];
            unit[i] = 1;
            inequalities.push(unit);
        }
        for w in p.vertices() {
            if w != v {
                inequalities.push(w.iter().zip(v).map(|(a, b)| a - b).collect());
            }
        }
        let rays = cone::rays_from_hrep(dim, &[], &inequalities);
        maximal.push(Cone::new(dim, rays)?);
    }
    Fan::from_maximal(dim, maximal)
}

/// Index sets J (1-based, the empty set included) such that the support
/// function vanishes identically on the relatively open coordinate cone
/// sigma_J; decided exactly by scanning for a vertex supported away from J.
pub fn vanishing_coordinate_faces(p: &NewtonPolyhedron) -> Vec<Vec<usize>> {
    let dim = p.dim();
    let mut out = Vec::new();
    for size in 0..=dim {
        for subset in combinations(dim, size) {
            let annihilated = p
                .vertices()
                .iter()
                .any(|v| subset.iter().all(|&i| v[i] == 0));
            if annihilated {
                out.push(subset.iter().map(|&i| i + 1).collect());
            }
        }
    }
    out
}

/// Admissibility report: the coordinate cones required by property (*) that
/// are missing from the fan, listed as 1-based index sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibilityReport {
    pub admissible: bool,
    pub violations: Vec<Vec<usize>>,
}

/// A subdivision of the standard cone is admissible when, for every J with
/// h_f identically zero on sigma_J, the closure of sigma_J (the coordinate
/// cone on J) is a cone of the fan.
pub fn is_admissible(fan: &Fan, p: &NewtonPolyhedron) -> Result<AdmissibilityReport> {
    if fan.dim() != p.dim() {
        return Err(Error::DimensionMismatch {
            expected: p.dim(),
            got: fan.dim(),
        });
    }
    fan.validate_subdivision(3)
        .map_err(|e| Error::NotSubdivision(format!("admissibility precondition: {e}")))?;
    let mut violations = Vec::new();
    for j in vanishing_coordinate_faces(p) {
        if j.is_empty() {
            continue; // the origin cone is a face of every cone
        }
        let rays: Vec<Vec<i64>> = j
            .iter()
            .map(|&i| {
                let mut unit = vec![0i64; fan.dim()];
                unit[i - 1] = 1;
                unit
            })
            .collect();
        let coordinate_cone = Cone::new(fan.dim(), rays)?;
        if !fan.contains_cone(&coordinate_cone) {
            violations.push(j);
        }
    }
    Ok(AdmissibilityReport {
        admissible: violations.is_empty(),
        violations,
    })
}

/// Stellar subdivision at a primitive ray inside the fan support: every
/// cone containing the ray is replaced by the joins of the ray with the
/// facets of that cone that avoid it.
pub fn stellar_subdivide(fan: &Fan, ray: &[i64]) -> Result<Fan> {
    let as_i128: Vec<i128> = ray.iter().map(|&x| i128::from(x)).collect();
    if linalg::primitive(&as_i128) != as_i128 || ray.iter().all(|&x| x == 0) {
        return Err(Error::NotPrimitive(ray.to_vec()));
    }
    if ray.iter().any(|&x| x < 0) || !fan.supports_point(ray) {
        return Err(Error::OutsideSupport(ray.to_vec()));
    }
    let mut new_maximal: Vec<Cone> = Vec::new();
    for c in fan.maximal_cones() {
        if !c.contains(ray) {
            new_maximal.push(c.clone());
            continue;
        }
        for facet in c.facet_faces() {
            if !facet.contains(ray) {
                new_maximal.push(facet.join(ray)?);
            }
        }
    }
    Fan::from_maximal(fan.dim(), new_maximal)
}
