//! Refinement of an admissible fan into a regular admissible subdivision.
//!
//! Dimension 2 inserts the Hirzebruch-Jung chain between the rays of every
//! non-regular cone: repeatedly take the unique primitive vector that is
//! unimodular with the current ray and closest to the far ray. Dimension 3
//! first triangulates non-simplicial cones by stellar subdivision at one of
//! their rays, then repeatedly stellar-subdivides a non-regular cone at a
//! lattice point of its fundamental parallelepiped, choosing the
//! lexicographically smallest point among those minimizing the worst
//! multiplicity of the replacement cones. Protected coordinate cones (the
//! admissibility constraint) are never split.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{is_admissible, stellar_subdivide, vanishing_coordinate_faces, Cone, Fan};
use crate::error::{Error, Result};
use crate::newton::NewtonPolyhedron;

const RESOLUTION_CAP: usize = 500;
const PARALLELEPIPED_CAP: u128 = 200_000;

/// Refine `fan` (the Newton fan of `p`, or any admissible subdivision of it)
/// until every cone is regular, preserving admissibility. Already regular
/// fans are returned unchanged.
pub fn resolve(fan: &Fan, p: &NewtonPolyhedron) -> Result<Fan> {
    let dim = fan.dim();
    if dim > 3 {
        return Err(Error::DimensionCap { dim, cap: 3 });
    }
    let entry = is_admissible(fan, p)?;
    if !entry.admissible {
        return Err(Error::InvalidFan(format!(
            "input fan is not admissible: missing coordinate cones {:?}",
            entry.violations
        )));
    }
    if fan.is_regular()? {
        return Ok(fan.clone());
    }
    let resolved = match dim {
        1 | 2 => resolve_2d(fan)?,
        3 => resolve_3d(fan, p)?,
        _ => unreachable!(),
    };
    if !resolved.is_regular()? {
        return Err(Error::Internal("resolution left a non-regular cone".into()));
    }
    let exit = is_admissible(&resolved, p)?;
    if !exit.admissible {
        return Err(Error::Internal(format!(
            "resolution subdivided protected coordinate cones {:?}",
            exit.violations
        )));
    }
    Ok(resolved)
}

fn resolve_2d(fan: &Fan) -> Result<Fan> {
    let mut new_maximal: Vec<Cone> = Vec::new();
    for c in fan.maximal_cones() {
        if c.cone_dim() < 2 || c.is_regular()? {
            new_maximal.push(c.clone());
            continue;
        }
        let chain = hirzebruch_jung_chain(&c.rays()[0], &c.rays()[1]);
        for pair in chain.windows(2) {
            new_maximal.push(Cone::new(2, vec![pair[0].clone(), pair[1].clone()])?);
        }
    }
    Fan::from_maximal(fan.dim(), new_maximal)
}

/// The minimal chain of rays u = w_0, w_1, ..., w_k = v such that every
/// consecutive pair is a lattice basis. Rays are primitive and the cone is
/// two-dimensional.
pub(crate) fn hirzebruch_jung_chain(a: &[i64], b: &[i64]) -> Vec<Vec<i64>> {
    let det = |u: &[i64], v: &[i64]| -> i128 {
        i128::from(u[0]) * i128::from(v[1]) - i128::from(u[1]) * i128::from(v[0])
    };
    let (u, v) = if det(a, b) > 0 { (a, b) } else { (b, a) };
    let mut chain = vec![u.to_vec()];
    let mut current = u.to_vec();
    loop {
        let d = det(&current, v);
        assert!(d > 0, "rays of a 2d cone are independent");
        if d == 1 {
            chain.push(v.to_vec());
            return chain;
        }
        // w0 with det(current, w0) = 1, from the extended gcd of current
        let (s, t) = extended_gcd(i128::from(current[0]), i128::from(current[1]));
        let w0 = [-t, s];
        // slide along current until <w, v> is supported: det(w, v) minimal >= 0
        let shift = ceil_div(-det(&w0, v), d);
        let w = vec![
            i64::try_from(i128::from(w0[0]) + shift * i128::from(current[0]))
                .expect("chain ray fits i64"),
            i64::try_from(i128::from(w0[1]) + shift * i128::from(current[1]))
                .expect("chain ray fits i64"),
        ];
        debug_assert_eq!(det(&current, &w), 1);
        chain.push(w.clone());
        current = w;
    }
}

/// Bezout coefficients (s, t) with s*a + t*b = gcd(a, b), for a, b >= 0.
fn extended_gcd(a: i128, b: i128) -> (i64, i64) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    (
        i64::try_from(s0).expect("bezout coefficient fits i64"),
        i64::try_from(t0).expect("bezout coefficient fits i64"),
    )
}

fn ceil_div(n: i128, d: i128) -> i128 {
    debug_assert!(d > 0);
    n.div_euclid(d) + if n.rem_euclid(d) != 0 { 1 } else { 0 }
}

fn resolve_3d(fan: &Fan, p: &NewtonPolyhedron) -> Result<Fan> {
    let protected: Vec<Cone> = vanishing_coordinate_faces(p)
        .into_iter()
        .filter(|j| !j.is_empty())
        .map(|j| {
            let rays: Vec<Vec<i64>> = j
                .iter()
                .map(|&i| {
                    let mut unit = vec![0i64; fan.dim()];
                    unit[i - 1] = 1;
                    unit
                })
                .collect();
            Cone::new(fan.dim(), rays)
        })
        .collect::<Result<Vec<_>>>()?;

    let mut current = fan.clone();
    for _ in 0..RESOLUTION_CAP {
        // triangulate first: stellar subdivision at a ray of a
        // non-simplicial cone splits it into simplicial pieces in 3d
        if let Some(c) = current.maximal_cones().iter().find(|c| !c.is_simplicial()) {
            let ray = c.rays()[0].clone();
            current = stellar_subdivide(&current, &ray)?;
            continue;
        }
        let Some(target) = current
            .maximal_cones()
            .iter()
            .find(|c| !c.is_regular().unwrap_or(false))
            .cloned()
        else {
            return Ok(current);
        };
        let existing_rays = current.rays();
        let candidates = parallelepiped_candidates(&target)?;
        let mult = BigRational::from_integer(BigInt::from(target.multiplicity()?.abs()));
        let mut best: Option<(BigRational, Vec<i64>)> = None;
        for (point, lambda) in candidates {
            if existing_rays.contains(&point) {
                continue;
            }
            if protected
                .iter()
                .any(|pc| pc.contains_in_relative_interior(&point))
            {
                continue;
            }
            // worst multiplicity among the cones replacing the target
            let score = lambda
                .iter()
                .filter(|l| !l.is_zero())
                .map(|l| l * &mult)
                .max()
                .expect("candidate has a nonzero coordinate");
            let better = match &best {
                None => true,
                Some((s, w)) => score < *s || (score == *s && point < *w),
            };
            if better {
                best = Some((score, point));
            }
        }
        let Some((_, winner)) = best else {
            return Err(Error::ResolutionBudget {
                iterations: RESOLUTION_CAP,
            });
        };
        current = stellar_subdivide(&current, &winner)?;
    }
    Err(Error::ResolutionBudget {
        iterations: RESOLUTION_CAP,
    })
}

/// Primitive lattice points of the fundamental parallelepiped of a
/// simplicial full-dimensional cone, with their barycentric coordinates.
fn parallelepiped_candidates(cone: &Cone) -> Result<Vec<(Vec<i64>, Vec<BigRational>)>> {
    let dim = cone.ambient_dim();
    let rays = cone.rays();
    let hi: Vec<i64> = (0..dim).map(|c| rays.iter().map(|r| r[c]).sum()).collect();
    let size: u128 = hi
        .iter()
        .map(|&h| u128::try_from(h + 1).expect("nonnegative bound"))
        .product();
    if size > PARALLELEPIPED_CAP {
        return Err(Error::BudgetExceeded {
            size,
            budget: PARALLELEPIPED_CAP,
        });
    }
    let mut out = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    let mut point = vec![0i64; dim];
    'outer: loop {
        if point.iter().any(|&x| x != 0) {
            if let Some(lambda) = barycentric(rays, &point) {
                let in_box = lambda
                    .iter()
                    .all(|l| !l.is_negative() && *l < BigRational::one());
                if in_box {
                    let primitive =
                        crate::newton::linalg::to_i64_vec(&crate::newton::linalg::primitive(
                            &point.iter().map(|&x| i128::from(x)).collect::<Vec<_>>(),
                        ));
                    if seen.insert(primitive.clone()) {
                        let plambda = barycentric(rays, &primitive)
                            .expect("primitive point stays in the span");
                        out.push((primitive, plambda));
                    }
                }
            }
        }
        let mut i = dim;
        loop {
            if i == 0 {
                break 'outer;
            }
            i -= 1;
            point[i] += 1;
            if point[i] <= hi[i] {
                break;
            }
            point[i] = 0;
        }
    }
    out.sort();
    Ok(out)
}

/// Solve sum_i lambda_i rays[i] = point exactly; None when inconsistent.
#[allow(clippy::needless_range_loop)]
fn barycentric(rays: &[Vec<i64>], point: &[i64]) -> Option<Vec<BigRational>> {
    let dim = point.len();
    let k = rays.len();
    let rat = |x: i64| BigRational::from_integer(BigInt::from(x));
    // augmented system with columns = rays
    let mut m: Vec<Vec<BigRational>> = (0..dim)
        .map(|r| {
            let mut row: Vec<BigRational> = rays.iter().map(|ray| rat(ray[r])).collect();
            row.push(rat(point[r]));
            row
        })
        .collect();
    let mut pivot_rows: Vec<(usize, usize)> = Vec::new();
    let mut row = 0;
    for col in 0..k {
        let Some(p) = (row..dim).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let lead = m[row][col].clone();
        for x in &mut m[row] {
            *x /= &lead;
        }
        for r in 0..dim {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in 0..=k {
                    let delta = &f * &m[row][c];
                    m[r][c] -= delta;
                }
            }
        }
        pivot_rows.push((row, col));
        row += 1;
        if row == dim {
            break;
        }
    }
    // inconsistent when a zero row has a nonzero augment
    for r in row..dim {
        if !m[r][k].is_zero() {
            return None;
        }
    }
    let mut lambda = vec![BigRational::zero(); k];
    for &(r, c) in &pivot_rows {
        lambda[c] = m[r][k].clone();
    }
    Some(lambda)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::newton_fan;
    use crate::newton::newton_polyhedron;
    use crate::poly::{Polynomial, Symbols};

    fn poly(vars: &[&str], text: &str) -> Polynomial {
        Symbols::new(vars.iter().copied(), Vec::<String>::new())
            .unwrap()
            .parse(text)
            .unwrap()
    }

    #[test]
    fn cusp_resolution_matches_continued_fractions() {
        let p = newton_polyhedron(&poly(&["x", "y"], "x^2 + y^3")).unwrap();
        let fan = newton_fan(&p).unwrap();
        let resolved = resolve(&fan, &p).unwrap();
        assert_eq!(
            resolved.rays(),
            vec![vec![0, 1], vec![1, 0], vec![1, 1], vec![2, 1], vec![3, 2]]
        );
        assert!(resolved.is_regular().unwrap());
        resolved.validate_subdivision(6).unwrap();
    }

    #[test]
    fn already_regular_fan_is_returned_unchanged() {
        let p = newton_polyhedron(&poly(&["x", "y"], "x + y")).unwrap();
        let fan = newton_fan(&p).unwrap();
        let resolved = resolve(&fan, &p).unwrap();
        assert_eq!(resolved, fan);
    }

    #[test]
    fn chain_for_the_cusp_cones() {
        assert_eq!(
            hirzebruch_jung_chain(&[1, 0], &[3, 2]),
            vec![vec![1, 0], vec![2, 1], vec![3, 2]]
        );
        assert_eq!(
            hirzebruch_jung_chain(&[3, 2], &[0, 1]),
            vec![vec![3, 2], vec![1, 1], vec![0, 1]]
        );
    }

    #[test]
    fn fermat_newton_fan_is_already_regular() {
        let p = newton_polyhedron(&poly(&["x", "y", "z"], "x^4 + y^4 + z^4")).unwrap();
        let fan = newton_fan(&p).unwrap();
        assert!(fan.is_regular().unwrap());
        let resolved = resolve(&fan, &p).unwrap();
        assert_eq!(resolved, fan);
    }

    #[test]
    fn three_dimensional_resolution_by_stellar_subdivision() {
        // the Newton fan of x + y + z^2 has the non-regular normal cone
        // <e2, e3, (2,2,1)> at the vertex (1,0,0)
        let p = newton_polyhedron(&poly(&["x", "y", "z"], "x + y + z^2")).unwrap();
        let fan = newton_fan(&p).unwrap();
        assert!(!fan.is_regular().unwrap());
        let resolved = resolve(&fan, &p).unwrap();
        assert!(resolved.is_regular().unwrap());
        assert!(is_admissible(&resolved, &p).unwrap().admissible);
        // refinement: every resolved cone sits inside an input cone
        for c in resolved.cones() {
            assert!(
                fan.cones().any(|big| big.contains_cone(c)),
                "cone {:?} escapes the input fan",
                c.rays()
            );
        }
        resolved.validate_subdivision(4).unwrap();
    }

    #[test]
    fn triangulation_of_a_non_simplicial_newton_fan() {
        // z + x^3 + y^3 + x*y has a square normal cone at the vertex (0,0,1)
        let p = newton_polyhedron(&poly(&["x", "y", "z"], "z + x^3 + y^3 + x*y")).unwrap();
        let fan = newton_fan(&p).unwrap();
        assert!(fan.maximal_cones().iter().any(|c| !c.is_simplicial()));
        let resolved = resolve(&fan, &p).unwrap();
        assert!(resolved.is_regular().unwrap());
        assert!(is_admissible(&resolved, &p).unwrap().admissible);
        for c in resolved.cones() {
            assert!(fan.cones().any(|big| big.contains_cone(c)));
        }
    }

    #[test]
    fn dimension_cap_enforced() {
        let s = Symbols::new(["a", "b", "c", "d"], Vec::<String>::new()).unwrap();
        let f = s.parse("a + b + c + d").unwrap();
        let p = newton_polyhedron(&f).unwrap();
        let fan = newton_fan(&p).unwrap();
        assert!(matches!(
            resolve(&fan, &p),
            Err(Error::DimensionCap { dim: 4, cap: 3 })
        ));
    }
}
