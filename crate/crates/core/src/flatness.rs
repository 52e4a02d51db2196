//! Finite-field enumeration of jet-scheme fibers and the flatness
//! diagnostic built on it.
//!
//! Point counting is exhaustive enumeration over the jet coordinates,
//! organized by jet weight: the variables of order j form one block, and
//! generator G_j is evaluated as soon as block j is assigned, pruning the
//! entire subtree on the first violation. G_0 prunes hardest. The raw
//! enumeration size q^{(n+1)(m+1)} is checked against a hard budget before
//! any work starts.
//!
//! Dimension estimates are the one deliberately numeric diagnostic: the
//! least-squares slope of log(count) against log(q) through the origin.
//! Counts in flat families still vary arithmetically, so only dimension
//! jumps are reported as certificates; count discrepancies are
//! informational.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::jets::{jet_ideal, FamilyPolynomial, JetIdeal};
use crate::poly::{rational_mod, ParamAssignment, Polynomial};

/// One fiber of the jet family: which family, which parameter values, which
/// jet order, which prime.
#[derive(Clone, Debug, PartialEq)]
pub struct FiberSpec {
    pub family: FamilyPolynomial,
    pub assignment: BTreeMap<String, BigRational>,
    pub m: usize,
    pub q: u64,
}

/// Budget and parallelism knobs for the enumeration.
#[derive(Clone, Debug)]
pub struct EnumerationConfig {
    /// Upper bound on the raw enumeration size q^{(n+1)(m+1)}.
    pub budget: u64,
    pub workers: usize,
}

impl Default for EnumerationConfig {
    fn default() -> Self {
        EnumerationConfig {
            budget: 1_000_000_000,
            workers: std::thread::available_parallelism()
                .map(|n| n.get())
                .unwrap_or(1),
        }
    }
}

/// Exact count of one fiber, with the spec echoed back.
#[derive(Clone, Debug)]
pub struct CountReport {
    pub spec: FiberSpec,
    pub count: u64,
    pub elapsed: Duration,
    pub generators_checked: usize,
}

pub(crate) fn check_prime(q: u64) -> Result<()> {
    if q < 2 {
        return Err(Error::NotPrime(q));
    }
    let mut d = 2u64;
    while d * d <= q {
        if q.is_multiple_of(d) {
            return Err(Error::NotPrime(q));
        }
        d += 1;
    }
    Ok(())
}

/// The jet ideal of the fiber, specialized to F_q.
fn fiber_ideal(spec: &FiberSpec) -> Result<JetIdeal> {
    check_prime(spec.q)?;
    let names = spec.family.parameter_names();
    let mut values = Vec::with_capacity(names.len());
    for name in &names {
        let value = spec
            .assignment
            .get(name)
            .ok_or_else(|| Error::MissingParameter(name.clone()))?;
        values.push(rational_mod(value, spec.q)?);
    }
    let specialized = spec
        .family
        .to_polynomial()
        .specialize(&ParamAssignment::Residues { q: spec.q, values })?;
    jet_ideal(&specialized, &[], spec.m)
}

fn enumeration_size(q: u64, vars: usize) -> u128 {
    u128::from(q).checked_pow(vars as u32).unwrap_or(u128::MAX)
}

/// Exact number of F_q-points of the jet-scheme fiber: assignments of all
/// jet variables satisfying G_0 = ... = G_m = 0. Deterministic and
/// independent of the worker count.
pub fn count_points(spec: &FiberSpec, config: &EnumerationConfig) -> Result<CountReport> {
    let started = Instant::now();
    let n1 = spec.family.variable_count();
    let size = enumeration_size(spec.q, n1 * (spec.m + 1));
    if size > u128::from(config.budget) {
        return Err(Error::BudgetExceeded {
            size,
            budget: u128::from(config.budget),
        });
    }
    let ideal = fiber_ideal(spec)?;
    let counter = Counter::compile(&ideal, spec.q)?;
    let count = counter.count_parallel(config.workers.max(1));
    Ok(CountReport {
        spec: spec.clone(),
        count,
        elapsed: started.elapsed(),
        generators_checked: spec.m + 1,
    })
}

/// All solutions of the fiber system, each point listed in jet-weight block
/// order (all order-0 coordinates, then order-1, ...). Desk-scale sizes
/// only; the budget applies as in `count_points`.
pub fn enumerate_solutions(spec: &FiberSpec, config: &EnumerationConfig) -> Result<Vec<Vec<u64>>> {
    let n1 = spec.family.variable_count();
    let size = enumeration_size(spec.q, n1 * (spec.m + 1));
    if size > u128::from(config.budget) {
        return Err(Error::BudgetExceeded {
            size,
            budget: u128::from(config.budget),
        });
    }
    let ideal = fiber_ideal(spec)?;
    let counter = Counter::compile(&ideal, spec.q)?;
    let mut out = Vec::new();
    let mut point = vec![0u64; counter.total_vars()];
    counter.collect_block(&mut point, 0, &mut out);
    Ok(out)
}

/// One generator compiled to the enumeration variable order: variable p of
/// the flat point corresponds to jet coordinate (i, j) with
/// p = j*(n+1) + (i-1), so a block of n+1 consecutive positions shares one
/// jet order.
struct CompiledGenerator {
    terms: Vec<(u64, Vec<(usize, u32)>)>,
}

struct Counter {
    q: u64,
    n1: usize,
    m: usize,
    generators: Vec<CompiledGenerator>,
    pow: Vec<Vec<u64>>,
}

impl Counter {
    fn compile(ideal: &JetIdeal, q: u64) -> Result<Counter> {
        let n1 = ideal.ambient();
        let m = ideal.order();
        let mut max_exp = 1u32;
        let mut generators = Vec::with_capacity(m + 1);
        for (k, g) in ideal.generators().iter().enumerate() {
            let mut terms = Vec::new();
            for (e, s) in g.raw_terms() {
                let coeff = match s {
                    crate::poly::Scalar::Mod(v) => *v,
                    crate::poly::Scalar::Rat(_) => {
                        return Err(Error::DomainMismatch(
                            "point counting needs a mod-q jet ideal".into(),
                        ))
                    }
                };
                let mut factors = Vec::new();
                for (idx, &exp) in e.entries().iter().enumerate() {
                    if exp == 0 {
                        continue;
                    }
                    let var = ideal.jet_variable(idx);
                    let pos = var.order * n1 + (var.ambient - 1);
                    debug_assert!(
                        var.order <= k,
                        "generator {k} mentions jet order {}",
                        var.order
                    );
                    max_exp = max_exp.max(exp);
                    factors.push((pos, exp));
                }
                terms.push((coeff, factors));
            }
            generators.push(CompiledGenerator { terms });
        }
        let pow = (0..q)
            .map(|r| {
                let mut row = vec![1u64 % q; max_exp as usize + 1];
                for e in 1..=max_exp as usize {
                    row[e] = row[e - 1] * r % q;
                }
                row
            })
            .collect();
        Ok(Counter {
            q,
            n1,
            m,
            generators,
            pow,
        })
    }

    fn total_vars(&self) -> usize {
        self.n1 * (self.m + 1)
    }

    fn eval(&self, g: &CompiledGenerator, point: &[u64]) -> u64 {
        let mut total = 0u64;
        for (coeff, factors) in &g.terms {
            let mut term = *coeff;
            for &(pos, exp) in factors {
                term = term * self.pow[point[pos] as usize][exp as usize] % self.q;
                if term == 0 {
                    break;
                }
            }
            total = (total + term) % self.q;
        }
        total
    }

    /// Count solutions with blocks 0..block already assigned in `point`.
    fn count_block(&self, point: &mut [u64], block: usize) -> u64 {
        let base = block * self.n1;
        for v in &mut point[base..base + self.n1] {
            *v = 0;
        }
        let mut total = 0u64;
        loop {
            if self.eval(&self.generators[block], point) == 0 {
                total += if block == self.m {
                    1
                } else {
                    self.count_block(point, block + 1)
                };
            }
            let mut i = base + self.n1;
            loop {
                if i == base {
                    return total;
                }
                i -= 1;
                point[i] += 1;
                if point[i] < self.q {
                    break;
                }
                point[i] = 0;
            }
        }
    }

    /// Collect full solutions instead of counting.
    fn collect_block(&self, point: &mut Vec<u64>, block: usize, out: &mut Vec<Vec<u64>>) {
        let base = block * self.n1;
        for v in &mut point[base..base + self.n1] {
            *v = 0;
        }
        loop {
            if self.eval(&self.generators[block], point) == 0 {
                if block == self.m {
                    out.push(point.clone());
                } else {
                    self.collect_block(point, block + 1, out);
                }
            }
            let mut i = base + self.n1;
            loop {
                if i == base {
                    return;
                }
                i -= 1;
                point[i] += 1;
                if point[i] < self.q {
                    break;
                }
                point[i] = 0;
            }
        }
    }

    /// Count solutions whose leading block decodes to an index in
    /// [start, end); used to partition work across threads.
    fn count_leading_range(&self, start: u64, end: u64) -> u64 {
        let mut point = vec![0u64; self.total_vars()];
        let mut total = 0u64;
        for index in start..end {
            let mut rest = index;
            for pos in (0..self.n1).rev() {
                point[pos] = rest % self.q;
                rest /= self.q;
            }
            if self.eval(&self.generators[0], &point) == 0 {
                total += if self.m == 0 {
                    1
                } else {
                    self.count_block(&mut point, 1)
                };
            }
        }
        total
    }

    fn count_parallel(&self, workers: usize) -> u64 {
        let leading: u64 = self.q.pow(self.n1 as u32);
        let workers = workers.min(leading as usize).max(1);
        if workers == 1 {
            return self.count_leading_range(0, leading);
        }
        let chunk = leading.div_ceil(workers as u64);
        std::thread::scope(|scope| {
            let mut handles = Vec::new();
            for w in 0..workers as u64 {
                let start = w * chunk;
                let end = leading.min(start + chunk);
                if start >= end {
                    break;
                }
                handles.push(scope.spawn(move || self.count_leading_range(start, end)));
            }
            handles.into_iter().map(|h| h.join().expect("worker")).sum()
        })
    }
}

/// Dimension estimate from exact counts at several primes: the
/// least-squares slope of log(count) on log(q) through the origin, with the
/// sum of squared residuals.
#[derive(Clone, Debug)]
pub struct DimensionEstimate {
    pub points: Vec<(u64, u64)>,
    pub slope: f64,
    pub rounded: i64,
    pub residual: f64,
}

fn fit_through_origin(points: &[(u64, u64)]) -> (f64, f64) {
    let mut num = 0f64;
    let mut den = 0f64;
    for &(q, c) in points {
        let x = (q as f64).ln();
        let y = (c as f64).ln();
        num += x * y;
        den += x * x;
    }
    let slope = num / den;
    let residual = points
        .iter()
        .map(|&(q, c)| {
            let x = (q as f64).ln();
            let y = (c as f64).ln();
            (y - slope * x).powi(2)
        })
        .sum();
    (slope, residual)
}

/// Estimate the fiber dimension from counts at two or more distinct primes.
/// Every count must be positive.
pub fn estimate_dimension(counts: &[(u64, u64)]) -> Result<DimensionEstimate> {
    let mut distinct: Vec<u64> = counts.iter().map(|&(q, _)| q).collect();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.len() < 2 {
        return Err(Error::InsufficientPrimes);
    }
    for &(q, c) in counts {
        if c == 0 {
            return Err(Error::ZeroCount(q));
        }
    }
    let (slope, residual) = fit_through_origin(counts);
    Ok(DimensionEstimate {
        points: counts.to_vec(),
        slope,
        rounded: slope.round() as i64,
        residual,
    })
}

/// Per-sample outcome inside a flatness report.
#[derive(Clone, Debug)]
pub struct SampleResult {
    pub assignment: BTreeMap<String, BigRational>,
    pub counts: Vec<(u64, u64)>,
    /// Primes whose fiber had no points at all; excluded from the fit.
    pub dropped_primes: Vec<u64>,
    pub slope: Option<f64>,
    pub rounded: Option<i64>,
    pub residual: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FlatnessVerdict {
    DimensionJump,
    Consistent,
    InsufficientSamples,
}

impl FlatnessVerdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            FlatnessVerdict::DimensionJump => "DIMENSION-JUMP",
            FlatnessVerdict::Consistent => "CONSISTENT",
            FlatnessVerdict::InsufficientSamples => "INSUFFICIENT-SAMPLES",
        }
    }
}

#[derive(Clone, Debug)]
pub struct FlatnessReport {
    pub family: String,
    pub m: usize,
    pub samples: Vec<SampleResult>,
    pub verdict: FlatnessVerdict,
    pub note: String,
}

impl FlatnessReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "family": self.family,
            "m": self.m,
            "samples": self
                .samples
                .iter()
                .map(|s| {
                    serde_json::json!({
                        "assignment": s
                            .assignment
                            .iter()
                            .map(|(k, v)| (k.clone(), v.to_string()))
                            .collect::<BTreeMap<String, String>>(),
                        "counts": s
                            .counts
                            .iter()
                            .map(|(q, c)| serde_json::json!({"q": q, "count": c}))
                            .collect::<Vec<_>>(),
                        "dim_estimate": s.slope,
                        "dim_estimate_rounded": s.rounded,
                        "dropped_primes": s.dropped_primes,
                    })
                })
                .collect::<Vec<_>>(),
            "verdict": self.verdict.as_str(),
            "note": self.note,
        })
    }
}

/// Count every (prime, sample) fiber, estimate per-sample dimensions, and
/// compare across samples. Differing rounded estimates certify that the
/// reduced family cannot be flat; agreement is reported as CONSISTENT,
/// which is not a proof of flatness.
pub fn flatness_diagnostic(
    family: &FamilyPolynomial,
    family_label: &str,
    m: usize,
    primes: &[u64],
    samples: &[BTreeMap<String, BigRational>],
    config: &EnumerationConfig,
) -> Result<FlatnessReport> {
    if primes.is_empty() {
        return Err(Error::EmptyPrimes);
    }
    let mut results = Vec::new();
    for assignment in samples {
        let mut counts = Vec::new();
        for &q in primes {
            let spec = FiberSpec {
                family: family.clone(),
                assignment: assignment.clone(),
                m,
                q,
            };
            counts.push((q, count_points(&spec, config)?.count));
        }
        let usable: Vec<(u64, u64)> = counts.iter().copied().filter(|&(_, c)| c > 0).collect();
        let dropped: Vec<u64> = counts
            .iter()
            .filter(|&&(_, c)| c == 0)
            .map(|&(q, _)| q)
            .collect();
        let (slope, rounded, residual) = if usable.is_empty() {
            (None, None, None)
        } else {
            let (s, r) = fit_through_origin(&usable);
            (Some(s), Some(s.round() as i64), Some(r))
        };
        results.push(SampleResult {
            assignment: assignment.clone(),
            counts,
            dropped_primes: dropped,
            slope,
            rounded,
            residual,
        });
    }

    let estimates: Vec<i64> = results.iter().filter_map(|s| s.rounded).collect();
    let (verdict, note) = if results.len() < 2 {
        (
            FlatnessVerdict::InsufficientSamples,
            "INSUFFICIENT-SAMPLES: a comparison needs at least two parameter samples.".to_string(),
        )
    } else if estimates.len() < 2 {
        (
            FlatnessVerdict::InsufficientSamples,
            "INSUFFICIENT-SAMPLES: fewer than two samples had any F_q-points to estimate from."
                .to_string(),
        )
    } else if estimates.iter().any(|&e| e != estimates[0]) {
        (
            FlatnessVerdict::DimensionJump,
            "DIMENSION-JUMP: estimated fiber dimensions differ across samples; this certifies \
             non-flat dimension behavior of the reduced family."
                .to_string(),
        )
    } else {
        (
            FlatnessVerdict::Consistent,
            "CONSISTENT: estimated fiber dimensions agree across samples; this is not a proof \
             of flatness."
                .to_string(),
        )
    };
    Ok(FlatnessReport {
        family: family_label.to_string(),
        m,
        samples: results,
        verdict,
        note,
    })
}

/// Default parameter samples: every 0/1 assignment, one per corner of the
/// parameter hypercube.
pub fn default_samples(family: &FamilyPolynomial) -> Vec<BTreeMap<String, BigRational>> {
    let names = family.parameter_names();
    let corners = 1usize << names.len();
    (0..corners)
        .map(|mask| {
            names
                .iter()
                .enumerate()
                .map(|(j, n)| {
                    (
                        n.clone(),
                        BigRational::from_integer((((mask >> j) & 1) as i64).into()),
                    )
                })
                .collect()
        })
        .collect()
}

/// Affine-bundle count comparison over a hypersurface smooth over F_q:
/// the jet count must equal |V(F_q)| * q^{m*n} with n = (n+1) - 1.
#[derive(Clone, Debug)]
pub struct SmoothBundleReport {
    pub q: u64,
    pub m: usize,
    pub variety_count: u64,
    pub jet_count: u64,
    pub expected: u64,
    pub holds: bool,
}

pub fn smooth_bundle_check(
    f: &Polynomial,
    m: usize,
    q: u64,
    config: &EnumerationConfig,
) -> Result<SmoothBundleReport> {
    check_prime(q)?;
    if f.parameter_count() != 0 {
        return Err(Error::ParametricInput("specialize the family first"));
    }
    let fq = f.to_modular(q)?;
    let n1 = fq.variable_count();
    let size = enumeration_size(q, n1);
    if size > u128::from(config.budget) {
        return Err(Error::BudgetExceeded {
            size,
            budget: u128::from(config.budget),
        });
    }
    let partials: Vec<Polynomial> = (1..=n1)
        .map(|i| fq.partial_derivative(i))
        .collect::<Result<Vec<_>>>()?;

    let mut variety_count = 0u64;
    let mut point = vec![0u64; n1];
    'scan: loop {
        if fq.evaluate(&point)? == 0 {
            variety_count += 1;
            let singular = partials
                .iter()
                .map(|p| p.evaluate(&point))
                .collect::<Result<Vec<_>>>()?
                .iter()
                .all(|&v| v == 0);
            if singular {
                return Err(Error::NotSmooth {
                    q,
                    point: point.clone(),
                });
            }
        }
        let mut i = n1;
        loop {
            if i == 0 {
                break 'scan;
            }
            i -= 1;
            point[i] += 1;
            if point[i] < q {
                break;
            }
            point[i] = 0;
        }
    }

    let family = FamilyPolynomial::new(f.clone(), Vec::new())?;
    let spec = FiberSpec {
        family,
        assignment: BTreeMap::new(),
        m,
        q,
    };
    let jet_count = count_points(&spec, config)?.count;
    let overflow = || Error::BudgetExceeded {
        size: u128::MAX,
        budget: u128::from(config.budget),
    };
    let fiber = q.checked_pow((m * (n1 - 1)) as u32).ok_or_else(overflow)?;
    let expected = variety_count.checked_mul(fiber).ok_or_else(overflow)?;
    Ok(SmoothBundleReport {
        q,
        m,
        variety_count,
        jet_count,
        expected,
        holds: jet_count == expected,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Symbols;

    fn family(vars: &[&str], params: &[&str], text: &str) -> FamilyPolynomial {
        let s = Symbols::new(vars.iter().copied(), params.iter().copied()).unwrap();
        let f = s.parse(text).unwrap();
        let names: Vec<String> = params.iter().map(|p| p.to_string()).collect();
        FamilyPolynomial::from_parametric(&f, &names).unwrap()
    }

    fn spec(f: &FamilyPolynomial, m: usize, q: u64) -> FiberSpec {
        FiberSpec {
            family: f.clone(),
            assignment: BTreeMap::new(),
            m,
            q,
        }
    }

    #[test]
    fn smooth_line_jets() {
        // f = x1 + x2, m = 1, q = 3: the jet scheme is a 2-dimensional
        // linear space with 9 points
        let f = family(&["x1", "x2"], &[], "x1 + x2");
        let report = count_points(&spec(&f, 1, 3), &EnumerationConfig::default()).unwrap();
        assert_eq!(report.count, 9);
        assert_eq!(report.generators_checked, 2);
    }

    #[test]
    fn single_variable_hypersurface() {
        // f = x: all three jet coordinates forced to zero
        let f = family(&["x"], &[], "x");
        let report = count_points(&spec(&f, 2, 3), &EnumerationConfig::default()).unwrap();
        assert_eq!(report.count, 1);
    }

    #[test]
    fn worker_partitioning_is_deterministic() {
        let f = family(&["x", "y"], &[], "x^2 + y^3");
        let single = count_points(
            &spec(&f, 2, 5),
            &EnumerationConfig {
                budget: 1_000_000_000,
                workers: 1,
            },
        )
        .unwrap()
        .count;
        for workers in [2, 3, 7] {
            let multi = count_points(
                &spec(&f, 2, 5),
                &EnumerationConfig {
                    budget: 1_000_000_000,
                    workers,
                },
            )
            .unwrap()
            .count;
            assert_eq!(single, multi);
        }
    }

    #[test]
    fn budget_is_enforced() {
        let f = family(&["x", "y"], &[], "x + y");
        let err = count_points(
            &spec(&f, 3, 5),
            &EnumerationConfig {
                budget: 100,
                workers: 1,
            },
        );
        assert!(matches!(err, Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn composite_modulus_rejected() {
        let f = family(&["x"], &[], "x");
        assert!(matches!(
            count_points(&spec(&f, 0, 6), &EnumerationConfig::default()),
            Err(Error::NotPrime(6))
        ));
    }

    #[test]
    fn missing_assignment_entry_rejected() {
        let f = family(&["x", "y"], &["s"], "x^2 + y^2 + s*x^2");
        let spec = FiberSpec {
            family: f,
            assignment: BTreeMap::new(),
            m: 0,
            q: 3,
        };
        assert!(matches!(
            count_points(&spec, &EnumerationConfig::default()),
            Err(Error::MissingParameter(_))
        ));
    }

    #[test]
    fn denominator_collision_with_the_prime_rejected() {
        let f = family(&["x", "y"], &["s"], "x^2 + y^2 + s*x^2");
        let spec = FiberSpec {
            family: f,
            assignment: [("s".to_string(), BigRational::new(1.into(), 3.into()))].into(),
            m: 0,
            q: 3,
        };
        assert!(matches!(
            count_points(&spec, &EnumerationConfig::default()),
            Err(Error::BadReduction { q: 3, .. })
        ));
    }

    #[test]
    fn truncation_image_property() {
        // every solution at order m+1 truncates to a solution at order m
        let f = family(&["x", "y"], &[], "x^2 + y^3");
        let config = EnumerationConfig::default();
        for m in 0..2usize {
            let longer = enumerate_solutions(&spec(&f, m + 1, 3), &config).unwrap();
            let shorter: std::collections::BTreeSet<Vec<u64>> =
                enumerate_solutions(&spec(&f, m, 3), &config)
                    .unwrap()
                    .into_iter()
                    .collect();
            let n1 = 2;
            for sol in longer {
                let truncated: Vec<u64> = sol[..n1 * (m + 1)].to_vec();
                assert!(shorter.contains(&truncated));
            }
        }
    }

    #[test]
    fn dimension_estimate_examples() {
        let est = estimate_dimension(&[(3, 27), (5, 125)]).unwrap();
        assert_eq!(est.rounded, 3);
        assert!(est.residual.abs() < 1e-12);
        let est = estimate_dimension(&[(3, 9), (5, 25)]).unwrap();
        assert_eq!(est.rounded, 2);
        assert!(matches!(
            estimate_dimension(&[(3, 9), (5, 0)]),
            Err(Error::ZeroCount(5))
        ));
        assert!(matches!(
            estimate_dimension(&[(3, 9), (3, 27)]),
            Err(Error::InsufficientPrimes)
        ));
    }

    #[test]
    fn smooth_bundle_for_a_line() {
        let s = Symbols::new(["x", "y"], Vec::<String>::new()).unwrap();
        let f = s.parse("x + y").unwrap();
        let report = smooth_bundle_check(&f, 2, 3, &EnumerationConfig::default()).unwrap();
        assert!(report.holds);
        assert_eq!(report.variety_count, 3);
        assert_eq!(report.jet_count, 27);
        // m = 0 is trivially the variety count
        let report = smooth_bundle_check(&f, 0, 3, &EnumerationConfig::default()).unwrap();
        assert!(report.holds);
        assert_eq!(report.jet_count, report.variety_count);
    }

    #[test]
    fn singular_hypersurface_fails_smoothness() {
        let s = Symbols::new(["x", "y"], Vec::<String>::new()).unwrap();
        let f = s.parse("x^2 + y^2").unwrap();
        // the origin is singular in every characteristic
        assert!(matches!(
            smooth_bundle_check(&f, 1, 3, &EnumerationConfig::default()),
            Err(Error::NotSmooth { .. })
        ));
    }

    #[test]
    fn consistent_family_diagnostic() {
        // x^2 + y^2 + s*x^2 rescales a fiber coordinate away from s = -1:
        // both sampled fibers are the same pair of lines through the origin
        let f = family(&["x", "y"], &["s"], "x^2 + y^2 + s*x^2");
        let samples = default_samples(&f);
        let report = flatness_diagnostic(
            &f,
            "x^2 + y^2 + s*x^2",
            1,
            &[5, 13],
            &samples,
            &EnumerationConfig::default(),
        )
        .unwrap();
        assert_eq!(report.verdict, FlatnessVerdict::Consistent);
        assert!(report.note.contains("not a proof"));
    }

    #[test]
    fn single_sample_is_insufficient() {
        let f = family(&["x", "y"], &["s"], "x^2 + y^2 + s*x^2");
        let samples = vec![default_samples(&f)[0].clone()];
        let report = flatness_diagnostic(
            &f,
            "x^2 + y^2 + s*x^2",
            1,
            &[3],
            &samples,
            &EnumerationConfig::default(),
        )
        .unwrap();
        assert_eq!(report.verdict, FlatnessVerdict::InsufficientSamples);
    }
}
