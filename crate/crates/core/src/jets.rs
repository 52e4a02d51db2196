//! Defining ideals of spaces of m-jets of a hypersurface (family).
//!
//! For F in the ambient variables x_1..x_{n+1} (and parameters), substitute
//! the truncated series x_i(t) = sum_{j<=m} x_{i,j} t^j and read off the
//! coefficients of t^0..t^m. The resulting generators G_0..G_m cut out the
//! space of m-jets; G_k is isobaric of weight k for the grading that gives
//! x_{i,j} weight j.

use std::collections::BTreeMap;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::poly::{Domain, ParamAssignment, Polynomial, Symbols, TruncatedSeries};

/// One jet coordinate x_{i,j}: ambient index i (1-based), jet order j.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct JetVariable {
    pub ambient: usize,
    pub order: usize,
}

impl JetVariable {
    pub fn name(&self, stem: JetStem) -> String {
        format!("{}{}_{}", stem.letter(), self.ambient, self.order)
    }
}

/// Letter used for the jet coordinates: `x` for jets of a hypersurface,
/// `y` for the monomial local model.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JetStem {
    X,
    Y,
}

impl JetStem {
    fn letter(&self) -> char {
        match self {
            JetStem::X => 'x',
            JetStem::Y => 'y',
        }
    }
}

/// True when `name` would collide with a generated jet-variable name such as
/// `x1_0` or `y2_3`. Such names are rejected as user declarations rather
/// than silently renamed.
pub fn is_reserved_jet_name(name: &str) -> bool {
    let rest = match name.strip_prefix('x').or_else(|| name.strip_prefix('y')) {
        Some(r) => r,
        None => return false,
    };
    let Some((a, b)) = rest.split_once('_') else {
        return false;
    };
    !a.is_empty()
        && !b.is_empty()
        && a.bytes().all(|c| c.is_ascii_digit())
        && b.bytes().all(|c| c.is_ascii_digit())
}

/// Value assigned to a named parameter during specialization.
#[derive(Clone, Debug, PartialEq)]
pub enum SpecValue {
    Rational(BigRational),
    Residue { value: u64, modulus: u64 },
}

/// The defining ideal of the space of m-jets: an ordered list of m+1
/// generators in the jet variables (and any surviving parameters).
///
/// Jet variable x_{i,j} occupies index (i-1)*(m+1)+j of the generators'
/// variable space. The source polynomial is carried along as provenance and
/// is mapped consistently by `truncate` and `specialize`.
#[derive(Clone, Debug, PartialEq)]
pub struct JetIdeal {
    generators: Vec<Polynomial>,
    ambient: usize,
    order: usize,
    params: Vec<String>,
    stem: JetStem,
    source: Polynomial,
}

impl JetIdeal {
    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn generator(&self, k: usize) -> &Polynomial {
        &self.generators[k]
    }

    /// Number of ambient variables n+1 of the source hypersurface.
    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn parameter_names(&self) -> &[String] {
        &self.params
    }

    pub fn stem(&self) -> JetStem {
        self.stem
    }

    /// The polynomial whose jets this ideal describes.
    pub fn source(&self) -> &Polynomial {
        &self.source
    }

    pub fn jet_variable(&self, index: usize) -> JetVariable {
        JetVariable {
            ambient: index / (self.order + 1) + 1,
            order: index % (self.order + 1),
        }
    }

    fn jet_index(ambient: usize, order: usize, m: usize) -> usize {
        (ambient - 1) * (m + 1) + order
    }

    /// Symbol table for printing the generators.
    pub fn symbols(&self) -> Symbols {
        let names: Vec<String> = (0..self.ambient * (self.order + 1))
            .map(|idx| self.jet_variable(idx).name(self.stem))
            .collect();
        Symbols::new(names, self.params.clone()).expect("generated names are valid")
    }

    pub fn generator_strings(&self) -> Vec<String> {
        let symbols = self.symbols();
        self.generators
            .iter()
            .map(|g| symbols.print(g).expect("generators match their symbols"))
            .collect()
    }

    /// JSON form: `{ "m": int, "ambient": int, "generators": [string...] }`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "m": self.order,
            "ambient": self.ambient,
            "generators": self.generator_strings(),
        })
    }

    /// Every monomial of G_k must have total jet weight k, where x_{i,j}
    /// weighs j. Zero generators pass vacuously.
    pub fn is_isobaric(&self) -> bool {
        self.generators.iter().enumerate().all(|(k, g)| {
            g.exponent_support().iter().all(|e| {
                let weight: u64 = e
                    .iter()
                    .enumerate()
                    .map(|(idx, &exp)| (self.jet_variable(idx).order as u64) * u64::from(exp))
                    .sum();
                weight == k as u64
            })
        })
    }

    /// The prefix G_0..G_{m_low}, re-expressed over the jet variables of
    /// order up to m_low. Jet variables of higher order never occur in a
    /// prefix generator; this is asserted during the re-indexing.
    pub fn truncate(&self, m_low: usize) -> Result<JetIdeal> {
        if m_low > self.order {
            return Err(Error::TruncationOrder {
                requested: m_low,
                order: self.order,
            });
        }
        let map: Vec<Option<usize>> = (0..self.ambient * (self.order + 1))
            .map(|idx| {
                let v = self.jet_variable(idx);
                (v.order <= m_low).then(|| Self::jet_index(v.ambient, v.order, m_low))
            })
            .collect();
        let new_vars = self.ambient * (m_low + 1);
        let generators = self.generators[..=m_low]
            .iter()
            .map(|g| g.remap_variables(&map, new_vars))
            .collect::<Result<Vec<_>>>()?;
        Ok(JetIdeal {
            generators,
            ambient: self.ambient,
            order: m_low,
            params: self.params.clone(),
            stem: self.stem,
            source: self.source.clone(),
        })
    }

    /// Substitute values for every parameter. The assignment must cover all
    /// parameters of the ideal (extra entries are ignored) and the values
    /// must be all rational or all residues modulo one prime.
    pub fn specialize(&self, assignment: &BTreeMap<String, SpecValue>) -> Result<JetIdeal> {
        let values = positional_values(&self.params, assignment)?;
        let generators = self
            .generators
            .iter()
            .map(|g| g.specialize(&values))
            .collect::<Result<Vec<_>>>()?;
        Ok(JetIdeal {
            generators,
            ambient: self.ambient,
            order: self.order,
            params: Vec::new(),
            stem: self.stem,
            source: self.source.specialize(&values)?,
        })
    }
}

/// Resolve a named assignment into positional parameter values.
pub(crate) fn positional_values(
    params: &[String],
    assignment: &BTreeMap<String, SpecValue>,
) -> Result<ParamAssignment> {
    let mut picked = Vec::with_capacity(params.len());
    for name in params {
        match assignment.get(name) {
            Some(v) => picked.push(v.clone()),
            None => return Err(Error::MissingParameter(name.clone())),
        }
    }
    let all_rational = picked.iter().all(|v| matches!(v, SpecValue::Rational(_)));
    if all_rational {
        return Ok(ParamAssignment::Rational(
            picked
                .into_iter()
                .map(|v| match v {
                    SpecValue::Rational(r) => r,
                    SpecValue::Residue { .. } => unreachable!(),
                })
                .collect(),
        ));
    }
    let mut q = None;
    let mut values = Vec::with_capacity(picked.len());
    for v in picked {
        match v {
            SpecValue::Residue { value, modulus } => {
                match q {
                    None => q = Some(modulus),
                    Some(q0) if q0 == modulus => {}
                    Some(_) => return Err(Error::MixedSpecialization),
                }
                values.push(value);
            }
            SpecValue::Rational(_) => return Err(Error::MixedSpecialization),
        }
    }
    Ok(ParamAssignment::Residues {
        q: q.expect("nonempty residue assignment"),
        values,
    })
}

/// Generators of the jet ideal of `f` at order m.
///
/// `param_names` label the parameters of `f` (empty for a plain
/// hypersurface); they survive into the generators as coefficients.
pub fn jet_ideal(f: &Polynomial, param_names: &[String], m: usize) -> Result<JetIdeal> {
    jet_ideal_with_stem(f, param_names, m, JetStem::X)
}

fn jet_ideal_with_stem(
    f: &Polynomial,
    param_names: &[String],
    m: usize,
    stem: JetStem,
) -> Result<JetIdeal> {
    if param_names.len() != f.parameter_count() {
        return Err(Error::ArityMismatch(format!(
            "{} parameter names for {} parameters",
            param_names.len(),
            f.parameter_count()
        )));
    }
    for name in param_names {
        if is_reserved_jet_name(name) {
            return Err(Error::ReservedName(name.clone()));
        }
    }
    let n1 = f.variable_count();
    let jet_vars = n1 * (m + 1);
    let domain = f.domain();
    let series: Vec<TruncatedSeries> = (1..=n1)
        .map(|i| {
            let coeffs = (0..=m)
                .map(|j| Polynomial::variable(jet_vars, &domain, JetIdeal::jet_index(i, j, m)))
                .collect();
            TruncatedSeries::new(coeffs).expect("coordinate series is well formed")
        })
        .collect();
    let expanded = f.substitute_series(&series)?;
    Ok(JetIdeal {
        generators: expanded.into_coefficients(),
        ambient: n1,
        order: m,
        params: param_names.to_vec(),
        stem,
        source: f.clone(),
    })
}

/// Jet ideal of the monomial y^a: the m+1 coefficient polynomials of
/// prod_i (y_{i,0} + y_{i,1} t + ...)^{a_i} mod t^{m+1}.
///
/// The generators never mention a parameter symbol; that independence from
/// the base is what makes the monomial total-transform model flat.
pub fn monomial_jet_generators(a: &[u32], m: usize) -> Result<JetIdeal> {
    if a.is_empty() || a.iter().all(|&x| x == 0) {
        return Err(Error::AllZeroExponent);
    }
    let f = Polynomial::from_rational_terms(
        a.len(),
        0,
        [(a.to_vec(), BigRational::from_integer(1.into()))],
    )?;
    jet_ideal_with_stem(&f, &[], m, JetStem::Y)
}

/// The Hasse-Schmidt Leibniz convolution check: for every k <= m, generator
/// k of the jet ideal of f*g must equal sum_{i+j=k} G_i(f) * G_j(g).
///
/// This holds identically (series substitution is a ring homomorphism), so
/// the operation always returns true on valid input; it is exposed so the
/// test suite and the command line can exercise it directly.
pub fn leibniz_check(f: &Polynomial, g: &Polynomial, m: usize) -> Result<bool> {
    let product = f.try_mul(g)?;
    let jf = jet_ideal(f, &[], m)?;
    let jg = jet_ideal(g, &[], m)?;
    let jfg = jet_ideal(&product, &[], m)?;
    for k in 0..=m {
        let mut convolution = Polynomial::zero(
            jf.generators[0].variable_count(),
            &jf.generators[0].domain(),
        );
        for i in 0..=k {
            convolution = convolution.try_add(&jf.generators[i].try_mul(&jg.generators[k - i])?)?;
        }
        if &convolution != jfg.generator(k) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A family F = f + sum_j s_j g_j: a base hypersurface with perturbations
/// attached to pairwise distinct parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct FamilyPolynomial {
    base: Polynomial,
    perturbations: Vec<(String, Polynomial)>,
}

impl FamilyPolynomial {
    pub fn new(base: Polynomial, perturbations: Vec<(String, Polynomial)>) -> Result<Self> {
        if base.parameter_count() != 0 || base.modulus().is_some() {
            return Err(Error::DomainMismatch(
                "family base must be rational and parameter-free".into(),
            ));
        }
        let mut names = std::collections::BTreeSet::new();
        for (name, g) in &perturbations {
            if g.variable_count() != base.variable_count() {
                return Err(Error::ArityMismatch(format!(
                    "perturbation `{name}` has {} variables, base has {}",
                    g.variable_count(),
                    base.variable_count()
                )));
            }
            if g.parameter_count() != 0 || g.modulus().is_some() {
                return Err(Error::DomainMismatch(format!(
                    "perturbation `{name}` must be rational and parameter-free"
                )));
            }
            if is_reserved_jet_name(name) {
                return Err(Error::ReservedName(name.clone()));
            }
            if !names.insert(name.clone()) {
                return Err(Error::InvalidName(format!("duplicate parameter `{name}`")));
            }
        }
        Ok(FamilyPolynomial {
            base,
            perturbations,
        })
    }

    /// Split a parametric polynomial into base and perturbations. Fails on
    /// terms nonlinear in the parameters (degree >= 2 or mixed).
    pub fn from_parametric(f: &Polynomial, param_names: &[String]) -> Result<Self> {
        if param_names.len() != f.parameter_count() {
            return Err(Error::ArityMismatch(format!(
                "{} names for {} parameters",
                param_names.len(),
                f.parameter_count()
            )));
        }
        let n1 = f.variable_count();
        let l = f.parameter_count();
        let mut base_terms: Vec<(Vec<u32>, BigRational)> = Vec::new();
        let mut pert_terms: Vec<Vec<(Vec<u32>, BigRational)>> = vec![Vec::new(); l];
        for (e, c) in f.raw_terms() {
            let crate::poly::Scalar::Rat(r) = c else {
                return Err(Error::DomainMismatch(
                    "family polynomial must have rational scalars".into(),
                ));
            };
            let (v, p) = e.split(n1);
            let pdeg: u64 = p.total_degree();
            if pdeg == 0 {
                base_terms.push((v.entries().to_vec(), r.clone()));
            } else if pdeg == 1 {
                let j = p.entries().iter().position(|&x| x == 1).unwrap();
                pert_terms[j].push((v.entries().to_vec(), r.clone()));
            } else {
                return Err(Error::NotAFamily(format!("parameter exponent {p}")));
            }
        }
        let base = Polynomial::from_rational_terms(n1, 0, base_terms)?;
        let perturbations = param_names
            .iter()
            .zip(pert_terms)
            .map(|(name, terms)| Ok((name.clone(), Polynomial::from_rational_terms(n1, 0, terms)?)))
            .collect::<Result<Vec<_>>>()?;
        FamilyPolynomial::new(base, perturbations)
    }

    pub fn base(&self) -> &Polynomial {
        &self.base
    }

    pub fn perturbations(&self) -> &[(String, Polynomial)] {
        &self.perturbations
    }

    pub fn parameter_names(&self) -> Vec<String> {
        self.perturbations.iter().map(|(n, _)| n.clone()).collect()
    }

    pub fn variable_count(&self) -> usize {
        self.base.variable_count()
    }

    /// The family as one polynomial over Q[s_1..s_l].
    pub fn to_polynomial(&self) -> Polynomial {
        let l = self.perturbations.len();
        if l == 0 {
            return self.base.clone();
        }
        let n1 = self.base.variable_count();
        let domain = Domain::Parametric(l);
        let mut out = Polynomial::zero(n1, &domain);
        let lift = |g: &Polynomial| -> Polynomial {
            let terms: Vec<(Vec<u32>, BigRational)> = g
                .raw_terms()
                .map(|(e, c)| {
                    let crate::poly::Scalar::Rat(r) = c else {
                        unreachable!()
                    };
                    let mut joint = e.entries().to_vec();
                    joint.resize(joint.len() + l, 0);
                    (joint, r.clone())
                })
                .collect();
            Polynomial::from_rational_terms(n1, l, terms).expect("lift preserves shape")
        };
        out = out.try_add(&lift(&self.base)).expect("shapes match");
        for (j, (_, g)) in self.perturbations.iter().enumerate() {
            let s = Polynomial::parameter(n1, &domain, j);
            out = out
                .try_add(&s.try_mul(&lift(g)).expect("shapes match"))
                .expect("shapes match");
        }
        out
    }

    /// Jet ideal of the family at order m; parameters pass through.
    pub fn jet_ideal(&self, m: usize) -> Result<JetIdeal> {
        jet_ideal(&self.to_polynomial(), &self.parameter_names(), m)
    }

    /// Substitute parameter values, producing a plain polynomial.
    pub fn specialize(&self, assignment: &BTreeMap<String, SpecValue>) -> Result<Polynomial> {
        let names = self.parameter_names();
        let values = positional_values(&names, assignment)?;
        self.to_polynomial().specialize(&values)
    }
}
