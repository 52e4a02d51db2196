//! Sparse exact multivariate polynomials over a closed set of coefficient
//! domains: rationals, residues modulo a prime, and parameter polynomials
//! (polynomials in declared parameters with rational coefficients).
//!
//! A parametric polynomial is stored flat: every term carries one joint
//! exponent over the ambient variables followed by the parameters, with a
//! rational scalar. This makes ring arithmetic uniform across domains and
//! keeps specialization a plain substitution on the parameter block.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::exponent::ExponentVector;
use crate::error::{Error, Result};

/// Coefficient domain tag of a polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Domain {
    /// Exact rationals with arbitrary-precision integers.
    Rational,
    /// Residues modulo the given prime, canonical representatives in [0, q).
    Modular(u64),
    /// Polynomials in the given number of parameters, rational coefficients.
    Parametric(usize),
}

impl std::fmt::Display for Domain {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Domain::Rational => write!(f, "Q"),
            Domain::Modular(q) => write!(f, "F_{q}"),
            Domain::Parametric(l) => write!(f, "Q[{l} parameters]"),
        }
    }
}

/// A single coefficient value, as exposed through the public API.
#[derive(Clone, Debug, PartialEq)]
pub enum Coefficient {
    Rational(BigRational),
    Residue {
        value: u64,
        modulus: u64,
    },
    /// A polynomial in the parameters only (its `vars` count is zero).
    Parametric(Polynomial),
}

impl Coefficient {
    pub fn from_integer(n: i64) -> Self {
        Coefficient::Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Coefficient::Rational(r) => r.is_zero(),
            Coefficient::Residue { value, .. } => *value == 0,
            Coefficient::Parametric(p) => p.is_zero(),
        }
    }
}

/// Internal scalar attached to one stored term. `Mod` values are canonical
/// representatives in [1, q) for the owning polynomial's modulus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Scalar {
    Rat(BigRational),
    Mod(u64),
}

impl Scalar {
    fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Mod(v) => *v == 0,
        }
    }

    fn add(&self, other: &Scalar, modulus: Option<u64>) -> Scalar {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Mod(a), Scalar::Mod(b)) => {
                let q = modulus.expect("modular scalar without modulus");
                Scalar::Mod((a + b) % q)
            }
            _ => panic!("mixed scalar kinds"),
        }
    }

    fn mul(&self, other: &Scalar, modulus: Option<u64>) -> Scalar {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Mod(a), Scalar::Mod(b)) => {
                let q = modulus.expect("modular scalar without modulus");
                Scalar::Mod(((u128::from(*a) * u128::from(*b)) % u128::from(q)) as u64)
            }
            _ => panic!("mixed scalar kinds"),
        }
    }

    fn neg(&self, modulus: Option<u64>) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Mod(v) => {
                let q = modulus.expect("modular scalar without modulus");
                Scalar::Mod((q - v % q) % q)
            }
        }
    }

    fn scale_by_u32(&self, n: u32, modulus: Option<u64>) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(a * BigRational::from_integer(BigInt::from(n))),
            Scalar::Mod(v) => {
                let q = modulus.expect("modular scalar without modulus");
                Scalar::Mod(((u128::from(*v) * u128::from(n)) % u128::from(q)) as u64)
            }
        }
    }
}

/// Sparse exact multivariate polynomial.
///
/// Terms map a joint exponent (ambient variables, then parameters) to a
/// nonzero scalar; the map's graded lexicographic key order is the canonical
/// term order. Values are immutable once constructed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    vars: usize,
    params: usize,
    modulus: Option<u64>,
    terms: BTreeMap<ExponentVector, Scalar>,
}

impl Polynomial {
    // ---- constructors -------------------------------------------------

    pub fn zero(vars: usize, domain: &Domain) -> Self {
        let (params, modulus) = Self::decode_domain(domain);
        Polynomial {
            vars,
            params,
            modulus,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(vars: usize, domain: &Domain) -> Self {
        let mut p = Self::zero(vars, domain);
        let width = p.width();
        p.insert_term(ExponentVector::zeros(width), p.unit_scalar());
        p
    }

    /// The monomial `x_index` (0-based, among the ambient variables).
    pub fn variable(vars: usize, domain: &Domain, index: usize) -> Self {
        assert!(index < vars, "variable index out of range");
        let mut p = Self::zero(vars, domain);
        let width = p.width();
        p.insert_term(ExponentVector::unit(width, index), p.unit_scalar());
        p
    }

    /// The monomial `s_index` (0-based, among the parameters).
    pub fn parameter(vars: usize, domain: &Domain, index: usize) -> Self {
        let mut p = Self::zero(vars, domain);
        assert!(index < p.params, "parameter index out of range");
        let width = p.width();
        p.insert_term(ExponentVector::unit(width, vars + index), p.unit_scalar());
        p
    }

    pub fn constant(vars: usize, domain: &Domain, value: Coefficient) -> Result<Self> {
        let mut p = Self::zero(vars, domain);
        let width = p.width();
        let monomial = ExponentVector::zeros(width);
        p.add_coefficient_monomial(&monomial, &value)?;
        Ok(p)
    }

    /// Build a polynomial from (joint exponent, rational) pairs. Zero
    /// coefficients are dropped, duplicate exponents accumulated.
    pub fn from_rational_terms(
        vars: usize,
        params: usize,
        terms: impl IntoIterator<Item = (Vec<u32>, BigRational)>,
    ) -> Result<Self> {
        let domain = if params > 0 {
            Domain::Parametric(params)
        } else {
            Domain::Rational
        };
        let mut p = Self::zero(vars, &domain);
        for (e, c) in terms {
            if e.len() != vars + params {
                return Err(Error::DimensionMismatch {
                    expected: vars + params,
                    got: e.len(),
                });
            }
            p.accumulate(ExponentVector::new(e), Scalar::Rat(c));
        }
        Ok(p)
    }

    /// Build a modular polynomial from (joint exponent, residue) pairs.
    pub fn from_modular_terms(
        vars: usize,
        q: u64,
        terms: impl IntoIterator<Item = (Vec<u32>, u64)>,
    ) -> Result<Self> {
        let mut p = Self::zero(vars, &Domain::Modular(q));
        for (e, c) in terms {
            if e.len() != vars {
                return Err(Error::DimensionMismatch {
                    expected: vars,
                    got: e.len(),
                });
            }
            p.accumulate(ExponentVector::new(e), Scalar::Mod(c % q));
        }
        Ok(p)
    }

    fn decode_domain(domain: &Domain) -> (usize, Option<u64>) {
        match domain {
            Domain::Rational => (0, None),
            Domain::Modular(q) => (0, Some(*q)),
            Domain::Parametric(l) => (*l, None),
        }
    }

    fn unit_scalar(&self) -> Scalar {
        match self.modulus {
            None => Scalar::Rat(BigRational::one()),
            Some(_) => Scalar::Mod(1),
        }
    }

    fn width(&self) -> usize {
        self.vars + self.params
    }

    // ---- basic accessors ----------------------------------------------

    pub fn variable_count(&self) -> usize {
        self.vars
    }

    pub fn parameter_count(&self) -> usize {
        self.params
    }

    pub fn modulus(&self) -> Option<u64> {
        self.modulus
    }

    pub fn domain(&self) -> Domain {
        match (self.params, self.modulus) {
            (0, None) => Domain::Rational,
            (0, Some(q)) => Domain::Modular(q),
            (l, None) => Domain::Parametric(l),
            (_, Some(_)) => unreachable!("parametric modular polynomials are not constructed"),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded lexicographic order of the joint exponent.
    pub(crate) fn raw_terms(&self) -> impl Iterator<Item = (&ExponentVector, &Scalar)> {
        self.terms.iter()
    }

    /// Total degree in the ambient variables only (None for the zero
    /// polynomial).
    pub fn degree(&self) -> Option<u64> {
        self.terms
            .keys()
            .map(|e| e.entries()[..self.vars].iter().map(|&x| u64::from(x)).sum())
            .max()
    }

    /// Exponent support over the ambient variables. For parameter-free
    /// polynomials this is exactly E(f).
    pub fn exponent_support(&self) -> Vec<Vec<u32>> {
        let mut out: Vec<Vec<u32>> = self
            .terms
            .keys()
            .map(|e| e.entries()[..self.vars].to_vec())
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// Coefficient of the given ambient-variable exponent, aggregated over
    /// the parameter part.
    pub fn coefficient_of(&self, var_exponent: &[u32]) -> Coefficient {
        assert_eq!(var_exponent.len(), self.vars);
        match self.domain() {
            Domain::Rational => {
                let key = ExponentVector::new(var_exponent.to_vec());
                match self.terms.get(&key) {
                    Some(Scalar::Rat(r)) => Coefficient::Rational(r.clone()),
                    _ => Coefficient::Rational(BigRational::zero()),
                }
            }
            Domain::Modular(q) => {
                let key = ExponentVector::new(var_exponent.to_vec());
                match self.terms.get(&key) {
                    Some(Scalar::Mod(v)) => Coefficient::Residue {
                        value: *v,
                        modulus: q,
                    },
                    _ => Coefficient::Residue {
                        value: 0,
                        modulus: q,
                    },
                }
            }
            Domain::Parametric(l) => {
                let mut coeff = Polynomial::zero(0, &Domain::Parametric(l));
                for (e, c) in &self.terms {
                    let (v, p) = e.split(self.vars);
                    if v.entries() == var_exponent {
                        coeff.accumulate(p, c.clone());
                    }
                }
                Coefficient::Parametric(coeff)
            }
        }
    }

    // ---- term building ------------------------------------------------

    fn insert_term(&mut self, e: ExponentVector, c: Scalar) {
        if !c.is_zero() {
            self.terms.insert(e, c);
        }
    }

    pub(crate) fn accumulate(&mut self, e: ExponentVector, c: Scalar) {
        debug_assert_eq!(e.len(), self.width());
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&e) {
            None => {
                self.terms.insert(e, c);
            }
            Some(old) => {
                let sum = old.add(&c, self.modulus);
                if !sum.is_zero() {
                    self.terms.insert(e, sum);
                }
            }
        }
    }

    /// Add `value * x^monomial` (monomial over the joint exponent space).
    fn add_coefficient_monomial(
        &mut self,
        monomial: &ExponentVector,
        value: &Coefficient,
    ) -> Result<()> {
        match (value, self.modulus) {
            (Coefficient::Rational(r), None) => {
                self.accumulate(monomial.clone(), Scalar::Rat(r.clone()));
                Ok(())
            }
            (Coefficient::Residue { value, modulus }, Some(q)) if *modulus == q => {
                self.accumulate(monomial.clone(), Scalar::Mod(value % q));
                Ok(())
            }
            (Coefficient::Parametric(c), None) => {
                if c.params != self.params {
                    return Err(Error::DomainMismatch(format!(
                        "coefficient has {} parameters, polynomial has {}",
                        c.params, self.params
                    )));
                }
                for (pe, s) in &c.terms {
                    let joint = monomial.add(&ExponentVector::zeros(self.vars).concat(pe));
                    self.accumulate(joint, s.clone());
                }
                Ok(())
            }
            _ => Err(Error::DomainMismatch(format!(
                "coefficient incompatible with domain {}",
                self.domain()
            ))),
        }
    }

    // ---- ring arithmetic ----------------------------------------------

    pub fn same_shape(&self, other: &Polynomial) -> bool {
        self.vars == other.vars && self.params == other.params && self.modulus == other.modulus
    }

    fn check_shape(&self, other: &Polynomial) -> Result<()> {
        if self.vars != other.vars {
            return Err(Error::ArityMismatch(format!(
                "{} vs {} variables",
                self.vars, other.vars
            )));
        }
        if self.params != other.params || self.modulus != other.modulus {
            return Err(Error::DomainMismatch(format!(
                "{} vs {}",
                self.domain(),
                other.domain()
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_shape(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.accumulate(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_shape(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.accumulate(e.clone(), c.neg(self.modulus));
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_shape(other)?;
        let mut out = Polynomial::zero(self.vars, &self.domain());
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.accumulate(e1.add(e2), c1.mul(c2, self.modulus));
            }
        }
        Ok(out)
    }

    pub fn negate(&self) -> Polynomial {
        let mut out = Polynomial::zero(self.vars, &self.domain());
        for (e, c) in &self.terms {
            out.insert_term(e.clone(), c.neg(self.modulus));
        }
        out
    }

    /// Multiply by a coefficient of the matching domain.
    pub fn scale(&self, value: &Coefficient) -> Result<Polynomial> {
        let c = Polynomial::constant(self.vars, &self.domain(), value.clone())?;
        self.try_mul(&c)
    }

    pub fn pow(&self, n: u32) -> Polynomial {
        let mut result = Polynomial::one(self.vars, &self.domain());
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = result.try_mul(&base).expect("shape preserved");
            }
            n >>= 1;
            if n > 0 {
                base = base.try_mul(&base).expect("shape preserved");
            }
        }
        result
    }

    // ---- calculus and evaluation ----------------------------------------

    /// Formal partial derivative with respect to ambient variable `i`
    /// (1-based, matching the mathematical convention).
    pub fn partial_derivative(&self, i: usize) -> Result<Polynomial> {
        if i == 0 || i > self.vars {
            return Err(Error::IndexOutOfRange {
                index: i,
                count: self.vars,
            });
        }
        let idx = i - 1;
        let mut out = Polynomial::zero(self.vars, &self.domain());
        for (e, c) in &self.terms {
            let k = e.get(idx);
            if k == 0 {
                continue;
            }
            let mut entries = e.entries().to_vec();
            entries[idx] -= 1;
            out.accumulate(
                ExponentVector::new(entries),
                c.scale_by_u32(k, self.modulus),
            );
        }
        Ok(out)
    }

    /// Evaluate a modular, parameter-free polynomial at a tuple of residues.
    pub fn evaluate(&self, point: &[u64]) -> Result<u64> {
        let q = match self.domain() {
            Domain::Modular(q) => q,
            d => {
                return Err(Error::DomainMismatch(format!(
                    "evaluate needs a mod-q polynomial, got {d}"
                )))
            }
        };
        if point.len() != self.vars {
            return Err(Error::ArityMismatch(format!(
                "point has {} entries, polynomial has {} variables",
                point.len(),
                self.vars
            )));
        }
        let mut total: u64 = 0;
        for (e, c) in &self.terms {
            let mut term = match c {
                Scalar::Mod(v) => *v,
                Scalar::Rat(_) => unreachable!(),
            };
            for (i, &exp) in e.entries().iter().enumerate() {
                if exp > 0 {
                    term = mulmod(term, powmod(point[i] % q, u64::from(exp), q), q);
                }
            }
            total = (total + term) % q;
        }
        Ok(total)
    }

    // ---- domain transport -----------------------------------------------

    /// Reduce a rational, parameter-free polynomial modulo the prime `q`.
    pub fn to_modular(&self, q: u64) -> Result<Polynomial> {
        if self.params != 0 {
            return Err(Error::ParametricInput("reduce parameters first"));
        }
        if let Some(q0) = self.modulus {
            if q0 == q {
                return Ok(self.clone());
            }
            return Err(Error::DomainMismatch(format!("already mod {q0}")));
        }
        let mut out = Polynomial::zero(self.vars, &Domain::Modular(q));
        for (e, c) in &self.terms {
            let Scalar::Rat(r) = c else { unreachable!() };
            out.accumulate(e.clone(), Scalar::Mod(rational_mod(r, q)?));
        }
        Ok(out)
    }

    /// Substitute values for the parameters. Values must be positional,
    /// covering every parameter, and all of one kind.
    pub fn specialize(&self, values: &ParamAssignment) -> Result<Polynomial> {
        match values {
            ParamAssignment::Rational(vals) => {
                if vals.len() != self.params {
                    return Err(Error::ArityMismatch(format!(
                        "{} values for {} parameters",
                        vals.len(),
                        self.params
                    )));
                }
                if self.modulus.is_some() {
                    return Err(Error::DomainMismatch(
                        "rational values into a modular polynomial".into(),
                    ));
                }
                let mut out = Polynomial::zero(self.vars, &Domain::Rational);
                for (e, c) in &self.terms {
                    let Scalar::Rat(r) = c else { unreachable!() };
                    let (v, p) = e.split(self.vars);
                    let mut value = r.clone();
                    for (j, &exp) in p.entries().iter().enumerate() {
                        for _ in 0..exp {
                            value *= &vals[j];
                        }
                    }
                    out.accumulate(v, Scalar::Rat(value));
                }
                Ok(out)
            }
            ParamAssignment::Residues { q, values: vals } => {
                if vals.len() != self.params {
                    return Err(Error::ArityMismatch(format!(
                        "{} values for {} parameters",
                        vals.len(),
                        self.params
                    )));
                }
                if let Some(q0) = self.modulus {
                    if q0 != *q {
                        return Err(Error::DomainMismatch(format!("mod {q0} vs mod {q}")));
                    }
                }
                let mut out = Polynomial::zero(self.vars, &Domain::Modular(*q));
                for (e, c) in &self.terms {
                    let base = match c {
                        Scalar::Rat(r) => rational_mod(r, *q)?,
                        Scalar::Mod(v) => *v,
                    };
                    let (v, p) = e.split(self.vars);
                    let mut value = base;
                    for (j, &exp) in p.entries().iter().enumerate() {
                        if exp > 0 {
                            value = mulmod(value, powmod(vals[j] % q, u64::from(exp), *q), *q);
                        }
                    }
                    out.accumulate(v, Scalar::Mod(value));
                }
                Ok(out)
            }
        }
    }

    /// Keep only the terms whose joint exponent satisfies the predicate.
    pub(crate) fn filter_terms(&self, keep: impl Fn(&ExponentVector) -> bool) -> Polynomial {
        let mut out = Polynomial::zero(self.vars, &self.domain());
        for (e, c) in &self.terms {
            if keep(e) {
                out.insert_term(e.clone(), c.clone());
            }
        }
        out
    }

    /// Re-index the ambient variables through `map` (old index -> new index,
    /// `None` meaning the variable must not occur). Parameters are kept.
    pub(crate) fn remap_variables(
        &self,
        map: &[Option<usize>],
        new_vars: usize,
    ) -> Result<Polynomial> {
        assert_eq!(map.len(), self.vars);
        let mut out = Polynomial::zero(
            new_vars,
            &match self.domain() {
                Domain::Parametric(l) => Domain::Parametric(l),
                d => d,
            },
        );
        for (e, c) in &self.terms {
            let mut entries = vec![0u32; new_vars + self.params];
            for (old, &target) in map.iter().enumerate() {
                let exp = e.get(old);
                match target {
                    Some(new) => entries[new] = exp,
                    None if exp == 0 => {}
                    None => {
                        return Err(Error::Internal(format!(
                            "dropped variable {old} occurs with exponent {exp}"
                        )))
                    }
                }
            }
            for j in 0..self.params {
                entries[new_vars + j] = e.get(self.vars + j);
            }
            out.accumulate(ExponentVector::new(entries), c.clone());
        }
        Ok(out)
    }
}

/// Positional parameter values for specialization.
#[derive(Clone, Debug)]
pub enum ParamAssignment {
    Rational(Vec<BigRational>),
    Residues { q: u64, values: Vec<u64> },
}

// Operator sugar for shape-aligned operands; panics on mismatch. The checked
// entry points are `try_add`/`try_sub`/`try_mul`.
impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).expect("polynomial shape mismatch")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.try_sub(rhs).expect("polynomial shape mismatch")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("polynomial shape mismatch")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.negate()
    }
}

pub(crate) fn mulmod(a: u64, b: u64, q: u64) -> u64 {
    ((u128::from(a) * u128::from(b)) % u128::from(q)) as u64
}

pub(crate) fn powmod(mut base: u64, mut exp: u64, q: u64) -> u64 {
    let mut acc: u64 = 1 % q;
    base %= q;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, q);
        }
        base = mulmod(base, base, q);
        exp >>= 1;
    }
    acc
}

/// Map a rational into F_q: numerator times the inverse of the denominator.
pub(crate) fn rational_mod(r: &BigRational, q: u64) -> Result<u64> {
    let num = r.numer().mod_floor_u64(q);
    let den = r.denom().mod_floor_u64(q);
    if den == 0 {
        return Err(Error::BadReduction {
            q,
            denominator: r.denom().to_string(),
        });
    }
    // q is prime, so Fermat inversion applies
    let inv = powmod(den, q - 2, q);
    Ok(mulmod(num, inv, q))
}

trait ModFloorU64 {
    fn mod_floor_u64(&self, q: u64) -> u64;
}

impl ModFloorU64 for BigInt {
    fn mod_floor_u64(&self, q: u64) -> u64 {
        use num_integer::Integer;
        let m = self.mod_floor(&BigInt::from(q));
        let (_, digits) = m.to_u64_digits();
        match digits.as_slice() {
            [] => 0,
            [d] => *d,
            _ => unreachable!("mod_floor result below u64 modulus"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn difference_of_squares() {
        // (x+y)(x-y) = x^2 - y^2
        let x = Polynomial::variable(2, &Domain::Rational, 0);
        let y = Polynomial::variable(2, &Domain::Rational, 1);
        let lhs = (&(&x + &y) * &(&x - &y)).clone();
        let expected = &(&x * &x) - &(&y * &y);
        assert_eq!(lhs, expected);
    }

    #[test]
    fn additive_identity() {
        let x = Polynomial::variable(2, &Domain::Rational, 0);
        let zero = Polynomial::zero(2, &Domain::Rational);
        assert_eq!(&x + &zero, x);
    }

    #[test]
    fn freshman_dream_mod_3() {
        // (x+y)^3 = x^3 + y^3 over F_3
        let d = Domain::Modular(3);
        let x = Polynomial::variable(2, &d, 0);
        let y = Polynomial::variable(2, &d, 1);
        let lhs = (&x + &y).pow(3);
        let rhs = &x.pow(3) + &y.pow(3);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn domain_mismatch_rejected() {
        let a = Polynomial::variable(1, &Domain::Modular(3), 0);
        let b = Polynomial::variable(1, &Domain::Modular(5), 0);
        assert!(matches!(a.try_add(&b), Err(Error::DomainMismatch(_))));
    }

    #[test]
    fn partial_derivatives() {
        // f = x^2 + y^3
        let x = Polynomial::variable(2, &Domain::Rational, 0);
        let y = Polynomial::variable(2, &Domain::Rational, 1);
        let f = &x.pow(2) + &y.pow(3);
        let fx = f.partial_derivative(1).unwrap();
        let fy = f.partial_derivative(2).unwrap();
        assert_eq!(fx, x.scale(&Coefficient::Rational(rat(2))).unwrap());
        assert_eq!(fy, y.pow(2).scale(&Coefficient::Rational(rat(3))).unwrap());
        let c = Polynomial::one(2, &Domain::Rational);
        assert!(c.partial_derivative(1).unwrap().is_zero());
        assert!(matches!(
            f.partial_derivative(3),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn evaluate_mod_q() {
        // x^2 + y^3 at (1,1) mod 5 -> 2
        let d = Domain::Modular(5);
        let x = Polynomial::variable(2, &d, 0);
        let y = Polynomial::variable(2, &d, 1);
        let f = &x.pow(2) + &y.pow(3);
        assert_eq!(f.evaluate(&[1, 1]).unwrap(), 2);
        // x^4+y^4+z^4 at (1,1,1) mod 3 -> 0
        let d3 = Domain::Modular(3);
        let g: Polynomial = (0..3)
            .map(|i| Polynomial::variable(3, &d3, i).pow(4))
            .fold(Polynomial::zero(3, &d3), |acc, p| &acc + &p);
        assert_eq!(g.evaluate(&[1, 1, 1]).unwrap(), 0);
        // at the origin only the constant term survives
        let c = Coefficient::Residue {
            value: 4,
            modulus: 5,
        };
        let with_constant = &f + &Polynomial::constant(2, &d, c).unwrap();
        assert_eq!(with_constant.evaluate(&[0, 0]).unwrap(), 4);
        // arity and domain errors
        assert!(matches!(f.evaluate(&[1]), Err(Error::ArityMismatch(_))));
        let rational = Polynomial::variable(1, &Domain::Rational, 0);
        assert!(matches!(
            rational.evaluate(&[1]),
            Err(Error::DomainMismatch(_))
        ));
    }

    #[test]
    fn specialize_commutes_with_arithmetic() {
        // (f+g)(s=c) = f(s=c) + g(s=c) and likewise for products
        let d = Domain::Parametric(1);
        let x = Polynomial::variable(1, &d, 0);
        let s = Polynomial::parameter(1, &d, 0);
        let f = &x.pow(2) + &(&s * &x);
        let g = &s.pow(2) + &x;
        let assign = ParamAssignment::Rational(vec![rat(7)]);
        let lhs = (&f + &g).specialize(&assign).unwrap();
        let rhs = &f.specialize(&assign).unwrap() + &g.specialize(&assign).unwrap();
        assert_eq!(lhs, rhs);
        let lhs = (&f * &g).specialize(&assign).unwrap();
        let rhs = &f.specialize(&assign).unwrap() * &g.specialize(&assign).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn rational_reduction() {
        // 1/2 mod 5 = 3
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        assert_eq!(rational_mod(&half, 5).unwrap(), 3);
        let third = BigRational::new(BigInt::from(1), BigInt::from(3));
        assert!(matches!(
            rational_mod(&third, 3),
            Err(Error::BadReduction { .. })
        ));
        assert_eq!(rational_mod(&rat(-1), 5).unwrap(), 4);
    }
}
