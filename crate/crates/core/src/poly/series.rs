//! Truncated power series in one formal variable t, with polynomial
//! coefficients. All arithmetic discards t-degrees above the truncation
//! order, so these are elements of R[t]/(t^{m+1}).

use super::polynomial::{Coefficient, Polynomial, Scalar};
use crate::error::{Error, Result};

/// A polynomial list [c_0, ..., c_m] representing c_0 + c_1 t + ... + c_m t^m.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<Polynomial>,
}

impl TruncatedSeries {
    /// Build from coefficients of t^0..t^m. All coefficient polynomials must
    /// share one variable count and domain.
    pub fn new(coeffs: Vec<Polynomial>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::OrderMismatch("series needs order >= 0".into()));
        }
        for c in &coeffs[1..] {
            if !coeffs[0].same_shape(c) {
                return Err(Error::DomainMismatch(
                    "series coefficients of mixed shape".into(),
                ));
            }
        }
        Ok(TruncatedSeries { coeffs })
    }

    pub fn zero(template: &Polynomial, order: usize) -> Self {
        let z = Polynomial::zero(template.variable_count(), &template.domain());
        TruncatedSeries {
            coeffs: vec![z; order + 1],
        }
    }

    /// A constant series [p, 0, ..., 0].
    pub fn constant(p: Polynomial, order: usize) -> Self {
        let z = Polynomial::zero(p.variable_count(), &p.domain());
        let mut coeffs = vec![z; order + 1];
        coeffs[0] = p;
        TruncatedSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coefficients(&self) -> &[Polynomial] {
        &self.coeffs
    }

    pub fn into_coefficients(self) -> Vec<Polynomial> {
        self.coeffs
    }

    pub fn coefficient(&self, k: usize) -> &Polynomial {
        &self.coeffs[k]
    }

    fn check_compatible(&self, other: &TruncatedSeries) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch(format!(
                "orders {} vs {}",
                self.order(),
                other.order()
            )));
        }
        if !self.coeffs[0].same_shape(&other.coeffs[0]) {
            return Err(Error::DomainMismatch(
                "series over different coefficient shapes".into(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.check_compatible(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.try_add(b))
            .collect::<Result<Vec<_>>>()?;
        Ok(TruncatedSeries { coeffs })
    }

    /// Truncated Cauchy product: coefficient k of the result is
    /// sum_{i+j=k} a_i b_j, terms with i+j > m discarded.
    pub fn mul(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.check_compatible(other)?;
        let m = self.order();
        let mut out = TruncatedSeries::zero(&self.coeffs[0], m);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j > m {
                    break;
                }
                out.coeffs[i + j] = out.coeffs[i + j].try_add(&a.try_mul(b)?)?;
            }
        }
        Ok(out)
    }

    pub fn pow(&self, n: u32) -> Result<TruncatedSeries> {
        let one = Polynomial::one(self.coeffs[0].variable_count(), &self.coeffs[0].domain());
        let mut result = TruncatedSeries::constant(one, self.order());
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = result.mul(&base)?;
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(result)
    }
}

impl Polynomial {
    /// Substitute one truncated series per ambient variable and expand,
    /// discarding all t-degrees above the series order.
    ///
    /// The coefficient of t^k in the result is the k-th Hasse-Schmidt image
    /// of this polynomial under the substitution. Parameters of `self` pass
    /// through as coefficients; the series' polynomials must be declared
    /// over the same number of parameters.
    pub fn substitute_series(&self, series: &[TruncatedSeries]) -> Result<TruncatedSeries> {
        if series.len() != self.variable_count() {
            return Err(Error::ArityMismatch(format!(
                "{} series for {} variables",
                series.len(),
                self.variable_count()
            )));
        }
        if series.is_empty() {
            return Err(Error::ArityMismatch(
                "substitution needs at least one variable".into(),
            ));
        }
        let m = series[0].order();
        for s in series {
            if s.order() != m {
                return Err(Error::OrderMismatch(
                    "series must share one truncation order".into(),
                ));
            }
            if !series[0].coefficient(0).same_shape(s.coefficient(0)) {
                return Err(Error::DomainMismatch(
                    "series over different coefficient shapes".into(),
                ));
            }
        }
        let target = series[0].coefficient(0);
        if target.parameter_count() != self.parameter_count() || target.modulus() != self.modulus()
        {
            return Err(Error::DomainMismatch(format!(
                "series coefficients over {} cannot host a polynomial over {}",
                target.domain(),
                self.domain()
            )));
        }

        let tvars = target.variable_count();
        let tdomain = target.domain();
        let mut acc = TruncatedSeries::zero(target, m);
        for (e, s) in self.raw_terms() {
            let (var_part, param_part) = e.split(self.variable_count());
            // constant-in-t factor: the term's scalar times s^param_part,
            // rebuilt in the target variable space
            let c = match s {
                Scalar::Rat(r) => Coefficient::Rational(r.clone()),
                Scalar::Mod(v) => Coefficient::Residue {
                    value: *v,
                    modulus: self
                        .modulus()
                        .expect("modular scalar in modular polynomial"),
                },
            };
            let mut factor = Polynomial::constant(tvars, &tdomain, c)?;
            for (j, &exp) in param_part.entries().iter().enumerate() {
                if exp > 0 {
                    factor = factor.try_mul(&Polynomial::parameter(tvars, &tdomain, j).pow(exp))?;
                }
            }
            let mut term = TruncatedSeries::constant(factor, m);
            for (i, &exp) in var_part.entries().iter().enumerate() {
                if exp > 0 {
                    term = term.mul(&series[i].pow(exp)?)?;
                }
            }
            acc = acc.add(&term)?;
        }
        Ok(acc)
    }
}
