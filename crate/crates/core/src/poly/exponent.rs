//! Exponent vectors with the graded lexicographic order.

use std::cmp::Ordering;
use std::fmt;

/// Exponent vector of a monomial. The entries cover the ambient variables
/// first, followed by the parameters of the owning polynomial.
///
/// Ordered by total degree, ties broken lexicographically (entries compared
/// left to right, larger entry wins). This is the canonical term order used
/// for printing and equality throughout the crate.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExponentVector(Vec<u32>);

impl ExponentVector {
    pub fn new(entries: Vec<u32>) -> Self {
        ExponentVector(entries)
    }

    pub fn zeros(len: usize) -> Self {
        ExponentVector(vec![0; len])
    }

    /// Unit exponent: x_index to the first power among `len` symbols.
    pub fn unit(len: usize, index: usize) -> Self {
        let mut e = vec![0; len];
        e[index] = 1;
        ExponentVector(e)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| u64::from(e)).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Componentwise sum, as in monomial multiplication.
    pub fn add(&self, other: &ExponentVector) -> ExponentVector {
        debug_assert_eq!(self.len(), other.len());
        ExponentVector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
                .collect(),
        )
    }

    /// Split into (prefix of `vars` entries, suffix), used to separate the
    /// variable part of a joint exponent from its parameter part.
    pub fn split(&self, vars: usize) -> (ExponentVector, ExponentVector) {
        (
            ExponentVector(self.0[..vars].to_vec()),
            ExponentVector(self.0[vars..].to_vec()),
        )
    }

    pub fn concat(&self, other: &ExponentVector) -> ExponentVector {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        ExponentVector(v)
    }
}

impl Ord for ExponentVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for ExponentVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

impl From<Vec<u32>> for ExponentVector {
    fn from(v: Vec<u32>) -> Self {
        ExponentVector(v)
    }
}
