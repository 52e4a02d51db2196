//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unknown identifier `{name}` at position {pos}")]
    UnknownIdentifier { name: String, pos: usize },

    #[error("negative exponent at position {pos}")]
    NegativeExponent { pos: usize },

    #[error("domain mismatch: {0}")]
    DomainMismatch(String),

    #[error("arity mismatch: {0}")]
    ArityMismatch(String),

    #[error("series order mismatch: {0}")]
    OrderMismatch(String),

    #[error("variable index {index} out of range 1..={count}")]
    IndexOutOfRange { index: usize, count: usize },

    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,

    #[error("parameters are not supported here: {0}")]
    ParametricInput(&'static str),

    #[error("missing parameter `{0}` in assignment")]
    MissingParameter(String),

    #[error("parameter values must be all rational or all residues modulo one prime")]
    MixedSpecialization,

    #[error("modulus {q} divides a coefficient denominator ({denominator})")]
    BadReduction { q: u64, denominator: String },

    #[error("truncation order {requested} exceeds jet order {order}")]
    TruncationOrder { requested: usize, order: usize },

    #[error("name `{0}` collides with the reserved jet-variable names")]
    ReservedName(String),

    #[error("invalid symbol declaration: {0}")]
    InvalidName(String),

    #[error("not a family polynomial: term `{0}` is nonlinear in the parameters")]
    NotAFamily(String),

    #[error("exponent tuple must not be all zero")]
    AllZeroExponent,

    #[error("pure-power exponent a_{0} is zero")]
    ZeroPurePower(usize),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("ambient dimension {dim} exceeds the supported cap of {cap}")]
    DimensionCap { dim: usize, cap: usize },

    #[error("direction has a negative entry")]
    NegativeDirection,

    #[error("direction must be nonzero")]
    ZeroDirection,

    #[error("exact nondegeneracy testing requires 2 ambient variables, got {0}")]
    Exact2dOnly(usize),

    #[error("prime list must not be empty")]
    EmptyPrimes,

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("enumeration size {size} exceeds budget {budget}")]
    BudgetExceeded { size: u128, budget: u128 },

    #[error("point count at q={0} is zero; dimension estimate undefined")]
    ZeroCount(u64),

    #[error("dimension estimation needs at least two distinct primes")]
    InsufficientPrimes,

    #[error("hypersurface is singular over F_{q} at {point:?}")]
    NotSmooth { q: u64, point: Vec<u64> },

    #[error("cone has no rays")]
    EmptyCone,

    #[error("ray {0:?} is not primitive")]
    NotPrimitive(Vec<i64>),

    #[error("ray {0:?} lies outside the fan support")]
    OutsideSupport(Vec<i64>),

    #[error("not a fan: {0}")]
    InvalidFan(String),

    #[error("fan does not subdivide the standard cone: {0}")]
    NotSubdivision(String),

    #[error("resolution did not terminate within {iterations} subdivisions")]
    ResolutionBudget { iterations: usize },

    #[error("input too large for exact face enumeration: {0}")]
    FaceEnumerationCap(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// Exit-code class used by the command line front end: budget and
    /// dimension-cap failures are distinguished from plain input errors.
    pub fn is_resource_limit(&self) -> bool {
        matches!(
            self,
            Error::BudgetExceeded { .. }
                | Error::DimensionCap { .. }
                | Error::ResolutionBudget { .. }
                | Error::FaceEnumerationCap(_)
        )
    }
}
