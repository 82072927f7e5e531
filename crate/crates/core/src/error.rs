use thiserror::Error;

/// Errors raised by the library. Every variant is a usage or precondition
/// failure; arithmetic itself is exact and never fails.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u32),

    #[error("duplicate generator name `{0}`")]
    DuplicateGenerator(String),

    #[error("generator `{name}` has invalid cap {cap} (caps start at 1)")]
    InvalidCap { name: String, cap: u32 },

    #[error("presentation already contains the exterior generator eps")]
    EpsilonPresent,

    #[error("presentation has no exterior generator eps")]
    NoEpsilon,

    #[error("elements live in different presentations")]
    PresentationMismatch,

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("monomial has {got} exponents, presentation has {expected} generators")]
    ExponentLength { expected: usize, got: usize },

    #[error("degree {degree} component is infinite: generator `{generator}` has no cap")]
    InfiniteComponent { generator: String, degree: i64 },

    #[error("enumeration needs {size} items, above the limit {limit}")]
    LimitExceeded { size: u128, limit: u128 },

    #[error("compositions are enumerated for 1 <= n <= {max}, got {n}")]
    CompositionRange { n: usize, max: usize },

    #[error("cannot extend a composition of {k} to {m}: need m > k")]
    ExtendRange { k: usize, m: usize },

    #[error("group elements are incompatible: {0}")]
    GroupMismatch(String),

    #[error("invalid group element: {0}")]
    InvalidElement(String),

    #[error("truncation level {requested} is not available (element has {available})")]
    Truncation { requested: usize, available: usize },

    #[error("operation requires an odd prime")]
    OddPrimeRequired,

    #[error("operation requires the base flavor")]
    BaseFlavorRequired,

    #[error("hypotheses of the commutator case are violated: {0}")]
    Hypothesis(String),

    #[error("degree {degree} exceeds the degree bound {bound}")]
    DegreeOverflow { degree: i64, bound: i64 },

    #[error("generator index {index} exceeds the bound {bound}")]
    IndexOutOfRange { index: usize, bound: usize },

    #[error("invalid generator assignment: {0}")]
    Assignment(String),

    #[error("element is not homogeneous: {0}")]
    Inhomogeneous(String),

    #[error("ideal generator is not a monomial: {0}")]
    NotMonomial(String),

    #[error("unknown preset `{0}`")]
    UnknownPreset(String),

    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
