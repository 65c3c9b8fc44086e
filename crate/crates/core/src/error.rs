use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("cannot parse rational from {0:?}")]
    ParseRational(String),

    #[error("expected {expected} samples, got {got}")]
    SampleCount { expected: usize, got: usize },

    #[error("duplicate sample at n = {0}")]
    DuplicateSample(u64),

    #[error("sample n = {n} is outside Theorem validity range (need n >= t = {t}, n >= 1)")]
    OutsideValidityRange { n: u64, t: usize },

    #[error("word {0:?} is not a permutation")]
    NotAPermutation(Vec<u32>),

    #[error("generator index {index} out of range 1..={n}")]
    GeneratorOutOfRange { index: usize, n: usize },

    #[error("invalid walk spec: {0}")]
    InvalidWalkSpec(&'static str),

    #[error("enumeration of {n}^{t} words exceeds the budget of {budget} words")]
    BudgetExceeded { n: u64, t: u32, budget: u64 },

    #[error("brute-force walk enumeration needs r <= {max}, got r = {r}")]
    BruteForceBudget { r: u32, max: u32 },

    #[error("generator count n must be >= 1")]
    InvalidN,

    #[error("semi-infinite truncation depth K must be >= 1")]
    InvalidTruncation,

    #[error("conductivity {0} outside [0, 1/2] (only x = 1/n may exceed it)")]
    ConductivityOutOfRange(String),

    #[error("operation not supported for the {0} variant")]
    UnsupportedVariant(&'static str),

    #[error("expansion not polynomial in 1/n: mismatch at n = {n}")]
    NotPolynomialInInverseN { n: u64 },

    #[error("leading terms of the 1/n expansion disagree with t - 2C(t,2)/n at t = {t}")]
    LeadingTermMismatch { t: usize },

    #[error("d_{r} = {value} is not a non-negative integer")]
    NonIntegerD { r: usize, value: String },

    #[error("extraction requires {what}")]
    ExtractionPrecondition { what: &'static str },

    #[error("g_r depends on n: correction at n = {a} differs from n = {b}")]
    GDependsOnN { a: u64, b: u64 },

    #[error("correction polynomial has nonzero coefficient of x^{power}")]
    NonzeroLowOrderCorrection { power: usize },

    #[error("missing d_{0}")]
    MissingD(usize),
}
