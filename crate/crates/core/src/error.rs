use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid theta parameters ({p}, {q}, {r}): need p >= 1, r >= 1, q >= 0")]
    ThetaDomain { p: i64, q: i64, r: i64 },

    #[error("hair vector {0:?} satisfies none of the three admissible Y conditions")]
    YDomain(Vec<i64>),

    #[error("invalid grading n = {n}, j = {j}: need n >= 4, j >= 2 and n - j >= 2")]
    Grading { n: i64, j: i64 },

    #[error("labels are not over the same generator set")]
    LabelMismatch,

    #[error("malformed graph: {0}")]
    MalformedGraph(String),

    #[error("graph has order {order}, which exceeds k = {k}")]
    OrderExceeded { order: i64, k: i64 },

    #[error("support condition violated: {0}")]
    SupportViolation(String),

    #[error("invalid chord diagram: {0}")]
    InvalidDiagram(String),

    #[error("invalid structure on diagram: {0}")]
    InvalidStructure(String),

    #[error("formal sum term rejected: {0}")]
    InvalidTerm(String),

    #[error("graph has an orientation-reversing automorphism")]
    OrientationReversing,

    #[error("expected {expected} weights, got {found}")]
    WeightCount { expected: usize, found: usize },

    #[error("epsilon vector has length {found}, presentation has {expected} starred crossings")]
    EpsilonLength { expected: usize, found: usize },

    #[error("ribbon presentation: {0}")]
    Ribbon(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
