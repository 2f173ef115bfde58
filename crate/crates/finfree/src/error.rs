use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dilation by zero")]
    ZeroDilation,
    #[error("degree mismatch: expected ambient degree {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("denominator parameter {value} is a non-positive integer above -{n}")]
    InadmissibleDenominator { value: String, n: usize },
    #[error("numerator parameter {value} is a non-positive integer, the operator symbol is undefined")]
    DegenerateNumerator { value: String },
    #[error("operation needs degree at least one")]
    ZeroDegree,
    #[error("product has degree below {n}")]
    DegreeDeficient { n: usize },
    #[error("argument multiplier c_{index} is zero")]
    ZeroMultiplier { index: usize },
    #[error("argument scale is zero")]
    ZeroScale,
    #[error("enumeration size {k} exceeds the guard {max}")]
    TooLarge { k: usize, max: usize },
    #[error("partitions are not comparable in refinement order")]
    NotComparable,
    #[error("leading coefficient vanishes")]
    ZeroLeading,
    #[error("root finder did not converge after {iterations} iterations (max residual ratio {residual:e})")]
    NonConvergence { iterations: usize, residual: f64 },
    #[error("root lists differ in length by more than one ({p} vs {q})")]
    DegreeGapTooLarge { p: usize, q: usize },
    #[error("spectrum has non-real roots")]
    NonRealRoots,
    #[error("first moment vanishes, S-transform undefined")]
    VanishingFirstMoment,
    #[error("truncation orders differ ({0} vs {1})")]
    OrderMismatch(usize, usize),
    #[error("physical branch at infinity is degenerate")]
    BranchDegenerate,
    #[error("branch continuation failed near u = {re} + {im}i")]
    BranchJump { re: f64, im: f64 },
    #[error("negative density {value:e} at x = {x}")]
    NegativeDensity { x: f64, value: f64 },
    #[error("theta = {0} outside the admissible range")]
    ThetaOutOfRange(f64),
    #[error("unknown family '{0}'")]
    UnknownFamily(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("the decomposition path needs a non-negative integer beta")]
    NonIntegerBetaPath,
    #[error("the c parameters must be pairwise distinct")]
    DuplicateC,
    #[error("quadrature failure: {0}")]
    QuadratureFailure(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
