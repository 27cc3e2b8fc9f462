use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// One or more configuration constraints are violated; each entry names one.
    #[error("invalid configuration: {}", .0.join("; "))]
    InvalidConfig(Vec<String>),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid dimension: {0}")]
    InvalidDimension(String),

    #[error("non-finite value produced by {0}")]
    NonFinite(&'static str),

    #[error("matrix is not symmetric")]
    NotSymmetric,

    #[error("metric is singular")]
    SingularMetric,

    #[error("bundle is empty")]
    EmptyBundle,

    #[error("bundle of {0} points is too large for enumeration (at most 5)")]
    BundleTooLarge(usize),

    /// The segment bisection exhausted its level budget without finding a
    /// cutting subgradient.
    #[error("segment search did not terminate after {levels} bisections")]
    NonTermination { levels: usize },

    #[error("inner approximation exceeded {steps} steps")]
    InnerBudgetExhausted { steps: usize },

    #[error("gradient evaluation budget of {0} exhausted")]
    GradientBudgetExhausted(u64),

    #[error("metric provider required for variant B")]
    MissingMetricProvider,
}
