//! Crate-wide error type.

/// Errors surfaced by the toolkit.
///
/// Validation failures (bad inputs, unmet side conditions) are ordinary
/// recoverable errors. The `Internal` and `RegulatorNondivisibility`
/// variants indicate a consistency failure between two routes that are
/// supposed to agree; callers should treat them as bugs, not data.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NonPrime(u64),
    #[error("characteristic 2 is not supported")]
    EvenCharacteristic,
    #[error("modulus is not irreducible over F_{0}")]
    ReducibleModulus(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different field contexts")]
    ContextMismatch,
    #[error("input must be nonzero")]
    ZeroInput,
    #[error("element is not a square")]
    NotASquare,
    #[error("gcd of two zero polynomials is undefined")]
    BothZero,
    #[error("constant polynomial not allowed here")]
    ConstantInput,
    #[error("no embedding of the coefficient field into the target field")]
    NoEmbedding,
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("polynomial has odd degree")]
    OddDegree,
    #[error("polynomial is a perfect square")]
    PerfectSquare,
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("polynomial is reducible")]
    ReducibleInput,
    #[error("period not found within {0} steps")]
    PeriodNotFound(usize),
    #[error("complete-denominator update was not an exact division at step {0}")]
    InternalDivisibility(usize),
    #[error("quasi-period relation a_(n+v) = c^±1 a_n violated at n = {0}")]
    RelationViolated(usize),
    #[error("deg G must be smaller than half of deg D")]
    DegreeTooLarge,
    #[error("search budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("prime P does not split in the field")]
    NotSplit,
    #[error("prime P ramifies in the field")]
    Ramified,
    #[error("family side condition violated: {0}")]
    SideCondition(String),
    #[error("A = 2a+1 must be monic")]
    NotMonicA,
    #[error("quasi-period tables do not cover this case: {0}")]
    CaseNotCovered(String),
    #[error("point counts N_1..N_g are required before the L-polynomial")]
    MissingCounts,
    #[error("base field of the oracle must be prime")]
    NonPrimeBase,
    #[error("regulator {regulator} does not divide the divisor class number {h_x}")]
    RegulatorNondivisibility { regulator: u64, h_x: u64 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    /// True for failures that indicate a bug in the toolkit rather than bad
    /// input; the CLI maps these to a distinct exit code.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::InternalDivisibility(_)
                | Error::RelationViolated(_)
                | Error::RegulatorNondivisibility { .. }
                | Error::Internal(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
