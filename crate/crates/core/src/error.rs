use num_bigint::BigInt;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("series has zero constant term")]
    ZeroConstantTerm,
    #[error("series constant term must be 1")]
    NonUnitConstantTerm,
    #[error("invalid weight {0}: expected an even integer >= 4")]
    InvalidWeight(i64),
    #[error("{0} is not an odd prime")]
    InvalidPrime(u64),
    #[error("parameter must be nonzero")]
    ZeroParameter,
    #[error("coefficient of q^{index} is not an integer after division by {divisor}")]
    NonIntegralQuotient { index: usize, divisor: u64 },
    #[error("Manin sum for n = {n} does not produce an integer")]
    NonIntegralResult { n: u64 },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("constant term at index {index} has p = {p} in its denominator")]
    DenominatorNotPUnit { index: usize, p: u64 },
    #[error("argument {requested} exceeds the cached range 1..={max}")]
    RangeExceeded { requested: u64, max: u64 },
    #[error("p-adic operands carry different (p, N) contexts")]
    MixedContext,
    #[error("p-adic element is not a unit")]
    NonUnit,
    #[error("denominator is divisible by p = {0}")]
    DenominatorDivisibleByP(u64),
    #[error("rational has negative {0}-adic valuation")]
    NegativeValuation(u64),
    #[error("value is not {p}-integral: {what}")]
    NonPIntegral { p: u64, what: String },
    #[error("hypothesis fails: h({witness}) is not 0 mod {modulus}")]
    HypothesisFails { witness: BigInt, modulus: BigInt },
    #[error("two algorithms disagree: {0}")]
    AlgorithmMismatch(String),
    #[error("cannot parse polynomial: {0}")]
    PolynomialSyntax(String),
}

impl Error {
    /// True for errors that can only arise from a bug in the kernel itself
    /// (an identity that must hold exactly came out non-integral or inconsistent).
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::NonIntegralQuotient { .. }
                | Error::NonIntegralResult { .. }
                | Error::AlgorithmMismatch(_)
        )
    }

    /// Stable variant name, used as the `kind` field of structured error output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::ZeroConstantTerm => "ZeroConstantTerm",
            Error::NonUnitConstantTerm => "NonUnitConstantTerm",
            Error::InvalidWeight(_) => "InvalidWeight",
            Error::InvalidPrime(_) => "InvalidPrime",
            Error::ZeroParameter => "ZeroParameter",
            Error::NonIntegralQuotient { .. } => "NonIntegralQuotient",
            Error::NonIntegralResult { .. } => "NonIntegralResult",
            Error::PreconditionViolated(_) => "PreconditionViolated",
            Error::DenominatorNotPUnit { .. } => "DenominatorNotPUnit",
            Error::RangeExceeded { .. } => "RangeExceeded",
            Error::MixedContext => "MixedContext",
            Error::NonUnit => "NonUnit",
            Error::DenominatorDivisibleByP(_) => "DenominatorDivisibleByP",
            Error::NegativeValuation(_) => "NegativeValuation",
            Error::NonPIntegral { .. } => "NonPIntegral",
            Error::HypothesisFails { .. } => "HypothesisFails",
            Error::AlgorithmMismatch(_) => "AlgorithmMismatch",
            Error::PolynomialSyntax(_) => "PolynomialSyntax",
        }
    }
}
