use thiserror::Error;

/// Every failure the library can report. The `kind` string is stable and is
/// what machine-readable output uses.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{what} must be nonnegative, got {value}")]
    NegativeArgument { what: &'static str, value: i64 },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("valuation of zero is infinite")]
    ZeroValuation,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("target is not Fano: {0}")]
    NonFano(String),

    #[error("marking count n = {0} is not an integer")]
    NonIntegerN(String),

    #[error("marking count n = {0} is negative")]
    NegativeN(i64),

    #[error("outside the stable range: 2g - 2 + n = {0} <= 0")]
    UnstableRange(i64),

    #[error("wrong target kind: expected {expected}, found {found}")]
    WrongTargetKind {
        expected: &'static str,
        found: &'static str,
    },

    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),

    #[error("exponent (d-n)e-g+1 = {0} is negative")]
    NegativeExponent(i64),

    #[error("no closed form known for {0} targets")]
    NoKnownFormula(&'static str),

    #[error("ring parameters differ: {0} vs {1}")]
    MismatchedRank(u32, u32),

    #[error("special class sigma_{a} does not fit Gr(2, {m})")]
    SpecialClassOutOfBox { a: u32, m: u32 },

    #[error("partition ({a}, {b}) does not fit the 2 x {width} box")]
    PartitionOutOfBox { a: u32, b: u32, width: u32 },

    #[error("2d - 2 - g = {0} is negative")]
    DegreeUnderflow(i64),

    #[error("no admissible n <= {bound}")]
    NoSolution { bound: u64 },

    #[error("cannot parse {0}")]
    Parse(String),
}

impl Error {
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NegativeArgument { .. } => "NegativeArgument",
            Error::NotPrime(_) => "NotPrime",
            Error::ZeroValuation => "ZeroValuation",
            Error::InvalidArgument(_) => "InvalidArgument",
            Error::NonFano(_) => "NonFano",
            Error::NonIntegerN(_) => "NonIntegerN",
            Error::NegativeN(_) => "NegativeN",
            Error::UnstableRange(_) => "UnstableRange",
            Error::WrongTargetKind { .. } => "WrongTargetKind",
            Error::HypothesisViolation(_) => "HypothesisViolation",
            Error::NegativeExponent(_) => "NegativeExponent",
            Error::NoKnownFormula(_) => "NoKnownFormula",
            Error::MismatchedRank(..) => "MismatchedRank",
            Error::SpecialClassOutOfBox { .. } => "SpecialClassOutOfBox",
            Error::PartitionOutOfBox { .. } => "PartitionOutOfBox",
            Error::DegreeUnderflow(_) => "DegreeUnderflow",
            Error::NoSolution { .. } => "NoSolution",
            Error::Parse(_) => "ParseError",
        }
    }

    /// True for the well-posedness family of failures.
    pub fn is_well_posedness(&self) -> bool {
        matches!(
            self,
            Error::NonIntegerN(_) | Error::NegativeN(_) | Error::UnstableRange(_) | Error::NonFano(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
