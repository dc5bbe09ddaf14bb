use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u128),

    #[error("extension degree must be at least 2, got {0}")]
    InvalidDegree(usize),

    #[error("field GF({p}^{m}) exceeds the supported size")]
    DegreeTooLarge { p: u64, m: usize },

    #[error("modulus is not a monic irreducible polynomial of degree {0}")]
    ReducibleModulus(usize),

    #[error("element does not generate the multiplicative group")]
    NotPrimitive,

    #[error("malformed field element: {0}")]
    InvalidElement(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("index {index} out of range (limit {limit})")]
    IndexOutOfRange { index: u128, limit: u128 },

    #[error("discrete logarithm is only offered for fields of order <= 2^48, got {0}")]
    FieldTooLargeForDiscreteLog(u128),

    #[error("could not factor {0} within the iteration budget")]
    FactorizationFailed(u128),

    #[error("invalid code parameters: {0}")]
    InvalidParams(String),

    #[error("invalid scaling: need q > k > delta > 0, got q={q}, k={k}, delta={delta}")]
    InvalidScaling { q: u64, k: u32, delta: u32 },

    #[error("materialization of {requested} entries exceeds the cap of {cap}")]
    MaterializationTooLarge { requested: u128, cap: u128 },

    #[error("exhaustive search over {requested} codewords exceeds the cap of {cap}")]
    SearchSpaceTooLarge { requested: u128, cap: u128 },

    #[error("identity value out of range")]
    ValueOutOfRange,

    #[error("identity space too large for integer form; use a seeded identity")]
    IntegerTooLarge,

    #[error("malformed challenge: {0}")]
    MalformedChallenge(String),

    #[error("capacity check needs at least 3 points, got {0}")]
    InsufficientPoints(usize),

    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),

    #[error("malformed identity file: {0}")]
    IdentityFormat(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}
