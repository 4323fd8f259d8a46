use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("field order {0} exceeds the supported maximum of 65536")]
    FieldTooLarge(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("element {value} is outside the field of order {q}")]
    ElementOutOfRange { value: u32, q: u32 },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is singular")]
    Singular,
    #[error("linear system has no solution")]
    NoSolution,
    #[error("evaluation points are not pairwise distinct")]
    DuplicateEvaluationPoint,
    #[error("GRS column multiplier is zero")]
    ZeroMultiplier,
    #[error("subspace is not contained in the enclosing space")]
    NotContained,

    #[error("field of order {got} too small, construction needs q >= {required}")]
    FieldTooSmall { required: u64, got: u64 },
    #[error("parameters do not satisfy the construction's case condition: {0}")]
    CaseMismatch(String),
    #[error("length mismatch: {0}")]
    LengthMismatch(String),
    #[error("schemes disagree on (N, K, N_B, K_B)")]
    ParamMismatch,
    #[error("schemes are defined over different fields")]
    FieldMismatch,
    #[error("invalid scheme: {0}")]
    InvalidScheme(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("erasure pattern does not fit the scheme: {0}")]
    PatternMismatch(String),
    #[error("{count} erasure patterns exceed the cap of {cap}")]
    TooManyPatterns { count: u128, cap: u128 },
    #[error("message is not decodable from this erasure pattern")]
    Infeasible,
    #[error("observation is not in the image of the encoder")]
    InconsistentObservation,
    #[error("input space q^{exponent} exceeds the enumeration cap")]
    TooLarge { exponent: usize },
    #[error("entropy is not an integral number of q-ary units")]
    NonUniform,

    #[error("bound is undefined for K_B = 0")]
    UndefinedForZeroKB,

    #[error("scheme is not feasible: {0}")]
    InfeasibleScheme(String),
    #[error("label map is not invertible")]
    NonInvertible,
    #[error("layout mismatch: {0}")]
    LayoutMismatch(String),

    #[error("byte payloads need q = 2^m with m <= 8, got q = {0}")]
    UnsupportedAlphabet(u32),
    #[error("scheme carries no message dits")]
    ZeroMessageRate,
    #[error("malformed padding in chunk stream")]
    BadPadding,

    #[error("malformed document: {0}")]
    Format(String),
}
