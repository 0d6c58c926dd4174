use thiserror::Error;

/// Errors raised by field construction, linear algebra and the classifiers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("characteristic {0} is too large (must be below 65536)")]
    CharacteristicTooLarge(u64),
    #[error("extension degree {degree} out of bounds (1..={max})")]
    DegreeOutOfBounds { degree: usize, max: usize },
    #[error("{q} is not a power of the characteristic {p}")]
    NotAPowerOfP { q: u64, p: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different fields ({left} vs {right})")]
    FieldMismatch { left: String, right: String },
    #[error("cannot embed F_{{{p}^{from}}} into F_{{{p}^{to}}}")]
    NotSubfield { p: u32, from: usize, to: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is singular")]
    Singular,
    #[error("zero vector")]
    ZeroVector,
    #[error("field with {size} elements exceeds the enumeration budget of {budget}")]
    FieldTooLarge { size: String, budget: u64 },
    #[error("required extension degree {needed} exceeds the cap {cap}")]
    ExtensionCap { needed: usize, cap: usize },
    /// Raised by in-field stages when the working field is too small; the
    /// drivers catch it and restart over a field of the given degree.
    #[error("working field must grow to degree {degree}")]
    NeedsExtension { degree: usize },
    #[error("expected rank {expected}, found {found}")]
    RankMismatch { expected: String, found: usize },
    #[error("matrix is not in {shape} shape:\n{matrix}")]
    ShapeMismatch { shape: String, matrix: String },
    #[error("matrix is not q-Hermitian")]
    NotHermitian,
    #[error("normal form index s={s} out of range for n={n}")]
    IndexOutOfRange { s: usize, n: usize },
    #[error("parity dead end: {0}")]
    ParityDeadEnd(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
