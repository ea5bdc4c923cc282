use thiserror::Error;

/// Errors raised by the algebra kernel and everything built on it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("symbol `{0}` is already declared")]
    DuplicateSymbol(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("symbol table is full ({0} symbols max)")]
    TooManySymbols(usize),
    #[error("substitution for `{0}` must be a single invertible term because it occurs with a negative exponent")]
    SubstitutionNotInvertible(String),
    #[error("series are truncated in different small-symbol sets")]
    SmallSymbolMismatch,
    #[error("argument `{0}` has no positive degree in the small symbols")]
    NotFormallySmall(String),
    #[error("`{0}` contains a negative power of the differentiation symbol")]
    NegativeExponent(String),
    #[error("base scale {scale} cannot represent q^({num}/{den})")]
    ScaleUnavailable { scale: u32, num: i64, den: i64 },
    #[error("lower parameter `{0}` makes a q-shifted factorial vanish inside the summation range")]
    ZeroDenominatorParameter(String),
    #[error("operator coefficient shares symbol `{0}` with its argument")]
    TargetSymbolInCoefficient(String),
    #[error("expected a single term, got `{0}`")]
    NotMonomial(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("series order is exhausted")]
    OrderExhausted,
    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
