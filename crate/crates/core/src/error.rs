use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("descriptor mismatch: {0}")]
    DescriptorMismatch(String),
    #[error("invalid descriptor: {0}")]
    InvalidDescriptor(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("valuation of zero undefined")]
    ZeroValuation,
    #[error("precision insufficient: {0}")]
    PrecisionInsufficient(String),
    #[error("exponent not divisible by {0}")]
    ExponentNotDivisible(u32),
    #[error("leading coefficient is not a {0}-th power")]
    NotNthPower(u32),
    #[error("root exists in the modelled field but is not representable: {0}")]
    Unrepresentable(String),
    #[error("not a dense family: {0}")]
    NotDense(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse { pos, msg: msg.into() }
    }

    pub(crate) fn precision(what: impl Into<String>) -> Self {
        Error::PrecisionInsufficient(what.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
