use thiserror::Error;

use crate::carriers::Carrier;

/// Errors raised by carrier arithmetic and the algebra built on it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid carrier: {0}")]
    InvalidCarrier(String),

    #[error("mixed carriers: {left} and {right}")]
    MixedCarrier { left: Carrier, right: Carrier },

    #[error("element {element} is not a member of {carrier}")]
    NotInCarrier { element: String, carrier: Carrier },

    #[error("element {0} has non-integer coordinates and cannot be reduced")]
    NotReducible(String),

    #[error("coordinate shape not admitted by carrier: {0}")]
    Shape(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("value out of range: {0}")]
    Range(String),

    #[error("{0} is infinite and cannot be enumerated")]
    InfiniteCarrier(Carrier),

    #[error("budget exceeded: {what} needs {needed}, limit is {limit}")]
    Budget {
        what: &'static str,
        needed: u128,
        limit: u128,
    },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("leading coefficient {0} is not a unit")]
    NotDivisible(String),

    #[error("division by the zero polynomial")]
    DivisionByZero,
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(position: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            position,
            message: message.into(),
        }
    }
}
