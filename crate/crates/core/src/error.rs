use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix ({a}, {b}; {c}, {d}) has determinant {det}, expected 1")]
    NotUnimodular {
        a: i128,
        b: i128,
        c: i128,
        d: i128,
        det: i128,
    },

    #[error(
        "symmetric matrix ({a}, {b}; {b}, {d}) is not a positive Gram matrix of determinant 1"
    )]
    InvalidGram { a: i128, b: i128, d: i128 },

    #[error("(B, D) = ({b}, {d}) is not an orbit point: need D >= 1 and D | B^2 + 1")]
    NotOrbitPoint { b: i128, d: i128 },

    #[error("operation is undefined at the base point i")]
    BasePoint,

    #[error("point ({b}+i)/{d} is not in the interior of the first quadrant")]
    OutsideFirstQuadrant { b: i128, d: i128 },

    #[error("trace bound {value} exceeds the overflow guard {limit}")]
    TraceGuard { value: i128, limit: i128 },

    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),

    #[error("trace of z ({z_trace}) exceeds trace of w ({w_trace})")]
    TraceOrder { z_trace: i128, w_trace: i128 },

    #[error("enumeration covers traces up to {covered}, need at least {needed}")]
    InsufficientRange { covered: i128, needed: i128 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("cannot parse point {input:?}: {reason}")]
    Parse { input: String, reason: &'static str },
}
