use thiserror::Error;

use crate::elasticity::ResidueRow;

/// Errors raised by the exact-arithmetic and monoid routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("undefined support: zero polynomial")]
    ZeroPolynomial,

    #[error("minimal pair defined for monic polynomials")]
    NotMonic,

    #[error("expected a positive rational, got {0}")]
    NonPositive(String),

    #[error("value must be nonnegative, got {0}")]
    NegativeValue(String),

    #[error("{value} is not an element of N0[{q}]")]
    NotMember { q: String, value: String },

    /// The value lies outside the regime an operation is defined for.
    #[error("{0}")]
    Regime(String),

    #[error("1 is a root; minimal pair degenerate")]
    DegenerateMinimalPair,

    #[error("monoid not atomic; hypothesis violated")]
    NotAtomic,

    #[error("oracle budget exhausted after {explored} states")]
    OracleBudgetExhausted { explored: usize },

    #[error("scan cap {cap} exhausted before a base element was found")]
    ScanCapExhausted {
        cap: usize,
        residue_table: Box<Vec<ResidueRow>>,
    },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// True for errors caused by a search budget rather than by the input.
    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            Error::OracleBudgetExhausted { .. } | Error::ScanCapExhausted { .. }
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
