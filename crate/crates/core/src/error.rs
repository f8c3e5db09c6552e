//! Shared error type. The CLI maps these onto its exit-code contract, so
//! variants distinguish "bad input" from "search budget exhausted" from
//! ordinary mathematical falsehoods (which are return values, not errors).

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("the zero polynomial is not allowed here")]
    ZeroPolynomial,

    #[error("{0}")]
    InvalidInput(String),

    #[error("element {element} is not a member of Int({subset}, Z)")]
    NotMember { element: String, subset: String },

    #[error("element {0} is a unit; units have no factorizations")]
    UnitElement(String),

    #[error("congruence system is infeasible: {0}")]
    Infeasible(String),

    #[error("search budget exhausted: {0}")]
    BudgetExhausted(String),

    #[error("malformed certificate: {0}")]
    Certificate(String),
}

impl Error {
    pub fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse { pos, msg: msg.into() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
