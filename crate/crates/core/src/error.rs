use mpae_geometry::{GeometryError, Rational};
use thiserror::Error;

use crate::decision::query::QueryError;
use crate::model::parser::ParseError;
use crate::model::validate::ValidationError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Validation(#[from] ValidationError),
    #[error("unknown expression `{0}`")]
    UnknownExpression(String),
    #[error("unknown payoff automaton `{0}`")]
    UnknownPayoff(String),
    #[error("letter `{0}` is not in the alphabet")]
    UnknownLetter(String),
    #[error("expressions range over different alphabets")]
    AlphabetMismatch,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("simple-cycle budget of {budget} exceeded")]
    CycleBudget { budget: usize },
    #[error("eta is not isolated: {} lies in the value set", mpae_geometry::rational::to_string(.eta))]
    NotIsolated { eta: Rational },
    #[error("no witness exists: every value is below {}", mpae_geometry::rational::to_string(.nu))]
    NoWitness { nu: Rational },
    #[error("no lasso word reaches {}: {reason}", mpae_geometry::rational::to_string(.target))]
    WitnessUnreachable { target: Rational, reason: String },
    #[error(transparent)]
    Query(#[from] QueryError),
    #[error("geometry: {0}")]
    Geometry(#[from] GeometryError),
}

pub type Result<T> = std::result::Result<T, Error>;
