//! Mean-payoff automaton expressions: parsing and validation, product and
//! cycle analysis, exact vector and value sets, and the decision procedures
//! built on them.

pub mod analysis;
pub mod decision;
pub mod error;
pub mod model;
pub mod value;

pub use error::{Error, Result};
