pub mod automaton;
pub mod expr;
pub mod lasso;
pub mod parser;
pub mod printer;
pub mod validate;

pub use automaton::{DetMPAutomaton, PayoffAutomaton, Semantics};
pub use expr::{Expr, LeafRef, Op, SurfaceExpr};
pub use lasso::LassoWord;
pub use parser::{parse_spec, ParseError, SpecFile};
pub use printer::print_spec;
pub use validate::{validate, ValidatedSpec, ValidationError};
