pub mod buchi;
pub mod compare;
pub mod query;
pub mod threshold;
pub mod witness;

pub use buchi::{cutpoint, emit_buchi, BuchiAutomaton, CutPoint};
pub use compare::{compare, difference, distance, CompareKind};
pub use query::{mt_query, parse_query, Query, QueryAnswer, QueryError};
pub use threshold::{threshold_decision, ThresholdAnswer, ThresholdKind};
pub use witness::witness_lasso;
