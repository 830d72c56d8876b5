pub mod evaluate;
pub mod interval;
pub mod projection;
pub mod vector_set;

pub use evaluate::{automaton_lasso_value, evaluate_expr, evaluate_lasso};
pub use interval::{Interval, IntervalUnion};
pub use projection::{apply_projection, fold_expression};
pub use vector_set::{analyze, analyze_leaves, value_report, value_set, vector_set, Analysis, SccValue, ValueReport, VectorSet};
