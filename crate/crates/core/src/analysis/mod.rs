pub mod cycles;
pub mod product;
pub mod scc;

pub use cycles::{simple_cycle_values, CycleValueSet, SimpleCycle, DEFAULT_CYCLE_BUDGET};
pub use product::ProductAutomaton;
pub use scc::{reachable_sccs, Scc};
