//! `mpae`: analyses of mean-payoff automaton expressions from `.mpa` files.
//!
//! Results go to standard output as JSON (or text with `--format text`),
//! diagnostics to standard error. Exit codes: 0 answer computed, 2 input or
//! usage error, 3 the query has no answer (eta not isolated, no witness,
//! variable out of range), 4 cycle budget exceeded.

mod commands;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "mpae", version, about = "Exact analysis of mean-payoff automaton expressions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Parse and validate a file, then summarize it.
    Check(Common),
    /// Per-SCC vector-set polyhedra of an expression.
    VectorSet(WithExpr),
    /// Value set of an expression as a union of closed intervals.
    ValueSet(WithExpr),
    /// Whether some word has value at least NU.
    Empty(WithThreshold),
    /// Whether every word has value at least NU.
    Universal(WithThreshold),
    /// Whether LHS(w) <= RHS(w) for every word w.
    Includes(WithPair),
    /// Whether LHS and RHS agree on every word.
    Equiv(WithPair),
    /// sup over words of |LHS(w) - RHS(w)|.
    Distance(WithPair),
    /// Whether ETA is isolated, with the gap to the value set.
    Cutpoint(WithEta),
    /// Büchi automaton for the words of value at least an isolated ETA.
    Buchi(WithEta),
    /// Multi-threshold query on a payoff automaton.
    ///
    /// Atoms compare linear terms over inf(i) and sup(i), 1 <= i <= d, with
    /// <, <=, >= or >; combine them with &&, || and !, and group with
    /// parentheses. Example: "inf(1) + 2*sup(2) >= 1/2 && !(inf(2) < 0)".
    Query(WithQuery),
    /// Lasso word with value at least NU - EPS.
    Witness(WithWitness),
}

#[derive(Args, Debug)]
pub struct Common {
    /// Input `.mpa` file.
    pub file: PathBuf,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Maximum number of simple cycles enumerated before giving up.
    #[arg(long, env = "MPAE_CYCLE_BUDGET", default_value_t = mpae_core::analysis::DEFAULT_CYCLE_BUDGET)]
    pub cycle_budget: usize,
    /// Write the polyhedra computed along the way to standard error.
    #[arg(long)]
    pub dump_geometry: bool,
}

#[derive(Args, Debug)]
pub struct WithExpr {
    #[command(flatten)]
    pub common: Common,
    #[arg(long)]
    pub expr: String,
    /// Include the simple-cycle values of every SCC.
    #[arg(long)]
    pub dump_cycles: bool,
}

#[derive(Args, Debug)]
pub struct WithThreshold {
    #[command(flatten)]
    pub common: Common,
    #[arg(long)]
    pub expr: String,
    /// Threshold as `p` or `p/q`.
    #[arg(long, allow_hyphen_values = true)]
    pub nu: String,
}

#[derive(Args, Debug)]
pub struct WithPair {
    #[command(flatten)]
    pub common: Common,
    #[arg(long)]
    pub lhs: String,
    #[arg(long)]
    pub rhs: String,
}

#[derive(Args, Debug)]
pub struct WithEta {
    #[command(flatten)]
    pub common: Common,
    #[arg(long)]
    pub expr: String,
    #[arg(long, allow_hyphen_values = true)]
    pub eta: String,
}

#[derive(Args, Debug)]
pub struct WithQuery {
    #[command(flatten)]
    pub common: Common,
    /// Payoff automaton declared with a `payoff` block.
    #[arg(long)]
    pub automaton: String,
    #[arg(long, allow_hyphen_values = true)]
    pub query: String,
}

#[derive(Args, Debug)]
pub struct WithWitness {
    #[command(flatten)]
    pub common: Common,
    #[arg(long)]
    pub expr: String,
    #[arg(long, allow_hyphen_values = true)]
    pub nu: String,
    #[arg(long, default_value = "1/100")]
    pub eps: String,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli.command) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
