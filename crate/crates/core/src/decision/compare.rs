use mpae_geometry::rational::abs;
use mpae_geometry::Rational;

use super::threshold::{decide, ThresholdKind};
use crate::error::Result;
use crate::model::{Expr, ValidatedSpec};
use crate::value::{analyze, value_report, IntervalUnion};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CompareKind {
    /// `lhs(w) <= rhs(w)` for every word.
    Inclusion,
    Equivalence,
}

/// `rhs - lhs` as an expression: `sum(rhs, complement(lhs))`. Leaves shared
/// between the two sides land on shared product components.
pub fn difference(lhs: &Expr, rhs: &Expr) -> Expr {
    Expr::sum(rhs.clone(), lhs.complement())
}

fn difference_values(spec: &ValidatedSpec, lhs: &Expr, rhs: &Expr, budget: usize) -> Result<IntervalUnion> {
    let d = difference(lhs, rhs);
    Ok(value_report(&analyze(spec, &d, budget)?, &d)?.value_set)
}

fn includes(spec: &ValidatedSpec, lhs: &Expr, rhs: &Expr, budget: usize) -> Result<bool> {
    let d = difference(lhs, rhs);
    let report = value_report(&analyze(spec, &d, budget)?, &d)?;
    Ok(decide(&report, ThresholdKind::Universality, &Rational::from_integer(0.into())).holds)
}

pub fn compare(spec: &ValidatedSpec, lhs: &Expr, rhs: &Expr, kind: CompareKind, budget: usize) -> Result<bool> {
    match kind {
        CompareKind::Inclusion => includes(spec, lhs, rhs, budget),
        CompareKind::Equivalence => Ok(includes(spec, lhs, rhs, budget)? && includes(spec, rhs, lhs, budget)?),
    }
}

/// `sup_w |lhs(w) - rhs(w)|`, attained on the closed value set of the
/// difference.
pub fn distance(spec: &ValidatedSpec, lhs: &Expr, rhs: &Expr, budget: usize) -> Result<Rational> {
    let values = difference_values(spec, lhs, rhs, budget)?;
    let lo = values.min().expect("value sets are nonempty");
    let hi = values.max().expect("value sets are nonempty");
    Ok(abs(lo).max(abs(hi)))
}
