use mpae_geometry::Rational;

use crate::error::Result;
use crate::model::{Expr, ValidatedSpec};
use crate::value::{analyze, value_report, ValueReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThresholdKind {
    /// Some word has value at least nu.
    Emptiness,
    /// Every word has value at least nu.
    Universality,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThresholdAnswer {
    pub holds: bool,
    /// For emptiness, an SCC reaching nu when the answer is true; for
    /// universality, an SCC going below nu when the answer is false.
    pub scc: Option<usize>,
}

pub fn threshold_decision(
    spec: &ValidatedSpec,
    e: &Expr,
    kind: ThresholdKind,
    nu: &Rational,
    budget: usize,
) -> Result<ThresholdAnswer> {
    let report = value_report(&analyze(spec, e, budget)?, e)?;
    Ok(decide(&report, kind, nu))
}

pub(crate) fn decide(report: &ValueReport, kind: ThresholdKind, nu: &Rational) -> ThresholdAnswer {
    match kind {
        ThresholdKind::Emptiness => {
            let scc = report.per_scc.iter().find(|v| &v.interval.hi >= nu).map(|v| v.scc);
            ThresholdAnswer { holds: scc.is_some(), scc }
        }
        ThresholdKind::Universality => {
            let scc = report.per_scc.iter().find(|v| &v.interval.lo < nu).map(|v| v.scc);
            ThresholdAnswer { holds: scc.is_none(), scc }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::DEFAULT_CYCLE_BUDGET;
    use mpae_geometry::rational::{frac, int};

    const AB_PAIR: &str = "automaton A1 liminf { alphabet a, b; initial q0; q0 -a/1-> q0; q0 -b/0-> q0; }\n\
                        automaton A2 liminf { alphabet a, b; initial q0; q0 -a/0-> q0; q0 -b/1-> q0; }\n\
                        expression Emax = max(A1, A2);";

    #[test]
    fn ab_pair_thresholds() {
        let s = ValidatedSpec::parse(AB_PAIR).unwrap();
        let e = s.expression("Emax").unwrap();
        let ask = |kind, nu: Rational| threshold_decision(&s, e, kind, &nu, DEFAULT_CYCLE_BUDGET).unwrap();
        assert_eq!(ask(ThresholdKind::Emptiness, int(1)), ThresholdAnswer { holds: true, scc: Some(0) });
        assert!(!ask(ThresholdKind::Emptiness, frac(101, 100)).holds);
        assert!(ask(ThresholdKind::Universality, int(0)).holds);
        assert!(!ask(ThresholdKind::Universality, frac(1, 100)).holds);
    }
}
