use std::collections::HashMap;
use std::fmt::Write;

use mpae_geometry::Rational;

use crate::error::{Error, Result};
use crate::model::{Expr, LassoWord, ValidatedSpec};
use crate::value::{analyze, value_report, Analysis, ValueReport};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutPoint {
    pub isolated: bool,
    /// Distance from eta to the value set when isolated.
    pub gap: Option<Rational>,
}

pub fn cutpoint(spec: &ValidatedSpec, e: &Expr, eta: &Rational, budget: usize) -> Result<CutPoint> {
    let report = value_report(&analyze(spec, e, budget)?, e)?;
    Ok(cut(&report, eta))
}

fn cut(report: &ValueReport, eta: &Rational) -> CutPoint {
    if report.value_set.contains(eta) {
        CutPoint { isolated: false, gap: None }
    } else {
        CutPoint { isolated: true, gap: report.value_set.distance_to(eta) }
    }
}

/// Deterministic Büchi automaton over the product state graph. States are
/// sorted by their component state names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BuchiAutomaton {
    pub states: Vec<String>,
    pub initial: usize,
    pub alphabet: Vec<String>,
    /// `transitions[state][letter]` is the successor.
    pub transitions: Vec<Vec<usize>>,
    pub accepting: Vec<bool>,
}

impl BuchiAutomaton {
    /// Whether the run on `w` visits an accepting state infinitely often.
    pub fn accepts(&self, w: &LassoWord) -> Result<bool> {
        let index = |l: &String| {
            self.alphabet.binary_search(l).map_err(|_| Error::UnknownLetter(l.clone()))
        };
        let prefix = w.prefix.iter().map(index).collect::<Result<Vec<_>>>()?;
        let cycle = w.cycle.iter().map(index).collect::<Result<Vec<_>>>()?;
        let mut q = self.initial;
        for l in prefix {
            q = self.transitions[q][l];
        }
        // states at cycle boundaries eventually repeat; the iterations after
        // the first repeat are exactly the ones visited infinitely often
        let mut seen: HashMap<usize, usize> = HashMap::new();
        let mut hits: Vec<bool> = Vec::new();
        loop {
            if let Some(&start) = seen.get(&q) {
                return Ok(hits[start..].iter().any(|&h| h));
            }
            seen.insert(q, hits.len());
            let mut hit = false;
            for &l in &cycle {
                q = self.transitions[q][l];
                hit |= self.accepting[q];
            }
            hits.push(hit);
        }
    }

    pub fn initial_name(&self) -> &str {
        &self.states[self.initial]
    }

    /// Line format: `state`, `initial`, `accepting` and `edge src letter dst`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for s in &self.states {
            writeln!(out, "state {s}").unwrap();
        }
        writeln!(out, "initial {}", self.initial_name()).unwrap();
        for (s, _) in self.states.iter().zip(&self.accepting).filter(|(_, &a)| a) {
            writeln!(out, "accepting {s}").unwrap();
        }
        for (s, row) in self.states.iter().zip(&self.transitions) {
            for (letter, &t) in self.alphabet.iter().zip(row) {
                writeln!(out, "edge {s} {letter} {}", self.states[t]).unwrap();
            }
        }
        out
    }
}

/// Büchi automaton for the words of value at least `eta`, which must be
/// isolated: a state accepts when its SCC carries a cycle and every value of
/// the SCC exceeds eta.
pub fn emit_buchi(spec: &ValidatedSpec, e: &Expr, eta: &Rational, budget: usize) -> Result<BuchiAutomaton> {
    let a = analyze(spec, e, budget)?;
    let report = value_report(&a, e)?;
    if !cut(&report, eta).isolated {
        return Err(Error::NotIsolated { eta: eta.clone() });
    }
    Ok(build(&a, &report, eta))
}

fn build(a: &Analysis, report: &ValueReport, eta: &Rational) -> BuchiAutomaton {
    let p = &a.product;
    let n = p.states.len();
    let mut accepting_state = vec![false; n];
    for scc in &a.sccs {
        let accept = scc.has_cycle && report.scc_value(scc.id).is_some_and(|v| &v.interval.lo > eta);
        for &s in &scc.states {
            accepting_state[s] = accept;
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| p.state_names(x).cmp(&p.state_names(y)));
    let mut rank = vec![0; n];
    for (r, &s) in order.iter().enumerate() {
        rank[s] = r;
    }
    BuchiAutomaton {
        states: order.iter().map(|&s| p.state_label(s)).collect(),
        initial: rank[p.initial()],
        alphabet: p.alphabet.clone(),
        transitions: order.iter().map(|&s| p.successors(s).map(|t| rank[t]).collect()).collect(),
        accepting: order.iter().map(|&s| accepting_state[s]).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::DEFAULT_CYCLE_BUDGET;
    use mpae_geometry::rational::frac;

    const AB_PAIR: &str = "automaton A1 liminf { alphabet a, b; initial q0; q0 -a/1-> q0; q0 -b/0-> q0; }\n\
                        automaton A2 liminf { alphabet a, b; initial q0; q0 -a/0-> q0; q0 -b/1-> q0; }\n\
                        expression Emin = min(A1, A2);";

    const BRANCHING: &str = "automaton B liminf { alphabet a, b; initial q0; q0 -a/1-> q1; q0 -b/1-> q2; \
                             q1 -a/1-> q1; q1 -b/1-> q1; q2 -a/2-> q2; q2 -b/2-> q2; }\n\
                             expression E = B;";

    #[test]
    fn ab_pair_cutpoints() {
        let s = ValidatedSpec::parse(AB_PAIR).unwrap();
        let e = s.expression("Emin").unwrap();
        let b = DEFAULT_CYCLE_BUDGET;
        assert_eq!(cutpoint(&s, e, &frac(3, 4), b).unwrap(), CutPoint { isolated: true, gap: Some(frac(1, 4)) });
        assert!(!cutpoint(&s, e, &frac(1, 4), b).unwrap().isolated);
        let buchi = emit_buchi(&s, e, &frac(3, 4), b).unwrap();
        assert!(buchi.accepting.iter().all(|&a| !a));
        let err = emit_buchi(&s, e, &frac(1, 4), b).unwrap_err();
        assert!(err.to_string().starts_with("eta is not isolated"));
    }

    #[test]
    fn branching_acceptance() {
        let s = ValidatedSpec::parse(BRANCHING).unwrap();
        let buchi = emit_buchi(&s, s.expression("E").unwrap(), &frac(3, 2), DEFAULT_CYCLE_BUDGET).unwrap();
        assert_eq!(buchi.states, vec!["(q0)", "(q1)", "(q2)"]);
        assert_eq!(buchi.accepting, vec![false, false, true]);
        assert!(buchi.accepts(&LassoWord::from_strs(&["b"], &["a"])).unwrap());
        assert!(!buchi.accepts(&LassoWord::from_strs(&["a"], &["b", "a"])).unwrap());
        assert!(buchi.to_text().contains("edge (q0) b (q2)\n"));
    }
}
