//! Simple-cycle enumeration (Johnson's algorithm) and cycle mean vectors.

use std::collections::HashMap;

use mpae_geometry::Rational;
use num_traits::Zero;

use super::product::ProductAutomaton;
use super::scc::{strongly_connected_components, Scc};
use crate::error::{Error, Result};

pub const DEFAULT_CYCLE_BUDGET: usize = 1_000_000;

/// A simple cycle of the product: `states[i] --letters[i]--> states[i+1]`,
/// closing back at `states[0]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleCycle {
    pub states: Vec<usize>,
    pub letters: Vec<usize>,
    pub mean: Vec<Rational>,
}

/// Distinct mean vectors of the simple cycles of one SCC; `cycles[i]` is a
/// cycle realizing `points[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleValueSet {
    pub scc: usize,
    pub points: Vec<Vec<Rational>>,
    pub cycles: Vec<SimpleCycle>,
    /// Number of simple cycles at letter level (parallel edges counted).
    pub cycle_count: usize,
}

struct Edge {
    target: usize,
    // one letter per distinct weight vector, plus the total letter count
    options: Vec<(usize, Vec<Rational>)>,
    multiplicity: usize,
}

/// Enumerates the simple cycles of `scc`. Exceeding `budget` letter-level
/// cycles is an error rather than a truncation.
pub fn simple_cycle_values(p: &ProductAutomaton, scc: &Scc, budget: usize) -> Result<CycleValueSet> {
    let k = scc.states.len();
    let local: HashMap<usize, usize> = scc.states.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let mut edges: Vec<Vec<Edge>> = Vec::with_capacity(k);
    for &s in &scc.states {
        let mut out: Vec<Edge> = Vec::new();
        for (letter, (t, w)) in p.transitions[s].iter().enumerate() {
            let Some(&lt) = local.get(t) else { continue };
            let e = match out.iter_mut().position(|e| e.target == lt) {
                Some(i) => &mut out[i],
                None => {
                    out.push(Edge { target: lt, options: Vec::new(), multiplicity: 0 });
                    out.last_mut().expect("just pushed")
                }
            };
            e.multiplicity += 1;
            if !e.options.iter().any(|(_, v)| v == w) {
                e.options.push((letter, w.clone()));
            }
        }
        edges.push(out);
    }

    let mut acc = Accumulator {
        dim: p.dim(),
        budget,
        count: 0,
        index: HashMap::new(),
        points: Vec::new(),
        cycles: Vec::new(),
        scc_states: &scc.states,
    };
    let mut j = Johnson {
        edges: &edges,
        blocked: vec![false; k],
        b: vec![Vec::new(); k],
        stack: Vec::new(),
        allowed: vec![false; k],
        start: 0,
    };
    for s in 0..k {
        // restrict to the component of s in the subgraph induced by {s..k}
        let comps = strongly_connected_components(k - s, &|v| {
            edges[v + s].iter().map(|e| e.target).filter(|&t| t >= s).map(|t| t - s).collect()
        });
        let comp = comps.into_iter().find(|c| c.contains(&0)).expect("s is in some component");
        let self_loop = edges[s].iter().any(|e| e.target == s);
        if comp.len() == 1 && !self_loop {
            continue;
        }
        j.allowed.iter_mut().for_each(|x| *x = false);
        for v in comp {
            j.allowed[v + s] = true;
            j.blocked[v + s] = false;
            j.b[v + s].clear();
        }
        j.start = s;
        j.circuit(s, &mut acc)?;
    }
    Ok(CycleValueSet { scc: scc.id, points: acc.points, cycles: acc.cycles, cycle_count: acc.count })
}

struct Johnson<'a> {
    edges: &'a [Vec<Edge>],
    blocked: Vec<bool>,
    b: Vec<Vec<usize>>,
    stack: Vec<usize>,
    allowed: Vec<bool>,
    start: usize,
}

impl Johnson<'_> {
    fn circuit(&mut self, v: usize, acc: &mut Accumulator<'_>) -> Result<bool> {
        let mut found = false;
        self.stack.push(v);
        self.blocked[v] = true;
        for e in &self.edges[v] {
            let w = e.target;
            if !self.allowed[w] {
                continue;
            }
            if w == self.start {
                acc.record(&self.stack, self.edges)?;
                found = true;
            } else if !self.blocked[w] && self.circuit(w, acc)? {
                found = true;
            }
        }
        if found {
            self.unblock(v);
        } else {
            for e in &self.edges[v] {
                let w = e.target;
                if self.allowed[w] && !self.b[w].contains(&v) {
                    self.b[w].push(v);
                }
            }
        }
        self.stack.pop();
        Ok(found)
    }

    fn unblock(&mut self, u: usize) {
        let mut work = vec![u];
        while let Some(u) = work.pop() {
            self.blocked[u] = false;
            for w in std::mem::take(&mut self.b[u]) {
                if self.blocked[w] {
                    work.push(w);
                }
            }
        }
    }
}

struct Accumulator<'a> {
    dim: usize,
    budget: usize,
    count: usize,
    index: HashMap<Vec<Rational>, usize>,
    points: Vec<Vec<Rational>>,
    cycles: Vec<SimpleCycle>,
    scc_states: &'a [usize],
}

impl Accumulator<'_> {
    fn record(&mut self, stack: &[usize], edges: &[Vec<Edge>]) -> Result<()> {
        let m = stack.len();
        let hops: Vec<&Edge> = (0..m)
            .map(|i| {
                let (u, v) = (stack[i], stack[(i + 1) % m]);
                edges[u].iter().find(|e| e.target == v).expect("edge on the stack")
            })
            .collect();
        let letter_level = hops.iter().try_fold(1usize, |acc, e| acc.checked_mul(e.multiplicity));
        self.count = letter_level
            .and_then(|c| self.count.checked_add(c))
            .filter(|&c| c <= self.budget)
            .ok_or(Error::CycleBudget { budget: self.budget })?;

        // mixed-radix walk over the distinct weight options of each hop
        let len = Rational::from_integer(m.into());
        let mut choice = vec![0usize; m];
        loop {
            let mut sum = vec![Rational::zero(); self.dim];
            for (e, &c) in hops.iter().zip(&choice) {
                for (s, w) in sum.iter_mut().zip(&e.options[c].1) {
                    *s += w;
                }
            }
            let mean: Vec<Rational> = sum.into_iter().map(|x| x / &len).collect();
            if !self.index.contains_key(&mean) {
                self.index.insert(mean.clone(), self.points.len());
                self.points.push(mean.clone());
                self.cycles.push(SimpleCycle {
                    states: stack.iter().map(|&v| self.scc_states[v]).collect(),
                    letters: hops.iter().zip(&choice).map(|(e, &c)| e.options[c].0).collect(),
                    mean,
                });
            }
            let mut i = 0;
            while i < m {
                choice[i] += 1;
                if choice[i] < hops[i].options.len() {
                    break;
                }
                choice[i] = 0;
                i += 1;
            }
            if i == m {
                return Ok(());
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::scc::reachable_sccs;
    use crate::model::validate::one_state_automaton;
    use crate::model::{Semantics, ValidatedSpec};
    use mpae_geometry::rational::{int, point};

    fn product(text: &str) -> ProductAutomaton {
        let spec = ValidatedSpec::parse(text).unwrap();
        ProductAutomaton::build(spec.automata().values().cloned().collect()).unwrap()
    }

    #[test]
    fn ab_pair_cycles() {
        let a1 = one_state_automaton("A1", Semantics::LimInf, &[("a", int(1)), ("b", int(0))]);
        let a2 = one_state_automaton("A2", Semantics::LimInf, &[("a", int(0)), ("b", int(1))]);
        let p = ProductAutomaton::build(vec![a1, a2]).unwrap();
        let scc = &reachable_sccs(&p)[0];
        let c = simple_cycle_values(&p, scc, DEFAULT_CYCLE_BUDGET).unwrap();
        assert_eq!(c.points, vec![point(&[1, 0]), point(&[0, 1])]);
        assert_eq!(c.cycles[1].letters, vec![1]);
    }

    #[test]
    fn constant_letters_collapse() {
        let p = product("automaton A liminf { alphabet a, b, c; initial q; q -a/5-> q; q -b/5-> q; q -c/5-> q; }");
        let c = simple_cycle_values(&p, &reachable_sccs(&p)[0], DEFAULT_CYCLE_BUDGET).unwrap();
        assert_eq!(c.points, vec![point(&[5])]);
        assert_eq!(c.cycle_count, 3);
    }

    #[test]
    fn ring_mean() {
        let p = product("automaton R liminf { alphabet a; initial x; x -a/1-> y; y -a/2-> z; z -a/3-> x; }");
        let c = simple_cycle_values(&p, &reachable_sccs(&p)[0], DEFAULT_CYCLE_BUDGET).unwrap();
        assert_eq!(c.points, vec![point(&[2])]);
        assert_eq!(c.cycles[0].states.len(), 3);
    }

    #[test]
    fn budget_is_enforced() {
        let p = product("automaton A liminf { alphabet a, b, c; initial q; q -a/5-> q; q -b/5-> q; q -c/5-> q; }");
        let err = simple_cycle_values(&p, &reachable_sccs(&p)[0], 2).unwrap_err();
        assert_eq!(err, Error::CycleBudget { budget: 2 });
    }
}
