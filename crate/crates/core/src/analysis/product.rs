use std::collections::HashMap;
use std::collections::VecDeque;

use mpae_geometry::Rational;

use crate::error::{Error, Result};
use crate::model::DetMPAutomaton;

/// Synchronized product of automata over one alphabet, restricted to the
/// states reachable from the initial tuple. State 0 is the initial state and
/// states are numbered in breadth-first order with letters in sorted order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductAutomaton {
    pub components: Vec<DetMPAutomaton>,
    pub alphabet: Vec<String>,
    pub states: Vec<Vec<usize>>,
    pub transitions: Vec<Vec<(usize, Vec<Rational>)>>,
}

impl ProductAutomaton {
    pub fn build(components: Vec<DetMPAutomaton>) -> Result<Self> {
        let alphabet = components
            .first()
            .map(|a| a.alphabet.clone())
            .ok_or_else(|| Error::InvalidArgument("product of zero automata".into()))?;
        if components.iter().any(|a| a.alphabet != alphabet) {
            return Err(Error::AlphabetMismatch);
        }
        let start: Vec<usize> = components.iter().map(|a| a.initial).collect();
        let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut states = vec![start.clone()];
        index.insert(start, 0);
        let mut transitions = Vec::new();
        let mut queue = VecDeque::from([0usize]);
        while let Some(s) = queue.pop_front() {
            let mut row = Vec::with_capacity(alphabet.len());
            for letter in 0..alphabet.len() {
                let mut target = Vec::with_capacity(components.len());
                let mut weight = Vec::with_capacity(components.len());
                for (a, &q) in components.iter().zip(&states[s]) {
                    let (t, w) = a.step(q, letter);
                    target.push(t);
                    weight.push(w.clone());
                }
                let next = match index.get(&target) {
                    Some(&i) => i,
                    None => {
                        let i = states.len();
                        index.insert(target.clone(), i);
                        states.push(target);
                        queue.push_back(i);
                        i
                    }
                };
                row.push((next, weight));
            }
            // BFS pops states in index order, so rows line up with states.
            debug_assert_eq!(transitions.len(), s);
            transitions.push(row);
        }
        Ok(ProductAutomaton { components, alphabet, states, transitions })
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn initial(&self) -> usize {
        0
    }

    pub fn letter_index(&self, letter: &str) -> Option<usize> {
        self.alphabet.binary_search_by(|l| l.as_str().cmp(letter)).ok()
    }

    pub fn step(&self, state: usize, letter: usize) -> (usize, &[Rational]) {
        let (t, w) = &self.transitions[state][letter];
        (*t, w)
    }

    /// Component state names of a product state.
    pub fn state_names(&self, state: usize) -> Vec<&str> {
        self.components.iter().zip(&self.states[state]).map(|(a, &q)| a.states[q].as_str()).collect()
    }

    /// `(q0,p1)` style label.
    pub fn state_label(&self, state: usize) -> String {
        format!("({})", self.state_names(state).join(","))
    }

    pub fn successors(&self, state: usize) -> impl Iterator<Item = usize> + '_ {
        self.transitions[state].iter().map(|(t, _)| *t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::validate::one_state_automaton;
    use crate::model::{Semantics, ValidatedSpec};
    use mpae_geometry::rational::{int, point};

    #[test]
    fn ab_pair_product() {
        let a1 = one_state_automaton("A1", Semantics::LimInf, &[("a", int(1)), ("b", int(0))]);
        let a2 = one_state_automaton("A2", Semantics::LimInf, &[("a", int(0)), ("b", int(1))]);
        let p = ProductAutomaton::build(vec![a1, a2]).unwrap();
        assert_eq!(p.states.len(), 1);
        assert_eq!(p.transitions[0], vec![(0, point(&[1, 0])), (0, point(&[0, 1]))]);
    }

    #[test]
    fn independent_pair_has_at_most_four_states() {
        let text = "automaton A liminf { alphabet a, b; initial p; p -a/1-> r; p -b/0-> p; r -a/0-> p; r -b/1-> r; }\n\
                    automaton B liminf { alphabet a, b; initial s; s -a/0-> s; s -b/2-> t; t -a/1-> s; t -b/0-> t; }";
        let spec = ValidatedSpec::parse(text).unwrap();
        let comps: Vec<_> = spec.automata().values().cloned().collect();
        let p = ProductAutomaton::build(comps).unwrap();
        assert!(p.states.len() <= 4);
        assert_eq!(p.state_label(0), "(p,s)");
    }

    #[test]
    fn single_component_is_isomorphic() {
        let a = one_state_automaton("A", Semantics::LimInf, &[("a", int(3))]);
        let p = ProductAutomaton::build(vec![a]).unwrap();
        assert_eq!(p.dim(), 1);
        assert_eq!(p.step(0, 0), (0, &[int(3)][..]));
    }
}
