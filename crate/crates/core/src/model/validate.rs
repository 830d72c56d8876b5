use std::collections::{BTreeMap, BTreeSet, HashMap};

use mpae_geometry::Rational;
use num_traits::Signed;
use thiserror::Error;

use super::automaton::{DetMPAutomaton, PayoffAutomaton, Semantics};
use super::expr::{Expr, LeafRef};
use super::parser::{parse_spec, AutomatonDecl, SpecFile};
use crate::error::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidationError {
    #[error("automaton `{automaton}` is not total at ({state}, {letter})")]
    NotTotal { automaton: String, state: String, letter: String },
    #[error("automaton `{automaton}` has two transitions at ({state}, {letter})")]
    DuplicateTransition { automaton: String, state: String, letter: String },
    #[error("automaton `{automaton}` uses letter `{letter}` outside its alphabet")]
    LetterNotInAlphabet { automaton: String, letter: String },
    #[error("automaton `{automaton}` lists letter `{letter}` twice")]
    DuplicateLetter { automaton: String, letter: String },
    #[error("payoff `{automaton}` mixes weight vectors of dimension {expected} and {found}")]
    WeightDimension { automaton: String, expected: usize, found: usize },
    #[error("expression `{expression}` refers to unknown automaton `{id}`")]
    UnknownAutomaton { expression: String, id: String },
    #[error("alphabet mismatch between `{left}` and `{right}` in expression `{expression}`")]
    AlphabetMismatch { expression: String, left: String, right: String },
    #[error("expression `{expression}` scales by zero")]
    ScaleByZero { expression: String },
}

/// Automata, payoff automata and rewritten expressions that passed validation.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidatedSpec {
    automata: BTreeMap<String, DetMPAutomaton>,
    payoffs: BTreeMap<String, PayoffAutomaton>,
    expressions: BTreeMap<String, Expr>,
}

impl ValidatedSpec {
    /// Parses and validates in one step.
    pub fn parse(text: &str) -> Result<Self, Error> {
        Ok(validate(&parse_spec(text)?)?)
    }

    pub fn automata(&self) -> &BTreeMap<String, DetMPAutomaton> {
        &self.automata
    }

    pub fn payoffs(&self) -> &BTreeMap<String, PayoffAutomaton> {
        &self.payoffs
    }

    pub fn expressions(&self) -> &BTreeMap<String, Expr> {
        &self.expressions
    }

    pub fn expression(&self, name: &str) -> Result<&Expr, Error> {
        self.expressions.get(name).ok_or_else(|| Error::UnknownExpression(name.to_string()))
    }

    pub fn payoff(&self, name: &str) -> Result<&PayoffAutomaton, Error> {
        self.payoffs.get(name).ok_or_else(|| Error::UnknownPayoff(name.to_string()))
    }

    /// Number of sum nodes of a named expression.
    pub fn sum_op_count(&self, name: &str) -> Result<usize, Error> {
        Ok(self.expression(name)?.sum_count())
    }

    /// The automaton a leaf denotes, with its derived identifier.
    pub fn leaf_automaton(&self, leaf: &LeafRef) -> Result<DetMPAutomaton, Error> {
        let base = self.automata.get(&leaf.base).ok_or_else(|| {
            Error::Validation(ValidationError::UnknownAutomaton { expression: leaf.id(), id: leaf.base.clone() })
        })?;
        let sign = if leaf.negated { -leaf.factor.clone() } else { leaf.factor.clone() };
        let semantics = if leaf.negated { base.semantics.flipped() } else { base.semantics };
        Ok(base.map_weights(leaf.id(), semantics, |w| w * &sign))
    }

    /// Checks that every leaf resolves and all leaves share one alphabet;
    /// returns that alphabet.
    pub fn check_expr(&self, name: &str, e: &Expr) -> Result<Vec<String>, ValidationError> {
        let mut first: Option<&DetMPAutomaton> = None;
        for leaf in e.occurrences() {
            let a = self.automata.get(&leaf.base).ok_or_else(|| ValidationError::UnknownAutomaton {
                expression: name.to_string(),
                id: leaf.base.clone(),
            })?;
            match first {
                None => first = Some(a),
                Some(f) if f.alphabet != a.alphabet => {
                    return Err(ValidationError::AlphabetMismatch {
                        expression: name.to_string(),
                        left: f.id.clone(),
                        right: a.id.clone(),
                    })
                }
                Some(_) => {}
            }
        }
        Ok(first.map(|a| a.alphabet.clone()).unwrap_or_default())
    }

    /// Adds (or replaces) an expression after checking it.
    pub fn insert_expression(&mut self, name: &str, e: Expr) -> Result<(), ValidationError> {
        self.check_expr(name, &e)?;
        self.expressions.insert(name.to_string(), e);
        Ok(())
    }

    /// Adds (or replaces) an automaton. Its tables must already be total.
    pub fn insert_automaton(&mut self, a: DetMPAutomaton) {
        self.automata.insert(a.id.clone(), a);
    }
}

pub fn validate(spec: &SpecFile) -> Result<ValidatedSpec, ValidationError> {
    let mut out = ValidatedSpec::default();
    for (semantics, decl) in &spec.automata {
        let (alphabet, states, initial, transitions) = tables(decl, |_| Ok(()))?;
        out.automata.insert(
            decl.id.clone(),
            DetMPAutomaton { id: decl.id.clone(), semantics: *semantics, alphabet, states, initial, transitions },
        );
    }
    for decl in &spec.payoffs {
        let dim = decl.transitions.first().map(|t| t.weight.len()).unwrap_or(1);
        let (alphabet, states, initial, transitions) = tables(decl, |w: &Vec<Rational>| {
            if w.len() == dim {
                Ok(())
            } else {
                Err(ValidationError::WeightDimension { automaton: decl.id.clone(), expected: dim, found: w.len() })
            }
        })?;
        out.payoffs.insert(decl.id.clone(), PayoffAutomaton { id: decl.id.clone(), dim, alphabet, states, initial, transitions });
    }
    for decl in &spec.expressions {
        // Resolve ids before lowering so an unknown id wins over other errors.
        for id in decl.tree.leaf_ids() {
            if !out.automata.contains_key(id) {
                return Err(ValidationError::UnknownAutomaton { expression: decl.name.clone(), id: id.to_string() });
            }
        }
        let e = decl.tree.lower().ok_or_else(|| ValidationError::ScaleByZero { expression: decl.name.clone() })?;
        out.insert_expression(&decl.name, e)?;
    }
    Ok(out)
}

type Tables<W> = (Vec<String>, Vec<String>, usize, Vec<Vec<(usize, W)>>);

fn tables<W: Clone>(
    decl: &AutomatonDecl<W>,
    check_weight: impl Fn(&W) -> Result<(), ValidationError>,
) -> Result<Tables<W>, ValidationError> {
    let id = &decl.id;
    let mut alphabet = decl.alphabet.clone();
    alphabet.sort();
    if let Some(w) = alphabet.windows(2).find(|w| w[0] == w[1]) {
        return Err(ValidationError::DuplicateLetter { automaton: id.clone(), letter: w[0].clone() });
    }
    let mut names: BTreeSet<&str> = BTreeSet::new();
    names.insert(&decl.initial);
    for t in &decl.transitions {
        names.insert(&t.source);
        names.insert(&t.target);
    }
    let states: Vec<String> = names.into_iter().map(str::to_string).collect();
    let index: HashMap<&str, usize> = states.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();

    let mut table: Vec<Vec<Option<(usize, W)>>> = vec![vec![None; alphabet.len()]; states.len()];
    for t in &decl.transitions {
        let letter = alphabet
            .binary_search(&t.letter)
            .map_err(|_| ValidationError::LetterNotInAlphabet { automaton: id.clone(), letter: t.letter.clone() })?;
        check_weight(&t.weight)?;
        let slot = &mut table[index[t.source.as_str()]][letter];
        if slot.is_some() {
            return Err(ValidationError::DuplicateTransition {
                automaton: id.clone(),
                state: t.source.clone(),
                letter: t.letter.clone(),
            });
        }
        *slot = Some((index[t.target.as_str()], t.weight.clone()));
    }
    let mut transitions = Vec::with_capacity(states.len());
    for (q, row) in table.into_iter().enumerate() {
        let mut out = Vec::with_capacity(alphabet.len());
        for (a, slot) in row.into_iter().enumerate() {
            match slot {
                Some(x) => out.push(x),
                None => {
                    return Err(ValidationError::NotTotal {
                        automaton: id.clone(),
                        state: states[q].clone(),
                        letter: alphabet[a].clone(),
                    })
                }
            }
        }
        transitions.push(out);
    }
    let initial = index[decl.initial.as_str()];
    Ok((alphabet, states, initial, transitions))
}

/// Builds a one-state automaton from `(letter, weight)` pairs.
pub fn one_state_automaton(id: &str, semantics: Semantics, weights: &[(&str, Rational)]) -> DetMPAutomaton {
    let mut pairs: Vec<(String, Rational)> = weights.iter().map(|(l, w)| (l.to_string(), w.clone())).collect();
    pairs.sort();
    DetMPAutomaton {
        id: id.to_string(),
        semantics,
        alphabet: pairs.iter().map(|(l, _)| l.clone()).collect(),
        states: vec!["q".to_string()],
        initial: 0,
        transitions: vec![pairs.into_iter().map(|(_, w)| (0, w)).collect()],
    }
}

/// Largest absolute weight over the automata an expression mentions.
pub fn max_abs_weight(spec: &ValidatedSpec, e: &Expr) -> Result<Rational, Error> {
    let mut m = Rational::from_integer(0.into());
    for leaf in e.leaves() {
        let w = spec.leaf_automaton(&leaf)?.max_abs_weight();
        if w.abs() > m {
            m = w;
        }
    }
    Ok(m)
}
