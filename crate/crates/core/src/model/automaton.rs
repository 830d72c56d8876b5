use std::fmt;

use mpae_geometry::Rational;
use num_traits::{Signed, Zero};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Semantics {
    LimInf,
    LimSup,
}

impl Semantics {
    pub fn flipped(self) -> Self {
        match self {
            Semantics::LimInf => Semantics::LimSup,
            Semantics::LimSup => Semantics::LimInf,
        }
    }

    pub fn keyword(self) -> &'static str {
        match self {
            Semantics::LimInf => "liminf",
            Semantics::LimSup => "limsup",
        }
    }
}

impl fmt::Display for Semantics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

/// Deterministic, total mean-payoff automaton. Letters and states are kept
/// sorted; `transitions[q][a]` is the target and weight for state `q` and
/// letter index `a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DetMPAutomaton {
    pub id: String,
    pub semantics: Semantics,
    pub alphabet: Vec<String>,
    pub states: Vec<String>,
    pub initial: usize,
    pub transitions: Vec<Vec<(usize, Rational)>>,
}

impl DetMPAutomaton {
    pub fn letter_index(&self, letter: &str) -> Option<usize> {
        self.alphabet.binary_search_by(|l| l.as_str().cmp(letter)).ok()
    }

    pub fn step(&self, state: usize, letter: usize) -> (usize, &Rational) {
        let (t, w) = &self.transitions[state][letter];
        (*t, w)
    }

    pub fn map_weights(&self, id: String, semantics: Semantics, f: impl Fn(&Rational) -> Rational) -> Self {
        DetMPAutomaton {
            id,
            semantics,
            alphabet: self.alphabet.clone(),
            states: self.states.clone(),
            initial: self.initial,
            transitions: self
                .transitions
                .iter()
                .map(|row| row.iter().map(|(t, w)| (*t, f(w))).collect())
                .collect(),
        }
    }

    /// Negated weights under the opposite semantics: the automaton of `-L_A`.
    pub fn complement(&self, id: String) -> Self {
        self.map_weights(id, self.semantics.flipped(), |w| -w)
    }

    pub fn max_abs_weight(&self) -> Rational {
        self.transitions
            .iter()
            .flatten()
            .map(|(_, w)| w.abs())
            .max()
            .unwrap_or_else(Rational::zero)
    }

    /// Equality up to identifiers and state names.
    pub fn same_structure(&self, other: &Self) -> bool {
        self.semantics == other.semantics
            && self.alphabet == other.alphabet
            && self.initial == other.initial
            && self.transitions == other.transitions
    }
}

/// Deterministic automaton with vector weights of a fixed dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PayoffAutomaton {
    pub id: String,
    pub dim: usize,
    pub alphabet: Vec<String>,
    pub states: Vec<String>,
    pub initial: usize,
    pub transitions: Vec<Vec<(usize, Vec<Rational>)>>,
}

impl PayoffAutomaton {
    /// Scalar automaton reading coordinate `i` (zero based) under `semantics`.
    pub fn coordinate(&self, i: usize, semantics: Semantics) -> DetMPAutomaton {
        let tag = match semantics {
            Semantics::LimInf => "inf",
            Semantics::LimSup => "sup",
        };
        DetMPAutomaton {
            id: format!("{}.{}({})", self.id, tag, i + 1),
            semantics,
            alphabet: self.alphabet.clone(),
            states: self.states.clone(),
            initial: self.initial,
            transitions: self
                .transitions
                .iter()
                .map(|row| row.iter().map(|(t, w)| (*t, w[i].clone())).collect())
                .collect(),
        }
    }
}
