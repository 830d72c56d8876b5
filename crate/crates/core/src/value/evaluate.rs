use std::collections::HashMap;

use mpae_geometry::Rational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::model::{DetMPAutomaton, Expr, LassoWord, ValidatedSpec};

/// Mean payoff of `a` on a lasso word. Both limit semantics agree on
/// ultimately periodic words.
pub fn automaton_lasso_value(a: &DetMPAutomaton, w: &LassoWord) -> Result<Rational> {
    let index = |l: &String| a.letter_index(l).ok_or_else(|| Error::UnknownLetter(l.clone()));
    let prefix = w.prefix.iter().map(index).collect::<Result<Vec<_>>>()?;
    let cycle = w.cycle.iter().map(index).collect::<Result<Vec<_>>>()?;
    let mut q = a.initial;
    for &l in &prefix {
        q = a.step(q, l).0;
    }
    let mut seen: HashMap<usize, usize> = HashMap::new();
    let mut sums: Vec<Rational> = Vec::new();
    loop {
        if let Some(&start) = seen.get(&q) {
            let total: Rational = sums[start..].iter().sum();
            let len = Rational::from_integer(((sums.len() - start) * cycle.len()).into());
            return Ok(total / len);
        }
        seen.insert(q, sums.len());
        let mut s = Rational::zero();
        for &l in &cycle {
            let (t, wt) = a.step(q, l);
            s += wt;
            q = t;
        }
        sums.push(s);
    }
}

/// Value of an expression on a lasso word, leaf by leaf.
pub fn evaluate_expr(spec: &ValidatedSpec, e: &Expr, w: &LassoWord) -> Result<Rational> {
    let mut values = HashMap::new();
    for leaf in e.leaves() {
        let a = spec.leaf_automaton(&leaf)?;
        values.insert(leaf, automaton_lasso_value(&a, w)?);
    }
    Ok(e.eval(&|l| values[l].clone()))
}

pub fn evaluate_lasso(spec: &ValidatedSpec, name: &str, w: &LassoWord) -> Result<Rational> {
    evaluate_expr(spec, spec.expression(name)?, w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use mpae_geometry::rational::{frac, int};

    const AB_PAIR: &str = "automaton A1 liminf { alphabet a, b; initial q0; q0 -a/1-> q0; q0 -b/0-> q0; }\n\
                        automaton A2 liminf { alphabet a, b; initial q0; q0 -a/0-> q0; q0 -b/1-> q0; }\n\
                        expression Emax = max(A1, A2);\n\
                        expression Emin = min(A1, A2);";

    #[test]
    fn ab_pair_words() {
        let s = ValidatedSpec::parse(AB_PAIR).unwrap();
        assert_eq!(evaluate_lasso(&s, "Emax", &LassoWord::from_strs(&[], &["a"])).unwrap(), int(1));
        assert_eq!(evaluate_lasso(&s, "Emin", &LassoWord::from_strs(&[], &["a", "b"])).unwrap(), frac(1, 2));
        assert!(matches!(
            evaluate_lasso(&s, "Emin", &LassoWord::from_strs(&[], &["c"])),
            Err(Error::UnknownLetter(_))
        ));
    }

    #[test]
    fn cycle_alignment_is_found() {
        // parity automaton: weight depends on position mod 2, cycle of odd length
        let text = "automaton P liminf { alphabet a; initial e; e -a/1-> o; o -a/0-> e; } expression E = P;";
        let s = ValidatedSpec::parse(text).unwrap();
        assert_eq!(evaluate_lasso(&s, "E", &LassoWord::from_strs(&[], &["a"])).unwrap(), frac(1, 2));
        assert_eq!(evaluate_lasso(&s, "E", &LassoWord::from_strs(&["a"], &["a", "a", "a"])).unwrap(), frac(1, 2));
    }
}
