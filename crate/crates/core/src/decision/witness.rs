//! Epsilon-witness lasso words.
//!
//! The best value over the convex hull of an SCC's cycle values is found by
//! linear programming, the optimal point is written as a combination of at
//! most `n + 1` simple cycles, and each cycle is repeated proportionally to
//! its weight inside one long lasso cycle. The repetition count grows until
//! the word, re-evaluated from scratch, clears the bound.

use std::collections::VecDeque;

use mpae_geometry::lp::{optimize_free, solve_standard, LpResult, Row, StandardLp};
use mpae_geometry::{Direction, Optimum, Rational};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::analysis::{CycleValueSet, ProductAutomaton};
use crate::error::{Error, Result};
use crate::model::{Expr, LassoWord, Op, ValidatedSpec};
use crate::value::{analyze, evaluate_expr, value_report, Analysis};

const MAX_CHOICE_BITS: usize = 16;
const MAX_DOUBLINGS: usize = 24;
const MAX_CYCLE_LETTERS: usize = 4_000_000;

/// A lasso word whose value is at least `nu - eps`.
pub fn witness_lasso(spec: &ValidatedSpec, e: &Expr, nu: &Rational, eps: &Rational, budget: usize) -> Result<LassoWord> {
    if !eps.is_positive() {
        return Err(Error::InvalidArgument("eps must be positive".into()));
    }
    let a = analyze(spec, e, budget)?;
    let report = value_report(&a, e)?;
    if report.value_set.max().is_none_or(|m| m < nu) {
        return Err(Error::NoWitness { nu: nu.clone() });
    }
    let target = nu - eps;
    let mut candidates: Vec<_> = report.per_scc.iter().filter(|v| v.interval.hi >= target).collect();
    candidates.sort_by(|x, y| y.interval.hi.cmp(&x.interval.hi).then(x.scc.cmp(&y.scc)));
    let mut best_seen: Option<Rational> = None;
    for v in candidates {
        let cycles = a.cycle_set(v.scc).expect("cycle-bearing SCC");
        let (value, lambda) = best_mixture(&a, e, cycles)?;
        if best_seen.as_ref().is_none_or(|b| &value > b) {
            best_seen = Some(value.clone());
        }
        if value < target {
            continue;
        }
        if let Some(w) = build_lasso(spec, e, &a.product, cycles, &lambda, &target)? {
            return Ok(w);
        }
    }
    let reason = match best_seen {
        Some(b) => format!(
            "the best cycle mixture reaches {}, the rest of the value set needs non-periodic words",
            mpae_geometry::rational::to_string(&b)
        ),
        None => "no SCC comes close enough".into(),
    };
    Err(Error::WitnessUnreachable { target, reason })
}

/// Maximum of the expression over convex combinations of the cycle values,
/// with the weights of one optimal combination of small support.
fn best_mixture(a: &Analysis, e: &Expr, cycles: &CycleValueSet) -> Result<(Rational, Vec<Rational>)> {
    let max_nodes = e.count_ops(Op::Max);
    if max_nodes > MAX_CHOICE_BITS {
        return Err(Error::InvalidArgument(format!("witness search supports at most {MAX_CHOICE_BITS} max nodes")));
    }
    let leaves: Vec<String> = e.leaves().iter().map(|l| l.to_string()).collect();
    let m = cycles.points.len();
    let mut best: Option<(Rational, Vec<Rational>)> = None;
    for choice in 0u32..(1u32 << max_nodes) {
        let mut lp = MixtureLp { rows: Vec::new(), vars: m };
        // lambda >= 0, sum lambda = 1
        for i in 0..m {
            lp.row(vec![(i, -Rational::one())], Rational::zero(), false);
        }
        lp.row((0..m).map(|i| (i, Rational::one())).collect(), Rational::one(), true);
        let mut next_max = 0;
        let root = lp.encode(e, a, cycles, &leaves, choice, &mut next_max);
        let dim = lp.vars;
        let rows: Vec<(Vec<Rational>, Rational, bool)> = lp
            .rows
            .iter()
            .map(|(terms, b, eq)| {
                let mut coeffs = vec![Rational::zero(); dim];
                for (v, c) in terms {
                    coeffs[*v] += c;
                }
                (coeffs, b.clone(), *eq)
            })
            .collect();
        let views: Vec<Row<'_>> =
            rows.iter().map(|(c, b, eq)| Row { coeffs: c, bound: b, equality: *eq }).collect();
        let mut objective = vec![Rational::zero(); dim];
        objective[root] = Rational::one();
        if let Optimum::Finite { value, point } = optimize_free(dim, &views, &objective, Direction::Maximize) {
            if best.as_ref().is_none_or(|(b, _)| &value > b) {
                best = Some((value, point[..m].to_vec()));
            }
        }
    }
    let (value, lambda) = best.expect("the simplex of weights is nonempty");
    Ok((value, caratheodory(&cycles.points, &lambda)))
}

// sparse terms, bound, equality
type SparseRow = (Vec<(usize, Rational)>, Rational, bool);

struct MixtureLp {
    rows: Vec<SparseRow>,
    vars: usize,
}

impl MixtureLp {
    fn row(&mut self, terms: Vec<(usize, Rational)>, bound: Rational, equality: bool) {
        self.rows.push((terms, bound, equality));
    }

    fn fresh(&mut self) -> usize {
        self.vars += 1;
        self.vars - 1
    }

    // Each node gets a variable bounded above by its value; maximizing the
    // root makes the bounds tight because the tree is monotone. A max node
    // is bounded by the child selected in `choice`.
    fn encode(
        &mut self,
        e: &Expr,
        a: &Analysis,
        cycles: &CycleValueSet,
        leaves: &[String],
        choice: u32,
        next_max: &mut usize,
    ) -> usize {
        let v = self.fresh();
        match e {
            Expr::Leaf(l) => {
                let k = leaves.iter().position(|x| *x == l.to_string()).expect("leaf of e");
                let (c, f) = &a.binding[k];
                let mut terms = vec![(v, Rational::one())];
                for (i, p) in cycles.points.iter().enumerate() {
                    terms.push((i, -(f * &p[*c])));
                }
                self.row(terms, Rational::zero(), true);
            }
            Expr::Node(op, x, y) => {
                let pick = if *op == Op::Max {
                    let bit = *next_max;
                    *next_max += 1;
                    Some(choice >> bit & 1 == 0)
                } else {
                    None
                };
                let vx = self.encode(x, a, cycles, leaves, choice, next_max);
                let vy = self.encode(y, a, cycles, leaves, choice, next_max);
                let one = Rational::one;
                match (op, pick) {
                    (Op::Sum, _) => self.row(vec![(v, one()), (vx, -one()), (vy, -one())], Rational::zero(), true),
                    (Op::Min, _) => {
                        self.row(vec![(v, one()), (vx, -one())], Rational::zero(), false);
                        self.row(vec![(v, one()), (vy, -one())], Rational::zero(), false);
                    }
                    (Op::Max, Some(left)) => {
                        let child = if left { vx } else { vy };
                        self.row(vec![(v, one()), (child, -one())], Rational::zero(), false);
                    }
                    (Op::Max, None) => unreachable!(),
                }
            }
        }
        v
    }
}

/// Basic solution of `{mu >= 0 : sum mu_i p_i = sum lambda_i p_i, sum mu = 1}`;
/// at most `dim + 1` weights are nonzero.
fn caratheodory(points: &[Vec<Rational>], lambda: &[Rational]) -> Vec<Rational> {
    let dim = points.first().map_or(0, |p| p.len());
    let mut a = Vec::with_capacity(dim + 1);
    let mut b = Vec::with_capacity(dim + 1);
    for j in 0..dim {
        a.push(points.iter().map(|p| p[j].clone()).collect());
        b.push(points.iter().zip(lambda).map(|(p, l)| &p[j] * l).sum());
    }
    a.push(vec![Rational::one(); points.len()]);
    b.push(Rational::one());
    let lp = StandardLp { a, b, c: vec![Rational::zero(); points.len()] };
    match solve_standard(&lp) {
        LpResult::Optimal { z, .. } => z,
        other => unreachable!("the given weights are feasible: {other:?}"),
    }
}

fn build_lasso(
    spec: &ValidatedSpec,
    e: &Expr,
    p: &ProductAutomaton,
    cycles: &CycleValueSet,
    lambda: &[Rational],
    target: &Rational,
) -> Result<Option<LassoWord>> {
    let support: Vec<(usize, &Rational)> = lambda.iter().enumerate().filter(|(_, l)| l.is_positive()).collect();
    let mut in_scc = vec![false; p.states.len()];
    for c in &cycles.cycles {
        for &s in &c.states {
            in_scc[s] = true;
        }
    }
    let start = cycles.cycles[support[0].0].states[0];
    let prefix = shortest_path(p, p.initial(), start, None).expect("SCC is reachable");

    // ratios lambda_i / |rho_i| become integers at a multiple of their
    // denominators; start there when it is small, at least one pass each
    let shares: Vec<Rational> = support
        .iter()
        .map(|&(i, l)| l / Rational::from_integer(cycles.cycles[i].letters.len().into()))
        .collect();
    let lcm = shares.iter().fold(num_bigint::BigInt::one(), |acc, s| acc.lcm(s.denom()));
    let mut n = lcm.to_usize().filter(|&n| n <= 1 << 16).unwrap_or(1);
    while shares.iter().any(|s| (s * Rational::from_integer(n.into())).floor().is_zero()) {
        n *= 2;
    }

    for _ in 0..MAX_DOUBLINGS {
        let mut cycle = Vec::new();
        for (t, &(i, _)) in support.iter().enumerate() {
            let rho = &cycles.cycles[i];
            let k = (&shares[t] * Rational::from_integer(n.into())).floor().to_integer().to_usize().unwrap_or(0);
            let from = if t == 0 { start } else { cycles.cycles[support[t - 1].0].states[0] };
            cycle.extend(shortest_path(p, from, rho.states[0], Some(&in_scc)).expect("strongly connected"));
            for _ in 0..k {
                cycle.extend(rho.letters.iter().copied());
            }
        }
        let last = cycles.cycles[support[support.len() - 1].0].states[0];
        cycle.extend(shortest_path(p, last, start, Some(&in_scc)).expect("strongly connected"));
        if cycle.len() > MAX_CYCLE_LETTERS {
            return Ok(None);
        }
        let letters = |v: &[usize]| v.iter().map(|&l| p.alphabet[l].clone()).collect::<Vec<_>>();
        let w = LassoWord::new(letters(&prefix), letters(&cycle));
        if &evaluate_expr(spec, e, &w)? >= target {
            return Ok(Some(w.with_primitive_cycle()));
        }
        n *= 2;
    }
    Ok(None)
}

/// Letters of a shortest path, optionally staying inside `allowed`.
fn shortest_path(p: &ProductAutomaton, from: usize, to: usize, allowed: Option<&[bool]>) -> Option<Vec<usize>> {
    let n = p.states.len();
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
    let mut seen = vec![false; n];
    seen[from] = true;
    let mut queue = VecDeque::from([from]);
    while let Some(s) = queue.pop_front() {
        if s == to {
            let mut path = Vec::new();
            let mut cur = to;
            while let Some((prev, letter)) = parent[cur] {
                path.push(letter);
                cur = prev;
            }
            path.reverse();
            return Some(path);
        }
        for (letter, (t, _)) in p.transitions[s].iter().enumerate() {
            if !seen[*t] && allowed.is_none_or(|a| a[*t]) {
                seen[*t] = true;
                parent[*t] = Some((s, letter));
                queue.push_back(*t);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::DEFAULT_CYCLE_BUDGET;
    use crate::value::evaluate_lasso;
    use mpae_geometry::rational::{frac, int};

    const AB_PAIR: &str = "automaton A1 liminf { alphabet a, b; initial q0; q0 -a/1-> q0; q0 -b/0-> q0; }\n\
                        automaton A2 liminf { alphabet a, b; initial q0; q0 -a/0-> q0; q0 -b/1-> q0; }\n\
                        expression Emax = max(A1, A2);\n\
                        expression Emin = min(A1, A2);";

    #[test]
    fn ab_pair_witnesses() {
        let s = ValidatedSpec::parse(AB_PAIR).unwrap();
        let b = DEFAULT_CYCLE_BUDGET;
        let w = witness_lasso(&s, s.expression("Emax").unwrap(), &int(1), &frac(1, 10), b).unwrap();
        assert_eq!(w, LassoWord::from_strs(&[], &["a"]));
        let w = witness_lasso(&s, s.expression("Emin").unwrap(), &frac(1, 2), &frac(1, 10), b).unwrap();
        assert!(evaluate_lasso(&s, "Emin", &w).unwrap() >= frac(2, 5));
        assert_eq!(w.cycle.len(), 2);
        let err = witness_lasso(&s, s.expression("Emax").unwrap(), &int(2), &frac(1, 10), b).unwrap_err();
        assert!(err.to_string().starts_with("no witness exists"));
    }

    #[test]
    fn prefix_reaches_the_winning_component() {
        let text = "automaton B liminf { alphabet a, b; initial q0; q0 -a/1-> q1; q0 -b/1-> q2; \
                    q1 -a/1-> q1; q1 -b/1-> q1; q2 -a/2-> q2; q2 -b/2-> q2; }\n\
                    expression E = B;";
        let s = ValidatedSpec::parse(text).unwrap();
        let w = witness_lasso(&s, s.expression("E").unwrap(), &int(2), &frac(1, 100), DEFAULT_CYCLE_BUDGET).unwrap();
        assert_eq!(w.prefix, vec!["b"]);
        assert_eq!(evaluate_lasso(&s, "E", &w).unwrap(), int(2));
    }
}
