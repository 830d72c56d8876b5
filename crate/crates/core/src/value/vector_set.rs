use mpae_geometry::{fmin_region, Direction, LinearConstraint, Optimum, Polyhedron, Rational, Region};
use num_traits::{One, Signed, Zero};

use super::interval::{Interval, IntervalUnion};
use super::projection::{fold_expression, lift_to_occurrences};
use crate::analysis::{reachable_sccs, simple_cycle_values, CycleValueSet, ProductAutomaton, Scc};
use crate::error::{Error, Result};
use crate::model::{DetMPAutomaton, Expr, Semantics, ValidatedSpec};

/// Achievable tuples of leaf values, one bounded polyhedron per reachable
/// cycle-bearing SCC. Coordinates follow `leaves`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VectorSet {
    pub leaves: Vec<String>,
    pub per_scc: Vec<(usize, Polyhedron)>,
    /// Coordinates whose automaton is LimSup; their weights were negated for
    /// the closure and the result negated back.
    pub flip_mask: Vec<bool>,
}

impl VectorSet {
    pub fn dim(&self) -> usize {
        self.leaves.len()
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.per_scc.iter().any(|(_, p)| p.contains(x))
    }

    pub fn region(&self) -> Region {
        let disjuncts = self.per_scc.iter().map(|(_, p)| p.clone()).collect();
        Region::new(self.dim(), disjuncts).expect("polyhedra share the leaf dimension")
    }
}

/// Everything computed on the way to a vector set.
///
/// The product runs over distinct normalized components: LimSup leaves are
/// replaced by their LimInf complement, and leaves whose automata agree up to
/// a positive factor share a component. Leaf `k` reads component
/// `binding[k].0` multiplied by `binding[k].1`, which is negative exactly for
/// LimSup leaves. Minima commute with positive scaling, so this gives the
/// same set as one coordinate per leaf.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub leaf_automata: Vec<DetMPAutomaton>,
    pub binding: Vec<(usize, Rational)>,
    pub product: ProductAutomaton,
    pub sccs: Vec<Scc>,
    /// One entry per cycle-bearing SCC, in SCC order.
    pub cycle_sets: Vec<CycleValueSet>,
    pub vector_set: VectorSet,
}

impl Analysis {
    /// Leaf coordinates of a point given in component coordinates.
    pub fn leaf_point(&self, component_point: &[Rational]) -> Vec<Rational> {
        self.binding
            .iter()
            .map(|(c, f)| f * &component_point[*c])
            .collect()
    }

    pub fn scc(&self, id: usize) -> &Scc {
        &self.sccs[id]
    }

    pub fn cycle_set(&self, scc: usize) -> Option<&CycleValueSet> {
        self.cycle_sets.iter().find(|c| c.scc == scc)
    }
}

/// Vector set of the given leaf automata, which must share one alphabet.
pub fn analyze_leaves(leaves: Vec<String>, automata: Vec<DetMPAutomaton>, budget: usize) -> Result<Analysis> {
    assert_eq!(leaves.len(), automata.len());
    let mut components: Vec<DetMPAutomaton> = Vec::new();
    let mut binding = Vec::with_capacity(automata.len());
    for a in &automata {
        let (normal, flip) = match a.semantics {
            Semantics::LimInf => (a.clone(), false),
            Semantics::LimSup => (a.map_weights(format!("{}~", a.id), Semantics::LimInf, |w| -w), true),
        };
        let sign = if flip { -Rational::one() } else { Rational::one() };
        match components.iter().enumerate().find_map(|(c, x)| proportional(x, &normal).map(|f| (c, f))) {
            Some((c, f)) => binding.push((c, f * sign)),
            None => {
                components.push(normal);
                binding.push((components.len() - 1, sign));
            }
        }
    }
    let product = ProductAutomaton::build(components)?;
    let sccs = reachable_sccs(&product);
    let n = leaves.len();
    let mut cycle_sets = Vec::new();
    let mut per_scc = Vec::new();
    for scc in sccs.iter().filter(|s| s.reachable && s.has_cycle) {
        let cycles = simple_cycle_values(&product, scc, budget)?;
        let closed = fmin_region(&cycles.points)?;
        per_scc.push((scc.id, to_leaf_coordinates(&closed, &binding, n)?));
        cycle_sets.push(cycles);
    }
    let flip_mask = binding.iter().map(|(_, f)| f.is_negative()).collect();
    Ok(Analysis {
        leaf_automata: automata,
        binding,
        product,
        sccs,
        cycle_sets,
        vector_set: VectorSet { leaves, per_scc, flip_mask },
    })
}

/// `c > 0` with `b = c * a` weight for weight, if the automata otherwise agree.
fn proportional(a: &DetMPAutomaton, b: &DetMPAutomaton) -> Option<Rational> {
    if a.semantics != b.semantics
        || a.alphabet != b.alphabet
        || a.initial != b.initial
        || a.transitions.len() != b.transitions.len()
    {
        return None;
    }
    let mut factor: Option<Rational> = None;
    for (ra, rb) in a.transitions.iter().zip(&b.transitions) {
        for ((ta, wa), (tb, wb)) in ra.iter().zip(rb) {
            if ta != tb || wa.is_zero() != wb.is_zero() {
                return None;
            }
            if wa.is_zero() {
                continue;
            }
            let c = wb / wa;
            if !c.is_positive() || factor.as_ref().is_some_and(|f| *f != c) {
                return None;
            }
            factor = Some(c);
        }
    }
    Some(factor.unwrap_or_else(Rational::one))
}

// z_k = f_k y_c: substitute y_c through the first leaf bound to c and tie the
// remaining leaves of c to it.
fn to_leaf_coordinates(p: &Polyhedron, binding: &[(usize, Rational)], n: usize) -> Result<Polyhedron> {
    let mut representative: Vec<Option<usize>> = vec![None; p.dim()];
    let mut ties = Vec::new();
    for (k, (c, f)) in binding.iter().enumerate() {
        match representative[*c] {
            None => representative[*c] = Some(k),
            Some(r) => {
                // z_k / f_k = z_r / f_r
                let mut coeffs = vec![Rational::zero(); n];
                coeffs[k] = f.recip();
                coeffs[r] = -binding[r].1.recip();
                ties.push(LinearConstraint::eq(coeffs, Rational::zero()));
            }
        }
    }
    let exprs: Vec<Vec<Rational>> = representative
        .iter()
        .map(|r| {
            let r = r.expect("every component has a leaf");
            let mut e = vec![Rational::zero(); n];
            e[r] = binding[r].1.clone();
            e
        })
        .collect();
    let mut q = p.pullback(n, &exprs)?;
    for t in ties {
        q.push(t)?;
    }
    Ok(q.canonical())
}

/// Analysis over the distinct leaves of `e`, in order of first occurrence.
pub fn analyze(spec: &ValidatedSpec, e: &Expr, budget: usize) -> Result<Analysis> {
    let leaves = e.leaves();
    let automata = leaves.iter().map(|l| spec.leaf_automaton(l)).collect::<Result<Vec<_>>>()?;
    analyze_leaves(leaves.iter().map(|l| l.to_string()).collect(), automata, budget)
}

pub fn vector_set(spec: &ValidatedSpec, name: &str, budget: usize) -> Result<VectorSet> {
    Ok(analyze(spec, spec.expression(name)?, budget)?.vector_set)
}

/// Value interval `[m_C, M_C]` of one SCC and the folded region it came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SccValue {
    pub scc: usize,
    pub interval: Interval,
    pub folded: Region,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValueReport {
    pub per_scc: Vec<SccValue>,
    pub value_set: IntervalUnion,
}

impl ValueReport {
    pub fn scc_value(&self, scc: usize) -> Option<&SccValue> {
        self.per_scc.iter().find(|v| v.scc == scc)
    }
}

/// Folds every SCC polyhedron of `a` through `e`. The leaves of `a` must be
/// the leaves of `e` in first-occurrence order.
pub fn value_report(a: &Analysis, e: &Expr) -> Result<ValueReport> {
    let leaves: Vec<String> = e.leaves().iter().map(|l| l.to_string()).collect();
    if leaves != a.vector_set.leaves {
        return Err(Error::InvalidArgument("analysis does not match the expression leaves".into()));
    }
    let occurrence_leaf: Vec<usize> = e
        .occurrences()
        .iter()
        .map(|o| leaves.iter().position(|l| *l == o.to_string()).expect("leaf of e"))
        .collect();
    let mut per_scc = Vec::new();
    for (scc, p) in &a.vector_set.per_scc {
        let lifted = lift_to_occurrences(p, &occurrence_leaf)?;
        let folded = fold_expression(&Region::from(lifted), e)?;
        let interval = interval_of(&folded)?;
        per_scc.push(SccValue { scc: *scc, interval, folded });
    }
    let value_set = IntervalUnion::new(per_scc.iter().map(|v| v.interval.clone()).collect());
    Ok(ValueReport { per_scc, value_set })
}

fn interval_of(r: &Region) -> Result<Interval> {
    let one = [Rational::one()];
    let bound = |dir| match r.optimize(&one, dir) {
        Optimum::Finite { value, .. } => Ok(value),
        other => Err(Error::InvalidArgument(format!("folded value region is not a bounded interval: {other:?}"))),
    };
    let interval = Interval::new(bound(Direction::Minimize)?, bound(Direction::Maximize)?);
    if cfg!(debug_assertions) {
        // the image of a connected set is connected, so the pieces must abut
        let pieces: Vec<Interval> = r
            .disjuncts()
            .iter()
            .filter_map(|p| {
                let lo = p.optimize(&one, Direction::Minimize).value()?.clone();
                let hi = p.optimize(&one, Direction::Maximize).value()?.clone();
                Some(Interval::new(lo, hi))
            })
            .collect();
        debug_assert_eq!(IntervalUnion::new(pieces).intervals().len(), 1, "disconnected SCC value set");
    }
    Ok(interval)
}

pub fn value_set(spec: &ValidatedSpec, name: &str, budget: usize) -> Result<IntervalUnion> {
    let e = spec.expression(name)?;
    Ok(value_report(&analyze(spec, e, budget)?, e)?.value_set)
}
