use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::constraint::{LinearConstraint, Relation};
use crate::error::{GeometryError, Result};
use crate::lp::{optimize_free, Direction, Optimum, Row};
use crate::rational::{parse_rational, Rational};

/// Convex polyhedron in half-space form. Strict constraints are allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polyhedron {
    dim: usize,
    constraints: Vec<LinearConstraint>,
}

impl Polyhedron {
    pub fn new(dim: usize, constraints: Vec<LinearConstraint>) -> Result<Self> {
        for c in &constraints {
            if c.dim() != dim {
                return Err(GeometryError::DimensionMismatch { expected: dim, found: c.dim() });
            }
        }
        Ok(Polyhedron { dim, constraints })
    }

    pub fn universe(dim: usize) -> Self {
        Polyhedron { dim, constraints: Vec::new() }
    }

    /// The canonical empty polyhedron, `0 <= -1`.
    pub fn empty(dim: usize) -> Self {
        Polyhedron {
            dim,
            constraints: vec![LinearConstraint::le(vec![Rational::zero(); dim], -Rational::one())],
        }
    }

    pub fn point(p: &[Rational]) -> Self {
        let dim = p.len();
        let constraints = p
            .iter()
            .enumerate()
            .map(|(i, x)| LinearConstraint::coordinate(dim, i, Relation::Eq, x.clone()))
            .collect();
        Polyhedron { dim, constraints }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn constraints(&self) -> &[LinearConstraint] {
        &self.constraints
    }

    pub fn into_constraints(self) -> Vec<LinearConstraint> {
        self.constraints
    }

    pub fn push(&mut self, c: LinearConstraint) -> Result<()> {
        if c.dim() != self.dim {
            return Err(GeometryError::DimensionMismatch { expected: self.dim, found: c.dim() });
        }
        self.constraints.push(c);
        Ok(())
    }

    pub fn with(mut self, c: LinearConstraint) -> Result<Self> {
        self.push(c)?;
        Ok(self)
    }

    pub fn intersect(&self, other: &Polyhedron) -> Result<Polyhedron> {
        if other.dim != self.dim {
            return Err(GeometryError::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        let mut constraints = self.constraints.clone();
        constraints.extend(other.constraints.iter().cloned());
        Ok(Polyhedron { dim: self.dim, constraints })
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        x.len() == self.dim && self.constraints.iter().all(|c| c.satisfied_by(x))
    }

    pub fn has_strict(&self) -> bool {
        self.constraints.iter().any(|c| c.relation.is_strict())
    }

    /// Closed version: every `<` replaced by `<=`.
    pub fn closure(&self) -> Polyhedron {
        Polyhedron { dim: self.dim, constraints: self.constraints.iter().map(|c| c.closure()).collect() }
    }

    pub fn is_empty(&self) -> bool {
        self.feasible_point().is_none()
    }

    /// Some point of the set, or `None` when it is empty.
    pub fn feasible_point(&self) -> Option<Vec<Rational>> {
        if let Some(false) = self.constant_truth() {
            return None;
        }
        if !self.has_strict() {
            return match closed_lp(self.dim, &self.constraints, &vec![Rational::zero(); self.dim], Direction::Minimize) {
                Optimum::Finite { point, .. } => Some(point),
                Optimum::Unbounded => unreachable!("zero objective"),
                Optimum::Infeasible => None,
            };
        }
        // maximize t subject to a.x + t <= b on strict rows, t <= 1
        let d = self.dim + 1;
        let mut rows: Vec<LinearConstraint> = self
            .constraints
            .iter()
            .map(|c| {
                let mut coeffs = c.coeffs.clone();
                coeffs.push(if c.relation.is_strict() { Rational::one() } else { Rational::zero() });
                LinearConstraint::new(coeffs, if c.relation == Relation::Eq { Relation::Eq } else { Relation::Le }, c.bound.clone())
            })
            .collect();
        rows.push(LinearConstraint::coordinate(d, self.dim, Relation::Le, Rational::one()));
        let mut objective = vec![Rational::zero(); d];
        objective[self.dim] = Rational::one();
        match closed_lp(d, &rows, &objective, Direction::Maximize) {
            Optimum::Finite { value, mut point } if value.is_positive() => {
                point.pop();
                Some(point)
            }
            _ => None,
        }
    }

    fn constant_truth(&self) -> Option<bool> {
        let mut all = true;
        for c in &self.constraints {
            match c.constant_truth() {
                Some(false) => return Some(false),
                Some(true) => {}
                None => all = false,
            }
        }
        if all {
            Some(true)
        } else {
            None
        }
    }

    /// Optimum of a linear objective. Over a nonempty set with strict
    /// constraints this is the supremum (infimum), attained on the closure.
    pub fn optimize(&self, objective: &[Rational], direction: Direction) -> Optimum {
        debug_assert_eq!(objective.len(), self.dim);
        if self.has_strict() {
            if self.is_empty() {
                return Optimum::Infeasible;
            }
            return closed_lp(self.dim, &self.closure().constraints, objective, direction);
        }
        if let Some(false) = self.constant_truth() {
            return Optimum::Infeasible;
        }
        closed_lp(self.dim, &self.constraints, objective, direction)
    }

    /// True when every point of `self` satisfies `c`.
    pub fn entails(&self, c: &LinearConstraint) -> bool {
        c.negation().into_iter().all(|n| {
            let mut constraints = self.constraints.clone();
            constraints.push(n);
            Polyhedron { dim: self.dim, constraints }.is_empty()
        })
    }

    pub fn is_subset_of(&self, other: &Polyhedron) -> bool {
        debug_assert_eq!(self.dim, other.dim);
        if self.is_empty() {
            return true;
        }
        other.constraints.iter().all(|c| self.entails(c))
    }

    /// Set equality by mutual entailment.
    pub fn same_set(&self, other: &Polyhedron) -> bool {
        self.dim == other.dim && self.is_subset_of(other) && other.is_subset_of(self)
    }

    pub fn is_bounded(&self) -> bool {
        if self.is_empty() {
            return true;
        }
        (0..self.dim).all(|i| {
            let mut e = vec![Rational::zero(); self.dim];
            e[i] = Rational::one();
            [Direction::Minimize, Direction::Maximize]
                .into_iter()
                .all(|dir| matches!(self.optimize(&e, dir), Optimum::Finite { .. }))
        })
    }

    /// Irredundant description: implicit equalities made explicit and in
    /// reduced row echelon form, inequalities reduced modulo the equalities,
    /// scaled to coprime integers and pruned by exact entailment checks.
    pub fn minimize(&self) -> Polyhedron {
        let mut constraints = Vec::with_capacity(self.constraints.len());
        for c in &self.constraints {
            match c.constant_truth() {
                Some(true) => {}
                Some(false) => return Polyhedron::empty(self.dim),
                None => constraints.push(c.normalized()),
            }
        }
        let p = Polyhedron { dim: self.dim, constraints };
        let Some(inside) = p.feasible_point() else {
            return Polyhedron::empty(self.dim);
        };

        // Implicit equalities among the non-strict inequalities.
        let mut constraints = p.constraints.clone();
        for c in &mut constraints {
            if c.relation != Relation::Le || crate::rational::dot(&c.coeffs, &inside) != c.bound {
                continue;
            }
            if let Optimum::Finite { value, .. } = p.optimize(&c.coeffs, Direction::Minimize) {
                if value == c.bound {
                    c.relation = Relation::Eq;
                }
            }
        }

        let Some(reduced) = reduce_modulo_equalities(self.dim, constraints) else {
            return Polyhedron::empty(self.dim);
        };
        let (equalities, mut inequalities): (Vec<_>, Vec<_>) =
            reduced.into_iter().partition(|c| c.relation == Relation::Eq);

        let mut i = 0;
        while i < inequalities.len() {
            let candidate = inequalities[i].clone();
            let mut rest = equalities.clone();
            rest.extend(inequalities.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, c)| c.clone()));
            if (Polyhedron { dim: self.dim, constraints: rest }).entails(&candidate) {
                inequalities.remove(i);
            } else {
                i += 1;
            }
        }
        let mut constraints = equalities;
        constraints.extend(inequalities);
        Polyhedron { dim: self.dim, constraints }
    }

    /// [`minimize`](Self::minimize) followed by a fixed ordering, so equal
    /// sets get identical constraint lists.
    pub fn canonical(&self) -> Polyhedron {
        let mut p = self.minimize();
        p.constraints.sort_by(|a, b| a.sort_key_cmp(b));
        p
    }

    /// Substitutes `x_i = exprs[i] . z` and returns the constraint system over
    /// `z in R^new_dim`, i.e. the preimage under that linear map.
    pub fn pullback(&self, new_dim: usize, exprs: &[Vec<Rational>]) -> Result<Polyhedron> {
        if exprs.len() != self.dim {
            return Err(GeometryError::DimensionMismatch { expected: self.dim, found: exprs.len() });
        }
        for e in exprs {
            if e.len() != new_dim {
                return Err(GeometryError::DimensionMismatch { expected: new_dim, found: e.len() });
            }
        }
        let constraints = self
            .constraints
            .iter()
            .map(|c| {
                let mut coeffs = vec![Rational::zero(); new_dim];
                for (a, e) in c.coeffs.iter().zip(exprs) {
                    if a.is_zero() {
                        continue;
                    }
                    for (t, x) in coeffs.iter_mut().zip(e) {
                        if !x.is_zero() {
                            *t += a * x;
                        }
                    }
                }
                LinearConstraint::new(coeffs, c.relation, c.bound.clone())
            })
            .collect();
        Ok(Polyhedron { dim: new_dim, constraints })
    }

    /// Exchanges coordinates `i` and `j`.
    pub fn swap_coordinates(&self, i: usize, j: usize) -> Result<Polyhedron> {
        for k in [i, j] {
            if k >= self.dim {
                return Err(GeometryError::IndexOutOfRange { index: k, dim: self.dim });
            }
        }
        let mut p = self.clone();
        for c in p.constraints.iter_mut() {
            c.coeffs.swap(i, j);
        }
        Ok(p)
    }

    /// Debug dump: one constraint per line, `a1 ... aD rel b`.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for c in &self.constraints {
            out.push_str(&c.to_string());
            out.push('\n');
        }
        out
    }

    /// Parses the [`dump`](Self::dump) format. Blank lines and `#` comments
    /// are ignored.
    pub fn parse_dump(dim: usize, text: &str) -> Result<Polyhedron> {
        let mut constraints = Vec::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: String| GeometryError::Dump { line: n + 1, message };
            let tokens: Vec<&str> = line.split_whitespace().collect();
            if tokens.len() != dim + 2 {
                return Err(err(format!("expected {} fields, found {}", dim + 2, tokens.len())));
            }
            let relation = match tokens[dim] {
                "<=" => Relation::Le,
                "<" => Relation::Lt,
                "=" => Relation::Eq,
                other => return Err(err(format!("unknown relation `{other}`"))),
            };
            let parse = |t: &str| parse_rational(t).map_err(|e| err(e.to_string()));
            let coeffs = tokens[..dim].iter().map(|t| parse(t)).collect::<Result<Vec<_>>>()?;
            let bound = parse(tokens[dim + 1])?;
            constraints.push(LinearConstraint::new(coeffs, relation, bound));
        }
        Ok(Polyhedron { dim, constraints })
    }
}

impl fmt::Display for Polyhedron {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.dump())
    }
}

fn closed_lp(dim: usize, constraints: &[LinearConstraint], objective: &[Rational], direction: Direction) -> Optimum {
    let rows: Vec<Row<'_>> = constraints
        .iter()
        .filter(|c| c.constant_truth() != Some(true))
        .map(|c| Row { coeffs: &c.coeffs, bound: &c.bound, equality: c.relation == Relation::Eq })
        .collect();
    optimize_free(dim, &rows, objective, direction)
}

/// Brings the equalities into reduced row echelon form (pivots taken from the
/// last column backwards), eliminates pivot columns from the inequalities and
/// normalizes everything. Returns `None` if the equalities are inconsistent
/// or some inequality reduces to a false constant.
pub(crate) fn reduce_modulo_equalities(dim: usize, constraints: Vec<LinearConstraint>) -> Option<Vec<LinearConstraint>> {
    let (mut pending, inequalities): (Vec<_>, Vec<_>) =
        constraints.into_iter().partition(|c| c.relation == Relation::Eq);

    let mut pivots: Vec<(usize, LinearConstraint)> = Vec::new();
    for col in (0..dim).rev() {
        let Some(idx) = pending.iter().position(|c| !c.coeffs[col].is_zero()) else {
            continue;
        };
        let mut row = pending.swap_remove(idx);
        let p = row.coeffs[col].clone();
        row.coeffs.iter_mut().for_each(|x| *x /= &p);
        row.bound /= &p;
        for other in pending.iter_mut().chain(pivots.iter_mut().map(|(_, c)| c)) {
            eliminate_with(other, &row, col);
        }
        pivots.push((col, row));
    }
    if pending.iter().any(|c| !c.bound.is_zero()) {
        return None;
    }

    let mut out: Vec<LinearConstraint> = Vec::with_capacity(pivots.len() + inequalities.len());
    for mut c in inequalities {
        for (col, row) in &pivots {
            eliminate_with(&mut c, row, *col);
        }
        match c.constant_truth() {
            Some(true) => continue,
            Some(false) => return None,
            None => {}
        }
        let n = c.normalized();
        if !out.contains(&n) {
            out.push(n);
        }
    }
    let mut eqs: Vec<LinearConstraint> = pivots.into_iter().map(|(_, c)| c.normalized()).collect();
    eqs.extend(out);
    Some(eqs)
}

// target -= target[col] * row, where row[col] == 1.
fn eliminate_with(target: &mut LinearConstraint, row: &LinearConstraint, col: usize) {
    let f = target.coeffs[col].clone();
    if f.is_zero() {
        return;
    }
    for (t, r) in target.coeffs.iter_mut().zip(&row.coeffs) {
        if !r.is_zero() {
            *t -= &f * r;
        }
    }
    target.bound -= &f * &row.bound;
}
