//! Exact two-phase simplex over the rationals.
//!
//! Dense tableau with Bland's rule, so it always terminates. Sized for the
//! small systems this crate produces (tens of variables, a few hundred rows).

use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

/// `minimize c.z subject to A z = b, z >= 0`.
#[derive(Debug, Clone)]
pub struct StandardLp {
    pub a: Vec<Vec<Rational>>,
    pub b: Vec<Rational>,
    pub c: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpResult {
    /// Optimal value and a basic optimal solution.
    Optimal { value: Rational, z: Vec<Rational> },
    Unbounded,
    Infeasible,
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    // last column is the right-hand side
    cost: Vec<Rational>,
    basis: Vec<usize>,
}

impl Tableau {
    fn width(&self) -> usize {
        self.cost.len() - 1
    }

    fn pivot(&mut self, r: usize, col: usize) {
        let p = self.rows[r][col].clone();
        if !p.is_one() {
            for x in self.rows[r].iter_mut() {
                if !x.is_zero() {
                    *x /= &p;
                }
            }
        }
        let pivot_row = std::mem::take(&mut self.rows[r]);
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = row[col].clone();
            if f.is_zero() {
                continue;
            }
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        let f = self.cost[col].clone();
        if !f.is_zero() {
            for (x, y) in self.cost.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        self.rows[r] = pivot_row;
        self.basis[r] = col;
    }

    /// Runs Bland's rule on columns `< allowed`. Returns false when unbounded.
    fn run(&mut self, allowed: usize) -> bool {
        loop {
            let Some(col) = (0..allowed).find(|&j| self.cost[j].is_negative()) else {
                return true;
            };
            let rhs = self.width();
            let mut best: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[col].is_positive() {
                    continue;
                }
                let ratio = &row[rhs] / &row[col];
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                None => return false,
                Some((r, _)) => self.pivot(r, col),
            }
        }
    }
}

pub fn solve_standard(lp: &StandardLp) -> LpResult {
    let m = lp.a.len();
    let n = lp.c.len();
    debug_assert_eq!(lp.b.len(), m);

    // Phase 1: one artificial per row.
    let mut rows = Vec::with_capacity(m);
    for (row, b) in lp.a.iter().zip(&lp.b) {
        debug_assert_eq!(row.len(), n);
        let flip = b.is_negative();
        let mut r: Vec<Rational> = Vec::with_capacity(n + m + 1);
        r.extend(row.iter().map(|x| if flip { -x } else { x.clone() }));
        r.extend(std::iter::repeat_n(Rational::zero(), m));
        r.push(if flip { -b } else { b.clone() });
        rows.push(r);
    }
    for (i, r) in rows.iter_mut().enumerate() {
        r[n + i] = Rational::one();
    }
    let mut cost = vec![Rational::zero(); n + m + 1];
    for r in &rows {
        for j in 0..n {
            cost[j] -= &r[j];
        }
        cost[n + m] -= &r[n + m];
    }
    let mut t = Tableau { rows, cost, basis: (n..n + m).collect() };
    t.run(n + m);
    if t.cost[n + m].is_negative() {
        return LpResult::Infeasible;
    }

    // Drive artificials out of the basis; rows where that is impossible are
    // linearly dependent and dropped.
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= n {
            match (0..n).find(|&j| !t.rows[i][j].is_zero()) {
                Some(j) => t.pivot(i, j),
                None => {
                    t.rows.remove(i);
                    t.basis.remove(i);
                    continue;
                }
            }
        }
        i += 1;
    }
    for r in t.rows.iter_mut() {
        let rhs = r[n + m].clone();
        r.truncate(n);
        r.push(rhs);
    }

    // Phase 2.
    let mut cost: Vec<Rational> = lp.c.clone();
    cost.push(Rational::zero());
    for (r, &bcol) in t.rows.iter().zip(&t.basis) {
        let cb = lp.c[bcol].clone();
        if cb.is_zero() {
            continue;
        }
        for (x, y) in cost.iter_mut().zip(r) {
            *x -= &cb * y;
        }
    }
    let mut t = Tableau { rows: t.rows, cost, basis: t.basis };
    if !t.run(n) {
        return LpResult::Unbounded;
    }
    let mut z = vec![Rational::zero(); n];
    for (r, &bcol) in t.rows.iter().zip(&t.basis) {
        z[bcol] = r[n].clone();
    }
    LpResult::Optimal { value: -t.cost[n].clone(), z }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Minimize,
    Maximize,
}

/// Outcome of optimizing a linear objective over a polyhedron.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Optimum {
    /// The optimal value and a point attaining it (over the closure).
    Finite { value: Rational, point: Vec<Rational> },
    Unbounded,
    Infeasible,
}

impl Optimum {
    pub fn value(&self) -> Option<&Rational> {
        match self {
            Optimum::Finite { value, .. } => Some(value),
            _ => None,
        }
    }
}

/// A closed row `coeffs . x <= bound` (or `=` when `equality`).
#[derive(Debug, Clone)]
pub struct Row<'a> {
    pub coeffs: &'a [Rational],
    pub bound: &'a Rational,
    pub equality: bool,
}

/// Optimizes over `{x in R^dim : rows}` with free variables.
pub fn optimize_free(dim: usize, rows: &[Row<'_>], objective: &[Rational], direction: Direction) -> Optimum {
    // x = u - v, one slack per inequality.
    let slacks = rows.iter().filter(|r| !r.equality).count();
    let n = 2 * dim + slacks;
    let mut a = Vec::with_capacity(rows.len());
    let mut b = Vec::with_capacity(rows.len());
    let mut s = 0;
    for r in rows {
        debug_assert_eq!(r.coeffs.len(), dim);
        let mut row = vec![Rational::zero(); n];
        for (j, c) in r.coeffs.iter().enumerate() {
            if !c.is_zero() {
                row[j] = c.clone();
                row[dim + j] = -c;
            }
        }
        if !r.equality {
            row[2 * dim + s] = Rational::one();
            s += 1;
        }
        a.push(row);
        b.push(r.bound.clone());
    }
    let sign = match direction {
        Direction::Minimize => Rational::one(),
        Direction::Maximize => -Rational::one(),
    };
    let mut c = vec![Rational::zero(); n];
    for (j, o) in objective.iter().enumerate() {
        c[j] = &sign * o;
        c[dim + j] = -&sign * o;
    }
    match solve_standard(&StandardLp { a, b, c }) {
        LpResult::Infeasible => Optimum::Infeasible,
        LpResult::Unbounded => Optimum::Unbounded,
        LpResult::Optimal { value, z } => {
            let point = (0..dim).map(|j| &z[j] - &z[dim + j]).collect();
            Optimum::Finite { value: sign * value, point }
        }
    }
}
