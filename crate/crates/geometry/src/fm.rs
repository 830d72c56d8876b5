//! Fourier-Motzkin elimination with strict and equality constraints.

use num_traits::{Signed, Zero};

use crate::constraint::{LinearConstraint, Relation};
use crate::error::{GeometryError, Result};
use crate::polyhedron::Polyhedron;
use crate::region::Region;

/// Projects out coordinate `var`: the result lives in dimension `dim - 1`
/// and contains `x` iff some value of `x_var` extends `x` into `p`.
pub fn eliminate_polyhedron(p: &Polyhedron, var: usize) -> Result<Polyhedron> {
    let dim = p.dim();
    if var >= dim {
        return Err(GeometryError::IndexOutOfRange { index: var, dim });
    }
    let p = p.minimize();
    if p == Polyhedron::empty(dim) {
        return Ok(Polyhedron::empty(dim - 1));
    }
    let constraints = p.into_constraints();

    let mut out: Vec<LinearConstraint> = Vec::new();
    if let Some(eq) = constraints.iter().find(|c| c.relation == Relation::Eq && !c.coeffs[var].is_zero()) {
        let pivot = eq.coeffs[var].clone();
        for c in &constraints {
            if std::ptr::eq(c, eq) {
                continue;
            }
            let f = &c.coeffs[var] / &pivot;
            let mut coeffs = c.coeffs.clone();
            let mut bound = c.bound.clone();
            if !f.is_zero() {
                for (t, e) in coeffs.iter_mut().zip(&eq.coeffs) {
                    *t -= &f * e;
                }
                bound -= &f * &eq.bound;
            }
            out.push(LinearConstraint::new(drop_column(coeffs, var), c.relation, bound));
        }
    } else {
        let mut upper = Vec::new();
        let mut lower = Vec::new();
        for c in &constraints {
            let a = &c.coeffs[var];
            if a.is_zero() {
                out.push(LinearConstraint::new(drop_column(c.coeffs.clone(), var), c.relation, c.bound.clone()));
            } else if a.is_positive() {
                upper.push(c);
            } else {
                lower.push(c);
            }
        }
        for u in &upper {
            for l in &lower {
                let su = -&l.coeffs[var];
                let sl = u.coeffs[var].clone();
                let coeffs: Vec<_> = u.coeffs.iter().zip(&l.coeffs).map(|(a, b)| &su * a + &sl * b).collect();
                let bound = &su * &u.bound + &sl * &l.bound;
                let relation = if u.relation.is_strict() || l.relation.is_strict() { Relation::Lt } else { Relation::Le };
                out.push(LinearConstraint::new(drop_column(coeffs, var), relation, bound));
            }
        }
    }
    Ok(Polyhedron::new(dim - 1, out)?.minimize())
}

/// Projects out coordinate `var` from every disjunct; empty disjuncts are dropped.
pub fn eliminate(r: &Region, var: usize) -> Result<Region> {
    let dim = r.dim();
    if var >= dim {
        return Err(GeometryError::IndexOutOfRange { index: var, dim });
    }
    let empty = Polyhedron::empty(dim - 1);
    let mut disjuncts = Vec::new();
    for p in r.disjuncts() {
        let q = eliminate_polyhedron(p, var)?;
        if q != empty {
            disjuncts.push(q);
        }
    }
    Region::new(dim - 1, disjuncts)
}

fn drop_column<T>(mut v: Vec<T>, var: usize) -> Vec<T> {
    v.remove(var);
    v
}
