use mpae_geometry::{eliminate, GeometryError, LinearConstraint, Polyhedron, Rational, Region};
use num_traits::{One, Zero};

use crate::error::Result;
use crate::model::{Expr, Op};

/// Image of `r` under the projection merging coordinates `i < j` into
/// coordinate `i` with `op`. The result has one coordinate fewer.
pub fn apply_projection(r: &Region, op: Op, i: usize, j: usize) -> Result<Region> {
    let dim = r.dim();
    if i >= j || j >= dim {
        return Err(GeometryError::IndexOutOfRange { index: j.max(i), dim }.into());
    }
    let mut disjuncts = Vec::new();
    for p in r.disjuncts() {
        match op {
            Op::Min | Op::Max => {
                // keep the smaller (larger) value at i, then forget j; the
                // swapped copy covers the case where j holds the winner
                let mut order = vec![Rational::zero(); dim];
                order[i] = Rational::one();
                order[j] = -Rational::one();
                let keep_i = match op {
                    Op::Min => LinearConstraint::le(order, Rational::zero()),
                    _ => LinearConstraint::ge(order, Rational::zero()),
                };
                disjuncts.push(p.clone().with(keep_i.clone())?);
                disjuncts.push(p.swap_coordinates(i, j)?.with(keep_i)?);
            }
            Op::Sum => {
                // z_i = x_i + x_j: x_i = z_i - z_j, x_j = z_j
                let exprs: Vec<Vec<Rational>> = (0..dim)
                    .map(|k| {
                        let mut e = vec![Rational::zero(); dim];
                        e[k] = Rational::one();
                        if k == i {
                            e[j] = -Rational::one();
                        }
                        e
                    })
                    .collect();
                disjuncts.push(p.pullback(dim, &exprs)?);
            }
        }
    }
    Ok(eliminate(&Region::new(dim, disjuncts)?, j)?.simplify())
}

/// Folds `r`, given over one coordinate per leaf occurrence of `e` (left to
/// right), down to the one-dimensional image of the expression function.
pub fn fold_expression(r: &Region, e: &Expr) -> Result<Region> {
    debug_assert_eq!(r.dim(), e.occurrences().len());
    fold(r.clone(), e, 0)
}

fn fold(r: Region, e: &Expr, offset: usize) -> Result<Region> {
    match e {
        Expr::Leaf(_) => Ok(r),
        Expr::Node(op, a, b) => {
            let r = fold(r, a, offset)?;
            let r = fold(r, b, offset + 1)?;
            apply_projection(&r, *op, offset, offset + 1)
        }
    }
}

/// Polyhedron in occurrence coordinates from one in leaf coordinates.
pub(crate) fn lift_to_occurrences(p: &Polyhedron, occurrence_leaf: &[usize]) -> Result<Polyhedron> {
    let m = occurrence_leaf.len();
    let mut first = vec![usize::MAX; p.dim()];
    for (t, &k) in occurrence_leaf.iter().enumerate() {
        if first[k] == usize::MAX {
            first[k] = t;
        }
    }
    let exprs: Vec<Vec<Rational>> = first
        .iter()
        .map(|&t| {
            let mut e = vec![Rational::zero(); m];
            e[t] = Rational::one();
            e
        })
        .collect();
    let mut lifted = p.pullback(m, &exprs)?;
    for (t, &k) in occurrence_leaf.iter().enumerate() {
        if first[k] != t {
            let mut c = vec![Rational::zero(); m];
            c[t] = Rational::one();
            c[first[k]] = -Rational::one();
            lifted.push(LinearConstraint::eq(c, Rational::zero()))?;
        }
    }
    Ok(lifted)
}
