//! Conversions between generator and half-space form.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::constraint::{LinearConstraint, Relation};
use crate::dd::cone_generators;
use crate::error::{GeometryError, Result};
use crate::polyhedron::{reduce_modulo_equalities, Polyhedron};
use crate::rational::{clear_denominators, dot_int, integer_direction, Rational};

/// Irredundant half-space form of `conv(points) + cone(rays)`.
pub fn hull_constraints(points: &[Vec<Rational>], rays: &[Vec<Rational>]) -> Result<Polyhedron> {
    let dim = points.first().ok_or(GeometryError::EmptyGeneratorSet)?.len();
    for g in points.iter().chain(rays) {
        if g.len() != dim {
            return Err(GeometryError::DimensionMismatch { expected: dim, found: g.len() });
        }
    }
    // Homogenized generators (1, p) and (0, r); the dual cone's generators
    // (h0, hx) are the valid inequalities h0 + hx . x >= 0.
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(points.len() + rays.len());
    for p in points {
        let mut v = vec![Rational::one()];
        v.extend(p.iter().cloned());
        rows.push(clear_denominators(&v));
    }
    let point_rows = rows.len();
    for r in rays {
        let mut v = vec![BigInt::zero()];
        v.extend(integer_direction(r));
        rows.push(v);
    }
    let dual = cone_generators(&rows, dim + 1);

    let to_constraint = |h: &[BigInt], relation: Relation| {
        let coeffs: Vec<Rational> = h[1..].iter().map(|x| Rational::from_integer(-x)).collect();
        LinearConstraint::new(coeffs, relation, Rational::from_integer(h[0].clone()))
    };
    let mut constraints = Vec::new();
    for l in &dual.lineality {
        constraints.push(to_constraint(l, Relation::Eq));
    }
    for h in &dual.rays {
        // The face h0 >= 0 of the homogenized cone touches no point generator.
        if rows[..point_rows].iter().any(|g| dot_int(g, h).is_zero()) {
            constraints.push(to_constraint(h, Relation::Le));
        }
    }
    let constraints = reduce_modulo_equalities(dim, constraints).expect("hull of a nonempty set is consistent");
    Polyhedron::new(dim, constraints)
}

/// Vertex set of a bounded polyhedron, sorted. Strict constraints are read
/// as their closure.
pub fn enumerate_vertices(p: &Polyhedron) -> Result<Vec<Vec<Rational>>> {
    let dim = p.dim();
    let closed = p.closure();
    if closed.is_empty() {
        return Ok(Vec::new());
    }
    // (t, x) with t >= 0 and b t - a . x >= 0.
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for c in closed.constraints() {
        let mut v = vec![c.bound.clone()];
        v.extend(c.coeffs.iter().map(|a| -a));
        let v = clear_denominators(&v);
        if c.relation == Relation::Eq {
            rows.push(v.iter().map(|x| -x).collect());
        }
        rows.push(v);
    }
    let mut t = vec![BigInt::zero(); dim + 1];
    t[0] = BigInt::one();
    rows.push(t);
    let cone = cone_generators(&rows, dim + 1);
    if !cone.lineality.is_empty() {
        return Err(GeometryError::Unbounded);
    }
    let mut vertices = Vec::with_capacity(cone.rays.len());
    for r in &cone.rays {
        if !r[0].is_positive() {
            return Err(GeometryError::Unbounded);
        }
        let t = Rational::from_integer(r[0].clone());
        vertices.push(r[1..].iter().map(|x| Rational::from_integer(x.clone()) / &t).collect::<Vec<_>>());
    }
    vertices.sort();
    vertices.dedup();
    Ok(vertices)
}
