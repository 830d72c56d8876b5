//! Explicit finite witness set whose minimum closure has the same hull as the
//! closure of the original hull. Intended as a low-dimensional cross-check.

use std::collections::HashSet;

use crate::constraint::{LinearConstraint, Relation};
use crate::error::{GeometryError, Result};
use crate::hull::{enumerate_vertices, hull_constraints};
use crate::rational::Rational;

pub const GAMMA_MAX_DIM: usize = 3;

/// Applies the plane-intersection step `d - 1` times. Each step intersects
/// `conv(points)` with every coordinate plane through a current point (some
/// coordinates fixed to that point's values) and adds the resulting vertices.
pub fn gamma_closure(points: &[Vec<Rational>]) -> Result<Vec<Vec<Rational>>> {
    let dim = points.first().ok_or(GeometryError::EmptyGeneratorSet)?.len();
    if dim > GAMMA_MAX_DIM {
        return Err(GeometryError::DimensionTooLarge { dim, max: GAMMA_MAX_DIM });
    }
    // Every added point lies in conv(points), so the hull never changes.
    let hull = hull_constraints(points, &[])?;
    let mut seen: HashSet<Vec<Rational>> = HashSet::new();
    let mut current: Vec<Vec<Rational>> = points.iter().filter(|p| seen.insert((*p).clone())).cloned().collect();
    let mut planes_done: HashSet<(u32, Vec<Rational>)> = HashSet::new();

    for _ in 1..dim {
        let mut added = Vec::new();
        for y in &current {
            // proper nonempty subsets of fixed coordinates
            for mask in 1u32..(1u32 << dim) - 1 {
                let fixed: Vec<Rational> = (0..dim).filter(|i| mask >> i & 1 == 1).map(|i| y[i].clone()).collect();
                if !planes_done.insert((mask, fixed)) {
                    continue;
                }
                let mut slice = hull.clone();
                for i in (0..dim).filter(|i| mask >> i & 1 == 1) {
                    slice.push(LinearConstraint::coordinate(dim, i, Relation::Eq, y[i].clone()))?;
                }
                for v in enumerate_vertices(&slice)? {
                    if seen.insert(v.clone()) {
                        added.push(v);
                    }
                }
            }
        }
        if added.is_empty() {
            break;
        }
        current.extend(added);
    }
    Ok(current)
}
