//! Closure under coordinatewise minima: the finite closure of a point set and
//! the polyhedral closure of its convex hull.

use std::collections::HashSet;

use num_traits::One;

use crate::error::{GeometryError, Result};
use crate::hull::hull_constraints;
use crate::polyhedron::Polyhedron;
use crate::rational::Rational;

/// Coordinatewise minimum of a nonempty list of points.
pub fn f_min<'a>(points: impl IntoIterator<Item = &'a Vec<Rational>>) -> Option<Vec<Rational>> {
    let mut it = points.into_iter();
    let mut m = it.next()?.clone();
    for p in it {
        for (a, b) in m.iter_mut().zip(p) {
            if b < a {
                *a = b.clone();
            }
        }
    }
    Some(m)
}

fn check_points(points: &[Vec<Rational>]) -> Result<usize> {
    let dim = points.first().ok_or(GeometryError::EmptyGeneratorSet)?.len();
    for p in points {
        if p.len() != dim {
            return Err(GeometryError::DimensionMismatch { expected: dim, found: p.len() });
        }
    }
    Ok(dim)
}

/// `conv(points) - L_j`, where `L_j` is the face of the nonnegative orthant
/// with coordinate `j` (zero based) equal to zero.
pub fn face_difference(points: &[Vec<Rational>], j: usize) -> Result<Polyhedron> {
    let dim = check_points(points)?;
    if j >= dim {
        return Err(GeometryError::IndexOutOfRange { index: j, dim });
    }
    let rays: Vec<Vec<Rational>> = (0..dim)
        .filter(|&i| i != j)
        .map(|i| {
            let mut r = vec![Rational::from_integer(0.into()); dim];
            r[i] = -Rational::one();
            r
        })
        .collect();
    hull_constraints(points, &rays)
}

/// The closure of `conv(points)` under coordinatewise minima, as the
/// intersection of the face differences over all coordinates.
pub fn fmin_region(points: &[Vec<Rational>]) -> Result<Polyhedron> {
    let dim = check_points(points)?;
    let mut acc = Polyhedron::universe(dim);
    for j in 0..dim {
        acc = acc.intersect(&face_difference(points, j)?)?;
    }
    Ok(acc.canonical())
}

fn dedup(points: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let mut seen = HashSet::new();
    points.iter().filter(|p| seen.insert((*p).clone())).cloned().collect()
}

/// The closure of a finite set under coordinatewise minima. Input points come
/// first (deduplicated, in order), followed by new points in generation order.
///
/// Points are folded in one at a time: the closure of `S + p` is the closure
/// of `S`, plus `p`, plus `min(p, m)` for every `m` already in the closure.
pub fn fmin_finite(points: &[Vec<Rational>]) -> Result<Vec<Vec<Rational>>> {
    check_points(points)?;
    let inputs = dedup(points);
    let mut seen: HashSet<Vec<Rational>> = inputs.iter().cloned().collect();
    let mut closure: Vec<Vec<Rational>> = Vec::new();
    let mut generated: Vec<Vec<Rational>> = Vec::new();
    for p in &inputs {
        let len = closure.len();
        for k in 0..len {
            let m = f_min([p, &closure[k]]).expect("two points");
            if seen.insert(m.clone()) {
                closure.push(m.clone());
                generated.push(m);
            }
        }
        closure.push(p.clone());
    }
    let mut out = inputs;
    out.extend(generated);
    Ok(out)
}

/// Minima over every nonempty subset of size at most `max_size` (all subsets
/// when `None`). Exponential; meant as a cross-check.
pub fn fmin_subsets(points: &[Vec<Rational>], max_size: Option<usize>) -> Result<Vec<Vec<Rational>>> {
    check_points(points)?;
    let base = dedup(points);
    let limit = max_size.unwrap_or(base.len());
    let mut out = HashSet::new();
    for mask in 1u64..(1u64 << base.len()) {
        if mask.count_ones() as usize > limit {
            continue;
        }
        let chosen = (0..base.len()).filter(|i| mask >> i & 1 == 1).map(|i| &base[i]);
        out.insert(f_min(chosen).expect("nonempty mask"));
    }
    let mut v: Vec<_> = out.into_iter().collect();
    v.sort();
    Ok(v)
}

/// `rounds`-fold application of one round of pairwise minima.
pub fn pairwise_rounds(points: &[Vec<Rational>], rounds: usize) -> Result<Vec<Vec<Rational>>> {
    check_points(points)?;
    let mut cur = dedup(points);
    for _ in 0..rounds {
        let mut next: HashSet<Vec<Rational>> = cur.iter().cloned().collect();
        for i in 0..cur.len() {
            for j in i + 1..cur.len() {
                next.insert(f_min([&cur[i], &cur[j]]).expect("two points"));
            }
        }
        cur = next.into_iter().collect();
    }
    cur.sort();
    Ok(cur)
}
