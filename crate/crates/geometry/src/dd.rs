//! Double-description method for polyhedral cones.
//!
//! Computes a minimal generating system of `{y : A y >= 0}` by inserting the
//! rows of `A` one at a time. Vectors are primitive integer vectors, so the
//! combination step stays fraction free. The same routine serves both
//! directions of the hull conversion: generators of a cone are the
//! constraints of its dual.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::rational::{dot_int, primitive};

/// Minimal generating system of a cone: a basis of its lineality space plus
/// one representative per extreme ray of the pointed quotient.
#[derive(Debug, Clone, Default)]
pub struct ConeGenerators {
    pub lineality: Vec<Vec<BigInt>>,
    pub rays: Vec<Vec<BigInt>>,
}

#[derive(Clone)]
struct Ray {
    v: Vec<BigInt>,
    zeros: BitSet,
}

#[derive(Clone, PartialEq, Eq)]
struct BitSet(Vec<u64>);

impl BitSet {
    fn new(bits: usize) -> Self {
        BitSet(vec![0; bits.div_ceil(64).max(1)])
    }

    fn full(len: usize, bits: usize) -> Self {
        let mut s = Self::new(bits);
        for i in 0..len {
            s.insert(i);
        }
        s
    }

    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn intersection(&self, other: &Self) -> Self {
        BitSet(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn is_superset(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & b == *b)
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
}

/// Generators of `{y in R^dim : row . y >= 0 for every row}`.
pub fn cone_generators(rows: &[Vec<BigInt>], dim: usize) -> ConeGenerators {
    let bits = rows.len();
    let mut lineality: Vec<Vec<BigInt>> = (0..dim)
        .map(|i| {
            let mut e = vec![BigInt::zero(); dim];
            e[i] = BigInt::from(1);
            e
        })
        .collect();
    let mut rays: Vec<Ray> = Vec::new();

    for (k, row) in rows.iter().enumerate() {
        debug_assert_eq!(row.len(), dim);
        if row.iter().all(Zero::is_zero) {
            for r in rays.iter_mut() {
                r.zeros.insert(k);
            }
            continue;
        }

        if let Some(pos) = lineality.iter().position(|l| !dot_int(row, l).is_zero()) {
            let mut pivot = lineality.swap_remove(pos);
            let mut s = dot_int(row, &pivot);
            if s.is_negative() {
                pivot.iter_mut().for_each(|x| *x = -&*x);
                s = -s;
            }
            for l in lineality.iter_mut() {
                let t = dot_int(row, l);
                if !t.is_zero() {
                    combine_into(l, &s, &t, &pivot);
                }
            }
            for r in rays.iter_mut() {
                let t = dot_int(row, &r.v);
                if !t.is_zero() {
                    combine_into(&mut r.v, &s, &t, &pivot);
                }
                r.zeros.insert(k);
            }
            // The pivot was a line of the previous cone, hence tight on all
            // rows seen so far.
            rays.push(Ray { v: pivot, zeros: BitSet::full(k, bits) });
            continue;
        }

        let values: Vec<BigInt> = rays.iter().map(|r| dot_int(row, &r.v)).collect();
        if values.iter().all(|v| !v.is_negative()) {
            for (r, v) in rays.iter_mut().zip(&values) {
                if v.is_zero() {
                    r.zeros.insert(k);
                }
            }
            continue;
        }

        let plus: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_positive()).collect();
        let minus: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_negative()).collect();
        let pointed_dim = dim - lineality.len();

        let mut next: Vec<Ray> = Vec::with_capacity(rays.len());
        for &p in &plus {
            for &n in &minus {
                let common = rays[p].zeros.intersection(&rays[n].zeros);
                if pointed_dim >= 2 && common.count() + 2 < pointed_dim {
                    continue;
                }
                let adjacent = (0..rays.len())
                    .all(|o| o == p || o == n || !rays[o].zeros.is_superset(&common));
                if !adjacent {
                    continue;
                }
                // values[p] > 0 > values[n]
                let mut v: Vec<BigInt> = rays[n]
                    .v
                    .iter()
                    .zip(&rays[p].v)
                    .map(|(xn, xp)| &values[p] * xn - &values[n] * xp)
                    .collect();
                primitive(&mut v);
                let mut zeros = common;
                zeros.insert(k);
                next.push(Ray { v, zeros });
            }
        }
        for (i, mut r) in rays.into_iter().enumerate() {
            if values[i].is_negative() {
                continue;
            }
            if values[i].is_zero() {
                r.zeros.insert(k);
            }
            next.push(r);
        }
        rays = next;
    }

    ConeGenerators {
        lineality,
        rays: rays.into_iter().map(|r| r.v).collect(),
    }
}

// target <- s * target - t * pivot, then made primitive.
fn combine_into(target: &mut [BigInt], s: &BigInt, t: &BigInt, pivot: &[BigInt]) {
    for (x, p) in target.iter_mut().zip(pivot) {
        *x = s * &*x - t * p;
    }
    primitive(target);
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn positive_quadrant() {
        let g = cone_generators(&[v(&[1, 0]), v(&[0, 1])], 2);
        assert!(g.lineality.is_empty());
        let mut rays = g.rays.clone();
        rays.sort();
        assert_eq!(rays, vec![v(&[0, 1]), v(&[1, 0])]);
    }

    #[test]
    fn half_plane_keeps_a_line() {
        let g = cone_generators(&[v(&[1, 0])], 2);
        assert_eq!(g.lineality.len(), 1);
        assert_eq!(g.rays.len(), 1);
        assert!(g.lineality[0][0].is_zero());
        assert!(g.rays[0][0].is_positive());
    }

    #[test]
    fn opposite_rows_give_hyperplane() {
        let g = cone_generators(&[v(&[1, 1]), v(&[-1, -1])], 2);
        assert_eq!(g.lineality.len(), 1);
        assert!(g.rays.is_empty());
        let l = &g.lineality[0];
        assert_eq!(&l[0] + &l[1], BigInt::zero());
    }

    #[test]
    fn square_pyramid_cone() {
        // cone over the unit square at height 1: x>=0, y>=0, t-x>=0, t-y>=0
        let rows = [v(&[0, 1, 0]), v(&[0, 0, 1]), v(&[1, -1, 0]), v(&[1, 0, -1])];
        let g = cone_generators(&rows, 3);
        assert!(g.lineality.is_empty());
        let mut rays = g.rays.clone();
        rays.sort();
        assert_eq!(rays, vec![v(&[1, 0, 0]), v(&[1, 0, 1]), v(&[1, 1, 0]), v(&[1, 1, 1])]);
    }
}
