use crate::error::{GeometryError, Result};
use crate::lp::{Direction, Optimum};
use crate::polyhedron::Polyhedron;
use crate::rational::Rational;

/// Finite union of polyhedra of one dimension. No disjuncts means the empty set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Region {
    dim: usize,
    disjuncts: Vec<Polyhedron>,
}

impl Region {
    pub fn new(dim: usize, disjuncts: Vec<Polyhedron>) -> Result<Self> {
        for p in &disjuncts {
            if p.dim() != dim {
                return Err(GeometryError::DimensionMismatch { expected: dim, found: p.dim() });
            }
        }
        Ok(Region { dim, disjuncts })
    }

    pub fn empty(dim: usize) -> Self {
        Region { dim, disjuncts: Vec::new() }
    }

    pub fn universe(dim: usize) -> Self {
        Region { dim, disjuncts: vec![Polyhedron::universe(dim)] }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn disjuncts(&self) -> &[Polyhedron] {
        &self.disjuncts
    }

    pub fn into_disjuncts(self) -> Vec<Polyhedron> {
        self.disjuncts
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.disjuncts.iter().any(|p| p.contains(x))
    }

    pub fn is_empty(&self) -> bool {
        self.disjuncts.iter().all(Polyhedron::is_empty)
    }

    pub fn union(&self, other: &Region) -> Result<Region> {
        if other.dim != self.dim {
            return Err(GeometryError::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        let mut disjuncts = self.disjuncts.clone();
        disjuncts.extend(other.disjuncts.iter().cloned());
        Ok(Region { dim: self.dim, disjuncts })
    }

    /// Pairwise intersection of the disjuncts.
    pub fn intersect(&self, other: &Region) -> Result<Region> {
        if other.dim != self.dim {
            return Err(GeometryError::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        let mut disjuncts = Vec::new();
        for a in &self.disjuncts {
            for b in &other.disjuncts {
                disjuncts.push(a.intersect(b)?);
            }
        }
        Ok(Region { dim: self.dim, disjuncts })
    }

    /// Minimizes each disjunct, drops empty ones and ones contained in an
    /// earlier survivor.
    pub fn simplify(&self) -> Region {
        let mut kept: Vec<Polyhedron> = Vec::new();
        for p in &self.disjuncts {
            let m = p.canonical();
            if m == Polyhedron::empty(self.dim) {
                continue;
            }
            if kept.iter().any(|k| m.is_subset_of(k)) {
                continue;
            }
            kept.retain(|k| !k.is_subset_of(&m));
            kept.push(m);
        }
        Region { dim: self.dim, disjuncts: kept }
    }

    pub fn map_disjuncts(&self, dim: usize, f: impl Fn(&Polyhedron) -> Result<Polyhedron>) -> Result<Region> {
        let disjuncts = self.disjuncts.iter().map(f).collect::<Result<Vec<_>>>()?;
        Region::new(dim, disjuncts)
    }

    /// Best value over all disjuncts.
    pub fn optimize(&self, objective: &[Rational], direction: Direction) -> Optimum {
        let mut best = Optimum::Infeasible;
        for p in &self.disjuncts {
            match p.optimize(objective, direction) {
                Optimum::Infeasible => {}
                Optimum::Unbounded => return Optimum::Unbounded,
                found @ Optimum::Finite { .. } => {
                    let better = match (&best, &found) {
                        (Optimum::Finite { value: b, .. }, Optimum::Finite { value: v, .. }) => match direction {
                            Direction::Maximize => v > b,
                            Direction::Minimize => v < b,
                        },
                        _ => true,
                    };
                    if better {
                        best = found;
                    }
                }
            }
        }
        best
    }
}

impl From<Polyhedron> for Region {
    fn from(p: Polyhedron) -> Self {
        Region { dim: p.dim(), disjuncts: vec![p] }
    }
}
