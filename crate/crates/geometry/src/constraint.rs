use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::{dot, Display, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Relation {
    Le,
    Lt,
    Eq,
}

impl Relation {
    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Le => "<=",
            Relation::Lt => "<",
            Relation::Eq => "=",
        }
    }

    pub fn is_strict(self) -> bool {
        self == Relation::Lt
    }
}

/// `coeffs . x rel bound`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinearConstraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub bound: Rational,
}

impl LinearConstraint {
    pub fn new(coeffs: Vec<Rational>, relation: Relation, bound: Rational) -> Self {
        LinearConstraint { coeffs, relation, bound }
    }

    pub fn le(coeffs: Vec<Rational>, bound: Rational) -> Self {
        Self::new(coeffs, Relation::Le, bound)
    }

    pub fn lt(coeffs: Vec<Rational>, bound: Rational) -> Self {
        Self::new(coeffs, Relation::Lt, bound)
    }

    pub fn eq(coeffs: Vec<Rational>, bound: Rational) -> Self {
        Self::new(coeffs, Relation::Eq, bound)
    }

    /// `coeffs . x >= bound`.
    pub fn ge(coeffs: Vec<Rational>, bound: Rational) -> Self {
        Self::le(coeffs.into_iter().map(|c| -c).collect(), -bound)
    }

    /// `coeffs . x > bound`.
    pub fn gt(coeffs: Vec<Rational>, bound: Rational) -> Self {
        Self::lt(coeffs.into_iter().map(|c| -c).collect(), -bound)
    }

    /// `x_i rel value` in dimension `dim`.
    pub fn coordinate(dim: usize, i: usize, relation: Relation, value: Rational) -> Self {
        let mut coeffs = vec![Rational::zero(); dim];
        coeffs[i] = Rational::one();
        Self::new(coeffs, relation, value)
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Truth value of a constraint with all-zero coefficients.
    pub fn constant_truth(&self) -> Option<bool> {
        if !self.is_constant() {
            return None;
        }
        let zero = Rational::zero();
        Some(match self.relation {
            Relation::Le => zero <= self.bound,
            Relation::Lt => zero < self.bound,
            Relation::Eq => zero == self.bound,
        })
    }

    pub fn satisfied_by(&self, x: &[Rational]) -> bool {
        let lhs = dot(&self.coeffs, x);
        match self.relation {
            Relation::Le => lhs <= self.bound,
            Relation::Lt => lhs < self.bound,
            Relation::Eq => lhs == self.bound,
        }
    }

    /// Same constraint scaled to coprime integers. Equalities get a positive
    /// leading coefficient.
    pub fn normalized(&self) -> Self {
        let l = self
            .coeffs
            .iter()
            .chain(std::iter::once(&self.bound))
            .fold(BigInt::one(), |l, x| l.lcm(x.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .chain(std::iter::once(&self.bound))
            .map(|x| (x * Rational::from_integer(l.clone())).to_integer())
            .collect();
        let mut g = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
        if g.is_zero() {
            return self.clone();
        }
        if self.relation == Relation::Eq {
            if let Some(lead) = ints.iter().find(|x| !x.is_zero()) {
                if lead.is_negative() {
                    g = -g;
                }
            }
        }
        let mut scaled: Vec<Rational> = ints.into_iter().map(|x| Rational::from_integer(x / &g)).collect();
        let bound = scaled.pop().expect("bound present");
        LinearConstraint { coeffs: scaled, relation: self.relation, bound }
    }

    /// Closed version (`<` becomes `<=`).
    pub fn closure(&self) -> Self {
        let mut c = self.clone();
        if c.relation == Relation::Lt {
            c.relation = Relation::Le;
        }
        c
    }

    /// Constraints whose union is the complement of this one.
    pub fn negation(&self) -> Vec<LinearConstraint> {
        let neg: Vec<Rational> = self.coeffs.iter().map(|c| -c).collect();
        match self.relation {
            Relation::Le => vec![Self::lt(neg, -&self.bound)],
            Relation::Lt => vec![Self::le(neg, -&self.bound)],
            Relation::Eq => vec![
                Self::lt(self.coeffs.clone(), self.bound.clone()),
                Self::lt(neg, -&self.bound),
            ],
        }
    }

    pub(crate) fn sort_key_cmp(&self, other: &Self) -> Ordering {
        self.relation
            .cmp(&other.relation)
            .then_with(|| self.coeffs.cmp(&other.coeffs))
            .then_with(|| self.bound.cmp(&other.bound))
    }
}

impl fmt::Display for LinearConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.coeffs {
            write!(f, "{} ", Display(c))?;
        }
        write!(f, "{} {}", self.relation.symbol(), Display(&self.bound))
    }
}
