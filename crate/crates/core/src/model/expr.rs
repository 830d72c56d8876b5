use std::fmt;

use mpae_geometry::rational::Display as R;
use mpae_geometry::Rational;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Op {
    Max,
    Min,
    Sum,
}

impl Op {
    pub fn keyword(self) -> &'static str {
        match self {
            Op::Max => "max",
            Op::Min => "min",
            Op::Sum => "sum",
        }
    }

    pub fn apply(self, a: Rational, b: Rational) -> Rational {
        match self {
            Op::Max => a.max(b),
            Op::Min => a.min(b),
            Op::Sum => a + b,
        }
    }
}

/// A leaf after rewriting: a declared automaton, possibly complemented and
/// scaled by a positive factor. Leaves compare equal exactly when they denote
/// the same derived automaton.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LeafRef {
    pub base: String,
    pub negated: bool,
    pub factor: Rational,
}

impl LeafRef {
    pub fn new(base: impl Into<String>) -> Self {
        LeafRef { base: base.into(), negated: false, factor: Rational::one() }
    }

    /// Identifier of the derived automaton: `A`, `A#neg`, `A#scale(3/2)`,
    /// `A#neg#scale(2)`.
    pub fn id(&self) -> String {
        let mut s = self.base.clone();
        if self.negated {
            s.push_str("#neg");
        }
        if !self.factor.is_one() {
            s.push_str(&format!("#scale({})", R(&self.factor)));
        }
        s
    }

    pub fn complement(&self) -> Self {
        LeafRef { negated: !self.negated, ..self.clone() }
    }

    fn scaled(&self, c: &Rational) -> Self {
        debug_assert!(c.is_positive());
        LeafRef { factor: &self.factor * c, ..self.clone() }
    }
}

impl fmt::Display for LeafRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inner = if self.negated { format!("neg({})", self.base) } else { self.base.clone() };
        if self.factor.is_one() {
            f.write_str(&inner)
        } else {
            write!(f, "scale({}, {})", R(&self.factor), inner)
        }
    }
}

/// Expression tree over leaves with max, min and sum nodes only.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Expr {
    Leaf(LeafRef),
    Node(Op, Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn leaf(base: impl Into<String>) -> Self {
        Expr::Leaf(LeafRef::new(base))
    }

    pub fn node(op: Op, a: Expr, b: Expr) -> Self {
        Expr::Node(op, Box::new(a), Box::new(b))
    }

    pub fn max(a: Expr, b: Expr) -> Self {
        Self::node(Op::Max, a, b)
    }

    pub fn min(a: Expr, b: Expr) -> Self {
        Self::node(Op::Min, a, b)
    }

    pub fn sum(a: Expr, b: Expr) -> Self {
        Self::node(Op::Sum, a, b)
    }

    /// Distinct leaves in order of first occurrence.
    pub fn leaves(&self) -> Vec<LeafRef> {
        let mut out: Vec<LeafRef> = Vec::new();
        for l in self.occurrences() {
            if !out.contains(l) {
                out.push(l.clone());
            }
        }
        out
    }

    /// Leaf occurrences, left to right.
    pub fn occurrences(&self) -> Vec<&LeafRef> {
        let mut out = Vec::new();
        fn walk<'a>(e: &'a Expr, out: &mut Vec<&'a LeafRef>) {
            match e {
                Expr::Leaf(l) => out.push(l),
                Expr::Node(_, a, b) => {
                    walk(a, out);
                    walk(b, out);
                }
            }
        }
        walk(self, &mut out);
        out
    }

    pub fn count_ops(&self, op: Op) -> usize {
        match self {
            Expr::Leaf(_) => 0,
            Expr::Node(o, a, b) => usize::from(*o == op) + a.count_ops(op) + b.count_ops(op),
        }
    }

    pub fn sum_count(&self) -> usize {
        self.count_ops(Op::Sum)
    }

    /// Expression for `-L_E`: max and min swapped, leaves complemented.
    pub fn complement(&self) -> Expr {
        match self {
            Expr::Leaf(l) => Expr::Leaf(l.complement()),
            Expr::Node(op, a, b) => {
                let op = match op {
                    Op::Max => Op::Min,
                    Op::Min => Op::Max,
                    Op::Sum => Op::Sum,
                };
                Expr::node(op, a.complement(), b.complement())
            }
        }
    }

    /// Expression for `c * L_E`; `None` when `c` is zero.
    pub fn scale(&self, c: &Rational) -> Option<Expr> {
        if c.is_zero() {
            return None;
        }
        if c.is_negative() {
            return self.complement().scale(&-c);
        }
        Some(self.map_leaves(&|l| l.scaled(c)))
    }

    fn map_leaves(&self, f: &dyn Fn(&LeafRef) -> LeafRef) -> Expr {
        match self {
            Expr::Leaf(l) => Expr::Leaf(f(l)),
            Expr::Node(op, a, b) => Expr::node(*op, a.map_leaves(f), b.map_leaves(f)),
        }
    }

    /// Folds the tree given a value per leaf.
    pub fn eval(&self, value: &dyn Fn(&LeafRef) -> Rational) -> Rational {
        match self {
            Expr::Leaf(l) => value(l),
            Expr::Node(op, a, b) => op.apply(a.eval(value), b.eval(value)),
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Leaf(l) => l.fmt(f),
            Expr::Node(op, a, b) => write!(f, "{}({}, {})", op.keyword(), a, b),
        }
    }
}

/// Expression as written in the input, before complement and scaling are
/// pushed to the leaves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SurfaceExpr {
    Leaf(String),
    Node(Op, Box<SurfaceExpr>, Box<SurfaceExpr>),
    Neg(Box<SurfaceExpr>),
    Scale(Rational, Box<SurfaceExpr>),
}

impl SurfaceExpr {
    /// Pushes `neg` and `scale` to the leaves. Fails on a zero factor.
    pub fn lower(&self) -> Option<Expr> {
        match self {
            SurfaceExpr::Leaf(id) => Some(Expr::leaf(id.clone())),
            SurfaceExpr::Node(op, a, b) => Some(Expr::node(*op, a.lower()?, b.lower()?)),
            SurfaceExpr::Neg(e) => Some(e.lower()?.complement()),
            SurfaceExpr::Scale(c, e) => e.lower()?.scale(c),
        }
    }

    /// Identifiers of all leaves, left to right.
    pub fn leaf_ids(&self) -> Vec<&str> {
        match self {
            SurfaceExpr::Leaf(id) => vec![id.as_str()],
            SurfaceExpr::Node(_, a, b) => {
                let mut v = a.leaf_ids();
                v.extend(b.leaf_ids());
                v
            }
            SurfaceExpr::Neg(e) | SurfaceExpr::Scale(_, e) => e.leaf_ids(),
        }
    }
}

impl fmt::Display for SurfaceExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SurfaceExpr::Leaf(id) => f.write_str(id),
            SurfaceExpr::Node(op, a, b) => write!(f, "{}({}, {})", op.keyword(), a, b),
            SurfaceExpr::Neg(e) => write!(f, "neg({e})"),
            SurfaceExpr::Scale(c, e) => write!(f, "scale({}, {})", R(c), e),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use mpae_geometry::rational::{frac, int};

    fn a1() -> Expr {
        Expr::leaf("A1")
    }

    fn a2() -> Expr {
        Expr::leaf("A2")
    }

    #[test]
    fn complement_swaps_and_is_an_involution() {
        let e = Expr::max(a1(), a2());
        let c = e.complement();
        assert_eq!(c, Expr::min(Expr::Leaf(LeafRef::new("A1").complement()), Expr::Leaf(LeafRef::new("A2").complement())));
        assert_eq!(c.complement(), e);
        let s = Expr::sum(a1(), a2()).complement();
        assert!(matches!(s, Expr::Node(Op::Sum, _, _)));
    }

    #[test]
    fn scaling_rules() {
        let e = Expr::max(a1(), a2());
        assert_eq!(e.scale(&int(1)).unwrap(), e);
        assert_eq!(e.scale(&int(-1)).unwrap(), e.complement());
        assert!(e.scale(&int(0)).is_none());
        let s = a1().scale(&int(2)).unwrap().scale(&frac(1, 2)).unwrap();
        assert_eq!(s, a1());
    }

    #[test]
    fn derived_ids_and_display() {
        let l = LeafRef::new("A1").complement();
        assert_eq!(l.id(), "A1#neg");
        let l = LeafRef { factor: frac(3, 2), ..LeafRef::new("A1") };
        assert_eq!(l.id(), "A1#scale(3/2)");
        assert_eq!(l.to_string(), "scale(3/2, A1)");
        let e = Expr::sum(a1(), Expr::sum(a1(), a2()));
        assert_eq!(e.sum_count(), 2);
        assert_eq!(e.leaves().len(), 2);
        assert_eq!(e.occurrences().len(), 3);
    }

    #[test]
    fn surface_lowering() {
        let s = SurfaceExpr::Scale(int(-2), Box::new(SurfaceExpr::Leaf("A".into())));
        let e = s.lower().unwrap();
        assert_eq!(e.to_string(), "scale(2, neg(A))");
        assert!(SurfaceExpr::Scale(int(0), Box::new(SurfaceExpr::Leaf("A".into()))).lower().is_none());
    }
}
