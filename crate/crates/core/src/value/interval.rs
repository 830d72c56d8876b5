use std::fmt;

use mpae_geometry::rational::Display as R;
use mpae_geometry::Rational;
use num_traits::Zero;

/// Closed interval `[lo, hi]` with `lo <= hi`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        assert!(lo <= hi, "empty interval");
        Interval { lo, hi }
    }

    pub fn point(x: Rational) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    /// Distance from `x` to the interval, zero inside.
    pub fn distance_to(&self, x: &Rational) -> Rational {
        if x < &self.lo {
            &self.lo - x
        } else if x > &self.hi {
            x - &self.hi
        } else {
            Rational::zero()
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", R(&self.lo), R(&self.hi))
    }
}

/// Finite union of closed intervals, kept sorted with overlapping and
/// abutting pieces merged.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntervalUnion {
    intervals: Vec<Interval>,
}

impl IntervalUnion {
    pub fn new(mut intervals: Vec<Interval>) -> Self {
        intervals.sort_by(|a, b| a.lo.cmp(&b.lo).then_with(|| a.hi.cmp(&b.hi)));
        let mut out: Vec<Interval> = Vec::with_capacity(intervals.len());
        for i in intervals {
            match out.last_mut() {
                Some(last) if i.lo <= last.hi => {
                    if i.hi > last.hi {
                        last.hi = i.hi;
                    }
                }
                _ => out.push(i),
            }
        }
        IntervalUnion { intervals: out }
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn contains(&self, x: &Rational) -> bool {
        self.intervals.iter().any(|i| i.contains(x))
    }

    pub fn min(&self) -> Option<&Rational> {
        self.intervals.first().map(|i| &i.lo)
    }

    pub fn max(&self) -> Option<&Rational> {
        self.intervals.last().map(|i| &i.hi)
    }

    /// Distance from `x` to the set; `None` when the set is empty.
    pub fn distance_to(&self, x: &Rational) -> Option<Rational> {
        self.intervals.iter().map(|i| i.distance_to(x)).min()
    }
}

impl fmt::Display for IntervalUnion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.intervals.is_empty() {
            return f.write_str("{}");
        }
        let parts: Vec<String> = self.intervals.iter().map(|i| i.to_string()).collect();
        f.write_str(&parts.join(" u "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use mpae_geometry::rational::{frac, int};

    #[test]
    fn abutting_pieces_merge() {
        let u = IntervalUnion::new(vec![Interval::new(frac(1, 2), int(1)), Interval::new(int(0), frac(1, 2))]);
        assert_eq!(u.intervals(), &[Interval::new(int(0), int(1))]);
        let v = IntervalUnion::new(vec![Interval::point(int(2)), Interval::point(int(1))]);
        assert_eq!(v.intervals().len(), 2);
        assert_eq!(v.to_string(), "[1, 1] u [2, 2]");
        assert_eq!(v.distance_to(&frac(7, 4)), Some(frac(1, 4)));
        assert!(!v.contains(&frac(3, 2)));
    }
}
