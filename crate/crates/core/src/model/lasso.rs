use std::fmt;

/// The ultimately periodic word `prefix . cycle^omega`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LassoWord {
    pub prefix: Vec<String>,
    pub cycle: Vec<String>,
}

impl LassoWord {
    /// Panics if `cycle` is empty.
    pub fn new(prefix: Vec<String>, cycle: Vec<String>) -> Self {
        assert!(!cycle.is_empty(), "lasso cycle must be nonempty");
        LassoWord { prefix, cycle }
    }

    pub fn from_strs(prefix: &[&str], cycle: &[&str]) -> Self {
        Self::new(prefix.iter().map(|s| s.to_string()).collect(), cycle.iter().map(|s| s.to_string()).collect())
    }

    /// Same word with the cycle replaced by its primitive root.
    pub fn with_primitive_cycle(mut self) -> Self {
        let n = self.cycle.len();
        if let Some(p) = (1..=n).find(|&p| n.is_multiple_of(p) && (p..n).all(|i| self.cycle[i] == self.cycle[i - p])) {
            self.cycle.truncate(p);
        }
        self
    }
}

impl fmt::Display for LassoWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.prefix {
            write!(f, "{l} ")?;
        }
        write!(f, "({})^w", self.cycle.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primitive_root() {
        let w = LassoWord::from_strs(&[], &["a", "b", "a", "b"]).with_primitive_cycle();
        assert_eq!(w.cycle, vec!["a", "b"]);
        let w = LassoWord::from_strs(&["x"], &["a", "a", "b"]).with_primitive_cycle();
        assert_eq!(w.cycle.len(), 3);
        assert_eq!(w.to_string(), "x (a a b)^w");
    }
}
