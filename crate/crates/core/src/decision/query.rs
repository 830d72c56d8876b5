//! Multi-threshold queries over the limit-inferior and limit-superior
//! averages of the coordinates of a payoff automaton.
//!
//! ```text
//! formula := disj
//! disj    := conj ("||" conj)*
//! conj    := unary ("&&" unary)*
//! unary   := "!" unary | "(" formula ")" | linear cmp linear
//! linear  := ["-"] term (("+" | "-") term)*
//! term    := rational ["*"] var | rational | var
//! var     := "inf(" i ")" | "sup(" i ")"        (1 <= i <= d)
//! cmp     := "<" | "<=" | ">=" | ">"
//! ```

use mpae_geometry::{parse_rational, LinearConstraint, Polyhedron, Rational, Region, Relation};
use num_traits::{One, Zero};
use thiserror::Error;

use crate::error::Result;
use crate::model::{PayoffAutomaton, Semantics};
use crate::value::analyze_leaves;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QueryError {
    #[error("query syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("variable {name}({index}) is out of range for a {dim}-dimensional payoff")]
    VariableOutOfRange { name: &'static str, index: usize, dim: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cmp {
    Lt,
    Le,
    Ge,
    Gt,
}

impl Cmp {
    fn negated(self) -> Cmp {
        match self {
            Cmp::Lt => Cmp::Ge,
            Cmp::Le => Cmp::Gt,
            Cmp::Ge => Cmp::Lt,
            Cmp::Gt => Cmp::Le,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    /// One-based coordinate index.
    Inf(usize),
    Sup(usize),
}

/// `sum coeffs . vars + constant`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Linear {
    pub terms: Vec<(Rational, Var)>,
    pub constant: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Query {
    Atom(Linear, Cmp, Linear),
    Not(Box<Query>),
    And(Box<Query>, Box<Query>),
    Or(Box<Query>, Box<Query>),
}

pub fn parse_query(text: &str) -> std::result::Result<Query, QueryError> {
    let mut p = Parser { src: text, pos: 0 };
    let q = p.disjunction()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(q)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> QueryError {
        QueryError::Syntax { offset: self.pos, message: message.to_string() }
    }

    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn disjunction(&mut self) -> std::result::Result<Query, QueryError> {
        let mut q = self.conjunction()?;
        while self.eat("||") {
            q = Query::Or(Box::new(q), Box::new(self.conjunction()?));
        }
        Ok(q)
    }

    fn conjunction(&mut self) -> std::result::Result<Query, QueryError> {
        let mut q = self.unary()?;
        while self.eat("&&") {
            q = Query::And(Box::new(q), Box::new(self.unary()?));
        }
        Ok(q)
    }

    fn unary(&mut self) -> std::result::Result<Query, QueryError> {
        if self.eat("!") {
            return Ok(Query::Not(Box::new(self.unary()?)));
        }
        if self.eat("(") {
            let q = self.disjunction()?;
            if !self.eat(")") {
                return Err(self.error("expected `)`"));
            }
            return Ok(q);
        }
        let lhs = self.linear()?;
        let cmp = if self.eat("<=") {
            Cmp::Le
        } else if self.eat(">=") {
            Cmp::Ge
        } else if self.eat("<") {
            Cmp::Lt
        } else if self.eat(">") {
            Cmp::Gt
        } else {
            return Err(self.error("expected a comparison operator"));
        };
        let rhs = self.linear()?;
        Ok(Query::Atom(lhs, cmp, rhs))
    }

    fn linear(&mut self) -> std::result::Result<Linear, QueryError> {
        let mut out = Linear::default();
        let mut sign = if self.eat("-") { -Rational::one() } else { Rational::one() };
        loop {
            self.term(sign, &mut out)?;
            if self.eat("+") {
                sign = Rational::one();
            } else if self.eat("-") {
                sign = -Rational::one();
            } else {
                return Ok(out);
            }
        }
    }

    fn term(&mut self, sign: Rational, out: &mut Linear) -> std::result::Result<(), QueryError> {
        self.skip_ws();
        let coeff = match self.number()? {
            Some(c) => {
                self.eat("*");
                self.skip_ws();
                if !(self.rest().starts_with("inf") || self.rest().starts_with("sup")) {
                    out.constant += sign * c;
                    return Ok(());
                }
                c
            }
            None => Rational::one(),
        };
        let var = self.var()?;
        out.terms.push((sign * coeff, var));
        Ok(())
    }

    fn number(&mut self) -> std::result::Result<Option<Rational>, QueryError> {
        let len = self.rest().find(|c: char| !(c.is_ascii_digit() || c == '/')).unwrap_or(self.rest().len());
        if len == 0 {
            return Ok(None);
        }
        let text = &self.rest()[..len];
        let value = parse_rational(text).map_err(|e| self.error(&e.to_string()))?;
        self.pos += len;
        Ok(Some(value))
    }

    fn var(&mut self) -> std::result::Result<Var, QueryError> {
        let make: fn(usize) -> Var = if self.eat("inf") {
            Var::Inf
        } else if self.eat("sup") {
            Var::Sup
        } else {
            return Err(self.error("expected `inf(i)`, `sup(i)` or a rational"));
        };
        if !self.eat("(") {
            return Err(self.error("expected `(`"));
        }
        self.skip_ws();
        let len = self.rest().find(|c: char| !c.is_ascii_digit()).unwrap_or(self.rest().len());
        let index = self.rest()[..len].parse::<usize>().map_err(|_| self.error("expected a coordinate index"))?;
        self.pos += len;
        if !self.eat(")") {
            return Err(self.error("expected `)`"));
        }
        Ok(make(index))
    }
}

/// Disjunctive normal form over `2d` variables: `inf(1..d)` then `sup(1..d)`.
pub fn query_region(q: &Query, d: usize) -> std::result::Result<Region, QueryError> {
    let dnf = to_dnf(q, false, d)?;
    let disjuncts = dnf
        .into_iter()
        .map(|conj| Polyhedron::new(2 * d, conj).expect("atoms have dimension 2d"))
        .collect();
    Ok(Region::new(2 * d, disjuncts).expect("disjuncts have dimension 2d"))
}

fn to_dnf(q: &Query, negate: bool, d: usize) -> std::result::Result<Vec<Vec<LinearConstraint>>, QueryError> {
    Ok(match (q, negate) {
        (Query::Atom(l, cmp, r), _) => {
            let cmp = if negate { cmp.negated() } else { *cmp };
            vec![vec![atom(l, cmp, r, d)?]]
        }
        (Query::Not(inner), _) => to_dnf(inner, !negate, d)?,
        (Query::Or(a, b), false) | (Query::And(a, b), true) => {
            let mut out = to_dnf(a, negate, d)?;
            out.extend(to_dnf(b, negate, d)?);
            out
        }
        (Query::And(a, b), false) | (Query::Or(a, b), true) => {
            let left = to_dnf(a, negate, d)?;
            let right = to_dnf(b, negate, d)?;
            let mut out = Vec::with_capacity(left.len() * right.len());
            for x in &left {
                for y in &right {
                    out.push(x.iter().chain(y).cloned().collect());
                }
            }
            out
        }
    })
}

fn atom(l: &Linear, cmp: Cmp, r: &Linear, d: usize) -> std::result::Result<LinearConstraint, QueryError> {
    // (l - r) cmp 0, as coeffs . x  rel  bound
    let mut coeffs = vec![Rational::zero(); 2 * d];
    for (side, sign) in [(l, Rational::one()), (r, -Rational::one())] {
        for (c, v) in &side.terms {
            let (name, i, base) = match *v {
                Var::Inf(i) => ("inf", i, 0),
                Var::Sup(i) => ("sup", i, d),
            };
            if i == 0 || i > d {
                return Err(QueryError::VariableOutOfRange { name, index: i, dim: d });
            }
            coeffs[base + i - 1] += c * &sign;
        }
    }
    let bound = &r.constant - &l.constant;
    Ok(match cmp {
        Cmp::Le => LinearConstraint::le(coeffs, bound),
        Cmp::Lt => LinearConstraint::new(coeffs, Relation::Lt, bound),
        Cmp::Ge => LinearConstraint::ge(coeffs, bound),
        Cmp::Gt => LinearConstraint::gt(coeffs, bound),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QueryAnswer {
    pub sat: bool,
    /// A satisfying value vector `(inf_1..inf_d, sup_1..sup_d)` and its SCC.
    pub point: Option<Vec<Rational>>,
    pub scc: Option<usize>,
}

pub fn mt_query(payoff: &PayoffAutomaton, q: &Query, budget: usize) -> Result<QueryAnswer> {
    let d = payoff.dim;
    let region = query_region(q, d)?;
    let mut ids = Vec::with_capacity(2 * d);
    let mut automata = Vec::with_capacity(2 * d);
    for semantics in [Semantics::LimInf, Semantics::LimSup] {
        for i in 0..d {
            let a = payoff.coordinate(i, semantics);
            ids.push(a.id.clone());
            automata.push(a);
        }
    }
    let analysis = analyze_leaves(ids, automata, budget)?;
    for (scc, p) in &analysis.vector_set.per_scc {
        for cell in region.disjuncts() {
            if let Some(x) = p.intersect(cell)?.feasible_point() {
                return Ok(QueryAnswer { sat: true, point: Some(x), scc: Some(*scc) });
            }
        }
    }
    Ok(QueryAnswer { sat: false, point: None, scc: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::DEFAULT_CYCLE_BUDGET;
    use crate::error::Error;
    use crate::model::ValidatedSpec;

    const PAYOFF: &str = "automaton A liminf { alphabet a, b; initial q; q -a/0-> q; q -b/0-> q; }\n\
                          payoff P { alphabet a, b; initial q; q -a/(1,0)-> q; q -b/(0,1)-> q; }";

    fn ask(q: &str) -> Result<bool> {
        let s = ValidatedSpec::parse(PAYOFF).unwrap();
        let q = parse_query(q)?;
        Ok(mt_query(s.payoff("P")?, &q, DEFAULT_CYCLE_BUDGET)?.sat)
    }

    #[test]
    fn simplex_queries() {
        assert!(ask("inf(1) >= 1/2 && inf(2) >= 1/2").unwrap());
        assert!(!ask("inf(1) >= 1/2 && inf(2) > 1/2").unwrap());
        assert!(!ask("inf(1) > 0 && inf(1) < 0").unwrap());
        assert!(ask("!(inf(1) + inf(2) <= 1) || sup(1) >= 1").unwrap());
        assert!(!ask("!(inf(1) + inf(2) <= 1)").unwrap());
        assert!(ask("2*inf(1) - sup(2) >= 1 - 1").unwrap());
    }

    #[test]
    fn query_errors() {
        assert!(matches!(ask("inf(3) >= 0"), Err(Error::Query(QueryError::VariableOutOfRange { index: 3, .. }))));
        assert!(matches!(ask("inf(1) >= "), Err(Error::Query(QueryError::Syntax { .. }))));
        assert!(matches!(ask("inf(1) = 0"), Err(Error::Query(QueryError::Syntax { .. }))));
        assert!(matches!(ask("(inf(1) >= 0"), Err(Error::Query(QueryError::Syntax { .. }))));
    }

    #[test]
    fn negation_normal_form() {
        let q = parse_query("!(inf(1) < 1 && sup(1) >= 2)").unwrap();
        let r = query_region(&q, 1).unwrap();
        assert_eq!(r.disjuncts().len(), 2);
        assert!(r.contains(&[Rational::one(), Rational::zero()]));
    }
}
