//! Parser for the `.mpa` text format.
//!
//! ```text
//! automaton A1 liminf { alphabet a, b; initial q0; q0 -a/1-> q0; q0 -b/0-> q0; }
//! payoff P { alphabet a, b; initial q; q -a/(1,0)-> q; q -b/(0,1)-> q; }
//! expression E = max(A1, scale(1/2, neg(A2)));
//! ```
//!
//! Identifiers are runs of ASCII letters, digits and underscores. `#` starts
//! a comment that runs to the end of the line.

use std::collections::HashSet;
use std::fmt;

use mpae_geometry::{parse_rational, Rational};
use thiserror::Error;

use super::automaton::Semantics;
use super::expr::{Op, SurfaceExpr};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Pos {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}", self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitionDecl<W> {
    pub source: String,
    pub letter: String,
    pub weight: W,
    pub target: String,
    pub pos: Pos,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutomatonDecl<W> {
    pub id: String,
    pub alphabet: Vec<String>,
    pub initial: String,
    pub transitions: Vec<TransitionDecl<W>>,
    pub pos: Pos,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpressionDecl {
    pub name: String,
    pub tree: SurfaceExpr,
    pub pos: Pos,
}

/// Abstract syntax of one input file.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SpecFile {
    pub automata: Vec<(Semantics, AutomatonDecl<Rational>)>,
    pub payoffs: Vec<AutomatonDecl<Vec<Rational>>>,
    pub expressions: Vec<ExpressionDecl>,
}

pub fn parse_spec(text: &str) -> Result<SpecFile, ParseError> {
    let mut p = Parser { chars: text.chars().collect(), i: 0, line: 1, column: 1 };
    let mut spec = SpecFile::default();
    let mut ids = HashSet::new();
    let mut names = HashSet::new();
    loop {
        p.skip_trivia();
        if p.at_end() {
            break;
        }
        let (kw, pos) = p.ident("`automaton`, `payoff` or `expression`")?;
        match kw.as_str() {
            "automaton" => {
                let (id, id_pos) = p.ident("automaton identifier")?;
                if !ids.insert(id.clone()) {
                    return Err(p.error_at(id_pos, format!("duplicate automaton id `{id}`")));
                }
                let (sem, sem_pos) = p.ident("`liminf` or `limsup`")?;
                let semantics = match sem.as_str() {
                    "liminf" => Semantics::LimInf,
                    "limsup" => Semantics::LimSup,
                    _ => return Err(p.error_at(sem_pos, format!("expected `liminf` or `limsup`, found `{sem}`"))),
                };
                let decl = p.block(id, pos, |p| p.rational_literal())?;
                spec.automata.push((semantics, decl));
            }
            "payoff" => {
                let (id, id_pos) = p.ident("payoff identifier")?;
                if !ids.insert(id.clone()) {
                    return Err(p.error_at(id_pos, format!("duplicate automaton id `{id}`")));
                }
                let decl = p.block(id, pos, |p| {
                    p.expect('(')?;
                    let mut v = vec![p.rational_literal()?];
                    while p.eat(',') {
                        v.push(p.rational_literal()?);
                    }
                    p.expect(')')?;
                    Ok(v)
                })?;
                spec.payoffs.push(decl);
            }
            "expression" => {
                let (name, name_pos) = p.ident("expression name")?;
                if !names.insert(name.clone()) {
                    return Err(p.error_at(name_pos, format!("duplicate expression `{name}`")));
                }
                p.expect('=')?;
                let tree = p.tree()?;
                p.expect(';')?;
                spec.expressions.push(ExpressionDecl { name, tree, pos });
            }
            other => {
                return Err(p.error_at(pos, format!("expected `automaton`, `payoff` or `expression`, found `{other}`")))
            }
        }
    }
    if spec.automata.is_empty() && spec.payoffs.is_empty() {
        return Err(p.error_here("no automaton defined".into()));
    }
    Ok(spec)
}

struct Parser {
    chars: Vec<char>,
    i: usize,
    line: usize,
    column: usize,
}

impl Parser {
    fn at_end(&self) -> bool {
        self.i >= self.chars.len()
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.i).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.i += 1;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn pos(&self) -> Pos {
        Pos { line: self.line, column: self.column }
    }

    fn skip_trivia(&mut self) {
        while let Some(c) = self.peek() {
            if c == '#' {
                while let Some(c) = self.peek() {
                    if c == '\n' {
                        break;
                    }
                    self.bump();
                }
            } else if c.is_whitespace() {
                self.bump();
            } else {
                break;
            }
        }
    }

    fn error_at(&self, pos: Pos, message: String) -> ParseError {
        ParseError { line: pos.line, column: pos.column, message }
    }

    fn error_here(&self, message: String) -> ParseError {
        self.error_at(self.pos(), message)
    }

    fn describe_next(&self) -> String {
        match self.peek() {
            None => "end of input".into(),
            Some(c) => format!("`{c}`"),
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_trivia();
        if self.peek() == Some(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error_here(format!("expected `{c}`, found {}", self.describe_next())))
        }
    }

    fn expect_arrow(&mut self) -> Result<(), ParseError> {
        self.skip_trivia();
        if self.peek() == Some('-') && self.chars.get(self.i + 1) == Some(&'>') {
            self.bump();
            self.bump();
            Ok(())
        } else {
            Err(self.error_here(format!("expected `->`, found {}", self.describe_next())))
        }
    }

    fn ident(&mut self, what: &str) -> Result<(String, Pos), ParseError> {
        self.skip_trivia();
        let pos = self.pos();
        let mut s = String::new();
        while let Some(c) = self.peek() {
            if c.is_ascii_alphanumeric() || c == '_' {
                s.push(c);
                self.bump();
            } else {
                break;
            }
        }
        if s.is_empty() {
            return Err(self.error_here(format!("expected {what}, found {}", self.describe_next())));
        }
        Ok((s, pos))
    }

    fn rational_literal(&mut self) -> Result<Rational, ParseError> {
        self.skip_trivia();
        let pos = self.pos();
        let mut s = String::new();
        if self.peek() == Some('-') {
            s.push('-');
            self.bump();
        }
        while let Some(c) = self.peek() {
            if c.is_ascii_digit() || c == '/' || c == '.' {
                s.push(c);
                self.bump();
            } else {
                break;
            }
        }
        parse_rational(&s).map_err(|e| self.error_at(pos, format!("bad rational literal: {e}")))
    }

    fn block<W>(
        &mut self,
        id: String,
        pos: Pos,
        weight: impl Fn(&mut Parser) -> Result<W, ParseError>,
    ) -> Result<AutomatonDecl<W>, ParseError> {
        self.expect('{')?;
        let mut alphabet: Option<Vec<String>> = None;
        let mut initial: Option<String> = None;
        let mut transitions = Vec::new();
        loop {
            if self.eat('}') {
                break;
            }
            let (word, wpos) = self.ident("statement")?;
            match word.as_str() {
                "alphabet" => {
                    if alphabet.is_some() {
                        return Err(self.error_at(wpos, format!("second alphabet in `{id}`")));
                    }
                    let mut letters = vec![self.ident("letter")?.0];
                    while self.eat(',') {
                        letters.push(self.ident("letter")?.0);
                    }
                    self.expect(';')?;
                    alphabet = Some(letters);
                }
                "initial" => {
                    if initial.is_some() {
                        return Err(self.error_at(wpos, format!("second initial state in `{id}`")));
                    }
                    initial = Some(self.ident("state")?.0);
                    self.expect(';')?;
                }
                _ => {
                    self.expect('-')?;
                    let (letter, _) = self.ident("letter")?;
                    self.expect('/')?;
                    let w = weight(self)?;
                    self.expect_arrow()?;
                    let (target, _) = self.ident("target state")?;
                    self.expect(';')?;
                    transitions.push(TransitionDecl { source: word, letter, weight: w, target, pos: wpos });
                }
            }
        }
        let alphabet = alphabet.ok_or_else(|| self.error_at(pos, format!("`{id}` declares no alphabet")))?;
        let initial = initial.ok_or_else(|| self.error_at(pos, format!("`{id}` declares no initial state")))?;
        Ok(AutomatonDecl { id, alphabet, initial, transitions, pos })
    }

    fn tree(&mut self) -> Result<SurfaceExpr, ParseError> {
        let (id, _) = self.ident("expression")?;
        self.skip_trivia();
        if self.peek() != Some('(') {
            return Ok(SurfaceExpr::Leaf(id));
        }
        let op = match id.as_str() {
            "max" => Some(Op::Max),
            "min" => Some(Op::Min),
            "sum" => Some(Op::Sum),
            _ => None,
        };
        self.expect('(')?;
        let e = if let Some(op) = op {
            let a = self.tree()?;
            self.expect(',')?;
            let b = self.tree()?;
            SurfaceExpr::Node(op, Box::new(a), Box::new(b))
        } else if id == "neg" {
            SurfaceExpr::Neg(Box::new(self.tree()?))
        } else if id == "scale" {
            let c = self.rational_literal()?;
            self.expect(',')?;
            SurfaceExpr::Scale(c, Box::new(self.tree()?))
        } else {
            return Err(self.error_here(format!("unknown operator `{id}`")));
        };
        self.expect(')')?;
        Ok(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use mpae_geometry::rational::{frac, int};

    #[test]
    fn single_block() {
        let s = parse_spec("automaton A1 liminf { alphabet a,b; initial q0; q0 -a/1-> q0; q0 -b/0-> q0; }").unwrap();
        assert_eq!(s.automata.len(), 1);
        assert_eq!(s.automata[0].1.transitions.len(), 2);
        assert_eq!(s.automata[0].1.transitions[0].weight, int(1));
    }

    #[test]
    fn weights_are_canonical() {
        let s = parse_spec("automaton A limsup { alphabet a, b; initial q; q -a/-3/2-> q; q -b/6/4-> q; }").unwrap();
        assert_eq!(s.automata[0].1.transitions[0].weight, frac(-3, 2));
        assert_eq!(s.automata[0].1.transitions[1].weight, frac(3, 2));
    }

    #[test]
    fn empty_input() {
        let e = parse_spec("  # nothing\n").unwrap_err();
        assert_eq!(e.message, "no automaton defined");
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_spec("automaton A liminf {\n alphabet a;\n initial q;\n q -a/1/0-> q; }").unwrap_err();
        assert_eq!((e.line, e.column), (4, 7));
        assert!(e.message.contains("bad rational"));
        let e = parse_spec("automaton A liminf { alphabet a; initial q; q -a/0.5-> q; }").unwrap_err();
        assert!(e.message.contains("bad rational"));
        let e = parse_spec("automaton A liminf { alphabet a; initial q; }\nautomaton A liminf { alphabet a; initial q; }")
            .unwrap_err();
        assert!(e.message.contains("duplicate"));
        assert_eq!(e.line, 2);
        assert!(parse_spec("automaton A liminf { alphabet a; }").is_err());
        assert!(parse_spec("automaton A fair { alphabet a; initial q; }").is_err());
    }

    #[test]
    fn expressions_and_payoffs() {
        let text = "automaton A liminf { alphabet a; initial q; q -a/1-> q; }\n\
                    payoff P { alphabet a; initial q; q -a/(1, -1/2)-> q; }\n\
                    expression E = max(A, scale(-1/2, neg(A))); # trailing";
        let s = parse_spec(text).unwrap();
        assert_eq!(s.payoffs[0].transitions[0].weight, vec![int(1), frac(-1, 2)]);
        assert_eq!(s.expressions[0].tree.to_string(), "max(A, scale(-1/2, neg(A)))");
    }
}
