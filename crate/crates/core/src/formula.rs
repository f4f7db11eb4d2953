//! Quantifier-free formulas over the atoms of the constraint format,
//! combined with `&`, `|`, `!` and parentheses.

use std::fmt;

use crate::csp::{is_ident, parse_atom, INFIX};
use crate::error::{Error, Result};
use crate::node::Node;
use crate::relations::RelationName;
use crate::structure::FiniteStructure;

pub const MAX_VARIABLES: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QfFormula {
    Atom(RelationName, Vec<usize>),
    Not(Box<QfFormula>),
    And(Box<QfFormula>, Box<QfFormula>),
    Or(Box<QfFormula>, Box<QfFormula>),
}

/// A formula with its variables, numbered by first appearance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Formula {
    pub variables: Vec<String>,
    pub body: QfFormula,
}

impl QfFormula {
    pub fn eval_nodes(&self, args: &[&Node]) -> bool {
        match self {
            QfFormula::Atom(rel, vars) => {
                let a: Vec<&Node> = vars.iter().map(|&v| args[v]).collect();
                rel.eval(&a)
            }
            QfFormula::Not(f) => !f.eval_nodes(args),
            QfFormula::And(f, g) => f.eval_nodes(args) && g.eval_nodes(args),
            QfFormula::Or(f, g) => f.eval_nodes(args) || g.eval_nodes(args),
        }
    }

    /// Evaluates with variables sent to points of `s`.
    pub fn eval(&self, s: &FiniteStructure, args: &[usize]) -> bool {
        match self {
            QfFormula::Atom(rel, vars) => {
                let a: Vec<usize> = vars.iter().map(|&v| args[v]).collect();
                s.eval(*rel, &a)
            }
            QfFormula::Not(f) => !f.eval(s, args),
            QfFormula::And(f, g) => f.eval(s, args) && g.eval(s, args),
            QfFormula::Or(f, g) => f.eval(s, args) || g.eval(s, args),
        }
    }

    /// The De Morgan dual form: negations pushed onto atoms.
    pub fn negation_normal(&self) -> QfFormula {
        self.nnf(false)
    }

    fn nnf(&self, negate: bool) -> QfFormula {
        match (self, negate) {
            (QfFormula::Atom(..), false) => self.clone(),
            (QfFormula::Atom(..), true) => QfFormula::Not(Box::new(self.clone())),
            (QfFormula::Not(f), n) => f.nnf(!n),
            (QfFormula::And(f, g), false) => QfFormula::And(Box::new(f.nnf(false)), Box::new(g.nnf(false))),
            (QfFormula::Or(f, g), false) => QfFormula::Or(Box::new(f.nnf(false)), Box::new(g.nnf(false))),
            (QfFormula::And(f, g), true) => QfFormula::Or(Box::new(f.nnf(true)), Box::new(g.nnf(true))),
            (QfFormula::Or(f, g), true) => QfFormula::And(Box::new(f.nnf(true)), Box::new(g.nnf(true))),
        }
    }
}

impl Formula {
    pub fn parse(text: &str) -> Result<Formula> {
        let mut p = Parser { s: text, pos: 0, vars: Vec::new() };
        let body = p.or()?;
        p.skip_ws();
        if p.pos != text.len() {
            return Err(Error::Parse(format!("unexpected `{}`", &text[p.pos..])));
        }
        if p.vars.len() > MAX_VARIABLES {
            return Err(Error::Bound { requested: p.vars.len(), bound: MAX_VARIABLES });
        }
        Ok(Formula { variables: p.vars, body })
    }

    pub fn arity(&self) -> usize {
        self.variables.len()
    }

    pub fn eval(&self, s: &FiniteStructure, args: &[usize]) -> bool {
        self.body.eval(s, args)
    }

    pub fn eval_nodes(&self, args: &[&Node]) -> bool {
        self.body.eval_nodes(args)
    }

    pub fn negation_normal(&self) -> Formula {
        Formula { variables: self.variables.clone(), body: self.body.negation_normal() }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn go(q: &QfFormula, v: &[String], f: &mut fmt::Formatter<'_>) -> fmt::Result {
            match q {
                QfFormula::Atom(rel, a) => {
                    let names: Vec<&str> = a.iter().map(|&i| v[i].as_str()).collect();
                    match rel {
                        RelationName::C => write!(f, "C({}, {} {})", names[0], names[1], names[2]),
                        RelationName::B | RelationName::R | RelationName::D => write!(f, "{rel}({})", names.join(",")),
                        _ => {
                            let op = INFIX.iter().find(|(o, r)| r == rel && o.is_ascii()).map(|(o, _)| *o).unwrap_or("?");
                            write!(f, "{} {op} {}", names[0], names[1])
                        }
                    }
                }
                QfFormula::Not(g) => {
                    write!(f, "!(")?;
                    go(g, v, f)?;
                    write!(f, ")")
                }
                QfFormula::And(g, h) | QfFormula::Or(g, h) => {
                    let op = if matches!(q, QfFormula::And(..)) { "&" } else { "|" };
                    write!(f, "(")?;
                    go(g, v, f)?;
                    write!(f, " {op} ")?;
                    go(h, v, f)?;
                    write!(f, ")")
                }
            }
        }
        go(&self.body, &self.variables, f)
    }
}

struct Parser<'a> {
    s: &'a str,
    pos: usize,
    vars: Vec<String>,
}

impl Parser<'_> {
    fn rest(&self) -> &str {
        &self.s[self.pos..]
    }

    fn skip_ws(&mut self) {
        let t = self.rest();
        self.pos += t.len() - t.trim_start().len();
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn or(&mut self) -> Result<QfFormula> {
        let mut f = self.and()?;
        while self.eat("||") || self.eat("|") {
            f = QfFormula::Or(Box::new(f), Box::new(self.and()?));
        }
        Ok(f)
    }

    fn and(&mut self) -> Result<QfFormula> {
        let mut f = self.unary()?;
        while self.eat("&&") || self.eat("&") {
            f = QfFormula::And(Box::new(f), Box::new(self.unary()?));
        }
        Ok(f)
    }

    fn unary(&mut self) -> Result<QfFormula> {
        self.skip_ws();
        if self.rest().starts_with('!') && !self.rest().starts_with("!=") {
            self.pos += 1;
            return Ok(QfFormula::Not(Box::new(self.unary()?)));
        }
        if self.eat("(") {
            let f = self.or()?;
            if !self.eat(")") {
                return Err(Error::Parse(format!("expected `)` at `{}`", self.rest())));
            }
            return Ok(f);
        }
        self.atom()
    }

    fn ident(&mut self) -> Result<&str> {
        self.skip_ws();
        let t = self.rest();
        let len = t
            .char_indices()
            .find(|&(_, c)| !(c.is_alphanumeric() || c == '_' || c == '\''))
            .map_or(t.len(), |(i, _)| i);
        let id = &self.s[self.pos..self.pos + len];
        if !is_ident(id) {
            return Err(Error::Parse(format!("expected a variable at `{t}`")));
        }
        self.pos += len;
        Ok(id)
    }

    fn atom(&mut self) -> Result<QfFormula> {
        let start = self.pos;
        let first = self.ident()?.to_string();
        self.skip_ws();
        let text = if self.rest().starts_with('(') {
            let close = self.rest().find(')').ok_or_else(|| Error::Parse(format!("unclosed `{first}(`")))?;
            self.pos += close + 1;
            self.s[start..self.pos].to_string()
        } else {
            let (op, _) = INFIX
                .iter()
                .find(|(op, _)| self.rest().starts_with(op))
                .ok_or_else(|| Error::Parse(format!("expected a relation after `{first}`")))?;
            self.pos += op.len();
            let second = self.ident()?;
            format!("{first} {op} {second}")
        };
        let (rel, names) = parse_atom(&text)?;
        let args = names.iter().map(|n| self.var(n)).collect();
        Ok(QfFormula::Atom(rel, args))
    }

    fn var(&mut self, name: &str) -> usize {
        match self.vars.iter().position(|v| v == name) {
            Some(i) => i,
            None => {
                self.vars.push(name.to_string());
                self.vars.len() - 1
            }
        }
    }
}
