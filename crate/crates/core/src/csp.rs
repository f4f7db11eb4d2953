//! Conjunctions of atoms over the model: a complete search with checked
//! witnesses, and a table-based brute-force oracle.

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;

use crate::enumerate::enumerate_age_structures_with_bound;
use crate::error::{Error, Result};
use crate::grid::witness_grid;
use crate::node::Node;
use crate::relations::RelationName;
use crate::structure::FiniteStructure;

pub const DEFAULT_VARIABLE_BOUND: usize = 7;
pub const ORACLE_BOUND: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Atom {
    pub relation: RelationName,
    /// Indices into the instance's variables.
    pub args: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Instance {
    pub variables: Vec<String>,
    pub atoms: Vec<Atom>,
}

pub type Assignment = BTreeMap<String, Node>;

pub(crate) const INFIX: [(&str, RelationName); 11] = [
    ("<=", RelationName::Leq),
    (">=", RelationName::Geq),
    ("!=", RelationName::Neq),
    ("||", RelationName::Perp),
    ("≤", RelationName::Leq),
    ("≥", RelationName::Geq),
    ("≠", RelationName::Neq),
    ("⊥", RelationName::Perp),
    ("<", RelationName::Lt),
    (">", RelationName::Gt),
    ("=", RelationName::Eq),
];

pub(crate) fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_alphabetic() || c == '_')
        && chars.all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
}

/// One atom as a relation and its variable names: `x < y`, `x || y`,
/// `B(x,y,z)`, `C(z, x y)`, `D(x,y,u,v)`.
pub(crate) fn parse_atom(text: &str) -> Result<(RelationName, Vec<String>)> {
    let s = text.trim();
    let bad = |why: &str| Error::Parse(format!("`{s}`: {why}"));
    if let Some(open) = s.find('(') {
        let name = s[..open].trim();
        let inner = s[open + 1..].strip_suffix(')').ok_or_else(|| bad("missing `)`"))?;
        let rel = match name {
            "B" | "C" | "R" | "D" => name.parse::<RelationName>()?,
            _ => return Err(bad(&format!("unknown relation `{name}`"))),
        };
        let args: Vec<String> =
            inner.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()).map(String::from).collect();
        if args.len() != rel.arity() {
            return Err(bad(&format!("{name} takes {} arguments, got {}", rel.arity(), args.len())));
        }
        if let Some(a) = args.iter().find(|a| !is_ident(a)) {
            return Err(bad(&format!("`{a}` is not a variable name")));
        }
        return Ok((rel, args));
    }
    for (op, rel) in INFIX {
        if let Some((l, r)) = s.split_once(op) {
            let (l, r) = (l.trim(), r.trim());
            if is_ident(l) && is_ident(r) {
                return Ok((rel, vec![l.to_string(), r.to_string()]));
            }
        }
    }
    Err(bad("not an atom"))
}

impl Instance {
    /// Adds an atom, registering new variables in order of appearance.
    pub fn push(&mut self, relation: RelationName, names: &[&str]) -> Result<()> {
        if names.len() != relation.arity() {
            return Err(Error::Dimension(format!("{relation} takes {} arguments", relation.arity())));
        }
        let args = names.iter().map(|n| self.variable(n)).collect();
        self.atoms.push(Atom { relation, args });
        Ok(())
    }

    fn variable(&mut self, name: &str) -> usize {
        match self.variables.iter().position(|v| v == name) {
            Some(i) => i,
            None => {
                self.variables.push(name.to_string());
                self.variables.len() - 1
            }
        }
    }

    /// One atom per line (or separated by `;`); `#` starts a comment.
    pub fn parse(text: &str) -> Result<Instance> {
        let mut inst = Instance::default();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("");
            for piece in line.split(';').map(str::trim).filter(|p| !p.is_empty()) {
                let (rel, args) =
                    parse_atom(piece).map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1)))?;
                let names: Vec<&str> = args.iter().map(String::as_str).collect();
                inst.push(rel, &names)?;
            }
        }
        Ok(inst)
    }

    pub fn atom_text(&self, atom: &Atom) -> String {
        let v = |i: usize| self.variables[i].as_str();
        let a = &atom.args;
        match atom.relation {
            RelationName::B | RelationName::R | RelationName::D => {
                format!("{}({})", atom.relation, a.iter().map(|&i| v(i)).join(","))
            }
            RelationName::C => format!("C({}, {} {})", v(a[0]), v(a[1]), v(a[2])),
            rel => {
                let op = INFIX.iter().find(|(o, r)| *r == rel && o.is_ascii()).map(|(o, _)| *o).unwrap_or("?");
                format!("{} {op} {}", v(a[0]), v(a[1]))
            }
        }
    }
}

impl fmt::Display for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for atom in &self.atoms {
            writeln!(f, "{}", self.atom_text(atom))?;
        }
        Ok(())
    }
}

/// Index of the first atom that fails under `assignment`, if any.
pub fn check(inst: &Instance, assignment: &Assignment) -> Result<Option<usize>> {
    let nodes: Vec<&Node> = inst
        .variables
        .iter()
        .map(|v| assignment.get(v).ok_or_else(|| Error::MissingVariable(v.clone())))
        .collect::<Result<_>>()?;
    Ok(inst.atoms.iter().position(|a| {
        let args: Vec<&Node> = a.args.iter().map(|&i| nodes[i]).collect();
        !a.relation.eval(&args)
    }))
}

pub fn solve(inst: &Instance) -> Result<Option<Assignment>> {
    solve_with_bound(inst, DEFAULT_VARIABLE_BOUND)
}

/// Assigns variables in order, each ranging over one node per 1-type over
/// the nodes already chosen; atoms are tested as soon as their last
/// variable is placed. The first assignment found in grid order is returned.
pub fn solve_with_bound(inst: &Instance, bound: usize) -> Result<Option<Assignment>> {
    let n = inst.variables.len();
    if n > bound {
        return Err(Error::Bound { requested: n, bound });
    }
    let mut due: Vec<Vec<&Atom>> = vec![Vec::new(); n];
    for a in &inst.atoms {
        if let Some(&last) = a.args.iter().max() {
            due[last].push(a);
        }
    }
    let mut nodes = Vec::with_capacity(n);
    if !search(&due, &mut nodes) {
        return Ok(None);
    }
    let assignment: Assignment = inst.variables.iter().cloned().zip(nodes).collect();
    if let Some(i) = check(inst, &assignment)? {
        return Err(Error::Internal(format!("witness fails `{}`", inst.atom_text(&inst.atoms[i]))));
    }
    Ok(Some(assignment))
}

fn search(due: &[Vec<&Atom>], nodes: &mut Vec<Node>) -> bool {
    let i = nodes.len();
    if i == due.len() {
        return true;
    }
    for (_, q) in witness_grid(nodes) {
        nodes.push(q);
        let ok = due[i].iter().all(|a| {
            let args: Vec<&Node> = a.args.iter().map(|&j| &nodes[j]).collect();
            a.relation.eval(&args)
        });
        if ok && search(due, nodes) {
            return true;
        }
        nodes.pop();
    }
    false
}

/// Decides satisfiability from the enumerated age alone: some structure on
/// `k <= n` points and some map of the variables onto it satisfies every
/// atom, read off the relation tables.
pub fn brute_force_oracle(inst: &Instance) -> Result<bool> {
    let n = inst.variables.len();
    if n > ORACLE_BOUND {
        return Err(Error::Bound { requested: n, bound: ORACLE_BOUND });
    }
    if n == 0 {
        return Ok(true);
    }
    for k in 1..=n {
        let structures = enumerate_age_structures_with_bound(k, ORACLE_BOUND)?;
        for sigma in (0..n).map(|_| 0..k).multi_cartesian_product() {
            if sigma.iter().copied().unique().count() != k {
                continue;
            }
            if structures.iter().any(|s| satisfied(s, inst, &sigma)) {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

fn satisfied(s: &FiniteStructure, inst: &Instance, sigma: &[usize]) -> bool {
    inst.atoms.iter().all(|a| {
        let args: Vec<usize> = a.args.iter().map(|&i| sigma[i]).collect();
        s.eval(a.relation, &args)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::node::node;

    fn sat(text: &str) -> bool {
        let inst = Instance::parse(text).unwrap();
        let s = solve(&inst).unwrap();
        assert_eq!(s.is_some(), brute_force_oracle(&inst).unwrap(), "{text}");
        s.is_some()
    }

    #[test]
    fn examples() {
        assert!(!sat("x < y\ny < x"));
        assert!(!sat("x < y\nC(z, x y)"));
        assert!(!sat("x || y; y || z; x || z; C(z, x y); C(x, y z)"));
        assert!(sat("x || y\nC(z,x,y)"));
        assert!(sat("x < y"));
        assert!(!sat("B(x,y,z)\nB(y,x,z)"));
        // the quartet xy|uv has both outsiders
        assert!(sat("D(x,y,u,v)\nC(u, x y)\nC(x, u v)"));
        assert!(!sat("D(x,y,u,v)\nD(x,u,y,v)"));
        assert!(sat("# nothing"));
    }

    #[test]
    fn checking() {
        let inst = Instance::parse("x || y\nC(z, x y)").unwrap();
        let mut w: Assignment = [("x", node(&["1/2"], "1")), ("y", node(&[], "1")), ("z", node(&["1/4"], "1"))]
            .into_iter()
            .map(|(k, v)| (k.to_string(), v))
            .collect();
        assert_eq!(check(&inst, &w).unwrap(), None);
        w.insert("z".into(), node(&[], "0"));
        assert_eq!(check(&inst, &w).unwrap(), Some(1));
        w.remove("y");
        assert_eq!(check(&inst, &w), Err(Error::MissingVariable("y".into())));
        assert_eq!(check(&Instance::default(), &Assignment::new()).unwrap(), None);
    }

    #[test]
    fn parsing() {
        let inst = Instance::parse("a <= b  # c\nb >= c; a != c\nR(a, b, c)").unwrap();
        assert_eq!(inst.variables, vec!["a", "b", "c"]);
        assert_eq!(inst.atoms.len(), 4);
        assert!(Instance::parse("C(x, y)").is_err());
        assert!(Instance::parse("x << y").is_err());
        assert!(Instance::parse("Q(x)").is_err());
        let round = Instance::parse(&inst.to_string()).unwrap();
        assert_eq!(round, inst);
    }
}
