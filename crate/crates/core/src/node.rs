//! Points of the concrete model.
//!
//! A [`Node`] is a point on a downward-growing binary tree. Its path starts at
//! the top (depth `-inf`) on the trunk and toggles side at each of its turn
//! positions; the point itself sits at `depth`. Smaller depth means higher up
//! in the order.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::position::Position;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Node {
    turns: Vec<Position>,
    depth: Position,
}

impl Node {
    /// Builds a node, sorting the turns. Fails on class violations, repeated
    /// turns, or a turn at or below the depth.
    pub fn new(mut turns: Vec<Position>, depth: Position) -> Result<Node> {
        if !depth.is_depth() {
            return Err(Error::InvalidNode(format!(
                "depth {depth} has an even denominator (turn class)"
            )));
        }
        turns.sort();
        for (i, t) in turns.iter().enumerate() {
            if !t.is_turn() {
                return Err(Error::InvalidNode(format!(
                    "turn {t} has an odd denominator (depth class)"
                )));
            }
            if i > 0 && turns[i - 1] == *t {
                return Err(Error::InvalidNode(format!("turn {t} repeated")));
            }
            if *t >= depth {
                return Err(Error::InvalidNode(format!("turn {t} not above depth {depth}")));
            }
        }
        Ok(Node { turns, depth })
    }

    /// A point on the trunk (no turns).
    pub fn trunk(depth: Position) -> Result<Node> {
        Node::new(Vec::new(), depth)
    }

    pub(crate) fn from_parts_unchecked(turns: Vec<Position>, depth: Position) -> Node {
        debug_assert!(Node::new(turns.clone(), depth.clone()).is_ok(), "{turns:?} {depth}");
        Node { turns, depth }
    }

    pub fn turns(&self) -> &[Position] {
        &self.turns
    }

    pub fn depth(&self) -> &Position {
        &self.depth
    }

    /// Number of turns strictly above `d`.
    pub(crate) fn turns_above(&self, d: &Position) -> usize {
        self.turns.partition_point(|t| t < d)
    }

    /// The point at depth `d` on this node's path, continued straight down
    /// past the node itself. `d` must be depth-class.
    pub fn path_point(&self, d: &Position) -> Node {
        let k = self.turns_above(d);
        Node::from_parts_unchecked(self.turns[..k].to_vec(), d.clone())
    }

    /// The point at depth `d` whose path follows this node's path down to
    /// `t` and then takes the other side there. Requires `t < d`.
    pub fn branch_point(&self, t: &Position, d: &Position) -> Node {
        debug_assert!(t < d);
        let k = self.turns_above(t);
        let mut turns = self.turns[..k].to_vec();
        if self.turns.get(k) != Some(t) {
            turns.push(t.clone());
        }
        Node::from_parts_unchecked(turns, d.clone())
    }

    /// Every position mentioned by this node.
    pub fn positions(&self) -> impl Iterator<Item = &Position> {
        self.turns.iter().chain(std::iter::once(&self.depth))
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{{")?;
        for (i, t) in self.turns.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{t}")?;
        }
        write!(f, "}},{}>", self.depth)
    }
}

impl fmt::Debug for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Serialize, Deserialize)]
struct RawNode {
    turns: Vec<String>,
    depth: String,
}

impl Serialize for Node {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RawNode {
            turns: self.turns.iter().map(|t| t.to_string()).collect(),
            depth: self.depth.to_string(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Node {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawNode::deserialize(d)?;
        Node::try_from(raw).map_err(serde::de::Error::custom)
    }
}

impl TryFrom<RawNode> for Node {
    type Error = Error;

    fn try_from(raw: RawNode) -> Result<Node> {
        let turns = raw
            .turns
            .iter()
            .map(|s| s.parse::<Position>())
            .collect::<Result<Vec<_>>>()?;
        let depth: Position = raw.depth.parse()?;
        Node::new(turns, depth)
    }
}

impl Node {
    pub fn from_json(s: &str) -> Result<Node> {
        let raw: RawNode = serde_json::from_str(s)?;
        Node::try_from(raw)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("node serialization is infallible")
    }
}

/// Accepts the JSON form or the display form `<{1/2,5/2},8/3>`.
impl std::str::FromStr for Node {
    type Err = Error;

    fn from_str(s: &str) -> Result<Node> {
        let t = s.trim();
        if t.starts_with('{') {
            return Node::from_json(t);
        }
        let bad = || Error::InvalidNode(format!("`{t}` is neither JSON nor of the form <{{turns}},depth>"));
        let inner = t.strip_prefix('<').and_then(|r| r.strip_suffix('>')).ok_or_else(bad)?;
        let inner = inner.trim().strip_prefix('{').ok_or_else(bad)?;
        let (turns, depth) = inner.split_once('}').ok_or_else(bad)?;
        let depth = depth.trim().strip_prefix(',').ok_or_else(bad)?;
        let turns = turns
            .split(',')
            .map(str::trim)
            .filter(|x| !x.is_empty())
            .map(str::parse)
            .collect::<Result<Vec<Position>>>()?;
        Node::new(turns, depth.parse()?)
    }
}

/// Shorthand used throughout tests and examples: `node(&["1/2"], "1")`.
pub fn node(turns: &[&str], depth: &str) -> Node {
    let turns = turns.iter().map(|t| t.parse().expect("turn")).collect();
    Node::new(turns, depth.parse().expect("depth")).expect("valid node")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_both_forms() {
        let a = node(&["1/2", "5/2"], "8/3");
        assert_eq!(a.to_string().parse::<Node>().unwrap(), a);
        assert_eq!(a.to_json().parse::<Node>().unwrap(), a);
        assert_eq!("<{},0>".parse::<Node>().unwrap(), node(&[], "0"));
        assert!("<{1/2}>".parse::<Node>().is_err());
    }

    #[test]
    fn rejects_bad_classes() {
        let e = Node::from_json(r#"{"turns":["1/3"],"depth":"1"}"#).unwrap_err();
        assert!(e.to_string().contains("1/3"), "{e}");
        let e = Node::from_json(r#"{"turns":[],"depth":"1/2"}"#).unwrap_err();
        assert!(e.to_string().contains("1/2"), "{e}");
        assert!(Node::from_json(r#"{"turns":["3/2"],"depth":"1"}"#).is_err());
    }

    #[test]
    fn json_round_trip() {
        let n = node(&["5/2", "1/2"], "8/3");
        assert_eq!(n.turns()[0].to_string(), "1/2");
        let s = n.to_json();
        assert_eq!(s, r#"{"turns":["1/2","5/2"],"depth":"8/3"}"#);
        assert_eq!(Node::from_json(&s).unwrap(), n);
        assert_eq!(Node::from_json(r#"{"turns":[],"depth":"2"}"#).unwrap(), node(&[], "2"));
    }

    #[test]
    fn path_and_branch_points() {
        let a = node(&["1/2", "5/2"], "3");
        assert_eq!(a.path_point(&"2".parse().unwrap()), node(&["1/2"], "2"));
        assert_eq!(a.path_point(&"5".parse().unwrap()), node(&["1/2", "5/2"], "5"));
        assert_eq!(
            a.branch_point(&"3/2".parse().unwrap(), &"2".parse().unwrap()),
            node(&["1/2", "3/2"], "2")
        );
        assert_eq!(
            a.branch_point(&"5/2".parse().unwrap(), &"3".parse().unwrap()),
            node(&["1/2"], "3")
        );
    }
}
