//! Exact computations in the generic binary branching semilinear order.
//!
//! Points are [`Node`]s with rational coordinates; every relation is decided
//! exactly. On top of the model sit finite structures and their age, the
//! back-and-forth engine, the transformations separating the reducts, the
//! behavior checker, a complete constraint solver, and a sampled
//! classifier.

pub mod axioms;
pub mod behavior;
pub mod classifier;
pub mod convex;
pub mod csp;
pub mod engine;
pub mod enumerate;
pub mod error;
pub mod formula;
pub mod grid;
pub mod iso;
pub mod node;
pub mod position;
pub mod relations;
pub mod sample;
pub mod structure;
pub mod transform;
pub mod witness;

pub use behavior::{Behavior, BehaviorClass, OrbitLabel, PairType};
pub use classifier::{ChainClass, Verdict, VerdictClass};
pub use convex::ConvexExtension;
pub use csp::{Assignment, Atom, Instance};
pub use engine::PartialIso;
pub use error::{Error, Result};
pub use formula::{Formula, QfFormula};
pub use node::Node;
pub use position::{Position, PositionClass};
pub use relations::RelationName;
pub use structure::{FinitePoset, FiniteStructure};
pub use transform::{MapClass, MappedSet, RerootSpec};
