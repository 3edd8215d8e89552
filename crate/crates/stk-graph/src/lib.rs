//! Commutation graphs and the combinatorics built on them: stars, links,
//! closures, admissible sets 𝔞(x), ∼-classes, heights and the lattice 𝒦.

mod graph;
mod lattice;
mod set;

pub use graph::{ClassPartition, Graph};
pub use lattice::{Lattice, LatticeNode};
pub use set::VertexSet;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph has no vertices")]
    Empty,
    #[error("graph has {0} vertices; at most 64 are supported")]
    TooLarge(usize),
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("self-loop at `{0}`")]
    SelfLoop(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("invalid vertex name `{0}`")]
    BadName(String),
}

/// The nine-vertex running example used throughout the tests.
pub fn example_3_1() -> Graph {
    const EDGES: [(&str, &str); 17] = [
        ("a", "e"),
        ("a", "d"),
        ("a", "c"),
        ("b", "e"),
        ("b", "d"),
        ("b", "c"),
        ("e", "d"),
        ("e", "f"),
        ("e", "g"),
        ("e", "h"),
        ("d", "c"),
        ("d", "f"),
        ("d", "g"),
        ("d", "h"),
        ("c", "h"),
        ("f", "g"),
        ("h", "i"),
    ];
    Graph::new(&["a", "b", "c", "d", "e", "f", "g", "h", "i"], &EDGES).expect("example graph is valid")
}
