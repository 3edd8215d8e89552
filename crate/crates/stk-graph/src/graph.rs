use std::collections::HashMap;

use crate::{GraphError, VertexSet};

const RESERVED: &[char] = &['^', '{', '}', '(', ')', ',', ';', ':', '='];

/// Finite simple graph with a fixed vertex order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    names: Vec<String>,
    index: HashMap<String, usize>,
    adj: Vec<VertexSet>,
}

impl Graph {
    pub fn new<S: AsRef<str>>(vertices: &[S], edges: &[(S, S)]) -> Result<Graph, GraphError> {
        if vertices.is_empty() {
            return Err(GraphError::Empty);
        }
        if vertices.len() > 64 {
            return Err(GraphError::TooLarge(vertices.len()));
        }
        let mut names = Vec::with_capacity(vertices.len());
        let mut index = HashMap::new();
        for v in vertices {
            let v = v.as_ref();
            if v.is_empty() || v.chars().any(|c| c.is_whitespace() || RESERVED.contains(&c)) {
                return Err(GraphError::BadName(v.to_string()));
            }
            if index.insert(v.to_string(), names.len()).is_some() {
                return Err(GraphError::DuplicateVertex(v.to_string()));
            }
            names.push(v.to_string());
        }
        let mut g = Graph { adj: vec![VertexSet::EMPTY; names.len()], names, index };
        for (u, v) in edges {
            let (u, v) = (g.vertex(u.as_ref())?, g.vertex(v.as_ref())?);
            if u == v {
                return Err(GraphError::SelfLoop(g.names[u].clone()));
            }
            g.adj[u].insert(v);
            g.adj[v].insert(u);
        }
        Ok(g)
    }

    /// Graph on `0..n` named `x0, x1, ...`.
    pub fn from_adjacency(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
        let es: Vec<(String, String)> =
            edges.iter().map(|&(u, v)| (names[u].clone(), names[v].clone())).collect();
        Graph::new(&names, &es)
    }

    pub fn null(n: usize) -> Graph {
        Graph::from_adjacency(n, &[]).expect("valid null graph")
    }

    pub fn complete(n: usize) -> Graph {
        let es: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        Graph::from_adjacency(n, &es).expect("valid complete graph")
    }

    pub fn path(n: usize) -> Graph {
        let es: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        Graph::from_adjacency(n, &es).expect("valid path graph")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn all(&self) -> VertexSet {
        VertexSet::full(self.len())
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn vertex(&self, name: &str) -> Result<usize, GraphError> {
        self.index.get(name).copied().ok_or_else(|| GraphError::UnknownVertex(name.to_string()))
    }

    pub fn set(&self, names: &[&str]) -> Result<VertexSet, GraphError> {
        names.iter().map(|n| self.vertex(n)).collect()
    }

    pub fn set_names(&self, s: VertexSet) -> Vec<&str> {
        s.iter().map(|v| self.name(v)).collect()
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    /// Adjacent or equal.
    pub fn commute(&self, u: usize, v: usize) -> bool {
        u == v || self.adj[u].contains(v)
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .flat_map(|u| self.adj[u].iter().filter(move |&v| v > u).map(move |v| (u, v)))
            .collect()
    }

    pub fn link(&self, v: usize) -> VertexSet {
        self.adj[v]
    }

    pub fn star_of(&self, v: usize) -> VertexSet {
        self.adj[v].with(v)
    }

    /// st(Y); st(∅) = X.
    pub fn star(&self, y: VertexSet) -> VertexSet {
        y.iter().fold(self.all(), |acc, v| acc.intersection(self.star_of(v)))
    }

    pub fn closure(&self, y: VertexSet) -> VertexSet {
        self.star(self.star(y))
    }

    pub fn admissible(&self, x: usize) -> VertexSet {
        self.star(self.link(x))
    }

    pub fn is_simplex(&self, s: VertexSet) -> bool {
        s.iter().all(|u| s.without(u).is_subset(self.adj[u]))
    }

    /// The class [x]: vertices sharing a star or a link with x.
    pub fn sim_class(&self, x: usize) -> VertexSet {
        (0..self.len())
            .filter(|&z| self.star_of(z) == self.star_of(x) || self.link(z) == self.link(x))
            .collect()
    }

    pub fn class_partition(&self, x: usize) -> ClassPartition {
        let class = self.sim_class(x);
        let adm = self.admissible(x);
        let cl = self.closure(VertexSet::singleton(x));
        ClassPartition {
            class,
            a_s: cl.difference(class),
            a_out: adm.difference(cl).difference(class),
            abelian: adm == cl,
        }
    }

    /// Connected components of the subgraph induced on `within`.
    pub fn components(&self, within: VertexSet) -> Vec<VertexSet> {
        let mut left = within;
        let mut out = Vec::new();
        while let Some(s) = left.first() {
            let mut comp = VertexSet::singleton(s);
            let mut frontier = comp;
            while !frontier.is_empty() {
                let mut next = VertexSet::EMPTY;
                for v in frontier {
                    next = next.union(self.adj[v]);
                }
                frontier = next.intersection(within).difference(comp);
                comp = comp.union(frontier);
            }
            left = left.difference(comp);
            out.push(comp);
        }
        out
    }

    /// Induced subgraph; vertices keep their names and relative order.
    pub fn induced(&self, vs: VertexSet) -> Graph {
        let keep: Vec<usize> = vs.iter().collect();
        let names: Vec<&str> = keep.iter().map(|&v| self.name(v)).collect();
        let edges: Vec<(&str, &str)> = self
            .edges()
            .into_iter()
            .filter(|&(u, v)| vs.contains(u) && vs.contains(v))
            .map(|(u, v)| (self.name(u), self.name(v)))
            .collect();
        Graph::new(&names, &edges).expect("induced subgraph of a valid graph")
    }
}

/// 𝔞(x) = [x] ⊔ 𝔞_s(x) ⊔ 𝔞_out(x).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClassPartition {
    pub class: VertexSet,
    pub a_s: VertexSet,
    pub a_out: VertexSet,
    pub abelian: bool,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::example_3_1;

    #[test]
    fn stars_links_closures() {
        let g = example_3_1();
        let s = |n: &[&str]| g.set(n).unwrap();
        let v = |n: &str| g.vertex(n).unwrap();
        assert_eq!(g.star(s(&["f"])), s(&["d", "e", "f", "g"]));
        assert_eq!(g.star(VertexSet::EMPTY), g.all());
        assert_eq!(g.link(v("i")), s(&["h"]));
        assert_eq!(g.link(v("a")), s(&["c", "d", "e"]));
        assert_eq!(g.closure(s(&["f"])), s(&["d", "e", "f", "g"]));
        assert_eq!(g.closure(s(&["a"])), s(&["a", "d"]));
        assert_eq!(Graph::null(3).star(Graph::null(3).all()), VertexSet::EMPTY);
        assert_eq!(Graph::complete(4).closure(VertexSet::singleton(1)), Graph::complete(4).all());
    }

    #[test]
    fn partitions() {
        let g = example_3_1();
        let s = |n: &[&str]| g.set(n).unwrap();
        let p = g.class_partition(g.vertex("a").unwrap());
        assert_eq!((p.class, p.a_s, p.a_out, p.abelian), (s(&["a", "b"]), s(&["d"]), s(&["h"]), false));
        let p = g.class_partition(g.vertex("f").unwrap());
        assert_eq!((p.class, p.a_s, p.a_out, p.abelian), (s(&["f", "g"]), s(&["d", "e"]), s(&[]), true));
        let p = g.class_partition(g.vertex("i").unwrap());
        assert_eq!((p.class, p.a_s, p.a_out, p.abelian), (s(&["i"]), s(&["h"]), s(&["c", "d", "e"]), false));
    }

    #[test]
    fn ingestion_errors() {
        assert!(matches!(Graph::new::<&str>(&[], &[]), Err(GraphError::Empty)));
        assert!(matches!(Graph::new(&["a", "a"], &[]), Err(GraphError::DuplicateVertex(_))));
        assert!(matches!(Graph::new(&["a"], &[("a", "a")]), Err(GraphError::SelfLoop(_))));
        assert!(matches!(Graph::new(&["a"], &[("a", "b")]), Err(GraphError::UnknownVertex(_))));
        assert!(matches!(Graph::new(&["a^"], &[]), Err(GraphError::BadName(_))));
    }

    #[test]
    fn components_of_complement() {
        let g = example_3_1();
        let c = g.vertex("c").unwrap();
        let comps = g.components(g.all().difference(g.star_of(c)));
        let names: Vec<Vec<&str>> = comps.iter().map(|&s| g.set_names(s)).collect();
        assert_eq!(names, vec![vec!["e", "f", "g"], vec!["i"]]);
    }
}
