use crate::{Graph, VertexSet};

/// One admissible set 𝔞(x), labelled by its ∼-class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeNode {
    pub set: VertexSet,
    pub class: VertexSet,
    pub height: usize,
    pub representative: usize,
}

/// The poset 𝒦 of admissible sets with heights and level data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    /// Ordered by representative.
    pub nodes: Vec<LatticeNode>,
    /// Cover pairs `(lower, upper)` as node indices.
    pub covers: Vec<(usize, usize)>,
    /// Node index of each vertex.
    pub node_of: Vec<usize>,
    pub max_height: usize,
    /// v(k).
    pub levels: Vec<VertexSet>,
    /// 𝒞(k).
    pub transversal: Vec<Vec<usize>>,
    /// 𝔄(k).
    pub cumulative: Vec<VertexSet>,
}

impl Lattice {
    pub fn build(g: &Graph) -> Lattice {
        let n = g.len();
        let mut nodes: Vec<LatticeNode> = Vec::new();
        let mut node_of = vec![0; n];
        for x in 0..n {
            let set = g.admissible(x);
            match nodes.iter().position(|nd| nd.set == set) {
                Some(i) => {
                    nodes[i].class.insert(x);
                    node_of[x] = i;
                }
                None => {
                    node_of[x] = nodes.len();
                    nodes.push(LatticeNode {
                        set,
                        class: VertexSet::singleton(x),
                        height: 0,
                        representative: x,
                    });
                }
            }
        }
        let sets: Vec<VertexSet> = nodes.iter().map(|nd| nd.set).collect();
        let below = |i: usize, j: usize| sets[i] != sets[j] && sets[i].is_subset(sets[j]);
        let mut order: Vec<usize> = (0..nodes.len()).collect();
        order.sort_by_key(|&i| sets[i].len());
        for &j in &order {
            let h = (0..nodes.len()).filter(|&i| below(i, j)).map(|i| nodes[i].height + 1).max();
            nodes[j].height = h.unwrap_or(0);
        }
        let mut covers = Vec::new();
        for i in 0..nodes.len() {
            for j in 0..nodes.len() {
                if below(i, j) && !(0..nodes.len()).any(|k| below(i, k) && below(k, j)) {
                    covers.push((i, j));
                }
            }
        }
        let max_height = nodes.iter().map(|nd| nd.height).max().unwrap_or(0);
        let mut levels = vec![VertexSet::EMPTY; max_height + 1];
        let mut transversal = vec![Vec::new(); max_height + 1];
        for nd in &nodes {
            levels[nd.height] = levels[nd.height].union(nd.class);
            transversal[nd.height].push(nd.representative);
        }
        let mut cumulative = Vec::with_capacity(max_height + 1);
        let mut acc = VertexSet::EMPTY;
        for k in 0..=max_height {
            for nd in nodes.iter().filter(|nd| nd.height == k) {
                acc = acc.union(nd.set);
            }
            cumulative.push(acc);
        }
        for t in &mut transversal {
            t.sort_unstable();
        }
        Lattice { nodes, covers, node_of, max_height, levels, transversal, cumulative }
    }

    /// Makes `x` the representative of its class in 𝒞(k).
    pub fn set_representative(&mut self, x: usize) {
        let i = self.node_of[x];
        let old = self.nodes[i].representative;
        self.nodes[i].representative = x;
        let t = &mut self.transversal[self.nodes[i].height];
        for r in t.iter_mut().filter(|r| **r == old) {
            *r = x;
        }
        t.sort_unstable();
    }

    pub fn height(&self, x: usize) -> usize {
        self.nodes[self.node_of[x]].height
    }

    pub fn representative(&self, x: usize) -> usize {
        self.nodes[self.node_of[x]].representative
    }

    pub fn class(&self, x: usize) -> VertexSet {
        self.nodes[self.node_of[x]].class
    }

    /// Cover pairs labelled by class representatives.
    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        self.covers
            .iter()
            .map(|&(i, j)| (self.nodes[i].representative, self.nodes[j].representative))
            .collect()
    }

    /// Graphviz rendering of the inclusion diagram.
    pub fn to_dot(&self, g: &Graph) -> String {
        let label = |i: usize| {
            let nd = &self.nodes[i];
            format!("{{{}}}", g.set_names(nd.set).join(","))
        };
        let mut s = String::from("digraph admissible {\n  rankdir=BT;\n");
        for (i, nd) in self.nodes.iter().enumerate() {
            s.push_str(&format!(
                "  n{} [label=\"a({}) = {} h={}\"];\n",
                i,
                g.name(nd.representative),
                label(i),
                nd.height
            ));
        }
        for &(i, j) in &self.covers {
            s.push_str(&format!("  n{i} -> n{j};\n"));
        }
        s.push_str("}\n");
        s
    }
}
