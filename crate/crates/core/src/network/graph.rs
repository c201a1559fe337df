use std::collections::HashSet;

/// Which layer an edge belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Layer {
    Community,
    School,
}

impl Layer {
    pub fn tag(self) -> char {
        match self {
            Layer::Community => 'c',
            Layer::School => 's',
        }
    }
}

/// One directed half of an undirected edge as seen from its source node.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Arc {
    pub target: u32,
    /// Unique id of this (edge, direction) pair across both layers.
    pub slot: u32,
}

/// Compressed adjacency of one layer, self-loops dropped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayerAdjacency {
    offsets: Vec<u32>,
    arcs: Vec<Arc>,
}

impl LayerAdjacency {
    fn build(n: usize, edges: &[(u32, u32)], slot_base: u32) -> Self {
        let mut counts = vec![0u32; n + 1];
        for &(u, v) in edges {
            if u != v {
                counts[u as usize + 1] += 1;
                counts[v as usize + 1] += 1;
            }
        }
        for i in 0..n {
            counts[i + 1] += counts[i];
        }
        let offsets = counts.clone();
        let mut fill = counts;
        let mut arcs = vec![Arc { target: 0, slot: 0 }; offsets[n] as usize];
        for (e, &(u, v)) in edges.iter().enumerate() {
            if u == v {
                continue;
            }
            let slot = slot_base + 2 * e as u32;
            arcs[fill[u as usize] as usize] = Arc { target: v, slot };
            fill[u as usize] += 1;
            arcs[fill[v as usize] as usize] = Arc { target: u, slot: slot + 1 };
            fill[v as usize] += 1;
        }
        Self { offsets, arcs }
    }

    pub fn neighbors(&self, node: usize) -> &[Arc] {
        &self.arcs[self.offsets[node] as usize..self.offsets[node + 1] as usize]
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("edge ({0}, {1}) has an endpoint outside the node range")]
    EndpointOutOfRange(u32, u32),
    #[error("school edge ({0}, {1}) touches a non-member")]
    SchoolEdgeOnNonMember(u32, u32),
    #[error("membership vector has length {found}, expected {expected}")]
    MembershipLength { found: usize, expected: usize },
}

/// A finite two-layer contact network. Immutable once built.
///
/// Self-loops and parallel edges from stub matching are kept in the edge
/// lists; the adjacency skips self-loops and lists parallel edges separately.
#[derive(Debug, Clone, PartialEq)]
pub struct MultilayerGraph {
    n: usize,
    alpha: f64,
    seed: u64,
    edges_c: Vec<(u32, u32)>,
    edges_s: Vec<(u32, u32)>,
    school_members: Vec<bool>,
    community: LayerAdjacency,
    school: LayerAdjacency,
}

impl MultilayerGraph {
    pub fn new(
        n: usize,
        alpha: f64,
        seed: u64,
        edges_c: Vec<(u32, u32)>,
        edges_s: Vec<(u32, u32)>,
        school_members: Vec<bool>,
    ) -> Result<Self, GraphError> {
        if school_members.len() != n {
            return Err(GraphError::MembershipLength {
                found: school_members.len(),
                expected: n,
            });
        }
        for &(u, v) in edges_c.iter().chain(&edges_s) {
            if u as usize >= n || v as usize >= n {
                return Err(GraphError::EndpointOutOfRange(u, v));
            }
        }
        for &(u, v) in &edges_s {
            if !school_members[u as usize] || !school_members[v as usize] {
                return Err(GraphError::SchoolEdgeOnNonMember(u, v));
            }
        }
        let community = LayerAdjacency::build(n, &edges_c, 0);
        let school = LayerAdjacency::build(n, &edges_s, 2 * edges_c.len() as u32);
        Ok(Self {
            n,
            alpha,
            seed,
            edges_c,
            edges_s,
            school_members,
            community,
            school,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn edges(&self, layer: Layer) -> &[(u32, u32)] {
        match layer {
            Layer::Community => &self.edges_c,
            Layer::School => &self.edges_s,
        }
    }

    pub fn adjacency(&self, layer: Layer) -> &LayerAdjacency {
        match layer {
            Layer::Community => &self.community,
            Layer::School => &self.school,
        }
    }

    pub fn school_members(&self) -> &[bool] {
        &self.school_members
    }

    /// Number of (edge, direction) slots, including those of self-loops.
    pub fn slot_count(&self) -> usize {
        2 * (self.edges_c.len() + self.edges_s.len())
    }

    /// Degree in one layer, a self-loop counting twice.
    pub fn degree(&self, layer: Layer, node: usize) -> usize {
        let loops = self
            .edges(layer)
            .iter()
            .filter(|&&(u, v)| u == v && u as usize == node)
            .count();
        self.adjacency(layer).neighbors(node).len() + 2 * loops
    }

    /// Per-node degree vector of one layer, a self-loop counting twice.
    pub fn degrees(&self, layer: Layer) -> Vec<usize> {
        let mut d = vec![0usize; self.n];
        for &(u, v) in self.edges(layer) {
            d[u as usize] += 1;
            d[v as usize] += 1;
        }
        d
    }

    /// Transitivity (3 x triangles / connected triples) of the overlay graph
    /// with loops and multi-edges collapsed.
    pub fn global_clustering(&self) -> f64 {
        let mut neighbors: Vec<Vec<u32>> = vec![Vec::new(); self.n];
        let mut seen = HashSet::new();
        for &(u, v) in self.edges_c.iter().chain(&self.edges_s) {
            if u != v && seen.insert((u.min(v), u.max(v))) {
                neighbors[u as usize].push(v);
                neighbors[v as usize].push(u);
            }
        }
        for list in &mut neighbors {
            list.sort_unstable();
        }
        let mut closed = 0u64;
        let mut triples = 0u64;
        for list in &neighbors {
            let d = list.len() as u64;
            triples += d * d.saturating_sub(1) / 2;
            for (a, &v) in list.iter().enumerate() {
                for &w in &list[a + 1..] {
                    if neighbors[v as usize].binary_search(&w).is_ok() {
                        closed += 1;
                    }
                }
            }
        }
        if triples == 0 {
            0.0
        } else {
            closed as f64 / triples as f64
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn adjacency_skips_loops_keeps_parallel() {
        let g = MultilayerGraph::new(3, 1.0, 0, vec![(0, 1), (0, 1), (2, 2)], vec![(1, 2)], vec![true; 3]).unwrap();
        let adj = g.adjacency(Layer::Community);
        assert_eq!(adj.neighbors(0).len(), 2);
        assert_eq!(adj.neighbors(2).len(), 0);
        assert_eq!(g.degree(Layer::Community, 2), 2);
        assert_eq!(g.slot_count(), 8);
        let school_slots: Vec<u32> = g.adjacency(Layer::School).neighbors(1).iter().map(|a| a.slot).collect();
        assert_eq!(school_slots, vec![6]);
        assert_eq!(g.degrees(Layer::Community), vec![2, 2, 2]);
    }

    #[test]
    fn rejects_school_edge_on_non_member() {
        let err = MultilayerGraph::new(2, 0.5, 0, vec![], vec![(0, 1)], vec![true, false]).unwrap_err();
        assert_eq!(err, GraphError::SchoolEdgeOnNonMember(0, 1));
    }

    #[test]
    fn triangle_clustering() {
        let g = MultilayerGraph::new(3, 0.0, 0, vec![(0, 1), (1, 2)], vec![], vec![false; 3]).unwrap();
        assert_eq!(g.global_clustering(), 0.0);
        let g = MultilayerGraph::new(3, 1.0, 0, vec![(0, 1), (1, 2)], vec![(0, 2)], vec![true; 3]).unwrap();
        assert_eq!(g.global_clustering(), 1.0);
    }
}
