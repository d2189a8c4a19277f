//! Labeled simple graphs on `{1, ..., n}` with component and block structure.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest supported vertex count (the short graph6 form stops at 62).
pub const MAX_VERTICES: usize = 62;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex count {0} exceeds the supported maximum of {max}", max = MAX_VERTICES)]
    TooManyVertices(usize),
    #[error("edge ({0},{1}) has an endpoint outside 1..={2}")]
    VertexOutOfRange(u8, u8, usize),
    #[error("edge ({0},{0}) is a loop")]
    Loop(u8),
    #[error("edge ({0},{1}) listed more than once")]
    DuplicateEdge(u8, u8),
}

/// Simple undirected graph on the vertex set `{1, ..., n}`.
///
/// Values are immutable after construction; every mutation-shaped operation
/// returns a fresh graph, so sharing across threads is safe.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LabeledGraph {
    n: usize,
    /// `adj[v]` has bit `u` set iff `{u,v}` is an edge. Index 0 is unused.
    adj: Vec<u64>,
    /// Edges as `(u, v)` with `u < v`, sorted lexicographically.
    edges: Vec<(u8, u8)>,
}

impl LabeledGraph {
    /// Builds a graph from an edge list, rejecting loops, duplicates and
    /// out-of-range endpoints. The stored edge order is lexicographic
    /// regardless of input order.
    pub fn new(n: usize, edges: &[(u8, u8)]) -> Result<Self, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        let mut adj = vec![0u64; n + 1];
        let mut list = Vec::with_capacity(edges.len());
        for &(a, b) in edges {
            if a == b {
                return Err(GraphError::Loop(a));
            }
            let (u, v) = if a < b { (a, b) } else { (b, a) };
            if u == 0 || v as usize > n {
                return Err(GraphError::VertexOutOfRange(a, b, n));
            }
            if adj[u as usize] >> v & 1 == 1 {
                return Err(GraphError::DuplicateEdge(u, v));
            }
            adj[u as usize] |= 1 << v;
            adj[v as usize] |= 1 << u;
            list.push((u, v));
        }
        list.sort_unstable();
        Ok(Self { n, adj, edges: list })
    }

    /// The graph with no vertices (what the graph6 line `"?"` decodes to).
    pub fn trivial() -> Self {
        Self { n: 0, adj: vec![0], edges: Vec::new() }
    }

    pub fn empty(n: usize) -> Result<Self, GraphError> {
        Self::new(n, &[])
    }

    pub fn complete(n: usize) -> Result<Self, GraphError> {
        let mut edges = Vec::new();
        for u in 1..=n as u8 {
            for v in u + 1..=n as u8 {
                edges.push((u, v));
            }
        }
        Self::new(n, &edges)
    }

    /// Complete bipartite graph with parts `{1..a}` and `{a+1..a+b}`.
    pub fn complete_bipartite(a: usize, b: usize) -> Result<Self, GraphError> {
        let mut edges = Vec::new();
        for u in 1..=a as u8 {
            for v in a as u8 + 1..=(a + b) as u8 {
                edges.push((u, v));
            }
        }
        Self::new(a + b, &edges)
    }

    /// Path 1-2-...-n.
    pub fn path(n: usize) -> Result<Self, GraphError> {
        let edges: Vec<_> = (1..n as u8).map(|u| (u, u + 1)).collect();
        Self::new(n, &edges)
    }

    /// Cycle 1-2-...-n-1 (requires n >= 3).
    pub fn cycle(n: usize) -> Result<Self, GraphError> {
        let mut edges: Vec<_> = (1..n as u8).map(|u| (u, u + 1)).collect();
        edges.push((1, n as u8));
        Self::new(n, &edges)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn edges(&self) -> &[(u8, u8)] {
        &self.edges
    }

    pub fn vertices(&self) -> impl Iterator<Item = u8> {
        (1..=self.n as u8).into_iter()
    }

    #[inline]
    pub fn has_edge(&self, u: u8, v: u8) -> bool {
        u != v && u >= 1 && v >= 1 && (u as usize) <= self.n && (v as usize) <= self.n
            && self.adj[u as usize] >> v & 1 == 1
    }

    /// Neighbourhood of `v` as a bitmask (bit `u` set iff `{u,v}` is an edge).
    #[inline]
    pub fn neighbors_mask(&self, v: u8) -> u64 {
        self.adj[v as usize]
    }

    pub fn neighbors(&self, v: u8) -> impl Iterator<Item = u8> + '_ {
        let mut mask = self.adj[v as usize];
        std::iter::from_fn(move || {
            if mask == 0 {
                None
            } else {
                let u = mask.trailing_zeros() as u8;
                mask &= mask - 1;
                Some(u)
            }
        })
    }

    #[inline]
    pub fn degree(&self, v: u8) -> usize {
        self.adj[v as usize].count_ones() as usize
    }

    pub fn max_degree(&self) -> usize {
        (1..=self.n).map(|v| self.adj[v].count_ones() as usize).max().unwrap_or(0)
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        (1..=self.n).map(|v| self.adj[v].count_ones() as usize).collect()
    }

    /// New graph with the edge `{u,v}` added.
    pub fn with_edge(&self, u: u8, v: u8) -> Result<Self, GraphError> {
        if self.has_edge(u, v) {
            let (a, b) = if u < v { (u, v) } else { (v, u) };
            return Err(GraphError::DuplicateEdge(a, b));
        }
        let mut edges = self.edges.clone();
        edges.push(if u < v { (u, v) } else { (v, u) });
        Self::new(self.n, &edges)
    }

    /// New graph with the edge `{u,v}` removed (no-op error if absent).
    pub fn without_edge(&self, u: u8, v: u8) -> Result<Self, GraphError> {
        let key = if u < v { (u, v) } else { (v, u) };
        if !self.has_edge(u, v) {
            return Err(GraphError::VertexOutOfRange(u, v, self.n));
        }
        let edges: Vec<_> = self.edges.iter().copied().filter(|&e| e != key).collect();
        Self::new(self.n, &edges)
    }

    /// All non-edges `(u, v)` with `u < v`, lexicographically.
    pub fn non_edges(&self) -> Vec<(u8, u8)> {
        let mut out = Vec::new();
        for u in 1..=self.n as u8 {
            for v in u + 1..=self.n as u8 {
                if !self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let reached = self.reach_mask(1);
        reached.count_ones() as usize == self.n
    }

    /// Bitmask of vertices reachable from `start` (including `start`).
    fn reach_mask(&self, start: u8) -> u64 {
        let mut seen = 1u64 << start;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0u64;
            let mut f = frontier;
            while f != 0 {
                let v = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= self.adj[v];
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen
    }

    /// Induced subgraph on `vertices` (given in ascending order), relabeled to
    /// `{1..k}` by the increasing bijection.
    pub fn induced(&self, vertices: &[u8]) -> LabeledGraph {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        let mut edges = Vec::new();
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    edges.push((i as u8 + 1, j as u8 + 1));
                }
            }
        }
        LabeledGraph::new(vertices.len(), &edges).expect("induced subgraph is valid")
    }

    /// Number of edges leaving the vertex set `mask`.
    pub fn boundary_edges(&self, mask: u64) -> Vec<(u8, u8)> {
        let mut out = Vec::new();
        for &(u, v) in &self.edges {
            let iu = mask >> u & 1 == 1;
            let iv = mask >> v & 1 == 1;
            if iu != iv {
                out.push((u, v));
            }
        }
        out
    }

    pub fn components(&self) -> Vec<ComponentClass> {
        let mut seen = 0u64;
        let mut out = Vec::new();
        for v in 1..=self.n as u8 {
            if seen >> v & 1 == 1 {
                continue;
            }
            let mask = self.reach_mask(v);
            seen |= mask;
            let vertices: Vec<u8> = (1..=self.n as u8).filter(|&u| mask >> u & 1 == 1).collect();
            let edge_count = self
                .edges
                .iter()
                .filter(|&&(a, _)| mask >> a & 1 == 1)
                .count();
            let kind = match edge_count.cmp(&vertices.len()) {
                std::cmp::Ordering::Less => ComponentKind::Tree,
                std::cmp::Ordering::Equal => ComponentKind::Unicyclic,
                std::cmp::Ordering::Greater => ComponentKind::Multicyclic,
            };
            out.push(ComponentClass { kind, vertices, edge_count });
        }
        out
    }

    /// Blocks (maximal 2-connected edge sets plus bridges), bridges and cut
    /// vertices, via the usual lowpoint DFS with an edge stack.
    pub fn block_decomposition(&self) -> BlockDecomposition {
        let n = self.n;
        let mut state = BlockDfs {
            graph: self,
            num: vec![0; n + 1],
            low: vec![0; n + 1],
            timer: 0,
            stack: Vec::new(),
            blocks: Vec::new(),
            cut_vertices: vec![false; n + 1],
        };
        for v in 1..=n as u8 {
            if state.num[v as usize] == 0 {
                state.dfs(v, 0);
            }
        }
        let mut cut_edges = Vec::new();
        for block in &state.blocks {
            if block.len() == 1 {
                cut_edges.push(block[0]);
            }
        }
        cut_edges.sort_unstable();
        let cut_vertices: Vec<u8> =
            (1..=n as u8).filter(|&v| state.cut_vertices[v as usize]).collect();
        BlockDecomposition { blocks: state.blocks, cut_edges, cut_vertices }
    }
}

impl std::fmt::Debug for LabeledGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "LabeledGraph(n={}, edges={:?})", self.n, self.edges)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ComponentKind {
    Tree,
    Unicyclic,
    Multicyclic,
}

/// A connected component classified by its edge/vertex count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentClass {
    pub kind: ComponentKind,
    /// Vertices in ascending order.
    pub vertices: Vec<u8>,
    pub edge_count: usize,
}

/// Block structure of a graph: every edge lies in exactly one block, the
/// bridges are exactly the single-edge blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockDecomposition {
    /// Each block as its edge list, `(u,v)` with `u < v`, sorted.
    pub blocks: Vec<Vec<(u8, u8)>>,
    pub cut_edges: Vec<(u8, u8)>,
    pub cut_vertices: Vec<u8>,
}

impl BlockDecomposition {
    /// Vertices of one block, ascending.
    pub fn block_vertices(block: &[(u8, u8)]) -> Vec<u8> {
        let mut mask = 0u64;
        for &(u, v) in block {
            mask |= 1 << u;
            mask |= 1 << v;
        }
        (0..64u8).filter(|&v| mask >> v & 1 == 1).collect()
    }
}

struct BlockDfs<'a> {
    graph: &'a LabeledGraph,
    num: Vec<u32>,
    low: Vec<u32>,
    timer: u32,
    stack: Vec<(u8, u8)>,
    blocks: Vec<Vec<(u8, u8)>>,
    cut_vertices: Vec<bool>,
}

impl BlockDfs<'_> {
    fn dfs(&mut self, v: u8, parent: u8) {
        self.timer += 1;
        self.num[v as usize] = self.timer;
        self.low[v as usize] = self.timer;
        let mut root_children = 0;
        for u in self.graph.neighbors(v) {
            if self.num[u as usize] == 0 {
                self.stack.push((v, u));
                self.dfs(u, v);
                self.low[v as usize] = self.low[v as usize].min(self.low[u as usize]);
                if self.low[u as usize] >= self.num[v as usize] {
                    // v separates u's subtree: pop one block
                    if parent != 0 {
                        self.cut_vertices[v as usize] = true;
                    } else {
                        root_children += 1;
                    }
                    let mut block = Vec::new();
                    while let Some(&top) = self.stack.last() {
                        self.stack.pop();
                        block.push(if top.0 < top.1 { top } else { (top.1, top.0) });
                        if top == (v, u) {
                            break;
                        }
                    }
                    block.sort_unstable();
                    self.blocks.push(block);
                }
            } else if u != parent && self.num[u as usize] < self.num[v as usize] {
                self.stack.push((v, u));
                self.low[v as usize] = self.low[v as usize].min(self.num[u as usize]);
            }
        }
        if parent == 0 && root_children >= 2 {
            self.cut_vertices[v as usize] = true;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builds_triangle() {
        let g = LabeledGraph::new(3, &[(1, 2), (2, 3), (1, 3)]).unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.m(), 3);
        assert_eq!(g.edges(), &[(1, 2), (1, 3), (2, 3)]);
        assert!(g.has_edge(3, 1));
    }

    #[test]
    fn single_edge_with_isolated_vertices() {
        let g = LabeledGraph::new(4, &[(1, 2)]).unwrap();
        assert_eq!(g.m(), 1);
        assert_eq!(g.degree(3), 0);
    }

    #[test]
    fn rejects_loop() {
        assert_eq!(LabeledGraph::new(2, &[(1, 1)]), Err(GraphError::Loop(1)));
    }

    #[test]
    fn rejects_duplicate_and_out_of_range() {
        assert_eq!(
            LabeledGraph::new(3, &[(1, 2), (2, 1)]),
            Err(GraphError::DuplicateEdge(1, 2))
        );
        assert_eq!(
            LabeledGraph::new(3, &[(1, 4)]),
            Err(GraphError::VertexOutOfRange(1, 4, 3))
        );
    }

    #[test]
    fn degree_sum_is_twice_edge_count() {
        let g = LabeledGraph::complete(6).unwrap();
        assert_eq!(g.degree_sequence().iter().sum::<usize>(), 2 * g.m());
    }

    #[test]
    fn classifies_components() {
        // triangle + isolated vertex
        let g = LabeledGraph::new(4, &[(1, 2), (2, 3), (1, 3)]).unwrap();
        let comps = g.components();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].kind, ComponentKind::Unicyclic);
        assert_eq!(comps[0].vertices, vec![1, 2, 3]);
        assert_eq!(comps[1].kind, ComponentKind::Tree);
        assert_eq!(comps[1].vertices, vec![4]);

        let k4 = LabeledGraph::complete(4).unwrap();
        assert_eq!(k4.components()[0].kind, ComponentKind::Multicyclic);

        let p3 = LabeledGraph::path(3).unwrap();
        assert_eq!(p3.components()[0].kind, ComponentKind::Tree);
    }

    #[test]
    fn components_partition_vertices() {
        let g = LabeledGraph::new(7, &[(1, 4), (4, 6), (2, 5), (3, 7), (3, 5), (2, 7), (5, 7)])
            .unwrap();
        let comps = g.components();
        let mut all: Vec<u8> = comps.iter().flat_map(|c| c.vertices.clone()).collect();
        all.sort_unstable();
        assert_eq!(all, (1..=7).collect::<Vec<u8>>());
    }

    #[test]
    fn path_blocks_are_bridges() {
        let g = LabeledGraph::path(3).unwrap();
        let bd = g.block_decomposition();
        assert_eq!(bd.blocks.len(), 2);
        assert_eq!(bd.cut_edges, vec![(1, 2), (2, 3)]);
        assert_eq!(bd.cut_vertices, vec![2]);
    }

    #[test]
    fn k4_is_one_block() {
        let bd = LabeledGraph::complete(4).unwrap().block_decomposition();
        assert_eq!(bd.blocks.len(), 1);
        assert!(bd.cut_edges.is_empty());
        assert!(bd.cut_vertices.is_empty());
    }

    #[test]
    fn triangle_with_pendant() {
        let g = LabeledGraph::new(4, &[(1, 2), (2, 3), (1, 3), (3, 4)]).unwrap();
        let bd = g.block_decomposition();
        assert_eq!(bd.blocks.len(), 2);
        assert_eq!(bd.cut_edges, vec![(3, 4)]);
        assert_eq!(bd.cut_vertices, vec![3]);
    }

    #[test]
    fn blocks_cover_each_edge_once() {
        let g = LabeledGraph::new(
            8,
            &[(1, 2), (2, 3), (1, 3), (3, 4), (4, 5), (5, 6), (4, 6), (6, 7), (2, 8)],
        )
        .unwrap();
        let bd = g.block_decomposition();
        let mut covered: Vec<(u8, u8)> = bd.blocks.iter().flatten().copied().collect();
        covered.sort_unstable();
        assert_eq!(covered, g.edges());
    }

    #[test]
    fn removing_cut_edge_disconnects() {
        let g = LabeledGraph::new(5, &[(1, 2), (2, 3), (1, 3), (3, 4), (4, 5), (3, 5)]).unwrap();
        let bd = g.block_decomposition();
        assert!(bd.cut_edges.is_empty());
        let h = LabeledGraph::new(5, &[(1, 2), (2, 3), (1, 3), (3, 4), (4, 5)]).unwrap();
        let bd = h.block_decomposition();
        assert_eq!(bd.cut_edges, vec![(3, 4), (4, 5)]);
        for &(u, v) in &bd.cut_edges {
            let cut = h.without_edge(u, v).unwrap();
            assert_eq!(cut.components().len(), h.components().len() + 1);
        }
    }
}
