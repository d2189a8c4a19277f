//! Exact isomorphism machinery for small graphs: canonical codes, subgraph
//! and induced copy counting.
//!
//! Everything here is brute force with invariant-based pruning. That is the
//! point: census sizes never exceed a handful of vertices and these routines
//! double as oracles for the rest of the crate.

use crate::graph::LabeledGraph;
use std::collections::BTreeSet;
use thiserror::Error;

/// Default cap for exact canonicalization.
pub const CANONICAL_CAP: usize = 10;
/// Default cap on pattern order for copy counting.
pub const PATTERN_CAP: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IsoError {
    #[error("graph order {0} exceeds the exact-canonicalization cap {1}")]
    CanonicalCapExceeded(usize, usize),
    #[error("pattern order {0} exceeds the pattern cap {1}")]
    PatternCapExceeded(usize, usize),
}

/// Canonical byte code: equal codes iff isomorphic. The code is the vertex
/// count followed by the lexicographically minimal adjacency bitstring
/// (column-major upper triangle, graph6 bit order) over all permutations
/// that respect the stable degree-refinement partition.
pub fn canonical_code(g: &LabeledGraph) -> Result<Vec<u8>, IsoError> {
    canonical_code_with_cap(g, CANONICAL_CAP)
}

pub fn canonical_code_with_cap(g: &LabeledGraph, cap: usize) -> Result<Vec<u8>, IsoError> {
    let n = g.n();
    if n > cap {
        return Err(IsoError::CanonicalCapExceeded(n, cap));
    }
    if n == 0 {
        return Ok(vec![0]);
    }
    let nbits = n * (n - 1) / 2;
    // Complete and empty graphs admit every permutation; code them directly.
    if g.m() == 0 || g.m() == nbits {
        let bit = if g.m() == 0 { 0u8 } else { 1u8 };
        return Ok(pack_code(n, &vec![bit; nbits]));
    }

    let cells = refinement_cells(g);
    // position -> cell index
    let mut cell_of_position = Vec::with_capacity(n);
    for (ci, cell) in cells.iter().enumerate() {
        for _ in 0..cell.len() {
            cell_of_position.push(ci);
        }
    }

    let mut search = CanonSearch {
        g,
        n,
        cells: &cells,
        cell_of_position: &cell_of_position,
        assigned: Vec::with_capacity(n),
        used: 0u64,
        bits: vec![0u8; nbits],
        best: None,
        generation: 0,
    };
    search.descend(0, false);
    Ok(pack_code(n, &search.best.expect("search visits at least one permutation")))
}

fn pack_code(n: usize, bits: &[u8]) -> Vec<u8> {
    let mut out = vec![n as u8];
    let mut acc = 0u8;
    for (i, &b) in bits.iter().enumerate() {
        acc = acc << 1 | b;
        if i % 8 == 7 {
            out.push(acc);
            acc = 0;
        }
    }
    if bits.len() % 8 != 0 {
        out.push(acc << (8 - bits.len() % 8));
    }
    out
}

/// Stable vertex partition under iterated neighbor-color refinement, cells
/// ordered by an isomorphism-invariant signature.
fn refinement_cells(g: &LabeledGraph) -> Vec<Vec<u8>> {
    let n = g.n();
    let mut color: Vec<u32> = (1..=n as u8).map(|v| g.degree(v) as u32).collect();
    loop {
        let mut sigs: Vec<(u32, Vec<u32>)> = Vec::with_capacity(n);
        for v in 1..=n as u8 {
            let mut nb: Vec<u32> =
                g.neighbors(v).map(|u| color[u as usize - 1]).collect();
            nb.sort_unstable();
            sigs.push((color[v as usize - 1], nb));
        }
        let mut uniq: Vec<&(u32, Vec<u32>)> = sigs.iter().collect();
        uniq.sort();
        uniq.dedup();
        let next: Vec<u32> = sigs
            .iter()
            .map(|s| uniq.binary_search(&s).unwrap() as u32)
            .collect();
        let stable = {
            let old = color.iter().collect::<BTreeSet<_>>().len();
            let new = next.iter().collect::<BTreeSet<_>>().len();
            old == new
        };
        color = next;
        if stable {
            break;
        }
    }
    let ncolors = color.iter().max().map_or(0, |&c| c as usize + 1);
    let mut cells: Vec<Vec<u8>> = vec![Vec::new(); ncolors];
    for v in 1..=n as u8 {
        cells[color[v as usize - 1] as usize].push(v);
    }
    cells.retain(|c| !c.is_empty());
    cells
}

struct CanonSearch<'a> {
    g: &'a LabeledGraph,
    n: usize,
    cells: &'a [Vec<u8>],
    cell_of_position: &'a [usize],
    assigned: Vec<u8>,
    used: u64,
    bits: Vec<u8>,
    best: Option<Vec<u8>>,
    /// Bumped whenever `best` is replaced, so ancestors can tell their prefix
    /// now matches the incumbent (the replacement came from their subtree).
    generation: u64,
}

impl CanonSearch<'_> {
    /// Invariant: `tight` ⇒ the prefix written so far equals the incumbent's
    /// prefix; `!tight` ⇒ it is strictly smaller (or there is no incumbent).
    fn descend(&mut self, depth: usize, tight: bool) {
        if depth == self.n {
            if !tight {
                self.best = Some(self.bits.clone());
                self.generation += 1;
            }
            return;
        }
        let offset = depth * (depth.saturating_sub(1)) / 2;
        let cell = &self.cells[self.cell_of_position[depth]];
        let mut tight = tight;
        let mut seen_gen = self.generation;
        for ci in 0..cell.len() {
            let v = cell[ci];
            if self.used >> v & 1 == 1 {
                continue;
            }
            if self.generation != seen_gen {
                // best was replaced below us, so our prefix is its prefix
                seen_gen = self.generation;
                tight = true;
            }
            let mut child_tight = tight;
            let mut viable = true;
            for i in 0..depth {
                let bit = u8::from(self.g.has_edge(self.assigned[i], v));
                self.bits[offset + i] = bit;
                if child_tight {
                    let best = self.best.as_ref().expect("tight implies incumbent");
                    match bit.cmp(&best[offset + i]) {
                        std::cmp::Ordering::Greater => {
                            viable = false;
                            break;
                        }
                        std::cmp::Ordering::Less => child_tight = false,
                        std::cmp::Ordering::Equal => {}
                    }
                }
            }
            if !viable {
                continue;
            }
            self.assigned.push(v);
            self.used |= 1 << v;
            self.descend(depth + 1, child_tight);
            self.used &= !(1 << v);
            self.assigned.pop();
        }
    }
}

/// One subgraph copy: its vertex set and edge set inside the host graph.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct CopyWitness {
    pub vertices: Vec<u8>,
    pub edges: Vec<(u8, u8)>,
}

/// Counts subgraphs of `g` isomorphic to `pattern` (subgraph, not induced)
/// and returns the distinct witnesses.
pub fn copies_of(pattern: &LabeledGraph, g: &LabeledGraph) -> Result<Vec<CopyWitness>, IsoError> {
    copies_of_with_cap(pattern, g, PATTERN_CAP)
}

pub fn copies_of_with_cap(
    pattern: &LabeledGraph,
    g: &LabeledGraph,
    cap: usize,
) -> Result<Vec<CopyWitness>, IsoError> {
    if pattern.n() > cap {
        return Err(IsoError::PatternCapExceeded(pattern.n(), cap));
    }
    let mut witnesses = BTreeSet::new();
    for_each_embedding(pattern, g, false, &mut |map| {
        let mut vertices: Vec<u8> = map.to_vec();
        vertices.sort_unstable();
        let mut edges: Vec<(u8, u8)> = pattern
            .edges()
            .iter()
            .map(|&(a, b)| {
                let (x, y) = (map[a as usize - 1], map[b as usize - 1]);
                if x < y {
                    (x, y)
                } else {
                    (y, x)
                }
            })
            .collect();
        edges.sort_unstable();
        witnesses.insert(CopyWitness { vertices, edges });
    });
    Ok(witnesses.into_iter().collect())
}

pub fn count_copies(pattern: &LabeledGraph, g: &LabeledGraph) -> Result<usize, IsoError> {
    Ok(copies_of(pattern, g)?.len())
}

pub fn has_copy(pattern: &LabeledGraph, g: &LabeledGraph) -> Result<bool, IsoError> {
    if pattern.n() > PATTERN_CAP {
        return Err(IsoError::PatternCapExceeded(pattern.n(), PATTERN_CAP));
    }
    let mut found = false;
    for_each_embedding_until(pattern, g, false, &mut |_| {
        found = true;
        true
    });
    Ok(found)
}

/// Vertex sets `W` (ascending) with `g[W]` isomorphic to `pattern`.
pub fn induced_copy_vertex_sets(
    pattern: &LabeledGraph,
    g: &LabeledGraph,
) -> Result<Vec<Vec<u8>>, IsoError> {
    if pattern.n() > PATTERN_CAP {
        return Err(IsoError::PatternCapExceeded(pattern.n(), PATTERN_CAP));
    }
    let mut sets = BTreeSet::new();
    for_each_embedding(pattern, g, true, &mut |map| {
        let mut vertices: Vec<u8> = map.to_vec();
        vertices.sort_unstable();
        sets.insert(vertices);
    });
    Ok(sets.into_iter().collect())
}

/// Number of whole components of `g` isomorphic to `pattern`.
pub fn components_isomorphic_to(
    pattern: &LabeledGraph,
    g: &LabeledGraph,
) -> Result<usize, IsoError> {
    if pattern.n() > PATTERN_CAP {
        return Err(IsoError::PatternCapExceeded(pattern.n(), PATTERN_CAP));
    }
    let code = canonical_code(pattern)?;
    let mut count = 0;
    for comp in g.components() {
        if comp.vertices.len() == pattern.n() && comp.edge_count == pattern.m() {
            let sub = g.induced(&comp.vertices);
            if canonical_code(&sub)? == code {
                count += 1;
            }
        }
    }
    Ok(count)
}

fn for_each_embedding(
    pattern: &LabeledGraph,
    g: &LabeledGraph,
    induced: bool,
    visit: &mut dyn FnMut(&[u8]),
) {
    for_each_embedding_until(pattern, g, induced, &mut |map| {
        visit(map);
        false
    });
}

/// Enumerates injective maps from the pattern into `g` that preserve edges
/// (and non-edges when `induced`). Stops early when `visit` returns true.
fn for_each_embedding_until(
    pattern: &LabeledGraph,
    g: &LabeledGraph,
    induced: bool,
    visit: &mut dyn FnMut(&[u8]) -> bool,
) {
    let h = pattern.n();
    if h == 0 || h > g.n() {
        return;
    }
    // Order pattern vertices so each one (after the first of its component)
    // touches an already-placed neighbor where possible.
    let mut order: Vec<u8> = Vec::with_capacity(h);
    let mut placed = vec![false; h + 1];
    while order.len() < h {
        let next = (1..=h as u8)
            .filter(|&v| !placed[v as usize])
            .max_by_key(|&v| {
                let anchored = pattern
                    .neighbors(v)
                    .filter(|&u| placed[u as usize])
                    .count();
                (anchored, pattern.degree(v))
            })
            .unwrap();
        placed[next as usize] = true;
        order.push(next);
    }

    let mut map = vec![0u8; h]; // pattern vertex -> host vertex, 0 = unset
    let mut used = 0u64;
    let mut stack: Vec<(usize, u8)> = Vec::new(); // (order index, host candidate)
    let mut idx = 0usize;
    let mut candidate = 1u8;
    loop {
        let pv = order[idx];
        let mut found = None;
        let mut c = candidate;
        'cand: while (c as usize) <= g.n() {
            if used >> c & 1 == 0 && g.degree(c) >= pattern.degree(pv) {
                for u in pattern.neighbors(pv) {
                    let img = map[u as usize - 1];
                    if img != 0 && !g.has_edge(img, c) {
                        c += 1;
                        continue 'cand;
                    }
                }
                if induced {
                    for u in 1..=h as u8 {
                        if u != pv && !pattern.has_edge(u, pv) {
                            let img = map[u as usize - 1];
                            if img != 0 && g.has_edge(img, c) {
                                c += 1;
                                continue 'cand;
                            }
                        }
                    }
                }
                found = Some(c);
                break;
            }
            c += 1;
        }
        match found {
            Some(hv) => {
                map[pv as usize - 1] = hv;
                used |= 1 << hv;
                if idx + 1 == h {
                    if visit(&map) {
                        return;
                    }
                    map[pv as usize - 1] = 0;
                    used &= !(1 << hv);
                    candidate = hv + 1;
                } else {
                    stack.push((idx, hv));
                    idx += 1;
                    candidate = 1;
                }
            }
            None => match stack.pop() {
                Some((pidx, phv)) => {
                    idx = pidx;
                    let ppv = order[pidx];
                    map[ppv as usize - 1] = 0;
                    used &= !(1 << phv);
                    candidate = phv + 1;
                }
                None => return,
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, edges: &[(u8, u8)]) -> LabeledGraph {
        LabeledGraph::new(n, edges).unwrap()
    }

    #[test]
    fn triangles_in_k4() {
        let k3 = LabeledGraph::complete(3).unwrap();
        let k4 = LabeledGraph::complete(4).unwrap();
        assert_eq!(count_copies(&k3, &k4).unwrap(), 4);
    }

    #[test]
    fn paths_in_k3() {
        let p3 = LabeledGraph::path(3).unwrap();
        let k3 = LabeledGraph::complete(3).unwrap();
        assert_eq!(count_copies(&p3, &k3).unwrap(), 3);
    }

    #[test]
    fn k5_does_not_fit_in_k4() {
        let k5 = LabeledGraph::complete(5).unwrap();
        let k4 = LabeledGraph::complete(4).unwrap();
        assert_eq!(count_copies(&k5, &k4).unwrap(), 0);
        assert!(!has_copy(&k5, &k4).unwrap());
    }

    #[test]
    fn copies_with_isolated_pattern_vertices() {
        let k1 = LabeledGraph::empty(1).unwrap();
        let tri_plus = g(4, &[(1, 2), (2, 3), (1, 3)]);
        assert_eq!(count_copies(&k1, &tri_plus).unwrap(), 4);
    }

    #[test]
    fn component_counts() {
        let k1 = LabeledGraph::empty(1).unwrap();
        let tri_plus = g(4, &[(1, 2), (2, 3), (1, 3)]);
        assert_eq!(components_isomorphic_to(&k1, &tri_plus).unwrap(), 1);

        let k3 = LabeledGraph::complete(3).unwrap();
        let two_tris = g(6, &[(1, 2), (2, 3), (1, 3), (4, 5), (5, 6), (4, 6)]);
        assert_eq!(components_isomorphic_to(&k3, &two_tris).unwrap(), 2);
        let k4 = LabeledGraph::complete(4).unwrap();
        assert_eq!(components_isomorphic_to(&k3, &k4).unwrap(), 0);
    }

    #[test]
    fn canonical_code_relabeling_invariant() {
        let a = g(3, &[(1, 2), (2, 3), (1, 3)]);
        // triangle on labels {2,3,4} inside n=4, reduced to its component
        let b = g(4, &[(2, 3), (3, 4), (2, 4)]);
        let comp = &b.components()[1];
        assert_eq!(comp.vertices, vec![2, 3, 4]);
        let sub = b.induced(&comp.vertices);
        assert_eq!(canonical_code(&a).unwrap(), canonical_code(&sub).unwrap());
    }

    #[test]
    fn canonical_code_separates_sizes() {
        let p3 = LabeledGraph::path(3).unwrap();
        let k3 = LabeledGraph::complete(3).unwrap();
        assert_ne!(canonical_code(&p3).unwrap(), canonical_code(&k3).unwrap());
    }

    #[test]
    fn canonical_cap_enforced() {
        let big = LabeledGraph::empty(11).unwrap();
        assert!(matches!(
            canonical_code(&big),
            Err(IsoError::CanonicalCapExceeded(11, 10))
        ));
    }

    #[test]
    fn canonical_code_exhaustive_small_permutations() {
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let n = rng.gen_range(1..=6usize);
            let mut edges = Vec::new();
            for u in 1..=n as u8 {
                for v in u + 1..=n as u8 {
                    if rng.gen_bool(0.5) {
                        edges.push((u, v));
                    }
                }
            }
            let graph = g(n, &edges);
            let code = canonical_code(&graph).unwrap();
            // relabel by a random permutation
            let mut perm: Vec<u8> = (1..=n as u8).collect();
            perm.shuffle(&mut rng);
            let relabeled: Vec<(u8, u8)> = edges
                .iter()
                .map(|&(u, v)| (perm[u as usize - 1], perm[v as usize - 1]))
                .collect();
            let graph2 = g(n, &relabeled);
            assert_eq!(code, canonical_code(&graph2).unwrap());
        }
    }
}
