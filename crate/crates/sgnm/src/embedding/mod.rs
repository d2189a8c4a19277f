//! Embeddings of graphs on orientable surfaces: face tracing for a given
//! rotation system, exact minimum genus, genus-bounded decisions, and the
//! largest-face statistic.
//!
//! `min_genus` works blockwise (genus is additive over blocks and
//! components) and merges the block witnesses into one rotation system per
//! component. `min_genus_direct` searches a connected graph whole and
//! exists so the two routes can be checked against each other.

mod planarity;
mod rotation;
mod search;

pub use planarity::is_planar;
pub use rotation::{for_each_rotation, trace_faces, EmbeddingSummary, RotationSystem};

use crate::graph::{BlockDecomposition, LabeledGraph};
use search::DartGraph;
use thiserror::Error;

/// Default branch-node budget for genus searches.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EmbedError {
    #[error("graph is disconnected; this operation works per component")]
    Disconnected,
    #[error("rotation system does not match the graph")]
    InvalidRotation,
    #[error("graph too large for rotation search ({darts} darts, limit {max})")]
    TooLarge { darts: usize, max: usize },
    #[error("search budget of {budget} nodes exhausted (genus bounds: {lower}..{upper:?})")]
    BudgetExhausted { budget: u64, lower: u32, upper: Option<u32> },
    #[error("no embedding with genus at most {bound} exists")]
    UnsatisfiableBound { bound: u32 },
}

/// Minimum-genus embedding of one component, on the component relabeled to
/// `{1..k}` by the increasing bijection from `vertices`.
#[derive(Debug, Clone)]
pub struct ComponentEmbedding {
    pub vertices: Vec<u8>,
    pub rotation: RotationSystem,
}

#[derive(Debug, Clone)]
pub struct GenusResult {
    pub genus: u32,
    pub witnesses: Vec<ComponentEmbedding>,
    pub nodes_explored: u64,
}

/// Euler-formula lower bound on the genus, summed over blocks:
/// each block with k >= 3 vertices needs genus at least
/// ceil((m - 3k + 6) / 6).
pub fn euler_lower_bound(g: &LabeledGraph) -> u32 {
    let mut total = 0i64;
    for block in g.block_decomposition().blocks {
        let k = BlockDecomposition::block_vertices(&block).len();
        if k >= 3 {
            let excess = block.len() as i64 - 3 * k as i64 + 6;
            if excess > 0 {
                total += (excess + 5) / 6;
            }
        }
    }
    total as u32
}

/// Exact minimum orientable genus, computed blockwise with witnesses.
pub fn min_genus(g: &LabeledGraph) -> Result<GenusResult, EmbedError> {
    min_genus_budgeted(g, DEFAULT_BUDGET)
}

pub fn min_genus_budgeted(g: &LabeledGraph, budget: u64) -> Result<GenusResult, EmbedError> {
    let mut total = 0u32;
    let mut witnesses = Vec::new();
    let mut nodes = 0u64;
    let mut remaining = budget;
    for comp in g.components() {
        let local = g.induced(&comp.vertices);
        let (genus, rotation, used) = component_min_genus(&local, remaining)?;
        remaining = remaining.saturating_sub(used);
        nodes += used;
        total += genus;
        witnesses.push(ComponentEmbedding { vertices: comp.vertices, rotation });
    }
    Ok(GenusResult { genus: total, witnesses, nodes_explored: nodes })
}

/// Minimum genus of a connected graph searched whole, without the block
/// decomposition. Cross-validation route for `min_genus`.
pub fn min_genus_direct(g: &LabeledGraph, budget: u64) -> Result<(u32, u64), EmbedError> {
    if !g.is_connected() {
        return Err(EmbedError::Disconnected);
    }
    if g.m() == 0 {
        return Ok((0, 0));
    }
    let dg = DartGraph::new(g)?;
    let out = search::connected_min_genus(&dg, None, budget)?;
    Ok((out.genus.expect("uncapped search returns a genus"), out.stats.nodes))
}

/// Unpruned enumeration of every rotation system of a connected graph;
/// returns the minimum genus and the number of rotation systems visited.
/// Brute-force oracle; use on very small graphs only.
pub fn exhaustive_min_genus(g: &LabeledGraph, budget: u64) -> Result<(u32, u64), EmbedError> {
    if !g.is_connected() {
        return Err(EmbedError::Disconnected);
    }
    if g.m() == 0 {
        return Ok((0, 1));
    }
    let dg = DartGraph::new(g)?;
    let (genus, leaves, _) = search::exhaustive_min_genus(&dg, budget)?;
    Ok((genus, leaves))
}

/// True iff `g` embeds on the orientable surface of genus `bound`. Uses the
/// planarity test as the sufficient fast path and the Euler bound for early
/// rejection before any search runs.
pub fn is_genus_at_most(g: &LabeledGraph, bound: u32) -> Result<bool, EmbedError> {
    is_genus_at_most_budgeted(g, bound, DEFAULT_BUDGET)
}

pub fn is_genus_at_most_budgeted(
    g: &LabeledGraph,
    bound: u32,
    budget: u64,
) -> Result<bool, EmbedError> {
    if euler_lower_bound(g) > bound {
        return Ok(false);
    }
    if is_planar(g) {
        return Ok(true);
    }
    if bound == 0 {
        return Ok(false);
    }
    let mut remaining_genus = bound;
    let mut remaining_budget = budget;
    for comp in g.components() {
        let local = g.induced(&comp.vertices);
        if local.m() == 0 {
            continue;
        }
        for block in local.block_decomposition().blocks {
            if block.len() <= 8 {
                continue; // too few edges to be non-planar
            }
            let sub = block_subgraph(&block);
            if is_planar(&sub) {
                continue;
            }
            let dg = DartGraph::new(&sub)?;
            let out = search::connected_min_genus(&dg, Some(remaining_genus), remaining_budget)?;
            remaining_budget = remaining_budget.saturating_sub(out.stats.nodes);
            match out.genus {
                None => return Ok(false),
                Some(gb) => remaining_genus -= gb,
            }
        }
    }
    Ok(true)
}

/// Largest face size over all embeddings of genus at most `bound`.
///
/// Connected graphs are searched directly. For a disconnected graph the
/// components are nested into one another's faces, so sizes and genera both
/// add: the result maximizes the sum of per-component largest faces over
/// genus allocations summing to at most `bound`. Isolated vertices
/// contribute 0.
pub fn max_face_size(g: &LabeledGraph, bound: u32) -> Result<usize, EmbedError> {
    max_face_size_budgeted(g, bound, DEFAULT_BUDGET)
}

pub fn max_face_size_budgeted(
    g: &LabeledGraph,
    bound: u32,
    budget: u64,
) -> Result<usize, EmbedError> {
    if !is_genus_at_most_budgeted(g, bound, budget)? {
        return Err(EmbedError::UnsatisfiableBound { bound });
    }
    let mut remaining_budget = budget;
    // per component: largest face for each genus allocation
    let mut tables: Vec<Vec<Option<usize>>> = Vec::new();
    for comp in g.components() {
        let local = g.induced(&comp.vertices);
        if local.m() == 0 {
            continue; // isolated vertices contribute 0
        }
        let (min_g, _, used) = component_min_genus(&local, remaining_budget)?;
        remaining_budget = remaining_budget.saturating_sub(used);
        let dg = DartGraph::new(&local)?;
        let mut row: Vec<Option<usize>> = vec![None; bound as usize + 1];
        for alloc in min_g..=bound {
            let (best, nodes) = search::connected_max_face(&dg, alloc, remaining_budget)?;
            remaining_budget = remaining_budget.saturating_sub(nodes);
            row[alloc as usize] = Some(best);
        }
        tables.push(row);
    }
    // knapsack over genus allocations
    let mut dp: Vec<Option<usize>> = vec![None; bound as usize + 1];
    dp[0] = Some(0);
    for row in &tables {
        let mut next: Vec<Option<usize>> = vec![None; bound as usize + 1];
        for (spent, entry) in dp.iter().enumerate() {
            let Some(sum) = entry else { continue };
            for (alloc, face) in row.iter().enumerate() {
                let Some(face) = face else { continue };
                if spent + alloc <= bound as usize {
                    let slot = &mut next[spent + alloc];
                    let cand = sum + face;
                    if slot.map_or(true, |s| cand > s) {
                        *slot = Some(cand);
                    }
                }
            }
        }
        dp = next;
    }
    Ok(dp.iter().flatten().copied().max().unwrap_or(0))
}

/// Exact minimum genus of a connected graph with the block-merged witness
/// rotation. Returns (genus, rotation, nodes used).
fn component_min_genus(
    local: &LabeledGraph,
    budget: u64,
) -> Result<(u32, RotationSystem, u64), EmbedError> {
    let k = local.n();
    let mut order: Vec<Vec<u8>> = vec![Vec::new(); k + 1];
    let mut genus = 0u32;
    let mut nodes = 0u64;
    let mut remaining = budget;
    for block in local.block_decomposition().blocks {
        if block.len() == 1 {
            // a bridge embeds in any face touching its endpoints; appending
            // keeps the insertion contiguous
            let (u, v) = block[0];
            order[u as usize].push(v);
            order[v as usize].push(u);
            continue;
        }
        let sub = block_subgraph(&block);
        let vertices = BlockDecomposition::block_vertices(&block);
        let dg = DartGraph::new(&sub)?;
        let out = search::connected_min_genus(&dg, None, remaining)?;
        nodes += out.stats.nodes;
        remaining = remaining.saturating_sub(out.stats.nodes);
        genus += out.genus.expect("uncapped search returns a genus");
        let block_rot = succ_to_orders(&dg, &out.witness_succ.expect("uncapped search has witness"));
        // contiguous insertion at shared vertices merges one face per join,
        // which is exactly what keeps genus additive
        for (bi, seq) in block_rot.iter().enumerate().skip(1) {
            let global = vertices[bi - 1] as usize;
            order[global].extend(seq.iter().map(|&x| vertices[x as usize - 1]));
        }
    }
    let rotation = RotationSystem::new(local, order)?;
    if cfg!(debug_assertions) && local.n() > 0 {
        let traced = trace_faces(local, &rotation)?;
        debug_assert_eq!(traced.genus, genus, "merged witness re-traces to the block sum");
    }
    Ok((genus, rotation, nodes))
}

/// The block as its own graph on `{1..k}` via the increasing bijection.
fn block_subgraph(block: &[(u8, u8)]) -> LabeledGraph {
    let vertices = BlockDecomposition::block_vertices(block);
    let mut index = [0u8; 64];
    for (i, &v) in vertices.iter().enumerate() {
        index[v as usize] = i as u8 + 1;
    }
    let edges: Vec<(u8, u8)> = block
        .iter()
        .map(|&(u, v)| (index[u as usize], index[v as usize]))
        .collect();
    LabeledGraph::new(vertices.len(), &edges).expect("block subgraph is valid")
}

/// Cyclic neighbor orders out of a complete successor map.
fn succ_to_orders(dg: &DartGraph, succ: &[u32]) -> Vec<Vec<u8>> {
    let mut orders = vec![Vec::new(); dg.k + 1];
    for v in 1..=dg.k {
        if dg.darts_at[v].is_empty() {
            continue;
        }
        let d0 = dg.darts_at[v][0];
        let mut d = d0;
        loop {
            orders[v].push(dg.head[d as usize]);
            d = succ[d as usize];
            if d == d0 {
                break;
            }
        }
    }
    orders
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trees_have_genus_zero() {
        for n in 1..=8 {
            let p = LabeledGraph::path(n).unwrap();
            assert_eq!(min_genus(&p).unwrap().genus, 0);
        }
    }

    #[test]
    fn known_genus_anchors() {
        let k5 = LabeledGraph::complete(5).unwrap();
        assert_eq!(min_genus(&k5).unwrap().genus, 1);
        let k33 = LabeledGraph::complete_bipartite(3, 3).unwrap();
        assert_eq!(min_genus(&k33).unwrap().genus, 1);
        let k6 = LabeledGraph::complete(6).unwrap();
        assert_eq!(min_genus(&k6).unwrap().genus, 1);
    }

    #[test]
    fn witnesses_retrace_to_reported_genus() {
        let g = LabeledGraph::new(
            9,
            &[
                (1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4), // K4 block
                (4, 5), // bridge
                (5, 6), (5, 7), (6, 7), // triangle block
                (8, 9), // separate component
            ],
        )
        .unwrap();
        let res = min_genus(&g).unwrap();
        assert_eq!(res.genus, 0);
        let mut sum = 0;
        for w in &res.witnesses {
            let local = g.induced(&w.vertices);
            let s = trace_faces(&local, &w.rotation).unwrap();
            sum += s.genus;
        }
        assert_eq!(sum, res.genus);
    }

    #[test]
    fn genus_adds_over_components_and_blocks() {
        // two K5 blocks sharing a cut vertex: genus 2
        let mut edges = Vec::new();
        for u in 1..=5u8 {
            for v in u + 1..=5u8 {
                edges.push((u, v));
            }
        }
        for u in 5..=9u8 {
            for v in u + 1..=9u8 {
                edges.push((u, v));
            }
        }
        let g = LabeledGraph::new(9, &edges).unwrap();
        let res = min_genus(&g).unwrap();
        assert_eq!(res.genus, 2);
        let direct = min_genus_direct(&g, DEFAULT_BUDGET).unwrap();
        assert_eq!(direct.0, 2);
    }

    #[test]
    fn genus_bound_decisions() {
        let k5 = LabeledGraph::complete(5).unwrap();
        assert!(!is_genus_at_most(&k5, 0).unwrap());
        assert!(is_genus_at_most(&k5, 1).unwrap());
        let forest = LabeledGraph::new(6, &[(1, 2), (2, 3), (4, 5)]).unwrap();
        assert!(is_genus_at_most(&forest, 0).unwrap());
    }

    #[test]
    fn max_face_disconnected_nesting() {
        // tree on n vertices: one face of size 2(n-1)
        for n in 2..=8 {
            let t = LabeledGraph::path(n).unwrap();
            assert_eq!(max_face_size(&t, 0).unwrap(), 2 * (n - 1));
        }
        let k3 = LabeledGraph::complete(3).unwrap();
        assert_eq!(max_face_size(&k3, 0).unwrap(), 3);
        // two disjoint triangles nested: 3 + 3
        let two = LabeledGraph::new(6, &[(1, 2), (2, 3), (1, 3), (4, 5), (5, 6), (4, 6)]).unwrap();
        assert_eq!(max_face_size(&two, 0).unwrap(), 6);
        // unsatisfiable bound
        let k5 = LabeledGraph::complete(5).unwrap();
        assert_eq!(
            max_face_size(&k5, 0),
            Err(EmbedError::UnsatisfiableBound { bound: 0 })
        );
    }

    #[test]
    fn max_face_monotone_in_genus() {
        let k4 = LabeledGraph::complete(4).unwrap();
        let f0 = max_face_size(&k4, 0).unwrap();
        let f1 = max_face_size(&k4, 1).unwrap();
        assert!(f1 >= f0);
    }

    #[test]
    fn edge_bound_holds_for_accepted_graphs() {
        // every accepted graph satisfies m <= 3n - 6 + 6g
        let octa_plus = LabeledGraph::complete(6).unwrap();
        assert!(is_genus_at_most(&octa_plus, 1).unwrap());
        assert!(octa_plus.m() <= 3 * octa_plus.n() - 6 + 6);
    }
}
