//! Structural observables: pendant objects, appearances, triangulated
//! appearances, addable non-edges, good triangles, non-multicyclic mass.

use crate::embedding::{self, EmbedError};
use crate::graph::{ComponentKind, LabeledGraph};
use crate::iso::{self, IsoError};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;
use thiserror::Error;

/// Conflict graphs larger than this (per connected piece) fall back to the
/// greedy lower bound.
pub const DISJOINT_EXACT_CAP: usize = 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StatError {
    #[error("pattern must be connected")]
    PatternNotConnected,
    #[error("pattern order {0} must be smaller than the host order {1}")]
    PatternTooLarge(usize, usize),
    #[error(transparent)]
    Iso(#[from] IsoError),
    #[error(transparent)]
    Embed(#[from] EmbedError),
    #[error("genus bound {0} is not satisfied by the input graph")]
    BoundViolated(u32),
    #[error("unknown statistic `{0}`")]
    UnknownStatistic(String),
}

/// Number of degree-1 vertices and of edges incident to one.
pub fn pendant_stats(g: &LabeledGraph) -> (usize, usize) {
    let pendant_vertices = g.vertices().filter(|&v| g.degree(v) == 1).count();
    let pendant_edges = g
        .edges()
        .iter()
        .filter(|&&(u, v)| g.degree(u) == 1 || g.degree(v) == 1)
        .count();
    (pendant_vertices, pendant_edges)
}

/// An appearance of a pattern `H` on `[h]`: the increasing bijection onto
/// `w` is an induced isomorphism and exactly one edge leaves `w`, at the
/// root (the smallest element of `w`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Appearance {
    pub w: Vec<u8>,
    pub root: u8,
    pub connecting_edge: (u8, u8),
}

pub fn appearances(h: &LabeledGraph, g: &LabeledGraph) -> Result<Vec<Appearance>, StatError> {
    if !h.is_connected() || h.n() == 0 {
        return Err(StatError::PatternNotConnected);
    }
    if h.n() >= g.n() {
        return Err(StatError::PatternTooLarge(h.n(), g.n()));
    }
    let mut out = Vec::new();
    for_each_subset(g.n(), h.n(), &mut |w| {
        if !increasing_induced_iso(h, g, w) {
            return;
        }
        let mut mask = 0u64;
        for &v in w {
            mask |= 1 << v;
        }
        let boundary = g.boundary_edges(mask);
        if boundary.len() != 1 {
            return;
        }
        let (a, b) = boundary[0];
        let root = w[0];
        if a == root || b == root {
            out.push(Appearance { w: w.to_vec(), root, connecting_edge: (a, b) });
        }
    });
    Ok(out)
}

/// Induced copies of a connected `H` joined to the rest by exactly one edge
/// (any isomorphism, no root condition). Returned as vertex sets.
pub fn pendant_copies(h: &LabeledGraph, g: &LabeledGraph) -> Result<Vec<Vec<u8>>, StatError> {
    if !h.is_connected() || h.n() == 0 {
        return Err(StatError::PatternNotConnected);
    }
    let mut out = Vec::new();
    for w in iso::induced_copy_vertex_sets(h, g)? {
        let mut mask = 0u64;
        for &v in &w {
            mask |= 1 << v;
        }
        if g.boundary_edges(mask).len() == 1 {
            out.push(w);
        }
    }
    Ok(out)
}

/// Exact size of a largest pairwise vertex-disjoint subfamily of the
/// appearances of `h` in `g`.
pub fn max_vertex_disjoint_appearances(
    h: &LabeledGraph,
    g: &LabeledGraph,
) -> Result<DisjointCount, StatError> {
    let apps = appearances(h, g)?;
    let masks: Vec<u64> = apps
        .iter()
        .map(|a| a.w.iter().fold(0u64, |m, &v| m | 1 << v))
        .collect();
    Ok(max_disjoint_family(&masks))
}

/// A triangulated appearance: an induced order-isomorphic copy at `w`
/// joined to the rest by exactly six edges alternating around the hexagon
/// r1-v1-r2-v2-r3-v3, where the anchors v1,v2,v3 induce a triangle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangulatedAppearance {
    pub w: Vec<u8>,
    pub boundary: (u8, u8, u8),
    pub anchors: (u8, u8, u8),
    pub total_edge_set: Vec<(u8, u8)>,
    pub rooted: bool,
}

pub fn triangulated_appearances(
    t: &LabeledGraph,
    g: &LabeledGraph,
    rooted_only: bool,
) -> Result<Vec<TriangulatedAppearance>, StatError> {
    if !t.is_connected() || t.n() == 0 {
        return Err(StatError::PatternNotConnected);
    }
    let mut out = Vec::new();
    if t.n() + 3 > g.n() {
        return Ok(out);
    }
    for_each_subset(g.n(), t.n(), &mut |w| {
        if let Some(app) = check_triangulated(t, g, w) {
            if !rooted_only || app.rooted {
                out.push(app);
            }
        }
    });
    Ok(out)
}

fn check_triangulated(
    t: &LabeledGraph,
    g: &LabeledGraph,
    w: &[u8],
) -> Option<TriangulatedAppearance> {
    if !increasing_induced_iso(t, g, w) {
        return None;
    }
    let mut mask = 0u64;
    for &v in w {
        mask |= 1 << v;
    }
    let boundary = g.boundary_edges(mask);
    if boundary.len() != 6 {
        return None;
    }
    // split endpoints into the inside (r) and outside (v) sides
    let mut r_deg: BTreeMap<u8, Vec<u8>> = BTreeMap::new();
    let mut v_deg: BTreeMap<u8, Vec<u8>> = BTreeMap::new();
    for &(a, b) in &boundary {
        let (inside, outside) = if mask >> a & 1 == 1 { (a, b) } else { (b, a) };
        r_deg.entry(inside).or_default().push(outside);
        v_deg.entry(outside).or_default().push(inside);
    }
    if r_deg.len() != 3 || v_deg.len() != 3 {
        return None;
    }
    if r_deg.values().any(|x| x.len() != 2) || v_deg.values().any(|x| x.len() != 2) {
        return None;
    }
    // anchors must induce a triangle
    let anchors: Vec<u8> = v_deg.keys().copied().collect();
    if !(g.has_edge(anchors[0], anchors[1])
        && g.has_edge(anchors[0], anchors[2])
        && g.has_edge(anchors[1], anchors[2]))
    {
        return None;
    }
    // walk the hexagon r1 -> v1 -> r2 -> v2 -> r3 -> v3, starting at the
    // smallest r and its smaller anchor neighbor
    let r1 = *r_deg.keys().next().unwrap();
    let v1 = *r_deg[&r1].iter().min().unwrap();
    let r2 = *v_deg[&v1].iter().find(|&&x| x != r1)?;
    let v2 = *r_deg[&r2].iter().find(|&&x| x != v1)?;
    let r3 = *v_deg[&v2].iter().find(|&&x| x != r2)?;
    let v3 = *r_deg[&r3].iter().find(|&&x| x != v2)?;
    // the walk must close into a single 6-cycle
    if !v_deg[&v3].contains(&r1) || r3 == r1 || v3 == v1 {
        return None;
    }
    let mut total: Vec<(u8, u8)> = boundary.clone();
    for (i, &a) in w.iter().enumerate() {
        for &b in w.iter().skip(i + 1) {
            if g.has_edge(a, b) {
                total.push(if a < b { (a, b) } else { (b, a) });
            }
        }
    }
    total.sort_unstable();
    let rooted = {
        let mut rs = [r1, r2, r3];
        rs.sort_unstable();
        rs[..] == w[..3]
    };
    Some(TriangulatedAppearance {
        w: w.to_vec(),
        boundary: (r1, r2, r3),
        anchors: (v1, v2, v3),
        total_edge_set: total,
        rooted,
    })
}

/// Exact size of a largest totally edge-disjoint subfamily of triangulated
/// appearances (total edge sets pairwise disjoint).
pub fn max_totally_edge_disjoint_tri_appearances(
    t: &LabeledGraph,
    g: &LabeledGraph,
) -> Result<DisjointCount, StatError> {
    let apps = triangulated_appearances(t, g, false)?;
    let sets: Vec<&[(u8, u8)]> = apps.iter().map(|a| a.total_edge_set.as_slice()).collect();
    let n = sets.len();
    let mut adj = vec![vec![false; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            if sorted_slices_intersect(sets[i], sets[j]) {
                adj[i][j] = true;
                adj[j][i] = true;
            }
        }
    }
    Ok(max_independent(&adj))
}

/// The non-edges whose addition keeps the genus at most `bound`. Cross
/// component pairs are always addable and skip the genus recomputation.
pub fn addable_nonedges(g: &LabeledGraph, bound: u32) -> Result<Vec<(u8, u8)>, StatError> {
    addable_nonedges_budgeted(g, bound, embedding::DEFAULT_BUDGET)
}

pub fn addable_nonedges_budgeted(
    g: &LabeledGraph,
    bound: u32,
    budget: u64,
) -> Result<Vec<(u8, u8)>, StatError> {
    if !embedding::is_genus_at_most_budgeted(g, bound, budget)? {
        return Err(StatError::BoundViolated(bound));
    }
    let mut comp_id = vec![0usize; g.n() + 1];
    for (i, comp) in g.components().iter().enumerate() {
        for &v in &comp.vertices {
            comp_id[v as usize] = i;
        }
    }
    let candidates = g.non_edges();
    let flags: Result<Vec<bool>, StatError> = candidates
        .par_iter()
        .map(|&(u, v)| {
            if comp_id[u as usize] != comp_id[v as usize] {
                return Ok(true);
            }
            let extended = g.with_edge(u, v).expect("candidate is a non-edge");
            Ok(embedding::is_genus_at_most_budgeted(&extended, bound, budget)?)
        })
        .collect();
    let flags = flags?;
    Ok(candidates
        .into_iter()
        .zip(flags)
        .filter_map(|(e, keep)| keep.then_some(e))
        .collect())
}

/// Triangles containing a vertex of degree at most 6.
pub fn good_triangles(g: &LabeledGraph) -> usize {
    let mut count = 0;
    for &(u, v) in g.edges() {
        let mut common = g.neighbors_mask(u) & g.neighbors_mask(v);
        common &= !((1u64 << (v + 1)) - 1); // only w > v, so each triangle counts once
        while common != 0 {
            let w = common.trailing_zeros() as u8;
            common &= common - 1;
            if g.degree(u) <= 6 || g.degree(v) <= 6 || g.degree(w) <= 6 {
                count += 1;
            }
        }
    }
    count
}

/// Vertices and edges lying in tree or unicyclic components.
pub fn non_multicyclic_mass(g: &LabeledGraph) -> (usize, usize) {
    let mut vertices = 0;
    let mut edges = 0;
    for comp in g.components() {
        if comp.kind != ComponentKind::Multicyclic {
            vertices += comp.vertices.len();
            edges += comp.edge_count;
        }
    }
    (vertices, edges)
}

/// Result of a maximum disjoint-subfamily computation; `exact` is false
/// when some conflict component exceeded the cap and was solved greedily,
/// making `count` only a lower bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DisjointCount {
    pub count: usize,
    pub exact: bool,
}

fn max_disjoint_family(masks: &[u64]) -> DisjointCount {
    let n = masks.len();
    let mut adj = vec![vec![false; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            if masks[i] & masks[j] != 0 {
                adj[i][j] = true;
                adj[j][i] = true;
            }
        }
    }
    max_independent(&adj)
}

/// Maximum independent set of the conflict graph, solved exactly per
/// connected piece up to the cap, greedily beyond it.
fn max_independent(adj: &[Vec<bool>]) -> DisjointCount {
    let n = adj.len();
    let mut seen = vec![false; n];
    let mut total = 0;
    let mut exact = true;
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut piece = vec![s];
        seen[s] = true;
        let mut i = 0;
        while i < piece.len() {
            let v = piece[i];
            i += 1;
            for (u, row) in adj[v].iter().enumerate() {
                if *row && !seen[u] {
                    seen[u] = true;
                    piece.push(u);
                }
            }
        }
        if piece.len() <= DISJOINT_EXACT_CAP {
            let index: BTreeMap<usize, usize> =
                piece.iter().enumerate().map(|(i, &v)| (v, i)).collect();
            let mut local_adj = vec![0u32; piece.len()];
            for (i, &v) in piece.iter().enumerate() {
                for (u, row) in adj[v].iter().enumerate() {
                    if *row && index.contains_key(&u) {
                        local_adj[i] |= 1 << index[&u];
                    }
                }
            }
            total += mis_exact(&local_adj, (1u32 << piece.len()) - 1);
        } else {
            exact = false;
            // greedy by ascending conflict degree
            let mut order = piece.clone();
            order.sort_by_key(|&v| adj[v].iter().filter(|&&b| b).count());
            let mut blocked = vec![false; n];
            for v in order {
                if blocked[v] {
                    continue;
                }
                total += 1;
                for (u, row) in adj[v].iter().enumerate() {
                    if *row {
                        blocked[u] = true;
                    }
                }
            }
        }
    }
    DisjointCount { count: total, exact }
}

fn mis_exact(adj: &[u32], alive: u32) -> usize {
    if alive == 0 {
        return 0;
    }
    // pick the highest-conflict vertex; isolated ones join for free
    let mut best = usize::MAX;
    let mut best_deg = 0;
    let mut m = alive;
    while m != 0 {
        let u = m.trailing_zeros() as usize;
        m &= m - 1;
        let d = (adj[u] & alive).count_ones();
        if d == 0 {
            return 1 + mis_exact(adj, alive & !(1 << u));
        }
        if best == usize::MAX || d > best_deg {
            best = u;
            best_deg = d;
        }
    }
    let take = 1 + mis_exact(adj, alive & !(adj[best] | 1 << best));
    let skip = mis_exact(adj, alive & !(1 << best));
    take.max(skip)
}

fn sorted_slices_intersect(a: &[(u8, u8)], b: &[(u8, u8)]) -> bool {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => return true,
        }
    }
    false
}

/// True iff the increasing bijection [|h|] -> w maps `h` isomorphically
/// onto the induced subgraph g[w].
fn increasing_induced_iso(h: &LabeledGraph, g: &LabeledGraph, w: &[u8]) -> bool {
    for i in 1..=h.n() as u8 {
        for j in i + 1..=h.n() as u8 {
            if h.has_edge(i, j) != g.has_edge(w[i as usize - 1], w[j as usize - 1]) {
                return false;
            }
        }
    }
    true
}

/// Ascending k-subsets of {1..n}.
fn for_each_subset(n: usize, k: usize, visit: &mut dyn FnMut(&[u8])) {
    if k > n || k == 0 {
        return;
    }
    let mut idx: Vec<u8> = (1..=k as u8).collect();
    loop {
        visit(&idx);
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] < (n - (k - 1 - i)) as u8 {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Flat bundle of the crate's per-graph observables.
///
/// Serializes to one flat JSON object (fields in declaration order, then
/// one `appearances_<graph6>` key per requested pattern) and to one CSV row
/// in the same column order as `csv_header`.
#[derive(Debug, Clone, Serialize)]
pub struct StatReport {
    pub n: usize,
    pub m: usize,
    pub genus_bound: u32,
    pub pendant_vertices: usize,
    pub pendant_edges: usize,
    pub max_degree: usize,
    pub good_triangles: usize,
    pub cut_edges: usize,
    pub addable_non_edges: usize,
    pub non_multicyclic_vertices: usize,
    pub non_multicyclic_edges: usize,
    #[serde(flatten)]
    pub appearance_counts: BTreeMap<String, usize>,
}

impl StatReport {
    /// `patterns` adds one appearance count per connected pattern, keyed
    /// `appearances_<graph6>`.
    pub fn compute(
        g: &LabeledGraph,
        genus_bound: u32,
        patterns: &[LabeledGraph],
    ) -> Result<Self, StatError> {
        let (pendant_vertices, pendant_edges) = pendant_stats(g);
        let bd = g.block_decomposition();
        let (nmv, nme) = non_multicyclic_mass(g);
        let mut appearance_counts = BTreeMap::new();
        for p in patterns {
            let count = if p.n() < g.n() { appearances(p, g)?.len() } else { 0 };
            let code = crate::graph6::encode(p).expect("pattern fits graph6");
            appearance_counts.insert(format!("appearances_{code}"), count);
        }
        Ok(StatReport {
            n: g.n(),
            m: g.m(),
            genus_bound,
            pendant_vertices,
            pendant_edges,
            max_degree: g.max_degree(),
            good_triangles: good_triangles(g),
            cut_edges: bd.cut_edges.len(),
            addable_non_edges: addable_nonedges(g, genus_bound)?.len(),
            non_multicyclic_vertices: nmv,
            non_multicyclic_edges: nme,
            appearance_counts,
        })
    }

    pub fn csv_header(&self) -> String {
        let mut cols: Vec<String> = [
            "n", "m", "genus_bound", "pendant_vertices", "pendant_edges", "max_degree",
            "good_triangles", "cut_edges", "addable_non_edges", "non_multicyclic_vertices",
            "non_multicyclic_edges",
        ]
        .into_iter()
        .map(String::from)
        .collect();
        cols.extend(self.appearance_counts.keys().cloned());
        cols.join(",")
    }

    pub fn csv_row(&self) -> String {
        let mut cols = vec![
            self.n.to_string(),
            self.m.to_string(),
            self.genus_bound.to_string(),
            self.pendant_vertices.to_string(),
            self.pendant_edges.to_string(),
            self.max_degree.to_string(),
            self.good_triangles.to_string(),
            self.cut_edges.to_string(),
            self.addable_non_edges.to_string(),
            self.non_multicyclic_vertices.to_string(),
            self.non_multicyclic_edges.to_string(),
        ];
        cols.extend(self.appearance_counts.values().map(|v| v.to_string()));
        cols.join(",")
    }
}

/// Named per-graph statistic used by census distributions, sampling
/// estimates and trend sweeps. Values are integers; indicators are 0/1.
#[derive(Debug, Clone)]
pub enum Statistic {
    Connected,
    ComponentCount,
    PendantEdges,
    PendantVertices,
    MaxDegree,
    GoodTriangles,
    CutEdges,
    NonMulticyclicVertices,
    NonMulticyclicEdges,
    AddableNonEdges,
    /// Largest face size over embeddings with the stratum's genus bound.
    MaxFaceSize,
    /// Indicator of a subgraph copy of the pattern.
    HasCopy(LabeledGraph),
}

impl Statistic {
    pub fn parse(name: &str) -> Result<Self, StatError> {
        if let Some(code) = name.strip_prefix("has-copy:") {
            let g = crate::graph6::decode(code)
                .map_err(|_| StatError::UnknownStatistic(name.to_string()))?;
            return Ok(Statistic::HasCopy(g));
        }
        match name {
            "connected" => Ok(Statistic::Connected),
            "components" => Ok(Statistic::ComponentCount),
            "pendant-edges" => Ok(Statistic::PendantEdges),
            "pendant-vertices" => Ok(Statistic::PendantVertices),
            "max-degree" => Ok(Statistic::MaxDegree),
            "good-triangles" => Ok(Statistic::GoodTriangles),
            "cut-edges" => Ok(Statistic::CutEdges),
            "non-multicyclic-vertices" => Ok(Statistic::NonMulticyclicVertices),
            "non-multicyclic-edges" => Ok(Statistic::NonMulticyclicEdges),
            "addable-non-edges" => Ok(Statistic::AddableNonEdges),
            "max-face-size" => Ok(Statistic::MaxFaceSize),
            _ => Err(StatError::UnknownStatistic(name.to_string())),
        }
    }

    pub fn name(&self) -> String {
        match self {
            Statistic::Connected => "connected".into(),
            Statistic::ComponentCount => "components".into(),
            Statistic::PendantEdges => "pendant-edges".into(),
            Statistic::PendantVertices => "pendant-vertices".into(),
            Statistic::MaxDegree => "max-degree".into(),
            Statistic::GoodTriangles => "good-triangles".into(),
            Statistic::CutEdges => "cut-edges".into(),
            Statistic::NonMulticyclicVertices => "non-multicyclic-vertices".into(),
            Statistic::NonMulticyclicEdges => "non-multicyclic-edges".into(),
            Statistic::AddableNonEdges => "addable-non-edges".into(),
            Statistic::MaxFaceSize => "max-face-size".into(),
            Statistic::HasCopy(p) => {
                format!("has-copy:{}", crate::graph6::encode(p).expect("pattern fits graph6"))
            }
        }
    }

    pub fn evaluate(&self, g: &LabeledGraph, genus_bound: u32) -> Result<i64, StatError> {
        self.evaluate_budgeted(g, genus_bound, embedding::DEFAULT_BUDGET)
    }

    pub fn evaluate_budgeted(
        &self,
        g: &LabeledGraph,
        genus_bound: u32,
        budget: u64,
    ) -> Result<i64, StatError> {
        Ok(match self {
            Statistic::Connected => i64::from(g.is_connected()),
            Statistic::ComponentCount => g.components().len() as i64,
            Statistic::PendantEdges => pendant_stats(g).1 as i64,
            Statistic::PendantVertices => pendant_stats(g).0 as i64,
            Statistic::MaxDegree => g.max_degree() as i64,
            Statistic::GoodTriangles => good_triangles(g) as i64,
            Statistic::CutEdges => g.block_decomposition().cut_edges.len() as i64,
            Statistic::NonMulticyclicVertices => non_multicyclic_mass(g).0 as i64,
            Statistic::NonMulticyclicEdges => non_multicyclic_mass(g).1 as i64,
            Statistic::AddableNonEdges => {
                addable_nonedges_budgeted(g, genus_bound, budget)?.len() as i64
            }
            Statistic::MaxFaceSize => {
                embedding::max_face_size_budgeted(g, genus_bound, budget)? as i64
            }
            Statistic::HasCopy(p) => i64::from(iso::has_copy(p, g)?),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, edges: &[(u8, u8)]) -> LabeledGraph {
        LabeledGraph::new(n, edges).unwrap()
    }

    #[test]
    fn pendant_counts() {
        let star = g(4, &[(1, 2), (1, 3), (1, 4)]);
        assert_eq!(pendant_stats(&star), (3, 3));
        let edge = g(2, &[(1, 2)]);
        assert_eq!(pendant_stats(&edge), (2, 1));
        let k4 = LabeledGraph::complete(4).unwrap();
        assert_eq!(pendant_stats(&k4), (0, 0));
    }

    #[test]
    fn k1_appearances_are_pendant_vertices() {
        let k1 = LabeledGraph::empty(1).unwrap();
        let star = g(4, &[(1, 2), (1, 3), (1, 4)]);
        let apps = appearances(&k1, &star).unwrap();
        assert_eq!(apps.len(), 3);
        for a in &apps {
            assert_eq!(a.root, a.w[0]);
        }
    }

    #[test]
    fn appearance_with_order_structure() {
        // pattern on 4 vertices with edges {1,4},{4,2},{4,3},{1,3}
        let h = g(4, &[(1, 4), (4, 2), (4, 3), (1, 3)]);
        // host on 8 vertices carrying an appearance at {2,4,5,7} rooted at 2
        let host = g(
            8,
            &[(3, 6), (2, 3), (2, 7), (4, 7), (1, 8), (1, 6), (3, 8), (5, 7), (2, 5)],
        );
        let apps = appearances(&h, &host).unwrap();
        assert!(apps
            .iter()
            .any(|a| a.w == vec![2, 4, 5, 7] && a.root == 2 && a.connecting_edge == (2, 3)));
    }

    #[test]
    fn no_appearance_without_cut_structure() {
        let k2 = LabeledGraph::path(2).unwrap();
        let k3 = LabeledGraph::complete(3).unwrap();
        assert!(appearances(&k2, &k3).unwrap().is_empty());
    }

    #[test]
    fn disjoint_appearance_families() {
        let k1 = LabeledGraph::empty(1).unwrap();
        let star = g(4, &[(1, 2), (1, 3), (1, 4)]);
        let d = max_vertex_disjoint_appearances(&k1, &star).unwrap();
        assert_eq!((d.count, d.exact), (3, true));
        let p3 = LabeledGraph::path(3).unwrap();
        let d = max_vertex_disjoint_appearances(&k1, &p3).unwrap();
        assert_eq!(d.count, 2);
    }

    #[test]
    fn triangulated_appearance_none_without_outside() {
        let k4 = LabeledGraph::complete(4).unwrap();
        assert!(triangulated_appearances(&k4, &k4, false).unwrap().is_empty());
    }

    #[test]
    fn hand_built_triangulated_appearance() {
        // anchors {1,2,3} form a triangle; W = {4,5,6} carries K3 and the
        // hexagon 4-1, 1-5, 5-2, 2-6, 6-3, 3-4
        let host = g(
            6,
            &[
                (1, 2), (1, 3), (2, 3), // anchor triangle
                (4, 5), (4, 6), (5, 6), // pattern copy
                (1, 4), (1, 5), (2, 5), (2, 6), (3, 6), (3, 4),
            ],
        );
        // the host is the octahedron: every one of its 8 facial triangles
        // is a triangulated appearance of K3
        let k3 = LabeledGraph::complete(3).unwrap();
        let apps = triangulated_appearances(&k3, &host, false).unwrap();
        assert_eq!(apps.len(), 8);
        let app = apps.iter().find(|a| a.w == vec![4, 5, 6]).unwrap();
        assert!(app.rooted);
        assert_eq!(app.total_edge_set.len(), 3 + 6);
        let mut anchors = [app.anchors.0, app.anchors.1, app.anchors.2];
        anchors.sort_unstable();
        assert_eq!(anchors, [1, 2, 3]);
        // any two total edge sets overlap (9 of 12 edges each)
        let d = max_totally_edge_disjoint_tri_appearances(&k3, &host).unwrap();
        assert_eq!((d.count, d.exact), (1, true));
    }

    #[test]
    fn addable_nonedges_cases() {
        let two = LabeledGraph::empty(2).unwrap();
        assert_eq!(addable_nonedges(&two, 0).unwrap(), vec![(1, 2)]);

        let k5_minus = {
            let mut e = Vec::new();
            for u in 1..=5u8 {
                for v in u + 1..=5u8 {
                    if (u, v) != (4, 5) {
                        e.push((u, v));
                    }
                }
            }
            g(5, &e)
        };
        assert!(addable_nonedges(&k5_minus, 0).unwrap().is_empty());
        assert_eq!(addable_nonedges(&k5_minus, 1).unwrap(), vec![(4, 5)]);
        // precondition violated
        let k5 = LabeledGraph::complete(5).unwrap();
        assert_eq!(addable_nonedges(&k5, 0), Err(StatError::BoundViolated(0)));
    }

    #[test]
    fn good_triangle_counts() {
        assert_eq!(good_triangles(&LabeledGraph::complete(4).unwrap()), 4);
        assert_eq!(good_triangles(&LabeledGraph::complete(8).unwrap()), 0);
        let tri_pendant = g(4, &[(1, 2), (2, 3), (1, 3), (3, 4)]);
        assert_eq!(good_triangles(&tri_pendant), 1);
    }

    #[test]
    fn non_multicyclic_masses() {
        let tri_edge = g(5, &[(1, 2), (2, 3), (1, 3), (4, 5)]);
        assert_eq!(non_multicyclic_mass(&tri_edge), (5, 4));
        let k4_iso = g(5, &[(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]);
        assert_eq!(non_multicyclic_mass(&k4_iso), (1, 0));
        let forest = g(6, &[(1, 2), (3, 4), (4, 5)]);
        assert_eq!(non_multicyclic_mass(&forest), (6, 3));
    }

    #[test]
    fn stat_report_round_trip() {
        let k1 = LabeledGraph::empty(1).unwrap();
        let host = g(5, &[(1, 2), (2, 3), (1, 3), (3, 4)]);
        let report = StatReport::compute(&host, 0, &[k1]).unwrap();
        assert_eq!(report.pendant_vertices, 1);
        let json = serde_json::to_value(&report).unwrap();
        assert!(json.get("appearances_@").is_some());
        assert_eq!(report.csv_header().split(',').count(), report.csv_row().split(',').count());
    }

    #[test]
    fn statistic_parse_and_eval() {
        let s = Statistic::parse("pendant-edges").unwrap();
        let p3 = LabeledGraph::path(3).unwrap();
        assert_eq!(s.evaluate(&p3, 0).unwrap(), 2);
        let has_k3 = Statistic::parse("has-copy:Bw").unwrap();
        assert_eq!(has_k3.evaluate(&LabeledGraph::complete(4).unwrap(), 0).unwrap(), 1);
        assert_eq!(has_k3.evaluate(&p3, 0).unwrap(), 0);
        assert!(Statistic::parse("nonsense").is_err());
        assert_eq!(Statistic::parse("max-face-size").unwrap().evaluate(&p3, 0).unwrap(), 4);
    }
}
