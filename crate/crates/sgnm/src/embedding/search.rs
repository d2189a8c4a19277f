//! Rotation-system search: exact minimum genus by branch and bound, an
//! unpruned exhaustive variant used as an oracle, and largest-face
//! maximization under a genus cap.
//!
//! The search fixes the embedding one face-transition at a time. A state is
//! a partial successor map sigma on darts; choosing phi(cur) = y records
//! sigma(rev(cur)) = y at the head vertex of `cur`. Per-vertex fragment
//! bookkeeping forbids closing a rotation cycle before it covers all darts
//! of the vertex, so complete assignments are exactly the rotation systems.

use super::EmbedError;
use crate::graph::LabeledGraph;

pub(crate) const UNSET: u32 = u32::MAX;

/// Dart-level view of a connected graph on vertices `1..=k`. Dart `2i` runs
/// `u -> v` and dart `2i+1` runs `v -> u` for `edges[i] = (u, v)`.
pub(crate) struct DartGraph {
    pub k: usize,
    pub m: usize,
    pub tail: Vec<u8>,
    pub head: Vec<u8>,
    pub darts_at: Vec<Vec<u32>>,
    pub deg: Vec<u32>,
}

impl DartGraph {
    pub fn new(g: &LabeledGraph) -> Result<Self, EmbedError> {
        let k = g.n();
        let m = g.m();
        if 2 * m > 128 {
            return Err(EmbedError::TooLarge { darts: 2 * m, max: 128 });
        }
        let mut tail = Vec::with_capacity(2 * m);
        let mut head = Vec::with_capacity(2 * m);
        let mut darts_at = vec![Vec::new(); k + 1];
        let mut deg = vec![0u32; k + 1];
        for (i, &(u, v)) in g.edges().iter().enumerate() {
            tail.push(u);
            head.push(v);
            tail.push(v);
            head.push(u);
            darts_at[u as usize].push(2 * i as u32);
            darts_at[v as usize].push(2 * i as u32 + 1);
            deg[u as usize] += 1;
            deg[v as usize] += 1;
        }
        Ok(Self { k, m, tail, head, darts_at, deg })
    }

    /// Smallest possible face size: 3 once every degree is at least 2 (no
    /// loops or parallel edges here), otherwise 2.
    fn min_face(&self) -> usize {
        if self.k >= 3 && (1..=self.k).all(|v| self.deg[v] >= 2) {
            3
        } else {
            2
        }
    }

    fn genus_of_face_count(&self, f: usize) -> u32 {
        let chi = self.k as i64 - self.m as i64 + f as i64;
        debug_assert!((2 - chi) >= 0 && (2 - chi) % 2 == 0);
        ((2 - chi) / 2) as u32
    }

    /// Euler lower bound: ceil((m - 3k + 6) / 6), clamped at 0.
    pub fn euler_lower_bound(&self) -> u32 {
        if self.k < 3 {
            return 0;
        }
        let excess = self.m as i64 - 3 * self.k as i64 + 6;
        if excess <= 0 {
            0
        } else {
            ((excess + 5) / 6) as u32
        }
    }

    /// Successor map of the rotation listing neighborhoods in ascending
    /// order, plus its face count.
    fn sorted_rotation_succ(&self) -> Vec<u32> {
        let mut succ = vec![UNSET; 2 * self.m];
        for v in 1..=self.k {
            let list = &self.darts_at[v];
            for i in 0..list.len() {
                succ[list[i] as usize] = list[(i + 1) % list.len()];
            }
        }
        succ
    }

    /// Face count of a complete successor map.
    pub fn face_count_of_succ(&self, succ: &[u32]) -> usize {
        let mut seen = 0u128;
        let mut faces = 0;
        for start in 0..2 * self.m as u32 {
            if seen >> start & 1 == 1 {
                continue;
            }
            faces += 1;
            let mut d = start;
            loop {
                seen |= 1 << d;
                d = succ[(d ^ 1) as usize];
                if d == start {
                    break;
                }
            }
        }
        faces
    }
}

#[allow(dead_code)]
pub(crate) struct SearchStats {
    pub nodes: u64,
    /// Complete rotation systems visited (only meaningful unpruned).
    pub leaves: u64,
}

struct Searcher<'a> {
    g: &'a DartGraph,
    succ: Vec<u32>,
    pred: Vec<u32>,
    /// Other endpoint of a sigma-fragment, valid at fragment endpoints.
    frag: Vec<u32>,
    assigned_at: Vec<u32>,
    consumed: u128,
    consumed_count: usize,
    closed_faces: usize,
    closed_darts: usize,
    min_face: usize,
    nodes: u64,
    leaves: u64,
    budget: u64,
    exhausted: bool,
}

impl<'a> Searcher<'a> {
    fn new(g: &'a DartGraph, budget: u64) -> Self {
        Searcher {
            g,
            succ: vec![UNSET; 2 * g.m],
            pred: vec![UNSET; 2 * g.m],
            frag: (0..2 * g.m as u32).collect(),
            assigned_at: vec![0; g.k + 1],
            consumed: 0,
            consumed_count: 0,
            closed_faces: 0,
            closed_darts: 0,
            min_face: g.min_face(),
            nodes: 0,
            leaves: 0,
            budget,
            exhausted: false,
        }
    }

    #[inline]
    fn cycle_ok(&self, r: u32, y: u32) -> bool {
        let v = self.g.tail[r as usize] as usize;
        self.frag[r as usize] != y || self.assigned_at[v] == self.g.deg[v] - 1
    }

    /// Joins r's fragment (tail end r, head end a) to y's fragment (head
    /// end y, tail end b). Returns (a, b) so the join can be undone; the
    /// stored values matter because singleton fragments alias their own
    /// endpoints.
    #[inline]
    fn assign(&mut self, r: u32, y: u32) -> (u32, u32) {
        let v = self.g.tail[r as usize] as usize;
        self.succ[r as usize] = y;
        self.pred[y as usize] = r;
        let a = self.frag[r as usize];
        let b = self.frag[y as usize];
        self.frag[a as usize] = b;
        self.frag[b as usize] = a;
        self.assigned_at[v] += 1;
        (a, b)
    }

    #[inline]
    fn unassign(&mut self, r: u32, y: u32, ends: (u32, u32)) {
        let v = self.g.tail[r as usize] as usize;
        self.frag[ends.0 as usize] = r;
        self.frag[ends.1 as usize] = y;
        self.succ[r as usize] = UNSET;
        self.pred[y as usize] = UNSET;
        self.assigned_at[v] -= 1;
    }

    fn first_unconsumed(&self) -> u32 {
        (!self.consumed).trailing_zeros()
    }

    /// Minimum-genus branch and bound. `best` holds the incumbent genus and
    /// its witness successor map; `stop_at` lets the caller exit as soon as
    /// the incumbent reaches a known lower bound. Pruning compares the best
    /// achievable face count (closed faces, plus the open walk, plus
    /// remaining darts at `min_face` per face) against what is needed to
    /// beat the incumbent.
    fn min_genus(&mut self, start: u32, cur: u32, best: &mut (u32, Vec<u32>), stop_at: u32) {
        if self.exhausted || best.0 <= stop_at {
            return;
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            self.exhausted = true;
            return;
        }
        // darts left for faces after the open one
        let rest = 2 * self.g.m - self.consumed_count - 1;
        let possible = self.closed_faces as i64 + 1 + (rest / self.min_face) as i64;
        let needed = self.g.m as i64 - self.g.k as i64 + 4 - 2 * best.0 as i64;
        if possible < needed {
            return;
        }

        let r = cur ^ 1;
        // cur is unconsumed, so sigma(rev(cur)) cannot have been assigned yet
        debug_assert_eq!(self.succ[r as usize], UNSET);
        let v = self.g.tail[r as usize] as usize;
        for i in 0..self.g.darts_at[v].len() {
            let y = self.g.darts_at[v][i];
            if self.pred[y as usize] != UNSET || !self.cycle_ok(r, y) {
                continue;
            }
            let ends = self.assign(r, y);
            self.consume(cur);
            self.advance_min(start, y, best, stop_at);
            self.unconsume(cur);
            self.unassign(r, y, ends);
            if self.exhausted || best.0 <= stop_at {
                return;
            }
        }
    }

    #[inline]
    fn advance_min(&mut self, start: u32, y: u32, best: &mut (u32, Vec<u32>), stop_at: u32) {
        if y == start {
            let walk_len = self.consumed_count - self.closed_darts;
            self.closed_faces += 1;
            self.closed_darts += walk_len;
            if self.consumed_count == 2 * self.g.m {
                self.leaves += 1;
                let genus = self.g.genus_of_face_count(self.closed_faces);
                if genus < best.0 {
                    *best = (genus, self.succ.clone());
                }
            } else {
                let s = self.first_unconsumed();
                self.min_genus(s, s, best, stop_at);
            }
            self.closed_darts -= walk_len;
            self.closed_faces -= 1;
        } else {
            debug_assert_eq!(self.consumed >> y & 1, 0);
            self.min_genus(start, y, best, stop_at);
        }
    }

    /// Unpruned exhaustive walk (every rotation system once); tracks the
    /// minimum genus and counts leaves.
    fn exhaustive(&mut self, start: u32, cur: u32, best: &mut u32) {
        if self.exhausted {
            return;
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            self.exhausted = true;
            return;
        }
        let r = cur ^ 1;
        debug_assert_eq!(self.succ[r as usize], UNSET);
        let v = self.g.tail[r as usize] as usize;
        for i in 0..self.g.darts_at[v].len() {
            let y = self.g.darts_at[v][i];
            if self.pred[y as usize] != UNSET || !self.cycle_ok(r, y) {
                continue;
            }
            let ends = self.assign(r, y);
            self.consume(cur);
            self.advance_exhaustive(start, y, best);
            self.unconsume(cur);
            self.unassign(r, y, ends);
            if self.exhausted {
                return;
            }
        }
    }

    #[inline]
    fn advance_exhaustive(&mut self, start: u32, y: u32, best: &mut u32) {
        if y == start {
            self.closed_faces += 1;
            if self.consumed_count == 2 * self.g.m {
                self.leaves += 1;
                let genus = self.g.genus_of_face_count(self.closed_faces);
                *best = (*best).min(genus);
            } else {
                let s = self.first_unconsumed();
                self.exhaustive(s, s, best);
            }
            self.closed_faces -= 1;
        } else {
            self.exhaustive(start, y, best);
        }
    }

    /// Largest face size over embeddings with genus at most `cap`;
    /// `best_face` is -1 until a qualifying embedding is seen.
    fn max_face(&mut self, start: u32, cur: u32, cap: u32, best_face: &mut i64, walk_len: usize, max_closed: usize) {
        if self.exhausted {
            return;
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            self.exhausted = true;
            return;
        }
        let remaining = 2 * self.g.m - self.consumed_count;
        // the open face can still absorb every unconsumed dart
        let potential = max_closed.max(walk_len + remaining) as i64;
        if potential <= *best_face {
            return;
        }
        // genus feasibility: enough faces must still be closable
        let possible = self.closed_faces as i64 + 1 + ((remaining - 1) / self.min_face) as i64;
        let needed = self.g.m as i64 - self.g.k as i64 + 2 - 2 * cap as i64;
        if possible < needed {
            return;
        }

        let r = cur ^ 1;
        debug_assert_eq!(self.succ[r as usize], UNSET);
        let v = self.g.tail[r as usize] as usize;
        for i in 0..self.g.darts_at[v].len() {
            let y = self.g.darts_at[v][i];
            if self.pred[y as usize] != UNSET || !self.cycle_ok(r, y) {
                continue;
            }
            let ends = self.assign(r, y);
            self.consume(cur);
            self.advance_max_face(start, y, cap, best_face, walk_len, max_closed);
            self.unconsume(cur);
            self.unassign(r, y, ends);
            if self.exhausted {
                return;
            }
        }
    }

    #[inline]
    fn advance_max_face(&mut self, start: u32, y: u32, cap: u32, best_face: &mut i64, walk_len: usize, max_closed: usize) {
        if y == start {
            let size = walk_len + 1;
            let max_closed = max_closed.max(size);
            self.closed_faces += 1;
            if self.consumed_count == 2 * self.g.m {
                self.leaves += 1;
                let genus = self.g.genus_of_face_count(self.closed_faces);
                if genus <= cap {
                    *best_face = (*best_face).max(max_closed as i64);
                }
            } else {
                let s = self.first_unconsumed();
                self.max_face(s, s, cap, best_face, 0, max_closed);
            }
            self.closed_faces -= 1;
        } else {
            self.max_face(start, y, cap, best_face, walk_len + 1, max_closed);
        }
    }

    #[inline]
    fn consume(&mut self, d: u32) {
        self.consumed |= 1 << d;
        self.consumed_count += 1;
    }

    #[inline]
    fn unconsume(&mut self, d: u32) {
        self.consumed &= !(1u128 << d);
        self.consumed_count -= 1;
    }
}

pub(crate) struct MinGenusOutcome {
    /// Exact genus, or `None` when it provably exceeds the cap.
    pub genus: Option<u32>,
    pub witness_succ: Option<Vec<u32>>,
    pub stats: SearchStats,
}

/// Exact minimum genus of a connected graph with at least one edge,
/// searched as a whole (no block decomposition). With `cap` set, the search
/// may answer "greater than cap" instead of an exact value.
pub(crate) fn connected_min_genus(
    dg: &DartGraph,
    cap: Option<u32>,
    budget: u64,
) -> Result<MinGenusOutcome, EmbedError> {
    debug_assert!(dg.m >= 1);
    let lower = dg.euler_lower_bound();
    if let Some(c) = cap {
        if lower > c {
            return Ok(MinGenusOutcome {
                genus: None,
                witness_succ: None,
                stats: SearchStats { nodes: 0, leaves: 0 },
            });
        }
    }
    let seed_succ = dg.sorted_rotation_succ();
    let seed_genus = dg.genus_of_face_count(dg.face_count_of_succ(&seed_succ));
    let mut best = (seed_genus, seed_succ);
    let mut searcher = Searcher::new(dg, budget);
    if best.0 > lower {
        // prune relative to cap+1 when the incumbent is above the cap
        if let Some(c) = cap {
            if best.0 > c + 1 {
                best.0 = c + 1;
                best.1.clear();
            }
        }
        searcher.min_genus(0, 0, &mut best, lower);
    }
    let stats = SearchStats { nodes: searcher.nodes, leaves: searcher.leaves };
    if searcher.exhausted {
        return Err(EmbedError::BudgetExhausted {
            budget,
            lower,
            upper: if best.1.is_empty() { None } else { Some(best.0) },
        });
    }
    match cap {
        Some(c) if best.0 > c => Ok(MinGenusOutcome { genus: None, witness_succ: None, stats }),
        _ => Ok(MinGenusOutcome {
            genus: Some(best.0),
            witness_succ: Some(best.1),
            stats,
        }),
    }
}

/// Unpruned exhaustive minimum genus; also reports how many rotation
/// systems were visited (must equal the product of (deg-1)! over vertices).
pub(crate) fn exhaustive_min_genus(
    dg: &DartGraph,
    budget: u64,
) -> Result<(u32, u64, u64), EmbedError> {
    debug_assert!(dg.m >= 1);
    let mut best = u32::MAX;
    let mut searcher = Searcher::new(dg, budget);
    searcher.exhaustive(0, 0, &mut best);
    if searcher.exhausted {
        return Err(EmbedError::BudgetExhausted { budget, lower: dg.euler_lower_bound(), upper: None });
    }
    Ok((best, searcher.leaves, searcher.nodes))
}

/// Largest face size over embeddings of genus at most `cap`. The caller
/// guarantees such an embedding exists.
pub(crate) fn connected_max_face(
    dg: &DartGraph,
    cap: u32,
    budget: u64,
) -> Result<(usize, u64), EmbedError> {
    debug_assert!(dg.m >= 1);
    let mut best_face = -1i64;
    let mut searcher = Searcher::new(dg, budget);
    searcher.max_face(0, 0, cap, &mut best_face, 0, 0);
    if searcher.exhausted {
        return Err(EmbedError::BudgetExhausted { budget, lower: 0, upper: None });
    }
    debug_assert!(best_face >= 0, "a qualifying embedding must exist");
    Ok((best_face as usize, searcher.nodes))
}
