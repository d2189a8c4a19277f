//! Rotation systems and face tracing.
//!
//! A rotation system fixes a cyclic order of incident edges at every vertex
//! of a connected graph and thereby a cellular embedding on an orientable
//! surface. Faces are the orbits of the next-dart rule: reverse the dart,
//! then take the successor in the rotation at its tail.

use super::EmbedError;
use crate::graph::LabeledGraph;

/// Cyclic neighbor order at each vertex. `order[v]` (1-based) lists the
/// neighbors of `v`; entry 0 is unused padding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RotationSystem {
    order: Vec<Vec<u8>>,
}

impl RotationSystem {
    /// Builds a rotation system, checking that every vertex's sequence is a
    /// permutation of its neighborhood.
    pub fn new(g: &LabeledGraph, order: Vec<Vec<u8>>) -> Result<Self, EmbedError> {
        if order.len() != g.n() + 1 {
            return Err(EmbedError::InvalidRotation);
        }
        for v in 1..=g.n() as u8 {
            let seq = &order[v as usize];
            if seq.len() != g.degree(v) {
                return Err(EmbedError::InvalidRotation);
            }
            let mut mask = 0u64;
            for &u in seq {
                if !g.has_edge(u, v) || mask >> u & 1 == 1 {
                    return Err(EmbedError::InvalidRotation);
                }
                mask |= 1 << u;
            }
        }
        Ok(Self { order })
    }

    /// The rotation that lists every neighborhood in ascending order.
    pub fn sorted(g: &LabeledGraph) -> Self {
        let mut order = vec![Vec::new(); g.n() + 1];
        for v in 1..=g.n() as u8 {
            order[v as usize] = g.neighbors(v).collect();
        }
        Self { order }
    }

    pub fn order_at(&self, v: u8) -> &[u8] {
        &self.order[v as usize]
    }

    pub fn orders(&self) -> &[Vec<u8>] {
        &self.order
    }

    /// Neighbor following `u` in the cyclic order at `v`.
    pub fn successor(&self, v: u8, u: u8) -> u8 {
        let seq = &self.order[v as usize];
        let i = seq.iter().position(|&x| x == u).expect("u is a neighbor of v");
        seq[(i + 1) % seq.len()]
    }
}

/// The face structure of one embedding of a connected graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddingSummary {
    /// Each face as the closed walk of dart tails. An edgeless single vertex
    /// yields one empty walk (the sphere has one face).
    pub faces: Vec<Vec<u8>>,
    pub face_sizes: Vec<usize>,
    pub genus: u32,
}

impl EmbeddingSummary {
    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn max_face_size(&self) -> usize {
        self.face_sizes.iter().copied().max().unwrap_or(0)
    }

    /// Text dump: header `genus <g> faces <F>`, then one face per line as a
    /// cyclic vertex walk.
    pub fn dump(&self) -> String {
        let mut out = format!("genus {} faces {}\n", self.genus, self.faces.len());
        for face in &self.faces {
            let words: Vec<String> = face.iter().map(|v| v.to_string()).collect();
            out.push_str(&words.join(" "));
            out.push('\n');
        }
        out
    }
}

/// Traces the faces of `(g, rot)` and reports genus via Euler's formula.
/// Errors on disconnected input.
pub fn trace_faces(g: &LabeledGraph, rot: &RotationSystem) -> Result<EmbeddingSummary, EmbedError> {
    if !g.is_connected() {
        return Err(EmbedError::Disconnected);
    }
    let _ = RotationSystem::new(g, rot.orders().to_vec())?;
    let n = g.n();
    if n == 0 {
        return Ok(EmbeddingSummary { faces: vec![], face_sizes: vec![], genus: 0 });
    }
    let m = g.m();
    if m == 0 {
        // single vertex on the sphere
        return Ok(EmbeddingSummary { faces: vec![vec![]], face_sizes: vec![0], genus: 0 });
    }

    // darts 2i = (u -> v), 2i+1 = (v -> u) for edges[i] = (u, v)
    let edges = g.edges();
    let mut dart_index = std::collections::HashMap::new();
    for (i, &(u, v)) in edges.iter().enumerate() {
        dart_index.insert((u, v), 2 * i);
        dart_index.insert((v, u), 2 * i + 1);
    }
    let tail = |d: usize| -> u8 {
        let (u, v) = edges[d / 2];
        if d % 2 == 0 {
            u
        } else {
            v
        }
    };
    // phi(d) = successor at head(d) of the reversed dart
    let next_dart = |d: usize| -> usize {
        let (u, v) = edges[d / 2];
        let (from, to) = if d % 2 == 0 { (u, v) } else { (v, u) };
        let w = rot.successor(to, from);
        dart_index[&(to, w)]
    };

    let mut seen = vec![false; 2 * m];
    let mut faces = Vec::new();
    for start in 0..2 * m {
        if seen[start] {
            continue;
        }
        let mut walk = Vec::new();
        let mut d = start;
        loop {
            seen[d] = true;
            walk.push(tail(d));
            d = next_dart(d);
            if d == start {
                break;
            }
        }
        faces.push(walk);
    }
    let face_sizes: Vec<usize> = faces.iter().map(|f| f.len()).collect();
    let f = faces.len();
    let euler = n as i64 - m as i64 + f as i64;
    debug_assert!(euler <= 2 && (2 - euler) % 2 == 0);
    let genus = ((2 - euler) / 2) as u32;
    Ok(EmbeddingSummary { faces, face_sizes, genus })
}

/// Calls `visit` once for every rotation system of `g` (product of the
/// `(deg-1)!` cyclic orders per vertex). Intended as a brute-force oracle
/// for very small graphs; the count explodes quickly.
pub fn for_each_rotation(g: &LabeledGraph, visit: &mut dyn FnMut(&RotationSystem)) {
    let n = g.n();
    // all cyclic orders per vertex: first neighbor pinned, rest permuted
    let mut choices: Vec<Vec<Vec<u8>>> = vec![Vec::new(); n + 1];
    for v in 1..=n as u8 {
        let nb: Vec<u8> = g.neighbors(v).collect();
        if nb.len() <= 2 {
            choices[v as usize] = vec![nb];
            continue;
        }
        let (first, rest) = nb.split_first().unwrap();
        let mut perms = Vec::new();
        permutations(rest, &mut |p| {
            let mut seq = vec![*first];
            seq.extend_from_slice(p);
            perms.push(seq);
        });
        choices[v as usize] = perms;
    }
    let mut order: Vec<Vec<u8>> = vec![Vec::new(); n + 1];
    fn rec(
        v: usize,
        n: usize,
        choices: &[Vec<Vec<u8>>],
        order: &mut Vec<Vec<u8>>,
        visit: &mut dyn FnMut(&RotationSystem),
    ) {
        if v > n {
            visit(&RotationSystem { order: order.clone() });
            return;
        }
        for seq in &choices[v] {
            order[v] = seq.clone();
            rec(v + 1, n, choices, order, visit);
        }
    }
    rec(1, n, &choices, &mut order, visit);
}

fn permutations(items: &[u8], visit: &mut dyn FnMut(&[u8])) {
    let mut buf = items.to_vec();
    fn heap(k: usize, buf: &mut Vec<u8>, visit: &mut dyn FnMut(&[u8])) {
        if k <= 1 {
            visit(buf);
            return;
        }
        for i in 0..k {
            heap(k - 1, buf, visit);
            if k % 2 == 0 {
                buf.swap(i, k - 1);
            } else {
                buf.swap(0, k - 1);
            }
        }
    }
    let k = buf.len();
    heap(k, &mut buf, visit);
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_has_two_faces() {
        let k3 = LabeledGraph::complete(3).unwrap();
        let rot = RotationSystem::sorted(&k3);
        let s = trace_faces(&k3, &rot).unwrap();
        assert_eq!(s.face_sizes, vec![3, 3]);
        assert_eq!(s.genus, 0);
    }

    #[test]
    fn tree_has_one_face_of_size_2m() {
        for n in 2..=8 {
            let p = LabeledGraph::path(n).unwrap();
            let s = trace_faces(&p, &RotationSystem::sorted(&p)).unwrap();
            assert_eq!(s.faces.len(), 1);
            assert_eq!(s.face_sizes, vec![2 * (n - 1)]);
            assert_eq!(s.genus, 0);
        }
        // star: same statement for any rotation
        let star = LabeledGraph::new(5, &[(1, 2), (1, 3), (1, 4), (1, 5)]).unwrap();
        let mut count = 0;
        for_each_rotation(&star, &mut |rot| {
            let s = trace_faces(&star, rot).unwrap();
            assert_eq!(s.face_sizes, vec![8]);
            assert_eq!(s.genus, 0);
            count += 1;
        });
        assert_eq!(count, 6); // (4-1)!
    }

    #[test]
    fn k4_has_a_toroidal_rotation() {
        let k4 = LabeledGraph::complete(4).unwrap();
        let mut rotations = 0;
        let mut genus_one_seen = false;
        for_each_rotation(&k4, &mut |rot| {
            rotations += 1;
            let s = trace_faces(&k4, rot).unwrap();
            assert_eq!(s.face_sizes.iter().sum::<usize>(), 2 * k4.m());
            if s.genus == 1 {
                genus_one_seen = true;
                assert_eq!(s.faces.len(), 2);
            }
        });
        assert_eq!(rotations, 16); // (3-1)!^4
        assert!(genus_one_seen);
    }

    #[test]
    fn rejects_disconnected_and_bad_rotation() {
        let g = LabeledGraph::new(4, &[(1, 2), (3, 4)]).unwrap();
        let rot = RotationSystem::sorted(&g);
        assert_eq!(trace_faces(&g, &rot), Err(EmbedError::Disconnected));

        let k3 = LabeledGraph::complete(3).unwrap();
        let bad = RotationSystem { order: vec![vec![], vec![2, 2], vec![1, 3], vec![1, 2]] };
        assert_eq!(trace_faces(&k3, &bad), Err(EmbedError::InvalidRotation));
    }

    #[test]
    fn single_vertex_sphere() {
        let k1 = LabeledGraph::empty(1).unwrap();
        let s = trace_faces(&k1, &RotationSystem::sorted(&k1)).unwrap();
        assert_eq!(s.faces, vec![Vec::<u8>::new()]);
        assert_eq!(s.genus, 0);
    }

    #[test]
    fn dump_format() {
        let k3 = LabeledGraph::complete(3).unwrap();
        let s = trace_faces(&k3, &RotationSystem::sorted(&k3)).unwrap();
        let dump = s.dump();
        let mut lines = dump.lines();
        assert_eq!(lines.next(), Some("genus 0 faces 2"));
        assert_eq!(dump.lines().count(), 3);
    }
}
