//! Planarity testing by face expansion (Demoucron, Malgrange, Pertuiset).
//!
//! Each biconnected block is embedded incrementally: start from a cycle,
//! then repeatedly route a path of some bridge through a face whose
//! boundary contains all of the bridge's attachment vertices. A bridge with
//! no admissible face certifies non-planarity; always serving a bridge with
//! the fewest admissible faces keeps the greedy choice safe. Quadratic, which
//! is plenty at the sizes this crate works with.

use crate::graph::LabeledGraph;

/// True iff `g` embeds in the plane (every component, every block).
pub fn is_planar(g: &LabeledGraph) -> bool {
    // Any graph with fewer than 9 edges is planar (a Kuratowski subdivision
    // needs at least 9).
    if g.m() <= 8 {
        return true;
    }
    for block in g.block_decomposition().blocks {
        if block.len() <= 8 {
            continue;
        }
        let vertices = crate::graph::BlockDecomposition::block_vertices(&block);
        let k = vertices.len();
        if block.len() > 3 * k - 6 {
            return false;
        }
        let mut index = [0u8; 64];
        for (i, &v) in vertices.iter().enumerate() {
            index[v as usize] = i as u8;
        }
        let local: Vec<(u8, u8)> = block
            .iter()
            .map(|&(u, v)| (index[u as usize], index[v as usize]))
            .collect();
        if !block_planar(k, &local) {
            return false;
        }
    }
    true
}

/// DMP on one biconnected block, vertices `0..k`, at least 9 edges.
fn block_planar(k: usize, edges: &[(u8, u8)]) -> bool {
    let mut adj = vec![0u64; k];
    for &(u, v) in edges {
        adj[u as usize] |= 1 << v;
        adj[v as usize] |= 1 << u;
    }

    // initial cycle by walking a DFS until it bites its own path
    let cycle = find_cycle(k, &adj);
    let mut faces: Vec<Vec<u8>> = vec![cycle.clone(), cycle.clone()];
    let mut embedded = vec![0u64; k];
    let mut in_h = 0u64;
    for &v in &cycle {
        in_h |= 1 << v;
    }
    for w in cycle.windows(2) {
        embedded[w[0] as usize] |= 1 << w[1];
        embedded[w[1] as usize] |= 1 << w[0];
    }
    let (first, last) = (cycle[0], *cycle.last().unwrap());
    embedded[first as usize] |= 1 << last;
    embedded[last as usize] |= 1 << first;
    let mut embedded_count = cycle.len();

    while embedded_count < edges.len() {
        let bridges = find_bridges(k, &adj, &embedded, in_h);
        debug_assert!(!bridges.is_empty());

        // admissible faces per bridge; bail out on an unembeddable bridge
        let mut chosen: Option<(usize, usize, usize)> = None; // (bridge, face, count)
        for (bi, bridge) in bridges.iter().enumerate() {
            let mut count = 0;
            let mut first_face = usize::MAX;
            for (fi, face) in faces.iter().enumerate() {
                let mut mask = 0u64;
                for &v in face {
                    mask |= 1 << v;
                }
                if bridge.attachments & !mask == 0 {
                    count += 1;
                    if first_face == usize::MAX {
                        first_face = fi;
                    }
                }
            }
            if count == 0 {
                return false;
            }
            if chosen.map_or(true, |(_, _, c)| count < c) {
                chosen = Some((bi, first_face, count));
            }
        }
        let (bi, fi, _) = chosen.unwrap();
        let path = bridge_path(&bridges[bi], &adj);

        // split the face along the path
        let face = faces.swap_remove(fi);
        let a1 = path[0];
        let a2 = *path.last().unwrap();
        let i = face.iter().position(|&v| v == a1).unwrap();
        let j = face.iter().position(|&v| v == a2).unwrap();
        let (i, j, path) = if i <= j {
            (i, j, path)
        } else {
            let rev: Vec<u8> = path.iter().rev().copied().collect();
            (j, i, rev)
        };
        let interior = &path[1..path.len() - 1];
        let mut face_a: Vec<u8> = face[i..=j].to_vec();
        face_a.extend(interior.iter().rev());
        let mut face_b: Vec<u8> = face[j..].to_vec();
        face_b.extend_from_slice(&face[..=i]);
        face_b.extend(interior.iter());
        faces.push(face_a);
        faces.push(face_b);

        for w in path.windows(2) {
            embedded[w[0] as usize] |= 1 << w[1];
            embedded[w[1] as usize] |= 1 << w[0];
            embedded_count += 1;
        }
        for &v in interior {
            in_h |= 1 << v;
        }
    }
    true
}

fn find_cycle(k: usize, adj: &[u64]) -> Vec<u8> {
    let mut parent = vec![u8::MAX; k];
    let mut on_path = vec![false; k];
    let mut path = vec![0u8];
    on_path[0] = true;
    loop {
        let v = *path.last().unwrap();
        let mut next = None;
        let mut mask = adj[v as usize];
        while mask != 0 {
            let u = mask.trailing_zeros() as u8;
            mask &= mask - 1;
            if u == parent[v as usize] {
                continue;
            }
            if on_path[u as usize] {
                // close the cycle u ... v
                let start = path.iter().position(|&x| x == u).unwrap();
                return path[start..].to_vec();
            }
            next = Some(u);
            break;
        }
        // min degree 2 in a block: the walk extends until it closes a cycle
        let u = next.expect("biconnected block contains a cycle");
        parent[u as usize] = v;
        on_path[u as usize] = true;
        path.push(u);
    }
}

struct Bridge {
    /// Attachment vertices (on H).
    attachments: u64,
    /// Interior vertices (off H); empty for a chord.
    interior: u64,
    /// A chord's endpoints, when interior is empty.
    chord: Option<(u8, u8)>,
}

fn find_bridges(k: usize, adj: &[u64], embedded: &[u64], in_h: u64) -> Vec<Bridge> {
    let mut bridges = Vec::new();
    // chords: unembedded edges with both ends on H
    for u in 0..k as u8 {
        if in_h >> u & 1 == 0 {
            continue;
        }
        let mut mask = adj[u as usize] & in_h & !embedded[u as usize];
        while mask != 0 {
            let v = mask.trailing_zeros() as u8;
            mask &= mask - 1;
            if v > u {
                bridges.push(Bridge {
                    attachments: 1 << u | 1 << v,
                    interior: 0,
                    chord: Some((u, v)),
                });
            }
        }
    }
    // components of G - V(H) with their H-neighbors
    let mut seen = in_h;
    for s in 0..k as u8 {
        if seen >> s & 1 == 1 {
            continue;
        }
        let mut comp = 1u64 << s;
        let mut frontier = comp;
        while frontier != 0 {
            let mut next = 0u64;
            let mut f = frontier;
            while f != 0 {
                let v = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= adj[v] & !in_h;
            }
            frontier = next & !comp;
            comp |= next & !in_h;
        }
        seen |= comp;
        let mut attachments = 0u64;
        let mut c = comp;
        while c != 0 {
            let v = c.trailing_zeros() as usize;
            c &= c - 1;
            attachments |= adj[v] & in_h;
        }
        bridges.push(Bridge { attachments, interior: comp, chord: None });
    }
    bridges
}

/// A path between two distinct attachments whose interior stays inside the
/// bridge. Biconnectivity guarantees two attachments exist.
fn bridge_path(bridge: &Bridge, adj: &[u64]) -> Vec<u8> {
    if let Some((u, v)) = bridge.chord {
        return vec![u, v];
    }
    let a1 = bridge.attachments.trailing_zeros() as u8;
    let others = bridge.attachments & !(1 << a1);
    debug_assert!(others != 0);
    // BFS from a1 through the interior until some other attachment is seen
    let mut prev = [u8::MAX; 64];
    let mut seen = 0u64;
    let mut queue = std::collections::VecDeque::new();
    let mut mask = adj[a1 as usize] & bridge.interior;
    while mask != 0 {
        let u = mask.trailing_zeros() as u8;
        mask &= mask - 1;
        seen |= 1 << u;
        prev[u as usize] = a1;
        queue.push_back(u);
    }
    while let Some(v) = queue.pop_front() {
        let targets = adj[v as usize] & others;
        if targets != 0 {
            let t = targets.trailing_zeros() as u8;
            let mut path = vec![t];
            let mut x = v;
            loop {
                path.push(x);
                if x == a1 {
                    break;
                }
                x = prev[x as usize];
            }
            path.reverse();
            return path;
        }
        let mut mask = adj[v as usize] & bridge.interior & !seen;
        while mask != 0 {
            let u = mask.trailing_zeros() as u8;
            mask &= mask - 1;
            seen |= 1 << u;
            prev[u as usize] = v;
            queue.push_back(u);
        }
    }
    unreachable!("bridge of a biconnected block reaches a second attachment");
}
