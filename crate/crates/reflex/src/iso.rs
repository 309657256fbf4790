//! Backtracking graph isomorphism with degree and neighborhood pruning.
//! Deterministic: candidates are tried in ascending vertex order, so the
//! returned bijection is stable across runs.

use crate::graph::{CubicGraph, SimpleGraph, VertexId};

/// Searches for a vertex bijection `a -> b` preserving adjacency both ways.
pub fn isomorphic(a: &SimpleGraph, b: &SimpleGraph) -> Option<Vec<VertexId>> {
    if a.n() != b.n() || a.edge_count() != b.edge_count() {
        return None;
    }
    let n = a.n() as usize;
    if n == 0 {
        return Some(Vec::new());
    }
    let adj_a = a.adjacency();
    let adj_b = b.adjacency();
    let deg_a: Vec<usize> = adj_a.iter().map(Vec::len).collect();
    let deg_b: Vec<usize> = adj_b.iter().map(Vec::len).collect();
    let mut sa = deg_a.clone();
    let mut sb = deg_b.clone();
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return None;
    }
    // neighbor-degree multiset refinement
    let profile = |adj: &[Vec<u32>], deg: &[usize]| -> Vec<Vec<usize>> {
        adj.iter()
            .map(|ns| {
                let mut p: Vec<usize> = ns.iter().map(|&w| deg[w as usize]).collect();
                p.sort_unstable();
                p
            })
            .collect()
    };
    let prof_a = profile(&adj_a, &deg_a);
    let prof_b = profile(&adj_b, &deg_b);
    {
        let mut pa = prof_a.clone();
        let mut pb = prof_b.clone();
        pa.sort();
        pb.sort();
        if pa != pb {
            return None;
        }
    }

    // order a's vertices so each next one touches the mapped prefix if possible
    let mut order = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    let mut touch = vec![0usize; n];
    for _ in 0..n {
        let mut best = usize::MAX;
        for v in 0..n {
            if placed[v] {
                continue;
            }
            if best == usize::MAX
                || touch[v] > touch[best]
                || (touch[v] == touch[best] && deg_a[v] > deg_a[best])
            {
                best = v;
            }
        }
        placed[best] = true;
        order.push(best);
        for &w in &adj_a[best] {
            touch[w as usize] += 1;
        }
    }

    let mut map = vec![u32::MAX; n]; // a -> b
    let mut used = vec![false; n];
    fn extend(
        depth: usize,
        order: &[usize],
        adj_a: &[Vec<u32>],
        adj_b: &[Vec<u32>],
        deg_a: &[usize],
        deg_b: &[usize],
        prof_a: &[Vec<usize>],
        prof_b: &[Vec<usize>],
        map: &mut [u32],
        used: &mut [bool],
    ) -> bool {
        if depth == order.len() {
            return true;
        }
        let v = order[depth];
        // candidates: consistent with every already-mapped neighbor/non-neighbor
        'cand: for cand in 0..adj_b.len() {
            if used[cand] || deg_b[cand] != deg_a[v] || prof_b[cand] != prof_a[v] {
                continue;
            }
            for &w in &adj_a[v] {
                let mw = map[w as usize];
                if mw != u32::MAX && !adj_b[cand].contains(&mw) {
                    continue 'cand;
                }
            }
            // adjacency must also be reflected: mapped neighbors of cand must
            // be images of neighbors of v
            for &bw in &adj_b[cand] {
                // find preimage of bw if mapped
                if used[bw as usize] {
                    // locate the a-vertex mapped to bw
                    let pre = map.iter().position(|&m| m == bw).unwrap();
                    if !adj_a[v].contains(&(pre as u32)) {
                        continue 'cand;
                    }
                }
            }
            map[v] = cand as u32;
            used[cand] = true;
            if extend(
                depth + 1,
                order,
                adj_a,
                adj_b,
                deg_a,
                deg_b,
                prof_a,
                prof_b,
                map,
                used,
            ) {
                return true;
            }
            map[v] = u32::MAX;
            used[cand] = false;
        }
        false
    }

    if extend(
        0, &order, &adj_a, &adj_b, &deg_a, &deg_b, &prof_a, &prof_b, &mut map, &mut used,
    ) {
        Some(map)
    } else {
        None
    }
}

/// Checks that `map` is an adjacency-preserving bijection `a -> b`.
pub fn check_isomorphism(a: &SimpleGraph, b: &SimpleGraph, map: &[VertexId]) -> bool {
    if map.len() != a.n() as usize || a.n() != b.n() {
        return false;
    }
    let mut seen = vec![false; b.n() as usize];
    for &m in map {
        if m >= b.n() || seen[m as usize] {
            return false;
        }
        seen[m as usize] = true;
    }
    for u in 0..a.n() {
        for v in u + 1..a.n() {
            if a.has_edge(u, v) != b.has_edge(map[u as usize], map[v as usize]) {
                return false;
            }
        }
    }
    true
}

/// Encodes a cubic multigraph as a simple graph whose isomorphism class
/// determines the original: every full edge is subdivided by a fresh degree-2
/// vertex (so parallel edges survive) and every half-edge becomes a pendant
/// degree-1 vertex. Original vertices keep degree 3.
pub fn cubic_encoding(g: &CubicGraph) -> SimpleGraph {
    let n = g.n();
    let mut next = n;
    let mut edges = Vec::new();
    for &(u, v) in g.full_edges() {
        edges.push((u, next));
        edges.push((v, next));
        next += 1;
    }
    for &v in g.half_edges() {
        edges.push((v, next));
        next += 1;
    }
    SimpleGraph::new(next, edges).expect("encoding is simple")
}

/// Isomorphism of cubic graphs (with half-edges and parallel edges) via the
/// subdivision encoding.
pub fn cubic_isomorphic(a: &CubicGraph, b: &CubicGraph) -> bool {
    isomorphic(&cubic_encoding(a), &cubic_encoding(b)).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k3() -> SimpleGraph {
        SimpleGraph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    #[test]
    fn k3_vs_k3() {
        let m = isomorphic(&k3(), &k3()).unwrap();
        assert!(check_isomorphism(&k3(), &k3(), &m));
    }

    #[test]
    fn c4_vs_k3() {
        let c4 = SimpleGraph::new(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert!(isomorphic(&c4, &k3()).is_none());
    }

    #[test]
    fn relabeled_petersen() {
        let outer = (0..5u32).map(|i| (i, (i + 1) % 5));
        let inner = (0..5u32).map(|i| (5 + i, 5 + (i + 2) % 5));
        let spokes = (0..5u32).map(|i| (i, 5 + i));
        let p1 = SimpleGraph::new(10, outer.clone().chain(inner.clone()).chain(spokes.clone()))
            .unwrap();
        // relabel by v -> (3v + 1) mod 10
        let relabel = |v: u32| (3 * v + 1) % 10;
        let p2 = SimpleGraph::new(
            10,
            p1.edges().iter().map(|&(u, v)| (relabel(u), relabel(v))),
        )
        .unwrap();
        let m = isomorphic(&p1, &p2).unwrap();
        assert!(check_isomorphism(&p1, &p2, &m));
        // same vertex count and edge count but different graph
        let c10 = SimpleGraph::new(10, (0..10u32).map(|i| (i, (i + 1) % 10))).unwrap();
        let c10_plus = SimpleGraph::new(
            10,
            c10.edges().iter().copied().chain((0..5u32).map(|i| (i, i + 5))),
        )
        .unwrap();
        assert!(isomorphic(&p1, &c10_plus).is_none());
    }

    #[test]
    fn cubic_iso_distinguishes_multiplicity() {
        let double = CubicGraph::from_parts(2, [(0, 1), (0, 1)], [0, 1]);
        let single = CubicGraph::from_parts(2, [(0, 1)], [0, 0, 1, 1]);
        assert!(!cubic_isomorphic(&double, &single));
        assert!(cubic_isomorphic(&double, &double));
    }

    #[test]
    fn deterministic_mapping() {
        let p = SimpleGraph::new(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)]).unwrap();
        let q = SimpleGraph::new(6, [(5, 4), (4, 3), (3, 2), (2, 1), (1, 0)]).unwrap();
        assert_eq!(isomorphic(&p, &q), isomorphic(&p, &q));
    }
}
