//! Enumeration of proper 3-edge-colorings of cubic graphs and proper
//! 3-colorings (as unordered partitions) of simple graphs, plus Kempe
//! changes, the parity signature, and the colorfulness check.
//!
//! Colorings are unordered partitions everywhere, never color-labeled
//! functions. Canonical form: each class sorted ascending, nonempty classes
//! ordered lexicographically, the empty class (vertex colorings only) last.

use crate::graph::{CubicGraph, EdgeId, SimpleGraph, VertexId};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A proper 3-edge-coloring of a cubic graph: three pairwise disjoint
/// matchings covering all edge ids, in canonical order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct EdgeColoring {
    pub classes: [Vec<EdgeId>; 3],
}

/// A partition of the vertices of a simple graph into three independent
/// sets, at most one of them empty (empty class last).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct VertexColoring {
    pub classes: [Vec<VertexId>; 3],
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ColoringError {
    #[error("seed edge {0} is not in either of the chosen classes")]
    SeedInThirdClass(EdgeId),
    #[error("class contains id {0} which is not an edge of the graph")]
    UnknownEdge(EdgeId),
    #[error("class indices must be two distinct values in 0..3")]
    BadClassPair,
}

/// Canonicalizes three classes in place: sorts each, then orders nonempty
/// classes lexicographically with any empty class last.
fn canonicalize(classes: &mut [Vec<u32>; 3]) {
    for c in classes.iter_mut() {
        c.sort_unstable();
    }
    classes.sort_by(|a, b| match (a.is_empty(), b.is_empty()) {
        (true, false) => std::cmp::Ordering::Greater,
        (false, true) => std::cmp::Ordering::Less,
        _ => a.cmp(b),
    });
}

/// Visit order for the backtracking search: each next vertex maximizes the
/// number of already-ordered neighbors (ties broken by smallest id), so most
/// assignments are forced or near-forced.
fn search_order(n: usize, adj: &[Vec<u32>]) -> Vec<usize> {
    let mut order = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    let mut ordered_neighbors = vec![0usize; n];
    for _ in 0..n {
        let mut best = usize::MAX;
        for v in 0..n {
            if placed[v] {
                continue;
            }
            if best == usize::MAX || ordered_neighbors[v] > ordered_neighbors[best] {
                best = v;
            }
        }
        placed[best] = true;
        order.push(best);
        for &w in &adj[best] {
            ordered_neighbors[w as usize] += 1;
        }
    }
    order
}

/// Enumerates all partitions of `0..n` into at most 3 independent sets of the
/// graph given by `adj`. Restricted-growth color assignment guarantees each
/// unordered partition is produced exactly once. Partitions using fewer than
/// `min_nonempty` classes are dropped.
fn enumerate_partitions(n: usize, adj: &[Vec<u32>], min_nonempty: usize) -> Vec<[Vec<u32>; 3]> {
    if n == 0 {
        return Vec::new();
    }
    let order = search_order(n, adj);
    let mut color = vec![u8::MAX; n];
    let mut out = Vec::new();
    // stack of (position in order, next color to try, colors used before this position)
    let mut pos = 0usize;
    let mut try_color = vec![0u8; n + 1];
    let mut used = vec![0u8; n + 1];
    loop {
        if pos == n {
            let mut classes: [Vec<u32>; 3] = Default::default();
            for v in 0..n {
                classes[color[v] as usize].push(v as u32);
            }
            if classes.iter().filter(|c| !c.is_empty()).count() >= min_nonempty {
                canonicalize(&mut classes);
                out.push(classes);
            }
            // force backtrack
            pos -= 1;
            let v = order[pos];
            color[v] = u8::MAX;
            continue;
        }
        let v = order[pos];
        let limit = (used[pos] + 1).min(3);
        let mut c = try_color[pos];
        let mut assigned = false;
        while c < limit {
            let conflict = adj[v].iter().any(|&w| color[w as usize] == c);
            if !conflict {
                color[v] = c;
                try_color[pos] = c + 1;
                used[pos + 1] = used[pos].max(c + 1);
                pos += 1;
                try_color[pos] = 0;
                assigned = true;
                break;
            }
            c += 1;
        }
        if assigned {
            continue;
        }
        if pos == 0 {
            break;
        }
        pos -= 1;
        let v = order[pos];
        color[v] = u8::MAX;
    }
    out.sort_unstable();
    out
}

/// All distinct unordered proper 3-edge-colorings of a cubic graph, in
/// canonical order. Empty iff the graph is not 3-edge-colorable.
pub fn enumerate_edge_colorings(g: &CubicGraph) -> Vec<EdgeColoring> {
    let lg = g.line_graph();
    let adj = lg.adjacency();
    let parts = enumerate_partitions(lg.n() as usize, &adj, 3);
    let out: Vec<EdgeColoring> = parts
        .into_iter()
        .map(|classes| EdgeColoring { classes })
        .collect();
    // structural check: every class must be a matching of g
    for c in &out {
        for class in &c.classes {
            assert!(is_matching(g, class), "enumerated class is not a matching");
        }
    }
    out
}

/// All distinct unordered partitions of the vertex set into 3 independent
/// sets with at most one empty part, in canonical order.
pub fn enumerate_vertex_colorings(x: &SimpleGraph) -> Vec<VertexColoring> {
    let adj = x.adjacency();
    enumerate_partitions(x.n() as usize, &adj, 2)
        .into_iter()
        .map(|classes| VertexColoring { classes })
        .collect()
}

fn is_matching(g: &CubicGraph, class: &[EdgeId]) -> bool {
    let mut touched = vec![false; g.n() as usize];
    for &e in class {
        let Ok((u, v)) = g.endpoints(e) else {
            return false;
        };
        for w in [Some(u), v].into_iter().flatten() {
            if touched[w as usize] {
                return false;
            }
            touched[w as usize] = true;
        }
    }
    true
}

/// Swaps the two chosen color classes on the connected component of the
/// two-class subgraph of `L(g)` containing `seed`. Involution: applying the
/// same change twice restores the coloring.
pub fn kempe_change(
    c: &EdgeColoring,
    g: &CubicGraph,
    colors: (usize, usize),
    seed: EdgeId,
) -> Result<EdgeColoring, ColoringError> {
    let (i, j) = colors;
    if i >= 3 || j >= 3 || i == j {
        return Err(ColoringError::BadClassPair);
    }
    let in_class = |k: usize, e: EdgeId| c.classes[k].binary_search(&e).is_ok();
    if !in_class(i, seed) && !in_class(j, seed) {
        return Err(ColoringError::SeedInThirdClass(seed));
    }
    // component of seed among edges of classes i and j, adjacency = shared endpoint
    let members: Vec<EdgeId> = c.classes[i]
        .iter()
        .chain(c.classes[j].iter())
        .copied()
        .collect();
    let mut vertex_edges: Vec<Vec<EdgeId>> = vec![Vec::new(); g.n() as usize];
    for &e in &members {
        let (u, v) = g.endpoints(e).map_err(|_| ColoringError::UnknownEdge(e))?;
        for w in [Some(u), v].into_iter().flatten() {
            vertex_edges[w as usize].push(e);
        }
    }
    let mut in_component: std::collections::BTreeSet<EdgeId> = [seed].into();
    let mut stack = vec![seed];
    while let Some(e) = stack.pop() {
        let (u, v) = g.endpoints(e).unwrap();
        for w in [Some(u), v].into_iter().flatten() {
            for &f in &vertex_edges[w as usize] {
                if in_component.insert(f) {
                    stack.push(f);
                }
            }
        }
    }
    let mut classes = c.classes.clone();
    let (mut new_i, mut new_j) = (Vec::new(), Vec::new());
    for &e in &classes[i] {
        if in_component.contains(&e) {
            new_j.push(e);
        } else {
            new_i.push(e);
        }
    }
    for &e in &classes[j] {
        if in_component.contains(&e) {
            new_i.push(e);
        } else {
            new_j.push(e);
        }
    }
    classes[i] = new_i;
    classes[j] = new_j;
    canonicalize(&mut classes);
    Ok(EdgeColoring { classes })
}

/// Half-edge counts per color class, with the parity check
/// `n1 ≡ n2 ≡ n3 ≡ n (mod 2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParitySignature {
    pub counts: [usize; 3],
    pub congruent: bool,
}

pub fn parity_signature(
    g: &CubicGraph,
    c: &EdgeColoring,
) -> Result<ParitySignature, ColoringError> {
    let mut counts = [0usize; 3];
    for (k, class) in c.classes.iter().enumerate() {
        for &e in class {
            if (e as usize) >= g.edge_count() {
                return Err(ColoringError::UnknownEdge(e));
            }
            if g.is_half_edge(e) {
                counts[k] += 1;
            }
        }
    }
    let n = g.n() as usize;
    let congruent = counts.iter().all(|&c| c % 2 == n % 2);
    Ok(ParitySignature { counts, congruent })
}

/// Outcome of the edge-colorfulness check. When not colorful, `witness` is a
/// pair of edges colored alike in every 3-edge-coloring; when the graph is
/// not 3-edge-colorable the witness is absent and `no_colorings` is set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColorfulResult {
    pub colorful: bool,
    pub witness: Option<(EdgeId, EdgeId)>,
    pub no_colorings: bool,
}

/// True iff every pair of edges is separated by some coloring; equivalently,
/// the canonical map on `L(g)` is injective.
pub fn is_edge_colorful(g: &CubicGraph) -> ColorfulResult {
    let colorings = enumerate_edge_colorings(g);
    colorful_from_colorings(g, &colorings)
}

/// Same check, reusing an already-enumerated coloring set.
pub fn colorful_from_colorings(g: &CubicGraph, colorings: &[EdgeColoring]) -> ColorfulResult {
    if colorings.is_empty() {
        return ColorfulResult {
            colorful: g.edge_count() == 0,
            witness: None,
            no_colorings: true,
        };
    }
    let m = g.edge_count();
    // signature of an edge: for each coloring, the class index containing it
    let mut signatures: Vec<Vec<u8>> = vec![Vec::with_capacity(colorings.len()); m];
    for c in colorings {
        for (k, class) in c.classes.iter().enumerate() {
            for &e in class {
                signatures[e as usize].push(k as u8);
            }
        }
    }
    for e in 0..m {
        for f in e + 1..m {
            if signatures[e] == signatures[f] {
                return ColorfulResult {
                    colorful: false,
                    witness: Some((e as EdgeId, f as EdgeId)),
                    no_colorings: false,
                };
            }
        }
    }
    ColorfulResult {
        colorful: true,
        witness: None,
        no_colorings: false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::CubicGraph;

    fn cubic_cycle(n: u32) -> CubicGraph {
        CubicGraph::make_cubic(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    #[test]
    fn cubic_vertex_has_one_coloring() {
        let g = CubicGraph::make_cubic(1, []).unwrap();
        let cols = enumerate_edge_colorings(&g);
        assert_eq!(cols.len(), 1);
        assert_eq!(cols[0].classes, [vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn cubic_4cycle_has_three_colorings() {
        // frozen from the brute-force oracle over 3^8 labeled assignments
        // (see tests/oracle.rs for the independent enumeration)
        let cols = enumerate_edge_colorings(&cubic_cycle(4));
        assert_eq!(cols.len(), 3);
    }

    #[test]
    fn k33_matches_oracle_count() {
        let k33 = CubicGraph::make_cubic(
            6,
            (0..3u32).flat_map(|i| (3..6u32).map(move |j| (i, j))),
        )
        .unwrap();
        // frozen from the brute-force oracle (tests/oracle.rs): the six
        // perfect matchings split into two disjoint 1-factorizations
        assert_eq!(enumerate_edge_colorings(&k33).len(), 2);
    }

    #[test]
    fn vertex_colorings_k3_and_k2() {
        let k3 = SimpleGraph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let cols = enumerate_vertex_colorings(&k3);
        assert_eq!(cols.len(), 1);
        assert_eq!(cols[0].classes, [vec![0], vec![1], vec![2]]);
        let k2 = SimpleGraph::new(2, [(0, 1)]).unwrap();
        let cols = enumerate_vertex_colorings(&k2);
        assert_eq!(cols.len(), 1);
        assert_eq!(cols[0].classes, [vec![0], vec![1], vec![]]);
    }

    #[test]
    fn kempe_is_involution_and_closed() {
        let g = cubic_cycle(4);
        let cols = enumerate_edge_colorings(&g);
        for c in &cols {
            for (i, j) in [(0usize, 1usize), (0, 2), (1, 2)] {
                let third = 3 - i - j;
                let seed = c.classes[i][0];
                let once = kempe_change(c, &g, (i, j), seed).unwrap();
                assert!(cols.contains(&once), "image must be a valid coloring");
                // the third class is untouched; the other two are the swapped
                // pair, wherever canonicalization moved them
                let third2 = once
                    .classes
                    .iter()
                    .position(|cl| *cl == c.classes[third])
                    .expect("third class unchanged");
                let pair: Vec<usize> = (0..3).filter(|&k| k != third2).collect();
                let back = kempe_change(&once, &g, (pair[0], pair[1]), seed).unwrap();
                assert_eq!(&back, c);
            }
        }
    }

    #[test]
    fn kempe_k2_swaps_one_star() {
        let g = CubicGraph::make_cubic(2, [(0, 1)]).unwrap();
        let cols = enumerate_edge_colorings(&g);
        // half-edges 1,2 at vertex 0; the {class(1),class(2)}-component of
        // edge 1 contains exactly the two half-edges at vertex 0
        let c = &cols[0];
        let i = c.classes.iter().position(|cl| cl.contains(&1)).unwrap();
        let j = c.classes.iter().position(|cl| cl.contains(&2)).unwrap();
        let swapped = kempe_change(c, &g, (i, j), 1).unwrap();
        assert_ne!(&swapped, c);
        assert!(swapped.classes.iter().any(|cl| cl.contains(&2) && !cl.contains(&1)));
        let back = kempe_change(&swapped, &g, (i, j), 1).unwrap();
        assert_eq!(&back, c);
    }

    #[test]
    fn kempe_seed_in_third_class_errors() {
        let g = CubicGraph::make_cubic(1, []).unwrap();
        let c = &enumerate_edge_colorings(&g)[0];
        assert_eq!(
            kempe_change(c, &g, (0, 1), 2),
            Err(ColoringError::SeedInThirdClass(2))
        );
    }

    #[test]
    fn parity_examples() {
        let v = CubicGraph::make_cubic(1, []).unwrap();
        let c = &enumerate_edge_colorings(&v)[0];
        let sig = parity_signature(&v, c).unwrap();
        assert_eq!(sig.counts, [1, 1, 1]);
        assert!(sig.congruent);

        let k2 = CubicGraph::make_cubic(2, [(0, 1)]).unwrap();
        for c in enumerate_edge_colorings(&k2) {
            let sig = parity_signature(&k2, &c).unwrap();
            assert!(sig.congruent, "parity lemma violated: {:?}", sig);
            let mut counts = sig.counts;
            counts.sort_unstable();
            assert_eq!(counts, [0, 2, 2]);
        }

        let k33 = CubicGraph::make_cubic(
            6,
            (0..3u32).flat_map(|i| (3..6u32).map(move |j| (i, j))),
        )
        .unwrap();
        let c = &enumerate_edge_colorings(&k33)[0];
        assert_eq!(parity_signature(&k33, c).unwrap().counts, [0, 0, 0]);
    }

    #[test]
    fn parity_rejects_foreign_edge() {
        let g = CubicGraph::make_cubic(1, []).unwrap();
        let bad = EdgeColoring {
            classes: [vec![0], vec![1], vec![7]],
        };
        assert_eq!(
            parity_signature(&g, &bad),
            Err(ColoringError::UnknownEdge(7))
        );
    }

    #[test]
    fn colorful_examples() {
        let c3 = cubic_cycle(3);
        let r = is_edge_colorful(&c3);
        assert!(!r.colorful);
        // triangle edges and the opposite "third edge at a" are forced alike
        let (e, f) = r.witness.unwrap();
        let (ea, eb) = (c3.endpoints(e).unwrap(), c3.endpoints(f).unwrap());
        assert!(ea.1.is_some() != eb.1.is_some(), "one full edge, one half-edge");
        assert!(cubic_cycle(4).is_triangle_free());
        assert!(is_edge_colorful(&cubic_cycle(4)).colorful);
    }

    #[test]
    fn enumeration_is_deterministic() {
        let g = cubic_cycle(6);
        let a = enumerate_edge_colorings(&g);
        let b = enumerate_edge_colorings(&g);
        assert_eq!(a, b);
        for w in a.windows(2) {
            assert!(w[0] < w[1], "strictly increasing canonical order");
        }
    }
}
