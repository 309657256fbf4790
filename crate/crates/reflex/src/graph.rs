//! Graph data model: cubic graphs with half-edges, plain simple graphs, and
//! the structural utilities built on them (line graphs, components,
//! bipartiteness, triangles, cutedges).

use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;
use thiserror::Error;

/// Dense vertex index, `0..n`.
pub type VertexId = u32;

/// Dense edge index. Full edges come first (in input order), then half-edges.
/// The id, not the endpoint pair, is the identity of an edge; this keeps
/// parallel edges and half-edges uniform.
pub type EdgeId = u32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),
    #[error("vertex {0} out of range (n = {1})")]
    VertexOutOfRange(VertexId, u32),
    #[error("degree {degree} at vertex {vertex} exceeds 3")]
    DegreeTooLarge { vertex: VertexId, degree: usize },
    #[error("no such edge {0}")]
    NoSuchEdge(EdgeId),
    #[error("edge {0} is a half-edge")]
    IsHalfEdge(EdgeId),
    #[error("edge {0} is not a cutedge")]
    NotACutedge(EdgeId),
    #[error("vertex {0} carries no half-edge")]
    NoHalfEdgeAt(VertexId),
    #[error("{0}")]
    Invalid(String),
}

/// A single invariant violation found by [`CubicGraph::validate`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Violation {
    Degree { vertex: VertexId, degree: usize },
    SelfLoop { vertex: VertexId },
    Multiplicity { u: VertexId, v: VertexId, count: usize },
    VertexOutOfRange { vertex: VertexId },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Degree { vertex, degree } => {
                write!(f, "degree {degree} at vertex {vertex}")
            }
            Violation::SelfLoop { vertex } => write!(f, "self-loop at vertex {vertex}"),
            Violation::Multiplicity { u, v, count } => {
                write!(f, "{count} parallel edges between {u} and {v}")
            }
            Violation::VertexOutOfRange { vertex } => write!(f, "vertex {vertex} out of range"),
        }
    }
}

/// A cubic multigraph with half-edges. Every vertex has degree exactly 3,
/// counting half-edges and edge multiplicity. Immutable after construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CubicGraph {
    n: u32,
    full_edges: Vec<(VertexId, VertexId)>,
    half_edges: Vec<VertexId>,
}

impl CubicGraph {
    /// Builds a graph from raw parts without checking the degree invariant.
    /// Endpoint pairs are normalized to `u <= v`; use [`validate`](Self::validate)
    /// to diagnose violations.
    pub fn from_parts(
        n: u32,
        full_edges: impl IntoIterator<Item = (VertexId, VertexId)>,
        half_edges: impl IntoIterator<Item = VertexId>,
    ) -> Self {
        let full_edges = full_edges
            .into_iter()
            .map(|(u, v)| if u <= v { (u, v) } else { (v, u) })
            .collect();
        CubicGraph {
            n,
            full_edges,
            half_edges: half_edges.into_iter().collect(),
        }
    }

    /// Pads each vertex of a max-degree-3 graph with half-edges to make it cubic.
    pub fn make_cubic(
        n: u32,
        edges: impl IntoIterator<Item = (VertexId, VertexId)>,
    ) -> Result<Self, GraphError> {
        let edges: Vec<(VertexId, VertexId)> = edges.into_iter().collect();
        let mut degree = vec![0usize; n as usize];
        for &(u, v) in &edges {
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange(w, n));
                }
                degree[w as usize] += 1;
            }
        }
        for (v, &d) in degree.iter().enumerate() {
            if d > 3 {
                return Err(GraphError::DegreeTooLarge {
                    vertex: v as VertexId,
                    degree: d,
                });
            }
        }
        let mut half_edges = Vec::new();
        for (v, &d) in degree.iter().enumerate() {
            for _ in d..3 {
                half_edges.push(v as VertexId);
            }
        }
        Ok(CubicGraph::from_parts(n, edges, half_edges))
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn full_edges(&self) -> &[(VertexId, VertexId)] {
        &self.full_edges
    }

    pub fn half_edges(&self) -> &[VertexId] {
        &self.half_edges
    }

    pub fn full_edge_count(&self) -> usize {
        self.full_edges.len()
    }

    pub fn half_edge_count(&self) -> usize {
        self.half_edges.len()
    }

    /// Total number of edges (full and half); edge ids range over `0..edge_count()`.
    pub fn edge_count(&self) -> usize {
        self.full_edges.len() + self.half_edges.len()
    }

    pub fn is_half_edge(&self, e: EdgeId) -> bool {
        (e as usize) >= self.full_edges.len() && (e as usize) < self.edge_count()
    }

    /// Endpoints of an edge; the second endpoint is `None` for a half-edge.
    pub fn endpoints(&self, e: EdgeId) -> Result<(VertexId, Option<VertexId>), GraphError> {
        let e = e as usize;
        if e < self.full_edges.len() {
            let (u, v) = self.full_edges[e];
            Ok((u, Some(v)))
        } else if e < self.edge_count() {
            Ok((self.half_edges[e - self.full_edges.len()], None))
        } else {
            Err(GraphError::NoSuchEdge(e as EdgeId))
        }
    }

    /// Edge ids incident with `v`, in ascending id order.
    pub fn edges_at(&self, v: VertexId) -> Vec<EdgeId> {
        let mut out = Vec::new();
        for (i, &(a, b)) in self.full_edges.iter().enumerate() {
            if a == v || b == v {
                out.push(i as EdgeId);
            }
        }
        for (i, &a) in self.half_edges.iter().enumerate() {
            if a == v {
                out.push((self.full_edges.len() + i) as EdgeId);
            }
        }
        out
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.full_edges
            .iter()
            .map(|&(a, b)| (a == v) as usize + (b == v) as usize)
            .sum::<usize>()
            + self.half_edges.iter().filter(|&&a| a == v).count()
    }

    /// Reports every invariant violation. Empty result means the graph is valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for &(u, v) in &self.full_edges {
            if u == v {
                out.push(Violation::SelfLoop { vertex: u });
            }
            for w in [u, v] {
                if w >= self.n {
                    out.push(Violation::VertexOutOfRange { vertex: w });
                }
            }
        }
        for &v in &self.half_edges {
            if v >= self.n {
                out.push(Violation::VertexOutOfRange { vertex: v });
            }
        }
        if out.iter().any(|v| matches!(v, Violation::VertexOutOfRange { .. })) {
            return out;
        }
        for v in 0..self.n {
            let d = self.degree(v);
            if d != 3 {
                out.push(Violation::Degree { vertex: v, degree: d });
            }
        }
        let mut mult = std::collections::BTreeMap::new();
        for &(u, v) in &self.full_edges {
            if u != v {
                *mult.entry((u, v)).or_insert(0usize) += 1;
            }
        }
        for ((u, v), count) in mult {
            if count > 3 {
                out.push(Violation::Multiplicity { u, v, count });
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// True if some vertex pair is joined by more than one full edge.
    pub fn has_multi_edge(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.full_edges.iter().any(|&e| !seen.insert(e))
    }

    /// True iff no 3-cycle of full edges exists. Parallel pairs are 2-cycles,
    /// not triangles, so multiplicity is ignored here.
    pub fn is_triangle_free(&self) -> bool {
        let simple: BTreeSet<(u32, u32)> = self.full_edges.iter().copied().collect();
        let edges: Vec<_> = simple.iter().copied().collect();
        for (i, &(a, b)) in edges.iter().enumerate() {
            for &(c, d) in &edges[i + 1..] {
                // look for a common vertex and the closing edge
                let third = if a == c {
                    Some((b.min(d), b.max(d)))
                } else if a == d {
                    Some((b.min(c), b.max(c)))
                } else if b == c {
                    Some((a.min(d), a.max(d)))
                } else if b == d {
                    Some((a.min(c), a.max(c)))
                } else {
                    None
                };
                if let Some(e) = third {
                    if e.0 != e.1 && simple.contains(&e) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// The line graph: one vertex per edge id, adjacent iff the edges share an
    /// endpoint in `self`. Parallel edges share two endpoints but yield a
    /// single line-graph edge.
    pub fn line_graph(&self) -> SimpleGraph {
        let m = self.edge_count();
        let mut edges = BTreeSet::new();
        for v in 0..self.n {
            let at = self.edges_at(v);
            for i in 0..at.len() {
                for j in i + 1..at.len() {
                    edges.insert((at[i], at[j]));
                }
            }
        }
        SimpleGraph::new(m as u32, edges).expect("line graph is simple by construction")
    }

    /// All full cutedges (bridges). Half-edges are never cutedges.
    pub fn cutedges(&self) -> Vec<EdgeId> {
        // iterative DFS low-link over the full-edge multigraph
        let n = self.n as usize;
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n]; // (neighbor, edge idx)
        for (i, &(u, v)) in self.full_edges.iter().enumerate() {
            adj[u as usize].push((v as usize, i));
            adj[v as usize].push((u as usize, i));
        }
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![usize::MAX; n];
        let mut timer = 0usize;
        let mut bridges = Vec::new();
        for start in 0..n {
            if disc[start] != usize::MAX {
                continue;
            }
            // stack entries: (vertex, incoming edge idx, iterator position)
            let mut stack = vec![(start, usize::MAX, 0usize)];
            disc[start] = timer;
            low[start] = timer;
            timer += 1;
            while let Some(&mut (v, in_edge, ref mut pos)) = stack.last_mut() {
                if *pos < adj[v].len() {
                    let (to, eidx) = adj[v][*pos];
                    *pos += 1;
                    if eidx == in_edge {
                        continue;
                    }
                    if disc[to] == usize::MAX {
                        disc[to] = timer;
                        low[to] = timer;
                        timer += 1;
                        stack.push((to, eidx, 0));
                    } else {
                        low[v] = low[v].min(disc[to]);
                    }
                } else {
                    stack.pop();
                    if let Some(&mut (parent, _, _)) = stack.last_mut() {
                        low[parent] = low[parent].min(low[v]);
                        if low[v] > disc[parent] {
                            bridges.push(in_edge as EdgeId);
                        }
                    }
                }
            }
        }
        bridges.sort_unstable();
        bridges
    }

    /// Cuts a full cutedge, producing the two sides as cubic graphs. Each side
    /// gains one half-edge at the former endpoint; both carry the original
    /// edge id as their shared label.
    pub fn cut_edge(&self, e: EdgeId) -> Result<CutEdge, GraphError> {
        let (a, b) = match self.endpoints(e)? {
            (a, Some(b)) => (a, b),
            (_, None) => return Err(GraphError::IsHalfEdge(e)),
        };
        if !self.cutedges().contains(&e) {
            return Err(GraphError::NotACutedge(e));
        }
        // components of the graph minus e
        let n = self.n as usize;
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (i, &(u, v)) in self.full_edges.iter().enumerate() {
            if i as EdgeId == e {
                continue;
            }
            adj[u as usize].push(v as usize);
            adj[v as usize].push(u as usize);
        }
        let mut side = vec![u8::MAX; n];
        for (start, tag) in [(a as usize, 0u8), (b as usize, 1u8)] {
            let mut stack = vec![start];
            side[start] = tag;
            while let Some(v) = stack.pop() {
                for &w in &adj[v] {
                    if side[w] == u8::MAX {
                        side[w] = tag;
                        stack.push(w);
                    }
                }
            }
        }
        let build = |tag: u8, cut_vertex: VertexId| -> (CubicGraph, Vec<VertexId>, EdgeId) {
            let vertices: Vec<VertexId> =
                (0..self.n).filter(|&v| side[v as usize] == tag).collect();
            let index = |v: VertexId| vertices.iter().position(|&w| w == v).unwrap() as VertexId;
            let full: Vec<(VertexId, VertexId)> = self
                .full_edges
                .iter()
                .enumerate()
                .filter(|&(i, &(u, _))| i as EdgeId != e && side[u as usize] == tag)
                .map(|(_, &(u, v))| (index(u), index(v)))
                .collect();
            let mut half: Vec<VertexId> = self
                .half_edges
                .iter()
                .filter(|&&v| side[v as usize] == tag)
                .map(|&v| index(v))
                .collect();
            half.push(index(cut_vertex));
            let new_half_id = (full.len() + half.len() - 1) as EdgeId;
            (CubicGraph::from_parts(vertices.len() as u32, full, half), vertices, new_half_id)
        };
        let (h, h_vertices, h_half) = build(0, a);
        let (k, k_vertices, k_half) = build(1, b);
        Ok(CutEdge {
            h,
            k,
            label: e,
            h_half,
            k_half,
            h_vertices,
            k_vertices,
        })
    }
}

/// Result of cutting a cutedge: the two sides, the shared edge label, the id
/// of the new half-edge on each side, and each side's original vertex ids.
#[derive(Clone, Debug)]
pub struct CutEdge {
    pub h: CubicGraph,
    pub k: CubicGraph,
    /// Original edge id; `E(H) ∩ E(K) = {label}` in reports.
    pub label: EdgeId,
    pub h_half: EdgeId,
    pub k_half: EdgeId,
    pub h_vertices: Vec<VertexId>,
    pub k_vertices: Vec<VertexId>,
}

/// Plain undirected graph: no loops, no parallel edges. Used for line graphs
/// and coloring complexes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimpleGraph {
    n: u32,
    edges: Vec<(VertexId, VertexId)>,
}

impl SimpleGraph {
    /// Normalizes endpoints, sorts, and deduplicates. Rejects self-loops and
    /// out-of-range vertices.
    pub fn new(
        n: u32,
        edges: impl IntoIterator<Item = (VertexId, VertexId)>,
    ) -> Result<Self, GraphError> {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange(w, n));
                }
            }
            set.insert((u.min(v), u.max(v)));
        }
        Ok(SimpleGraph {
            n,
            edges: set.into_iter().collect(),
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Edges as sorted normalized pairs.
    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        let key = (u.min(v), u.max(v));
        self.edges.binary_search(&key).is_ok()
    }

    /// Adjacency lists, sorted ascending.
    pub fn adjacency(&self) -> Vec<Vec<VertexId>> {
        let mut adj = vec![Vec::new(); self.n as usize];
        for &(u, v) in &self.edges {
            adj[u as usize].push(v);
            adj[v as usize].push(u);
        }
        adj
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| a == v || b == v)
            .count()
    }

    /// All 3-cliques, each listed once as an ascending triple, sorted.
    pub fn triangles(&self) -> Vec<[VertexId; 3]> {
        let adj = self.adjacency();
        let mut out = Vec::new();
        for u in 0..self.n {
            for (i, &v) in adj[u as usize].iter().enumerate() {
                if v <= u {
                    continue;
                }
                for &w in &adj[u as usize][i + 1..] {
                    if w > v && self.has_edge(v, w) {
                        out.push([u, v, w]);
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Connected components, each sorted ascending, ordered by least vertex.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let adj = self.adjacency();
        let mut seen = vec![false; self.n as usize];
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen[start as usize] {
                continue;
            }
            let mut comp = vec![start];
            seen[start as usize] = true;
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for &w in &adj[v as usize] {
                    if !seen[w as usize] {
                        seen[w as usize] = true;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Bipartiteness plus the proper-2-coloring count `2^t` (t = number of
    /// components) when bipartite.
    pub fn bipartite_info(&self) -> BipartiteInfo {
        let adj = self.adjacency();
        let mut color = vec![u8::MAX; self.n as usize];
        let mut components = 0usize;
        for start in 0..self.n as usize {
            if color[start] != u8::MAX {
                continue;
            }
            components += 1;
            color[start] = 0;
            let mut queue = std::collections::VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for &w in &adj[v] {
                    let w = w as usize;
                    if color[w] == u8::MAX {
                        color[w] = 1 - color[v];
                        queue.push_back(w);
                    } else if color[w] == color[v] {
                        return BipartiteInfo {
                            bipartite: false,
                            components: 0,
                            two_coloring_count: None,
                        };
                    }
                }
            }
        }
        BipartiteInfo {
            bipartite: true,
            components,
            two_coloring_count: 1u64.checked_shl(components as u32),
        }
    }

    /// The induced subgraph on all vertices not in `remove` (reindexed).
    pub fn delete_vertices(&self, remove: &BTreeSet<VertexId>) -> SimpleGraph {
        let kept: Vec<VertexId> = (0..self.n).filter(|v| !remove.contains(v)).collect();
        let mut index = vec![u32::MAX; self.n as usize];
        for (i, &v) in kept.iter().enumerate() {
            index[v as usize] = i as u32;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| !remove.contains(&u) && !remove.contains(&v))
            .map(|&(u, v)| (index[u as usize], index[v as usize]));
        SimpleGraph::new(kept.len() as u32, edges).expect("induced subgraph is simple")
    }

    /// Disjoint union, with `other`'s vertices shifted past `self`'s.
    pub fn disjoint_union(&self, other: &SimpleGraph) -> SimpleGraph {
        let shift = self.n;
        let edges = self
            .edges
            .iter()
            .copied()
            .chain(other.edges.iter().map(|&(u, v)| (u + shift, v + shift)));
        SimpleGraph::new(self.n + other.n, edges).expect("union of simple graphs is simple")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BipartiteInfo {
    pub bipartite: bool,
    pub components: usize,
    pub two_coloring_count: Option<u64>,
}
