//! Constructors for every named graph family, the outerplanar build calculus
//! (adding a 4-cycle, subdividing an edge), and the CLI-facing family-spec
//! grammar.

use crate::graph::{CubicGraph, EdgeId, GraphError, SimpleGraph, VertexId};
use crate::iso::{cubic_encoding, isomorphic};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FamilyError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("bad family spec `{0}`: {1}")]
    Parse(String, String),
    #[error("build program step {step} failed: {source}")]
    Program { step: usize, source: GraphError },
    #[error("fusene sanity check failed: {0}")]
    Fusene(String),
    #[error("tree input is not a tree with maximum degree 3: {0}")]
    Tree(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// How a ladder length parameter is interpreted when building theta ladders.
/// `Squares` (the documented default): a length-k ladder spans k squares and
/// k-1 intermediate rung pairs, which makes TL(1,1,1) the 6-prism. `Rungs`:
/// a length-k ladder has k intermediate rung pairs (k+1 squares).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LadderConvention {
    Squares,
    Rungs,
}

impl Default for LadderConvention {
    fn default() -> Self {
        LadderConvention::Squares
    }
}

impl std::str::FromStr for LadderConvention {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "squares" => Ok(LadderConvention::Squares),
            "rungs" => Ok(LadderConvention::Rungs),
            other => Err(format!("unknown ladder convention `{other}`")),
        }
    }
}

impl std::fmt::Display for LadderConvention {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            LadderConvention::Squares => "squares",
            LadderConvention::Rungs => "rungs",
        })
    }
}

pub fn cubic_vertex() -> CubicGraph {
    CubicGraph::make_cubic(1, []).expect("single vertex")
}

pub fn cubic_k2() -> CubicGraph {
    CubicGraph::make_cubic(2, [(0, 1)]).expect("K2")
}

pub fn cubic_path(n: u32) -> Result<CubicGraph, GraphError> {
    if n < 1 {
        return Err(GraphError::Invalid("path needs n >= 1".into()));
    }
    CubicGraph::make_cubic(n, (1..n).map(|i| (i - 1, i)))
}

pub fn cubic_cycle(n: u32) -> Result<CubicGraph, GraphError> {
    if n < 3 {
        return Err(GraphError::Invalid("cycle needs n >= 3".into()));
    }
    CubicGraph::make_cubic(n, (0..n).map(|i| (i, (i + 1) % n)))
}

/// A cubic tree from an explicit edge list: the input must be connected,
/// acyclic, and of maximum degree 3.
pub fn cubic_tree(
    n: u32,
    edges: impl IntoIterator<Item = (VertexId, VertexId)>,
) -> Result<CubicGraph, FamilyError> {
    let edges: Vec<_> = edges.into_iter().collect();
    if n >= 1 && edges.len() != (n - 1) as usize {
        return Err(FamilyError::Tree(format!(
            "{} edges for {} vertices",
            edges.len(),
            n
        )));
    }
    let g = CubicGraph::make_cubic(n, edges.iter().copied())?;
    let simple = SimpleGraph::new(n, edges.iter().copied())?;
    if n > 0 && simple.components().len() != 1 {
        return Err(FamilyError::Tree("not connected".into()));
    }
    Ok(g)
}

/// Operation 1: adds a 4-cycle over a full edge whose endpoints each carry a
/// half-edge. The two half-edges become the full edges to the new vertices,
/// which each receive a fresh half-edge.
pub fn add_four_cycle(g: &CubicGraph, e: EdgeId) -> Result<CubicGraph, GraphError> {
    let (v1, v2) = match g.endpoints(e)? {
        (a, Some(b)) => (a, b),
        _ => return Err(GraphError::IsHalfEdge(e)),
    };
    let half_at = |v: VertexId| g.half_edges().iter().position(|&w| w == v);
    let (Some(h1), Some(h2)) = (half_at(v1), half_at(v2)) else {
        let missing = if half_at(v1).is_none() { v1 } else { v2 };
        return Err(GraphError::NoHalfEdgeAt(missing));
    };
    let (v3, v4) = (g.n(), g.n() + 1);
    let mut full: Vec<(VertexId, VertexId)> = g.full_edges().to_vec();
    full.push((v1, v4));
    full.push((v2, v3));
    full.push((v3, v4));
    let half: Vec<VertexId> = g
        .half_edges()
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != h1 && i != h2)
        .map(|(_, &v)| v)
        .chain([v3, v4])
        .collect();
    Ok(CubicGraph::from_parts(g.n() + 2, full, half))
}

/// Operation 2: subdivides a full edge whose endpoints each carry a
/// half-edge, giving the new degree-2 vertex a half-edge of its own.
pub fn subdivide_with_half_edge(g: &CubicGraph, e: EdgeId) -> Result<CubicGraph, GraphError> {
    let (v1, v2) = match g.endpoints(e)? {
        (a, Some(b)) => (a, b),
        _ => return Err(GraphError::IsHalfEdge(e)),
    };
    for v in [v1, v2] {
        if !g.half_edges().contains(&v) {
            return Err(GraphError::NoHalfEdgeAt(v));
        }
    }
    subdivide_plain(g, e, 1)
}

/// Subdivides a full edge `k` times; every new degree-2 vertex is padded with
/// a half-edge. No precondition on the endpoints.
pub fn subdivide_plain(g: &CubicGraph, e: EdgeId, k: u32) -> Result<CubicGraph, GraphError> {
    if k < 1 {
        return Err(GraphError::Invalid("k must be >= 1".into()));
    }
    let (v1, v2) = match g.endpoints(e)? {
        (a, Some(b)) => (a, b),
        _ => return Err(GraphError::IsHalfEdge(e)),
    };
    let mut full: Vec<(VertexId, VertexId)> = g.full_edges().to_vec();
    let first_new = g.n();
    full[e as usize] = (v1, first_new);
    for i in 0..k - 1 {
        full.push((first_new + i, first_new + i + 1));
    }
    full.push((first_new + k - 1, v2));
    let half: Vec<VertexId> = g
        .half_edges()
        .iter()
        .copied()
        .chain((0..k).map(|i| first_new + i))
        .collect();
    Ok(CubicGraph::from_parts(g.n() + k, full, half))
}

/// Subdivides every full edge exactly once, in one pass.
pub fn subdivide_every_edge_once(g: &CubicGraph) -> CubicGraph {
    let mut full = Vec::with_capacity(2 * g.full_edge_count());
    let mut next = g.n();
    for &(u, v) in g.full_edges() {
        full.push((u, next));
        full.push((next, v));
        next += 1;
    }
    let half: Vec<VertexId> = g
        .half_edges()
        .iter()
        .copied()
        .chain(g.n()..next)
        .collect();
    CubicGraph::from_parts(next, full, half)
}

/// One step of a build program, applied to the current graph's edge ids.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BuildOp {
    AddFourCycle(EdgeId),
    Subdivide(EdgeId),
}

/// A sequence of build steps applied to the cubic 4-cycle.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BuildProgram {
    pub ops: Vec<BuildOp>,
}

/// Runs a build program from the cubic 4-cycle. The output is always
/// 2-connected and triangle-free.
pub fn run_build_program(p: &BuildProgram) -> Result<CubicGraph, FamilyError> {
    let mut g = cubic_cycle(4)?;
    for (step, op) in p.ops.iter().enumerate() {
        g = match *op {
            BuildOp::AddFourCycle(e) => add_four_cycle(&g, e),
            BuildOp::Subdivide(e) => subdivide_with_half_edge(&g, e),
        }
        .map_err(|source| FamilyError::Program { step, source })?;
    }
    debug_assert!(g.is_triangle_free() && g.cutedges().is_empty());
    Ok(g)
}

/// The cubic theta graph: two hubs joined by three internally disjoint paths,
/// half-edges on internal vertices. Parameters are sorted to k <= l <= m.
/// (1,1,m) carries a parallel pair and (1,1,1) a triple edge; both are
/// constructed and flagged by the verifier, not rejected.
pub fn theta(k: u32, l: u32, m: u32) -> Result<CubicGraph, GraphError> {
    let mut p = [k, l, m];
    p.sort_unstable();
    theta_paths(p[0], p[1], p[2])
}

/// Theta construction without parameter sorting (exposed for the permutation
/// invariance tests).
pub fn theta_paths(k: u32, l: u32, m: u32) -> Result<CubicGraph, GraphError> {
    if k < 1 || l < 1 || m < 1 {
        return Err(GraphError::Invalid("theta parameters must be >= 1".into()));
    }
    let (hub0, hub1) = (0u32, 1u32);
    let mut full = Vec::new();
    let mut half = Vec::new();
    let mut next = 2u32;
    for len in [k, l, m] {
        let mut prev = hub0;
        for _ in 1..len {
            full.push((prev, next));
            half.push(next);
            prev = next;
            next += 1;
        }
        full.push((prev, hub1));
    }
    Ok(CubicGraph::from_parts(next, full, half))
}

/// The n-prism: an n-cycle times K2. 2n vertices, 3n edges, no half-edges.
pub fn prism(n: u32) -> Result<CubicGraph, GraphError> {
    if n < 3 {
        return Err(GraphError::Invalid("prism needs n >= 3".into()));
    }
    let outer = (0..n).map(|i| (i, (i + 1) % n));
    let inner = (0..n).map(|i| (n + i, n + (i + 1) % n));
    let spokes = (0..n).map(|i| (i, n + i));
    CubicGraph::make_cubic(2 * n, outer.chain(inner).chain(spokes))
}

/// The theta ladder TL(l,m,n): two 6-cycles joined pairwise along three
/// edges by ladders. Under the squares convention, a length-k ladder spans k
/// squares (k-1 intermediate rung pairs); under the rungs convention it has
/// k intermediate rung pairs.
pub fn theta_ladder(
    l: u32,
    m: u32,
    n: u32,
    convention: LadderConvention,
) -> Result<CubicGraph, GraphError> {
    if l < 1 || m < 1 || n < 1 {
        return Err(GraphError::Invalid("ladder parameters must be >= 1".into()));
    }
    let squares = |p: u32| match convention {
        LadderConvention::Squares => p,
        LadderConvention::Rungs => p + 1,
    };
    let mut full: Vec<(VertexId, VertexId)> = Vec::new();
    // two 6-cycles: a = 0..6, b = 6..12
    for base in [0u32, 6] {
        for i in 0..6 {
            full.push((base + i, base + (i + 1) % 6));
        }
    }
    let mut next = 12u32;
    for (param, i) in [l, m, n].into_iter().zip(0u32..) {
        let s = squares(param);
        let (x1, x2) = (2 * i, 2 * i + 1);
        let (y1, y2) = (6 + 2 * i, 6 + 2 * i + 1);
        // two side paths of s edges each, with s-1 connecting rungs
        let mut p_prev = x1;
        let mut q_prev = x2;
        for _ in 1..s {
            let (p, q) = (next, next + 1);
            next += 2;
            full.push((p_prev, p));
            full.push((q_prev, q));
            full.push((p, q));
            p_prev = p;
            q_prev = q;
        }
        full.push((p_prev, y1));
        full.push((q_prev, y2));
    }
    CubicGraph::make_cubic(next, full)
}

/// Catacondensed linear chain of k hexagons, half-edges padded.
pub fn hexagonal_chain(k: u32) -> Result<CubicGraph, GraphError> {
    if k < 1 {
        return Err(GraphError::Invalid("hexagonal chain needs k >= 1".into()));
    }
    let row = 2 * k + 1; // vertices per row
    let top = |j: u32| j;
    let bottom = |j: u32| row + j;
    let paths = (1..row).flat_map(|j| [(top(j - 1), top(j)), (bottom(j - 1), bottom(j))]);
    let rungs = (0..=k).map(|i| (top(2 * i), bottom(2 * i)));
    CubicGraph::make_cubic(2 * row, paths.chain(rungs))
}

/// Shortest cycle length of a simple graph, or `None` if acyclic.
fn girth(x: &SimpleGraph) -> Option<usize> {
    let adj = x.adjacency();
    let mut best: Option<usize> = None;
    for start in 0..x.n() as usize {
        // BFS recording parents; a non-tree edge closes a cycle
        let mut dist = vec![usize::MAX; x.n() as usize];
        let mut parent = vec![usize::MAX; x.n() as usize];
        dist[start] = 0;
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                let w = w as usize;
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    parent[w] = v;
                    queue.push_back(w);
                } else if parent[v] != w {
                    let len = dist[v] + dist[w] + 1;
                    if best.map_or(true, |b| len < b) {
                        best = Some(len);
                    }
                }
            }
        }
    }
    best
}

/// Ingests a fusene candidate from a plain edge list: maximum degree 3
/// before padding, bipartite, girth at least 6. Half-edges are padded on.
pub fn fusene_from_edges(
    n: u32,
    edges: impl IntoIterator<Item = (VertexId, VertexId)>,
) -> Result<CubicGraph, FamilyError> {
    let edges: Vec<_> = edges.into_iter().collect();
    let simple = SimpleGraph::new(n, edges.iter().copied())?;
    if let Some(v) = (0..n).find(|&v| simple.degree(v) > 3) {
        return Err(FamilyError::Fusene(format!("degree {} at vertex {v}", simple.degree(v))));
    }
    if !simple.bipartite_info().bipartite {
        return Err(FamilyError::Fusene("not bipartite".into()));
    }
    if let Some(g) = girth(&simple) {
        if g < 6 {
            return Err(FamilyError::Fusene(format!("girth {g} < 6")));
        }
    }
    Ok(CubicGraph::make_cubic(n, edges)?)
}

/// K_{3,3} as a cubic graph without half-edges.
pub fn k33() -> CubicGraph {
    CubicGraph::make_cubic(6, (0..3u32).flat_map(|i| (3..6u32).map(move |j| (i, j))))
        .expect("K33 is cubic")
}

/// The dodecahedron graph, as the generalized Petersen graph GP(10,2).
pub fn dodecahedron() -> CubicGraph {
    let outer = (0..10u32).map(|i| (i, (i + 1) % 10));
    let inner = (0..10u32).map(|i| (10 + i, 10 + (i + 2) % 10));
    let spokes = (0..10u32).map(|i| (i, 10 + i));
    CubicGraph::make_cubic(20, outer.chain(inner).chain(spokes)).expect("dodecahedron is cubic")
}

/// The Coxeter graph: three 7-cycles with steps 1, 2, 3 plus seven hub
/// vertices joined to one vertex of each ring.
pub fn coxeter() -> CubicGraph {
    let ring = |base: u32, step: u32| (0..7u32).map(move |i| (base + i, base + (i + step) % 7));
    let hubs = (0..7u32).flat_map(|i| [(21 + i, i), (21 + i, 7 + i), (21 + i, 14 + i)]);
    CubicGraph::make_cubic(
        28,
        ring(0, 1).chain(ring(7, 2)).chain(ring(14, 3)).chain(hubs),
    )
    .expect("Coxeter graph is cubic")
}

/// The disjoint union of two triangles, as a simple graph.
pub fn two_triangles() -> SimpleGraph {
    SimpleGraph::new(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).expect("2K3 is simple")
}

// ---------------------------------------------------------------------------
// Family enumerations used by the reproduction tables
// ---------------------------------------------------------------------------

/// AHU canonical encoding of a free tree given by adjacency.
fn tree_canonical(n: usize, adj: &[Vec<usize>]) -> String {
    fn encode(v: usize, parent: usize, adj: &[Vec<usize>]) -> String {
        let mut kids: Vec<String> = adj[v]
            .iter()
            .filter(|&&w| w != parent)
            .map(|&w| encode(w, v, adj))
            .collect();
        kids.sort();
        format!("({})", kids.concat())
    }
    // peel leaves to find the 1 or 2 centers
    let mut degree: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut removed = vec![false; n];
    let mut remaining = n;
    let mut layer: Vec<usize> = (0..n).filter(|&v| degree[v] <= 1).collect();
    while remaining > 2 {
        let mut next = Vec::new();
        for &v in &layer {
            removed[v] = true;
            remaining -= 1;
            for &w in &adj[v] {
                if !removed[w] {
                    degree[w] -= 1;
                    if degree[w] == 1 {
                        next.push(w);
                    }
                }
            }
        }
        layer = next;
    }
    let centers: Vec<usize> = (0..n).filter(|&v| !removed[v]).collect();
    centers
        .iter()
        .map(|&c| encode(c, usize::MAX, adj))
        .min()
        .expect("tree has a center")
}

/// All non-isomorphic trees with maximum degree 3 on up to `max_n` vertices,
/// returned as cubic trees. Prüfer enumeration with AHU deduplication.
pub fn all_cubic_trees(max_n: u32) -> Vec<CubicGraph> {
    let mut out = Vec::new();
    if max_n >= 1 {
        out.push(cubic_vertex());
    }
    if max_n >= 2 {
        out.push(cubic_k2());
    }
    for n in 3..=max_n as usize {
        let mut seen = BTreeSet::new();
        let mut seq = vec![0usize; n - 2];
        loop {
            // degree check straight off the Prüfer sequence
            let mut degree = vec![1usize; n];
            for &s in &seq {
                degree[s] += 1;
            }
            if degree.iter().all(|&d| d <= 3) {
                let edges = prufer_decode(n, &seq);
                let mut adj = vec![Vec::new(); n];
                for &(u, v) in &edges {
                    adj[u].push(v);
                    adj[v].push(u);
                }
                if seen.insert(tree_canonical(n, &adj)) {
                    out.push(
                        cubic_tree(n as u32, edges.iter().map(|&(u, v)| (u as u32, v as u32)))
                            .expect("Prüfer decode yields a tree"),
                    );
                }
            }
            // next sequence
            let mut i = seq.len();
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                seq[i] += 1;
                if seq[i] < n {
                    break;
                }
                seq[i] = 0;
            }
            if seq.iter().all(|&s| s == 0) {
                break;
            }
        }
    }
    out
}

fn prufer_decode(n: usize, seq: &[usize]) -> Vec<(usize, usize)> {
    let mut degree = vec![1usize; n];
    for &s in seq {
        degree[s] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    let mut leaves: BTreeSet<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    for &s in seq {
        let leaf = *leaves.iter().next().expect("a leaf exists");
        leaves.remove(&leaf);
        edges.push((leaf, s));
        degree[s] -= 1;
        if degree[s] == 1 {
            leaves.insert(s);
        }
    }
    let rest: Vec<usize> = leaves.into_iter().collect();
    edges.push((rest[0], rest[1]));
    edges
}

/// All graphs reachable from the cubic 4-cycle by at most `max_ops` build
/// operations, deduplicated by isomorphism level by level.
pub fn enumerate_build_graphs(max_ops: usize) -> Vec<CubicGraph> {
    let mut all: Vec<CubicGraph> = Vec::new();
    let mut level: Vec<CubicGraph> = vec![cubic_cycle(4).expect("C4")];
    all.extend(level.iter().cloned());
    for _ in 0..max_ops {
        let mut next: Vec<CubicGraph> = Vec::new();
        for g in &level {
            for e in 0..g.full_edge_count() as EdgeId {
                for result in [add_four_cycle(g, e), subdivide_with_half_edge(g, e)] {
                    let Ok(h) = result else { continue };
                    if !is_duplicate(&h, &next) {
                        next.push(h);
                    }
                }
            }
        }
        all.extend(next.iter().cloned());
        level = next;
    }
    all
}

fn is_duplicate(h: &CubicGraph, pool: &[CubicGraph]) -> bool {
    let enc_h = cubic_encoding(h);
    pool.iter().any(|g| {
        g.n() == h.n()
            && g.full_edge_count() == h.full_edge_count()
            && g.half_edge_count() == h.half_edge_count()
            && isomorphic(&cubic_encoding(g), &enc_h).is_some()
    })
}

// ---------------------------------------------------------------------------
// Family-spec grammar
// ---------------------------------------------------------------------------

/// Parsed CLI family descriptor: `theta:k,l,m`, `prism:n`, `tl:l,m,n`,
/// `cycle:n`, `path:n`, `tree:@file`, `hexchain:k`, `program:@file`,
/// `fusene:@file`, plus the named graphs `vertex`, `k2`, `k33`,
/// `dodecahedron`, `coxeter`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilySpec {
    Theta(u32, u32, u32),
    Prism(u32),
    ThetaLadder(u32, u32, u32),
    Cycle(u32),
    Path(u32),
    Tree(PathBuf),
    HexChain(u32),
    Program(PathBuf),
    Fusene(PathBuf),
    Vertex,
    K2,
    K33,
    Dodecahedron,
    Coxeter,
}

impl std::str::FromStr for FamilySpec {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, FamilyError> {
        let bad = |msg: &str| FamilyError::Parse(s.to_string(), msg.to_string());
        let (name, args) = match s.split_once(':') {
            Some((n, a)) => (n, Some(a)),
            None => (s, None),
        };
        let nums = |a: Option<&str>, want: usize| -> Result<Vec<u32>, FamilyError> {
            let a = a.ok_or_else(|| bad("missing parameters"))?;
            let parsed: Result<Vec<u32>, _> = a.split(',').map(|p| p.trim().parse()).collect();
            let v = parsed.map_err(|_| bad("parameters must be integers"))?;
            if v.len() != want {
                return Err(bad(&format!("expected {want} parameter(s)")));
            }
            Ok(v)
        };
        let file = |a: Option<&str>| -> Result<PathBuf, FamilyError> {
            let a = a.ok_or_else(|| bad("missing @file argument"))?;
            let a = a.strip_prefix('@').ok_or_else(|| bad("argument must be @file"))?;
            Ok(PathBuf::from(a))
        };
        match name {
            "theta" => nums(args, 3).map(|v| FamilySpec::Theta(v[0], v[1], v[2])),
            "prism" => nums(args, 1).map(|v| FamilySpec::Prism(v[0])),
            "tl" => nums(args, 3).map(|v| FamilySpec::ThetaLadder(v[0], v[1], v[2])),
            "cycle" => nums(args, 1).map(|v| FamilySpec::Cycle(v[0])),
            "path" => nums(args, 1).map(|v| FamilySpec::Path(v[0])),
            "hexchain" => nums(args, 1).map(|v| FamilySpec::HexChain(v[0])),
            "tree" => file(args).map(FamilySpec::Tree),
            "program" => file(args).map(FamilySpec::Program),
            "fusene" => file(args).map(FamilySpec::Fusene),
            "vertex" => Ok(FamilySpec::Vertex),
            "k2" => Ok(FamilySpec::K2),
            "k33" => Ok(FamilySpec::K33),
            "dodecahedron" => Ok(FamilySpec::Dodecahedron),
            "coxeter" => Ok(FamilySpec::Coxeter),
            _ => Err(bad("unknown family")),
        }
    }
}

impl FamilySpec {
    pub fn generate(&self, convention: LadderConvention) -> Result<CubicGraph, FamilyError> {
        match self {
            FamilySpec::Theta(k, l, m) => Ok(theta(*k, *l, *m)?),
            FamilySpec::Prism(n) => Ok(prism(*n)?),
            FamilySpec::ThetaLadder(l, m, n) => Ok(theta_ladder(*l, *m, *n, convention)?),
            FamilySpec::Cycle(n) => Ok(cubic_cycle(*n)?),
            FamilySpec::Path(n) => Ok(cubic_path(*n)?),
            FamilySpec::HexChain(k) => Ok(hexagonal_chain(*k)?),
            FamilySpec::Tree(path) => {
                let (n, edges) = read_edge_list(path)?;
                cubic_tree(n, edges)
            }
            FamilySpec::Program(path) => run_build_program(&read_program(path)?),
            FamilySpec::Fusene(path) => {
                let (n, edges) = read_edge_list(path)?;
                fusene_from_edges(n, edges)
            }
            FamilySpec::Vertex => Ok(cubic_vertex()),
            FamilySpec::K2 => Ok(cubic_k2()),
            FamilySpec::K33 => Ok(k33()),
            FamilySpec::Dodecahedron => Ok(dodecahedron()),
            FamilySpec::Coxeter => Ok(coxeter()),
        }
    }
}

/// Reads `u v` edge lines; `#` starts a comment. n is one past the largest
/// vertex mentioned.
pub fn read_edge_list(path: &Path) -> Result<(u32, Vec<(VertexId, VertexId)>), FamilyError> {
    let text = std::fs::read_to_string(path)?;
    let mut edges = Vec::new();
    let mut n = 0u32;
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace();
        let parse = |p: Option<&str>| -> Result<u32, FamilyError> {
            p.and_then(|p| p.parse().ok()).ok_or_else(|| {
                FamilyError::Parse(
                    path.display().to_string(),
                    format!("line {}: expected `u v`", lineno + 1),
                )
            })
        };
        let u = parse(parts.next())?;
        let v = parse(parts.next())?;
        n = n.max(u + 1).max(v + 1);
        edges.push((u, v));
    }
    Ok((n, edges))
}

/// Reads build program lines: `add4cycle <edge>` or `subdivide <edge>`.
pub fn read_program(path: &Path) -> Result<BuildProgram, FamilyError> {
    let text = std::fs::read_to_string(path)?;
    let mut ops = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: &str| {
            FamilyError::Parse(
                path.display().to_string(),
                format!("line {}: {msg}", lineno + 1),
            )
        };
        let mut parts = line.split_whitespace();
        let op = parts.next().ok_or_else(|| err("empty step"))?;
        let edge: EdgeId = parts
            .next()
            .and_then(|p| p.parse().ok())
            .ok_or_else(|| err("expected an edge id"))?;
        ops.push(match op {
            "add4cycle" => BuildOp::AddFourCycle(edge),
            "subdivide" => BuildOp::Subdivide(edge),
            other => return Err(err(&format!("unknown op `{other}`"))),
        });
    }
    Ok(BuildProgram { ops })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::cubic_isomorphic;

    #[test]
    fn base_family_shapes() {
        let c4 = cubic_cycle(4).unwrap();
        assert_eq!((c4.full_edge_count(), c4.half_edge_count()), (4, 4));
        assert_eq!(cubic_path(1).unwrap().n(), 1);
        let star = cubic_tree(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!((star.full_edge_count(), star.half_edge_count()), (3, 6));
        assert!(cubic_path(0).is_err());
        assert!(cubic_cycle(2).is_err());
        assert!(cubic_tree(4, [(0, 1), (1, 2), (0, 2)]).is_err());
    }

    #[test]
    fn add_four_cycle_on_k2_gives_c4() {
        let g = add_four_cycle(&cubic_k2(), 0).unwrap();
        assert!(g.is_valid());
        assert!(cubic_isomorphic(&g, &cubic_cycle(4).unwrap()));
    }

    #[test]
    fn add_four_cycle_on_c4() {
        let g = add_four_cycle(&cubic_cycle(4).unwrap(), 0).unwrap();
        assert_eq!(g.n(), 6);
        assert!(g.is_valid());
        assert!(g.is_triangle_free());
        assert!(g.cutedges().is_empty());
    }

    #[test]
    fn add_four_cycle_needs_half_edges() {
        // prism vertices carry no half-edges
        let p = prism(4).unwrap();
        assert!(matches!(
            add_four_cycle(&p, 0),
            Err(GraphError::NoHalfEdgeAt(_))
        ));
    }

    #[test]
    fn subdivision_examples() {
        let g = subdivide_with_half_edge(&cubic_cycle(4).unwrap(), 0).unwrap();
        assert_eq!(g.n(), 5);
        assert!(g.is_valid());
        assert!(cubic_isomorphic(&g, &cubic_cycle(5).unwrap()));
        assert!(matches!(
            subdivide_with_half_edge(&prism(4).unwrap(), 0),
            Err(GraphError::NoHalfEdgeAt(_))
        ));
    }

    #[test]
    fn build_program_examples() {
        let empty = run_build_program(&BuildProgram::default()).unwrap();
        assert!(cubic_isomorphic(&empty, &cubic_cycle(4).unwrap()));
        // repeated subdivision of fresh edges grows cycles
        let mut g = cubic_cycle(4).unwrap();
        for _ in 0..3 {
            g = subdivide_with_half_edge(&g, 0).unwrap();
        }
        assert!(cubic_isomorphic(&g, &cubic_cycle(7).unwrap()));
    }

    #[test]
    fn theta_shapes() {
        let t = theta(2, 2, 2).unwrap();
        assert_eq!(t.n(), 5);
        assert_eq!((t.full_edge_count(), t.half_edge_count()), (6, 3));
        assert!(t.is_valid());
        assert!(!theta(1, 2, 3).unwrap().is_triangle_free());
        assert!(theta(1, 1, 4).unwrap().has_multi_edge());
        assert!(theta(1, 1, 4).unwrap().is_valid());
        // triple edge is still valid
        assert!(theta(1, 1, 1).unwrap().is_valid());
    }

    #[test]
    fn theta_parameter_permutations_are_isomorphic() {
        for (k, l, m) in [(1, 2, 3), (2, 3, 4), (1, 1, 2)] {
            let base = theta_paths(k, l, m).unwrap();
            for (a, b, c) in [(l, k, m), (k, m, l), (m, l, k), (l, m, k), (m, k, l)] {
                assert!(cubic_isomorphic(&base, &theta_paths(a, b, c).unwrap()));
            }
        }
    }

    #[test]
    fn prism_shapes() {
        let p4 = prism(4).unwrap();
        assert_eq!((p4.n(), p4.full_edge_count()), (8, 12));
        assert!(p4.is_triangle_free());
        assert!(!prism(3).unwrap().is_triangle_free());
        assert!(prism(2).is_err());
    }

    #[test]
    fn theta_ladder_squares_convention() {
        let tl111 = theta_ladder(1, 1, 1, LadderConvention::Squares).unwrap();
        assert_eq!(tl111.n(), 12);
        assert!(cubic_isomorphic(&tl111, &prism(6).unwrap()));
        let tl333 = theta_ladder(3, 3, 3, LadderConvention::Squares).unwrap();
        assert_eq!(tl333.n(), 24);
        assert!(tl333.is_valid());
        assert_eq!(tl333.half_edge_count(), 0);
        // rungs convention shifts each parameter by one square
        let r = theta_ladder(1, 1, 1, LadderConvention::Rungs).unwrap();
        let s = theta_ladder(2, 2, 2, LadderConvention::Squares).unwrap();
        assert!(cubic_isomorphic(&r, &s));
    }

    #[test]
    fn hexagonal_chains() {
        let one = hexagonal_chain(1).unwrap();
        assert!(cubic_isomorphic(&one, &cubic_cycle(6).unwrap()));
        let two = hexagonal_chain(2).unwrap();
        assert_eq!(two.n(), 10);
        assert!(two.is_valid());
    }

    #[test]
    fn fusene_sanity_checks() {
        // C6 passes
        assert!(fusene_from_edges(6, (0..6).map(|i| (i, (i + 1) % 6))).is_ok());
        // C4: girth too small
        assert!(matches!(
            fusene_from_edges(4, (0..4).map(|i| (i, (i + 1) % 4))),
            Err(FamilyError::Fusene(_))
        ));
        // C5: odd cycle
        assert!(matches!(
            fusene_from_edges(5, (0..5).map(|i| (i, (i + 1) % 5))),
            Err(FamilyError::Fusene(_))
        ));
    }

    #[test]
    fn named_graphs_are_valid() {
        for g in [k33(), dodecahedron(), coxeter()] {
            assert!(g.is_valid());
            assert_eq!(g.half_edge_count(), 0);
        }
        assert_eq!(coxeter().n(), 28);
        assert_eq!(coxeter().full_edge_count(), 42);
        let enc = crate::iso::cubic_encoding(&coxeter());
        // Coxeter girth is 7; in the subdivision encoding that doubles
        assert_eq!(girth(&SimpleGraph::new(
            coxeter().n(),
            coxeter().full_edges().iter().copied()
        ).unwrap()), Some(7));
        assert_eq!(enc.n(), 28 + 42);
    }

    #[test]
    fn tree_enumeration_counts() {
        // free trees with max degree 3: 1, 1, 1, 2, 2, 4, 6, 11 for n = 1..=8
        let counts: Vec<usize> = (1..=8)
            .map(|n| {
                all_cubic_trees(n)
                    .iter()
                    .filter(|t| t.n() == n)
                    .count()
            })
            .collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 2, 4, 6, 11]);
    }

    #[test]
    fn build_graph_enumeration_is_duplicate_free() {
        let graphs = enumerate_build_graphs(2);
        for g in &graphs {
            assert!(g.is_valid());
            assert!(g.is_triangle_free());
            assert!(g.cutedges().is_empty());
        }
        for (i, g) in graphs.iter().enumerate() {
            for h in &graphs[i + 1..] {
                if g.n() == h.n()
                    && g.full_edge_count() == h.full_edge_count()
                    && g.half_edge_count() == h.half_edge_count()
                {
                    assert!(!cubic_isomorphic(g, h), "duplicate at sizes n={}", g.n());
                }
            }
        }
    }

    #[test]
    fn family_spec_parsing() {
        assert_eq!(
            "theta:2,2,5".parse::<FamilySpec>().unwrap(),
            FamilySpec::Theta(2, 2, 5)
        );
        assert_eq!("prism:4".parse::<FamilySpec>().unwrap(), FamilySpec::Prism(4));
        assert_eq!(
            "tree:@t.txt".parse::<FamilySpec>().unwrap(),
            FamilySpec::Tree(PathBuf::from("t.txt"))
        );
        assert!("theta:2,2".parse::<FamilySpec>().is_err());
        assert!("nope:1".parse::<FamilySpec>().is_err());
        let g = "theta:2,2,5"
            .parse::<FamilySpec>()
            .unwrap()
            .generate(LadderConvention::Squares)
            .unwrap();
        assert_eq!(g.n(), 8);
    }

    #[test]
    fn cut_and_reglue_is_isomorphic() {
        // cut a tree edge and re-glue by identifying the labeled half-edges
        let tree = cubic_tree(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        for e in tree.cutedges() {
            let cut = tree.cut_edge(e).unwrap();
            // re-glue: join the two half-edge endpoints with a full edge
            let (ha, _) = cut.h.endpoints(cut.h_half).unwrap();
            let (ka, _) = cut.k.endpoints(cut.k_half).unwrap();
            let shift = cut.h.n();
            let full = cut
                .h
                .full_edges()
                .iter()
                .copied()
                .chain(
                    cut.k
                        .full_edges()
                        .iter()
                        .map(|&(u, v)| (u + shift, v + shift)),
                )
                .chain([(ha, ka + shift)]);
            let half = cut
                .h
                .half_edges()
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != (cut.h_half as usize - cut.h.full_edge_count()))
                .map(|(_, &v)| v)
                .chain(
                    cut.k
                        .half_edges()
                        .iter()
                        .enumerate()
                        .filter(|&(i, _)| i != (cut.k_half as usize - cut.k.full_edge_count()))
                        .map(|(_, &v)| v + shift),
                );
            let glued = CubicGraph::from_parts(cut.h.n() + cut.k.n(), full, half);
            assert!(glued.is_valid());
            assert!(cubic_isomorphic(&glued, &tree));
        }
    }
}
