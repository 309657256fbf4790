//! Coloring complexes B(X) and B²(X), the canonical homomorphism, and the
//! structural checks built on them.

use crate::coloring::{enumerate_vertex_colorings, VertexColoring};
use crate::graph::{CubicGraph, SimpleGraph, VertexId};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

/// The 3-coloring complex of a graph X: one vertex per distinct color class,
/// adjacency between classes that appear together in a coloring, and the list
/// of colorings as class-index tuples.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringComplex {
    /// Distinct nonempty color classes, canonically sorted and duplicate-free.
    pub classes: Vec<Vec<VertexId>>,
    /// Adjacency graph on class indices.
    pub adjacency: SimpleGraph,
    /// One entry per 3-coloring of X: the sorted indices of its nonempty
    /// classes (two entries instead of three when a coloring had an empty part).
    pub colorings: Vec<Vec<u32>>,
    /// Set when some coloring of X had an empty part; such a coloring
    /// contributes an edge but no triangle.
    pub had_empty_class: bool,
}

/// The canonical map: each vertex of X goes to the sorted set of class
/// indices containing it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalMap {
    pub image: Vec<Vec<u32>>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("B(X) is empty: X has no 3-coloring with at least two nonempty classes")]
    EmptyComplex,
    #[error("X has an isolated vertex ({0}); the homomorphism claim does not apply")]
    IsolatedVertex(VertexId),
}

/// Builds B(X) over `enumerate_vertex_colorings(x)`, excluding empty classes
/// as vertices. Deterministic: classes are sorted lexicographically.
pub fn build_complex(x: &SimpleGraph) -> ColoringComplex {
    let cols = enumerate_vertex_colorings(x);
    build_complex_from_colorings(&cols)
}

/// Same construction from an already-enumerated coloring set.
pub fn build_complex_from_colorings(cols: &[VertexColoring]) -> ColoringComplex {
    let mut class_set: BTreeSet<Vec<VertexId>> = BTreeSet::new();
    let mut had_empty_class = false;
    for c in cols {
        for class in &c.classes {
            if class.is_empty() {
                had_empty_class = true;
            } else {
                class_set.insert(class.clone());
            }
        }
    }
    let classes: Vec<Vec<VertexId>> = class_set.into_iter().collect();
    let index: BTreeMap<&Vec<VertexId>, u32> = classes
        .iter()
        .enumerate()
        .map(|(i, c)| (c, i as u32))
        .collect();
    let mut edges = BTreeSet::new();
    let mut colorings = Vec::with_capacity(cols.len());
    for c in cols {
        let mut idx: Vec<u32> = c
            .classes
            .iter()
            .filter(|cl| !cl.is_empty())
            .map(|cl| index[cl])
            .collect();
        idx.sort_unstable();
        for i in 0..idx.len() {
            for j in i + 1..idx.len() {
                edges.insert((idx[i], idx[j]));
            }
        }
        colorings.push(idx);
    }
    colorings.sort_unstable();
    let adjacency =
        SimpleGraph::new(classes.len() as u32, edges).expect("complex adjacency is simple");
    ColoringComplex {
        classes,
        adjacency,
        colorings,
        had_empty_class,
    }
}

/// The 3-edge-coloring complex of a cubic graph: B(L(g)). Classes are edge
/// sets of g.
pub fn build_edge_complex(g: &CubicGraph) -> ColoringComplex {
    build_complex(&g.line_graph())
}

/// Computes the canonical map for `b = build_complex(x)` and verifies the
/// homomorphism property. An isolated vertex makes the map ill-defined as a
/// homomorphism witness and is reported as an error.
pub fn canonical_map(x: &SimpleGraph, b: &ColoringComplex) -> Result<CanonicalMap, ComplexError> {
    let map = canonical_map_unchecked(x, b);
    for v in 0..x.n() {
        if x.degree(v) == 0 {
            return Err(ComplexError::IsolatedVertex(v));
        }
    }
    Ok(map)
}

/// The image sets without the isolated-vertex guard.
pub fn canonical_map_unchecked(x: &SimpleGraph, b: &ColoringComplex) -> CanonicalMap {
    let mut image = vec![Vec::new(); x.n() as usize];
    for (i, class) in b.classes.iter().enumerate() {
        for &v in class {
            image[v as usize].push(i as u32);
        }
    }
    CanonicalMap { image }
}

/// Verifies that the canonical map preserves adjacency into B²: for every
/// edge uv of X, some class of B² separates... concretely, that
/// `phi(u)` and `phi(v)` are adjacent in B²(X).
pub fn is_homomorphism(x: &SimpleGraph, phi: &CanonicalMap, b2: &ColoringComplex) -> bool {
    let index: BTreeMap<&Vec<u32>, u32> = b2
        .classes
        .iter()
        .enumerate()
        .map(|(i, c)| (c, i as u32))
        .collect();
    for &(u, v) in x.edges() {
        let (Some(&iu), Some(&iv)) = (
            index.get(&phi.image[u as usize]),
            index.get(&phi.image[v as usize]),
        ) else {
            return false;
        };
        if !b2.adjacency.has_edge(iu, iv) {
            return false;
        }
    }
    true
}

/// Violation found by [`check_triangle_lemma`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TriangleLemmaViolation {
    /// A triangle of the adjacency graph that is not a coloring triple.
    ExtraTriangle([u32; 3]),
    /// A coloring triple missing from the adjacency triangles.
    MissingTriangle(Vec<u32>),
    /// An adjacency edge contained in a number of triples other than one.
    EdgeMultiplicity { edge: (u32, u32), count: usize },
}

/// Checks that every triangle of B(X)'s adjacency graph is one of the
/// coloring triples and that each edge lies in exactly one triple. Valid when
/// the underlying X is 3-chromatic without isolated vertices.
pub fn check_triangle_lemma(b: &ColoringComplex) -> Result<(), TriangleLemmaViolation> {
    let triangles: BTreeSet<Vec<u32>> = b
        .adjacency
        .triangles()
        .into_iter()
        .map(|t| t.to_vec())
        .collect();
    let triples: BTreeSet<Vec<u32>> = b
        .colorings
        .iter()
        .filter(|c| c.len() == 3)
        .cloned()
        .collect();
    if let Some(t) = triangles.difference(&triples).next() {
        return Err(TriangleLemmaViolation::ExtraTriangle([t[0], t[1], t[2]]));
    }
    if let Some(t) = triples.difference(&triangles).next() {
        return Err(TriangleLemmaViolation::MissingTriangle(t.clone()));
    }
    let mut edge_count: BTreeMap<(u32, u32), usize> = BTreeMap::new();
    for t in &triples {
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            *edge_count.entry((t[i], t[j])).or_insert(0) += 1;
        }
    }
    for &(u, v) in b.adjacency.edges() {
        let count = edge_count.get(&(u, v)).copied().unwrap_or(0);
        if count != 1 {
            return Err(TriangleLemmaViolation::EdgeMultiplicity { edge: (u, v), count });
        }
    }
    Ok(())
}

/// Builds B(X) and B²(X) = B(B(X)).
pub fn b_squared(x: &SimpleGraph) -> Result<(ColoringComplex, ColoringComplex), ComplexError> {
    let b = build_complex(x);
    if b.classes.is_empty() {
        return Err(ComplexError::EmptyComplex);
    }
    let b2 = build_complex(&b.adjacency);
    Ok((b, b2))
}

/// Which reflexivity condition failed, if any.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ReflexiveDiagnosis {
    Ok,
    /// X has no usable 3-coloring, so B(X) is empty.
    EmptyComplex,
    /// Two vertices with identical images (X is not colorful).
    NotInjective(VertexId, VertexId),
    /// phi(v) is not a vertex of B² at all.
    ImageNotAClass(VertexId),
    /// A class of B² hit by no vertex of X.
    NotSurjective(u32),
    /// uv is an edge of X but the images are non-adjacent in B².
    EdgeLost(VertexId, VertexId),
    /// uv is a non-edge of X but the images are adjacent in B².
    NonEdgeGained(VertexId, VertexId),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReflexiveOutcome {
    pub reflexive: bool,
    pub diagnosis: ReflexiveDiagnosis,
}

/// Decides whether the canonical map X -> B²(X) is an isomorphism, with a
/// diagnosis of the first failed condition.
pub fn is_reflexive(x: &SimpleGraph) -> ReflexiveOutcome {
    let (b, b2) = match b_squared(x) {
        Ok(pair) => pair,
        Err(_) => {
            return ReflexiveOutcome {
                reflexive: false,
                diagnosis: ReflexiveDiagnosis::EmptyComplex,
            }
        }
    };
    let phi = canonical_map_unchecked(x, &b);
    reflexive_against(x, &phi, &b2)
}

/// The isomorphism check given precomputed phi and B².
pub fn reflexive_against(
    x: &SimpleGraph,
    phi: &CanonicalMap,
    b2: &ColoringComplex,
) -> ReflexiveOutcome {
    let fail = |d| ReflexiveOutcome {
        reflexive: false,
        diagnosis: d,
    };
    // injectivity
    let mut seen: BTreeMap<&Vec<u32>, VertexId> = BTreeMap::new();
    for v in 0..x.n() {
        if let Some(&u) = seen.get(&phi.image[v as usize]) {
            return fail(ReflexiveDiagnosis::NotInjective(u, v));
        }
        seen.insert(&phi.image[v as usize], v);
    }
    // image must consist of B² classes, surjectively
    let index: BTreeMap<&Vec<u32>, u32> = b2
        .classes
        .iter()
        .enumerate()
        .map(|(i, c)| (c, i as u32))
        .collect();
    let mut mapped = vec![u32::MAX; x.n() as usize];
    let mut hit = vec![false; b2.classes.len()];
    for v in 0..x.n() {
        match index.get(&phi.image[v as usize]) {
            Some(&i) => {
                mapped[v as usize] = i;
                hit[i as usize] = true;
            }
            None => return fail(ReflexiveDiagnosis::ImageNotAClass(v)),
        }
    }
    if let Some(i) = hit.iter().position(|&h| !h) {
        return fail(ReflexiveDiagnosis::NotSurjective(i as u32));
    }
    // adjacency both ways
    for u in 0..x.n() {
        for v in u + 1..x.n() {
            let xe = x.has_edge(u, v);
            let be = b2.adjacency.has_edge(mapped[u as usize], mapped[v as usize]);
            if xe && !be {
                return fail(ReflexiveDiagnosis::EdgeLost(u, v));
            }
            if !xe && be {
                return fail(ReflexiveDiagnosis::NonEdgeGained(u, v));
            }
        }
    }
    ReflexiveOutcome {
        reflexive: true,
        diagnosis: ReflexiveDiagnosis::Ok,
    }
}
