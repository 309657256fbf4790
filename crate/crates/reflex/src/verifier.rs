//! Top-level decision procedures: the edge-reflexivity verdict with its
//! cross-checked criteria, the necessary-condition audit, block
//! decomposition, and the reproduction tables.

use crate::coloring::{
    colorful_from_colorings, enumerate_edge_colorings, enumerate_vertex_colorings,
};
use crate::complex::{
    build_complex, build_complex_from_colorings, canonical_map_unchecked, reflexive_against,
    ColoringComplex,
};
use crate::families::{self, FamilyError, LadderConvention};
use crate::formats::graph_hash;
use crate::graph::{CubicGraph, EdgeId};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::time::Instant;

/// Which checks to run: `Fast` decides via Lemma-style counting
/// (colorful and |colorings of B| = n); `Full` additionally builds B² and
/// verifies that the canonical map is an isomorphism.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Mode {
    Fast,
    Full,
}

impl std::str::FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "fast" => Ok(Mode::Fast),
            "full" => Ok(Mode::Full),
            other => Err(format!("unknown mode `{other}`")),
        }
    }
}

/// Agreement among the three equivalent reflexivity criteria: the coloring
/// count of B, the "every B-coloring is a vertex star" form, and (full mode
/// only) the isomorphism X ≅ B². They must never disagree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossCheck {
    pub count_criterion: bool,
    pub star_criterion: bool,
    pub iso_criterion: Option<bool>,
    pub agree: bool,
}

/// Per-edge necessary-condition results on a reflexive candidate: in
/// B(L(g)) − φ(e), bipartiteness, component count t, and the degree law
/// d = 2^t where d is the degree of e in L(g); the component law expects 1
/// component for a half-edge and 2 for a full edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeCondition {
    pub edge: EdgeId,
    pub is_half: bool,
    pub degree_in_line_graph: usize,
    pub bipartite: bool,
    pub components: usize,
    pub degree_law: bool,
    pub component_law: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub per_edge: Vec<EdgeCondition>,
    pub all_hold: bool,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub enumerate_ms: f64,
    pub complex_ms: f64,
    pub b_colorings_ms: f64,
    pub full_check_ms: f64,
}

/// The full verdict for one graph. Field names are the stable JSON schema.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReflexivityReport {
    pub graph_hash: String,
    pub n: u32,
    pub full_edge_count: usize,
    pub half_edge_count: usize,
    pub has_multi_edge: bool,
    pub colorable: bool,
    pub coloring_count: usize,
    pub class_count: usize,
    pub b_component_count: usize,
    pub colorful: bool,
    pub colorful_witness: Option<(EdgeId, EdgeId)>,
    pub b_coloring_count: usize,
    pub reflexive: bool,
    pub reason: Option<String>,
    pub cross_check: CrossCheck,
    pub necessary_conditions: Option<ConditionReport>,
    pub timings_ms: Timings,
}

fn ms(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1e3
}

/// Decides edge-reflexivity of a cubic graph. The verdict of record is the
/// fast counting criterion; full mode cross-validates with the φ-isomorphism
/// check and the necessary-condition audit, and the report records every
/// agreement flag.
pub fn verify_edge_reflexive(g: &CubicGraph, mode: Mode) -> ReflexivityReport {
    let t0 = Instant::now();
    let colorings = enumerate_edge_colorings(g);
    let enumerate_ms = ms(t0);

    let t1 = Instant::now();
    let vertex_cols: Vec<_> = colorings
        .iter()
        .map(|c| crate::coloring::VertexColoring {
            classes: c.classes.clone(),
        })
        .collect();
    let b = build_complex_from_colorings(&vertex_cols);
    let b_component_count = b.adjacency.components().len();
    let complex_ms = ms(t1);

    let colorable = !colorings.is_empty();
    let colorful_result = colorful_from_colorings(g, &colorings);

    let t2 = Instant::now();
    let b_cols = enumerate_vertex_colorings(&b.adjacency);
    let b_coloring_count = b_cols.len();
    let b_colorings_ms = ms(t2);

    let count_criterion = colorable && b_coloring_count == g.n() as usize;
    let star_criterion = colorable && star_criterion_holds(g, &b, &b_cols);

    let t3 = Instant::now();
    let iso_criterion = match mode {
        Mode::Fast => None,
        Mode::Full => Some(iso_criterion_holds(&g.line_graph(), &b)),
    };
    let full_check_ms = ms(t3);

    let reflexive = colorable && colorful_result.colorful && count_criterion;
    let agree = {
        let mut flags = vec![count_criterion];
        // The three-way equivalence is only claimed for edge-colorful graphs,
        // and its counting form presumes distinct vertex stars — a parallel
        // pair gives two vertices the same star, so for multi-edge graphs
        // the criteria may legitimately differ (e.g. the triple edge, where
        // L(g) = K3 satisfies the isomorphism form but not the count). The
        // verdict of record is always the counting criterion.
        if colorable && colorful_result.colorful && !g.has_multi_edge() {
            flags.push(star_criterion);
            if let Some(iso) = iso_criterion {
                flags.push(iso);
            }
        }
        flags.iter().all(|&f| f == flags[0])
    };

    let necessary_conditions = match mode {
        Mode::Full if colorable => {
            let report = audit_necessary_conditions(g);
            Some(report)
        }
        _ => None,
    };
    // a reflexive verdict violating a necessary condition is an internal error
    let internally_consistent = necessary_conditions
        .as_ref()
        .map_or(true, |nc| !reflexive || nc.all_hold);

    let reason = if reflexive && agree && internally_consistent {
        None
    } else if !colorable {
        Some("not 3-edge-colorable".to_string())
    } else if !colorful_result.colorful {
        Some(format!(
            "not edge-colorful (witness {:?})",
            colorful_result.witness
        ))
    } else if !count_criterion {
        Some(format!(
            "B has {} colorings, expected n = {}",
            b_coloring_count,
            g.n()
        ))
    } else if !agree {
        Some("internal error: reflexivity criteria disagree".to_string())
    } else {
        Some("internal error: necessary condition fails on reflexive verdict".to_string())
    };

    ReflexivityReport {
        graph_hash: graph_hash(g),
        n: g.n(),
        full_edge_count: g.full_edge_count(),
        half_edge_count: g.half_edge_count(),
        has_multi_edge: g.has_multi_edge(),
        colorable,
        coloring_count: colorings.len(),
        class_count: b.classes.len(),
        b_component_count,
        colorful: colorful_result.colorful,
        colorful_witness: colorful_result.witness,
        b_coloring_count,
        reflexive,
        reason,
        cross_check: CrossCheck {
            count_criterion,
            star_criterion,
            iso_criterion,
            agree,
        },
        necessary_conditions,
        timings_ms: Timings {
            enumerate_ms,
            complex_ms,
            b_colorings_ms,
            full_check_ms,
        },
    }
}

/// Criterion (every-coloring-is-a-star): each 3-coloring of B must have as
/// its classes exactly {φ(e), φ(f), φ(h)} for the three edges at some vertex.
fn star_criterion_holds(
    g: &CubicGraph,
    b: &ColoringComplex,
    b_cols: &[crate::coloring::VertexColoring],
) -> bool {
    let phi = phi_images(g, b);
    let mut stars: BTreeSet<[Vec<u32>; 3]> = BTreeSet::new();
    for v in 0..g.n() {
        let at = g.edges_at(v);
        debug_assert_eq!(at.len(), 3);
        let mut classes = [
            phi[at[0] as usize].clone(),
            phi[at[1] as usize].clone(),
            phi[at[2] as usize].clone(),
        ];
        classes.sort();
        stars.insert(classes);
    }
    b_cols.iter().all(|c| {
        let mut classes = c.classes.clone();
        classes.sort();
        stars.contains(&classes)
    })
}

/// φ image of each edge of g: the sorted indices of B-classes containing it.
fn phi_images(g: &CubicGraph, b: &ColoringComplex) -> Vec<Vec<u32>> {
    let mut image = vec![Vec::new(); g.edge_count()];
    for (i, class) in b.classes.iter().enumerate() {
        for &e in class {
            image[e as usize].push(i as u32);
        }
    }
    image
}

/// Criterion (isomorphism): φ: X → B²(X) is an isomorphism, for X = L(g) and
/// B already built over X's colorings.
fn iso_criterion_holds(x: &crate::graph::SimpleGraph, b: &ColoringComplex) -> bool {
    if b.classes.is_empty() {
        return false;
    }
    let b2 = build_complex(&b.adjacency);
    let phi = canonical_map_unchecked(x, b);
    reflexive_against(x, &phi, &b2).reflexive
}

/// Audits the necessary conditions for reflexivity edge by edge. Requires g
/// to be 3-edge-colorable; on an uncolorable graph the report is empty with
/// `all_hold = false`.
pub fn audit_necessary_conditions(g: &CubicGraph) -> ConditionReport {
    let lg = g.line_graph();
    let b = crate::complex::build_edge_complex(g);
    if b.classes.is_empty() {
        return ConditionReport {
            per_edge: Vec::new(),
            all_hold: false,
        };
    }
    let phi = phi_images(g, &b);
    let per_edge: Vec<EdgeCondition> = (0..g.edge_count() as EdgeId)
        .map(|e| {
            let remove: BTreeSet<u32> = phi[e as usize].iter().copied().collect();
            let reduced = b.adjacency.delete_vertices(&remove);
            let info = reduced.bipartite_info();
            let is_half = g.is_half_edge(e);
            let d = lg.degree(e);
            let expected_components = if is_half { 1 } else { 2 };
            EdgeCondition {
                edge: e,
                is_half,
                degree_in_line_graph: d,
                bipartite: info.bipartite,
                components: info.components,
                degree_law: info.bipartite && d == 1usize << info.components.min(62),
                component_law: info.bipartite && info.components == expected_components,
            }
        })
        .collect();
    let all_hold = per_edge.iter().all(|c| c.degree_law && c.component_law);
    ConditionReport { per_edge, all_hold }
}

/// Block decomposition verdict: cut all cutedges, verify each block, and
/// combine. A positive combined verdict is sufficient for reflexivity of the
/// whole; a negative block verdict proves nothing about the whole.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlockReport {
    pub cutedges: Vec<EdgeId>,
    pub blocks: Vec<ReflexivityReport>,
    pub all_blocks_reflexive: bool,
    /// True: the positive direction is the only implication recorded.
    pub sufficient_only: bool,
}

pub fn verify_via_blocks(g: &CubicGraph, mode: Mode) -> BlockReport {
    let cutedges = g.cutedges();
    let mut blocks_graphs = Vec::new();
    split_blocks(g.clone(), &mut blocks_graphs);
    let blocks: Vec<ReflexivityReport> = blocks_graphs
        .iter()
        .map(|b| verify_edge_reflexive(b, mode))
        .collect();
    let all_blocks_reflexive = blocks.iter().all(|r| r.reflexive);
    BlockReport {
        cutedges,
        blocks,
        all_blocks_reflexive,
        sufficient_only: true,
    }
}

fn split_blocks(g: CubicGraph, out: &mut Vec<CubicGraph>) {
    match g.cutedges().first() {
        Some(&e) => {
            let cut = g.cut_edge(e).expect("cutedges() returned a cutedge");
            split_blocks(cut.h, out);
            split_blocks(cut.k, out);
        }
        None => out.push(g),
    }
}

// ---------------------------------------------------------------------------
// Reproduction tables
// ---------------------------------------------------------------------------

/// One row of a reproduction table: the family, the published expectation,
/// what the verifier observed, and whether they match.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpectationRow {
    pub name: String,
    pub expected: String,
    pub observed: String,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReproduceResult {
    pub table: String,
    pub rows: Vec<ExpectationRow>,
    pub all_pass: bool,
}

/// What one table row asserts about its graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Expect {
    Reflexive,
    NotReflexive,
    NotColorful,
    NotColorable,
    /// Reflexive and B has exactly this many colorings.
    ReflexiveWithBCount(usize),
    /// B has exactly this many components.
    BComponents(usize),
    /// Exactly this many 3-edge-colorings.
    Colorings(usize),
}

fn describe(e: Expect) -> String {
    match e {
        Expect::Reflexive => "reflexive".into(),
        Expect::NotReflexive => "not reflexive".into(),
        Expect::NotColorful => "not edge-colorful".into(),
        Expect::NotColorable => "not 3-edge-colorable".into(),
        Expect::ReflexiveWithBCount(k) => format!("reflexive, |colorings of B| = {k}"),
        Expect::BComponents(k) => format!("B has {k} components"),
        Expect::Colorings(k) => format!("{k} edge-colorings"),
    }
}

fn check_row(name: &str, g: &CubicGraph, expect: Expect, mode: Mode) -> ExpectationRow {
    let r = verify_edge_reflexive(g, mode);
    let (observed, pass) = match expect {
        Expect::Reflexive => (verdict_string(&r), r.reflexive),
        Expect::NotReflexive => (verdict_string(&r), !r.reflexive),
        Expect::NotColorful => (verdict_string(&r), r.colorable && !r.colorful),
        Expect::NotColorable => (verdict_string(&r), !r.colorable),
        Expect::ReflexiveWithBCount(k) => (
            format!("{}, |colorings of B| = {}", verdict_string(&r), r.b_coloring_count),
            r.reflexive && r.b_coloring_count == k,
        ),
        Expect::BComponents(k) => (
            format!("B has {} components", r.b_component_count),
            r.b_component_count == k,
        ),
        Expect::Colorings(k) => (
            format!("{} edge-colorings", r.coloring_count),
            r.coloring_count == k,
        ),
    };
    ExpectationRow {
        name: name.to_string(),
        expected: describe(expect),
        observed,
        pass,
    }
}

fn verdict_string(r: &ReflexivityReport) -> String {
    if !r.colorable {
        "not 3-edge-colorable".into()
    } else if !r.colorful {
        "not edge-colorful".into()
    } else if r.reflexive {
        "reflexive".into()
    } else {
        "not reflexive".into()
    }
}

type RowSpec = (String, CubicGraph, Expect);

/// Runs one reproduction table. Rows are verified in parallel but reported in
/// declaration order.
pub fn reproduce(
    table: &str,
    convention: LadderConvention,
    mode: Mode,
) -> Result<ReproduceResult, FamilyError> {
    let specs: Vec<RowSpec> = match table {
        "theta" => theta_rows()?,
        "prisms" => prism_rows()?,
        "theta-ladders" => ladder_rows(convention)?,
        "base-cases" => base_case_rows()?,
        "k33-subdivisions" => k33_rows()?,
        "fusenes" => fusene_rows()?,
        "stretch" => stretch_rows()?,
        other => {
            return Err(FamilyError::Parse(
                other.to_string(),
                "unknown table (expected theta|prisms|theta-ladders|base-cases|k33-subdivisions|fusenes|stretch)"
                    .to_string(),
            ))
        }
    };
    let mut rows: Vec<ExpectationRow> = specs
        .par_iter()
        .map(|(name, g, expect)| check_row(name, g, *expect, mode))
        .collect();
    // stretch carries two extra structural rows that are not plain verdicts
    if table == "stretch" {
        rows.push(coxeter_component_row());
    }
    if table == "k33-subdivisions" {
        rows.insert(1, two_triangles_row());
    }
    let all_pass = rows.iter().all(|r| r.pass);
    Ok(ReproduceResult {
        table: table.to_string(),
        rows,
        all_pass,
    })
}

fn theta_rows() -> Result<Vec<RowSpec>, FamilyError> {
    let mut rows = Vec::new();
    for (k, l, m) in [(2, 2, 2), (2, 2, 3), (2, 2, 4), (2, 3, 3), (2, 3, 4), (3, 3, 3)] {
        rows.push((
            format!("theta({k},{l},{m})"),
            families::theta(k, l, m)?,
            Expect::NotReflexive,
        ));
    }
    for m in 2..=5 {
        // contains a triangle, hence not colorful, hence not reflexive
        rows.push((
            format!("theta(1,2,{m})"),
            families::theta(1, 2, m)?,
            Expect::NotReflexive,
        ));
    }
    for m in 1..=5 {
        rows.push((
            format!("theta(1,1,{m})"),
            families::theta(1, 1, m)?,
            Expect::NotReflexive,
        ));
    }
    for (k, l, m) in [(1, 3, 3), (2, 2, 5), (2, 3, 5), (2, 4, 4), (3, 3, 4)] {
        rows.push((
            format!("theta({k},{l},{m})"),
            families::theta(k, l, m)?,
            Expect::Reflexive,
        ));
    }
    Ok(rows)
}

fn prism_rows() -> Result<Vec<RowSpec>, FamilyError> {
    Ok(vec![
        ("prism(3)".into(), families::prism(3)?, Expect::NotColorful),
        (
            "prism(4)".into(),
            families::prism(4)?,
            Expect::ReflexiveWithBCount(8),
        ),
        ("prism(5)".into(), families::prism(5)?, Expect::NotColorful),
        (
            "prism(6)".into(),
            families::prism(6)?,
            Expect::ReflexiveWithBCount(12),
        ),
    ])
}

fn ladder_rows(convention: LadderConvention) -> Result<Vec<RowSpec>, FamilyError> {
    let mut rows = Vec::new();
    for (l, m, n, expect) in [
        (1, 1, 1, Expect::Reflexive),
        (1, 3, 3, Expect::Reflexive),
        (3, 3, 3, Expect::Reflexive),
        (1, 1, 3, Expect::NotReflexive),
    ] {
        rows.push((
            format!("tl({l},{m},{n})"),
            families::theta_ladder(l, m, n, convention)?,
            expect,
        ));
    }
    // exactly one even parameter, l+m+n <= 9: never edge-colorful
    for l in 1u32..=7 {
        for m in l..=7 {
            for n in m..=7 {
                if l + m + n > 9 {
                    continue;
                }
                if [l, m, n].iter().filter(|p| *p % 2 == 0).count() == 1 {
                    rows.push((
                        format!("tl({l},{m},{n})"),
                        families::theta_ladder(l, m, n, convention)?,
                        Expect::NotColorful,
                    ));
                }
            }
        }
    }
    Ok(rows)
}

fn base_case_rows() -> Result<Vec<RowSpec>, FamilyError> {
    let mut rows: Vec<RowSpec> = vec![
        ("cubic vertex".into(), families::cubic_vertex(), Expect::Reflexive),
        ("cubic K2".into(), families::cubic_k2(), Expect::Reflexive),
        (
            "cubic C3".into(),
            families::cubic_cycle(3)?,
            Expect::NotColorful,
        ),
    ];
    for n in 4..=10 {
        rows.push((
            format!("cubic path({n})"),
            families::cubic_path(n)?,
            Expect::Reflexive,
        ));
        rows.push((
            format!("cubic cycle({n})"),
            families::cubic_cycle(n)?,
            Expect::Reflexive,
        ));
    }
    for (i, t) in families::all_cubic_trees(8).into_iter().enumerate() {
        rows.push((format!("cubic tree #{i} (n={})", t.n()), t, Expect::Reflexive));
    }
    for (i, g) in families::enumerate_build_graphs(4).into_iter().enumerate() {
        rows.push((format!("build program #{i} (n={})", g.n()), g, Expect::Reflexive));
    }
    Ok(rows)
}

fn k33_rows() -> Result<Vec<RowSpec>, FamilyError> {
    let k33 = families::k33();
    let mut rows: Vec<RowSpec> = vec![("K33".into(), k33.clone(), Expect::Reflexive)];
    for k in 1..=3 {
        let expect = if k == 1 {
            Expect::NotColorable
        } else {
            Expect::NotColorful
        };
        rows.push((
            format!("K33 with one edge subdivided {k}x"),
            families::subdivide_plain(&k33, 0, k)?,
            expect,
        ));
    }
    rows.push((
        "K33 with every edge subdivided once".into(),
        families::subdivide_every_edge_once(&k33),
        Expect::Reflexive,
    ));
    Ok(rows)
}

/// The figure-level claim B(2·K3) ≅ L(K33), checked structurally.
fn two_triangles_row() -> ExpectationRow {
    let b = build_complex(&families::two_triangles());
    let lk33 = families::k33().line_graph();
    let pass = crate::iso::isomorphic(&b.adjacency, &lk33).is_some();
    ExpectationRow {
        name: "B(two disjoint triangles)".into(),
        expected: "isomorphic to L(K33)".into(),
        observed: if pass {
            "isomorphic to L(K33)".into()
        } else {
            format!("{} classes, no isomorphism", b.classes.len())
        },
        pass,
    }
}

fn fusene_rows() -> Result<Vec<RowSpec>, FamilyError> {
    let mut rows = Vec::new();
    for k in 1..=3 {
        rows.push((
            format!("hexagonal chain({k})"),
            families::hexagonal_chain(k)?,
            Expect::Reflexive,
        ));
    }
    Ok(rows)
}

fn stretch_rows() -> Result<Vec<RowSpec>, FamilyError> {
    Ok(vec![
        (
            "dodecahedron".into(),
            families::dodecahedron(),
            Expect::Colorings(10),
        ),
        (
            "dodecahedron B".into(),
            families::dodecahedron(),
            Expect::BComponents(10),
        ),
        (
            "coxeter B".into(),
            families::coxeter(),
            Expect::BComponents(2),
        ),
        (
            "hexagonal chain(4)".into(),
            families::hexagonal_chain(4)?,
            Expect::Reflexive,
        ),
    ])
}

/// Each of the two components of B(L(Coxeter)) is isomorphic to L(Coxeter).
fn coxeter_component_row() -> ExpectationRow {
    let g = families::coxeter();
    let lg = g.line_graph();
    let b = crate::complex::build_edge_complex(&g);
    let comps = b.adjacency.components();
    let pass = comps.len() == 2
        && comps.iter().all(|comp| {
            let keep: BTreeSet<u32> = comp.iter().copied().collect();
            let remove: BTreeSet<u32> =
                (0..b.adjacency.n()).filter(|v| !keep.contains(v)).collect();
            let sub = b.adjacency.delete_vertices(&remove);
            crate::iso::isomorphic(&sub, &lg).is_some()
        });
    ExpectationRow {
        name: "coxeter B components".into(),
        expected: "2 components, each isomorphic to L(Coxeter)".into(),
        observed: if pass {
            "2 components, each isomorphic to L(Coxeter)".into()
        } else {
            format!("{} components", comps.len())
        },
        pass,
    }
}

/// Renders a result as a markdown table.
pub fn to_markdown(result: &ReproduceResult) -> String {
    let mut out = format!(
        "# reproduce {}\n\n| graph | expected | observed | pass |\n|---|---|---|---|\n",
        result.table
    );
    for r in &result.rows {
        out.push_str(&format!(
            "| {} | {} | {} | {} |\n",
            r.name,
            r.expected,
            r.observed,
            if r.pass { "yes" } else { "NO" }
        ));
    }
    out.push_str(&format!(
        "\n{} rows, {}\n",
        result.rows.len(),
        if result.all_pass { "all pass" } else { "MISMATCH" }
    ));
    out
}
