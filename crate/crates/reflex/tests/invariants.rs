//! Cross-module invariants: subdivision closure on reflexive thetas, the
//! subdivided-K33-style argument on half-edge-free graphs, block/direct
//! verdict consistency, and isomorphism sanity over the corpus.

mod common;

use common::CORPUS;
use reflex::families;
use reflex::iso::{cubic_isomorphic, isomorphic};
use reflex::verifier::{verify_edge_reflexive, verify_via_blocks, Mode};

/// One application of subdivide_with_half_edge on any eligible edge of a
/// verified-reflexive theta yields another reflexive graph, for all thetas
/// with k + l + m <= 11.
#[test]
fn subdivision_closure_on_reflexive_thetas() {
    for k in 1u32..=9 {
        for l in k..=9 {
            for m in l..=9 {
                if k + l + m > 11 {
                    continue;
                }
                let g = families::theta(k, l, m).unwrap();
                if !verify_edge_reflexive(&g, Mode::Fast).reflexive {
                    continue;
                }
                for e in 0..g.full_edge_count() as u32 {
                    let Ok(h) = families::subdivide_with_half_edge(&g, e) else {
                        continue; // hub endpoints carry no half-edge
                    };
                    let r = verify_edge_reflexive(&h, Mode::Fast);
                    assert!(
                        r.reflexive,
                        "subdividing edge {e} of theta({k},{l},{m}) lost reflexivity: {:?}",
                        r.reason
                    );
                }
            }
        }
    }
}

/// For every half-edge-free reflexive graph in the corpus, subdividing a
/// single edge k times is never reflexive: k = 1 kills colorability, k >= 2
/// kills colorfulness (the parity argument).
#[test]
fn single_subdivision_of_closed_reflexive_graphs() {
    let closed: Vec<_> = CORPUS
        .iter()
        .filter(|(_, g)| {
            g.half_edge_count() == 0
                && g.n() > 0
                && verify_edge_reflexive(g, Mode::Fast).reflexive
        })
        .collect();
    // K33, prism(4), prism(6) at minimum
    assert!(closed.len() >= 3, "expected half-edge-free reflexive corpus graphs");
    for (name, g) in closed {
        for k in 1..=3 {
            let sub = families::subdivide_plain(g, 0, k).unwrap();
            let r = verify_edge_reflexive(&sub, Mode::Fast);
            assert!(!r.reflexive, "{name} subdivided {k}x is reflexive");
            if k == 1 {
                assert!(!r.colorable, "{name} subdivided once is colorable");
            } else {
                assert!(r.colorable, "{name} subdivided {k}x is not colorable");
                assert!(!r.colorful, "{name} subdivided {k}x is colorful");
            }
        }
    }
}

/// A positive block verdict always implies a positive direct verdict.
#[test]
fn block_verdict_is_sufficient() {
    for (name, g) in CORPUS.iter().filter(|(_, g)| g.edge_count() <= 30) {
        let blocks = verify_via_blocks(g, Mode::Fast);
        if blocks.all_blocks_reflexive {
            assert!(
                verify_edge_reflexive(g, Mode::Fast).reflexive,
                "{name}: blocks positive but direct verdict negative"
            );
        }
    }
}

/// Cutting a cutedge and re-checking: every cubic tree decomposes into
/// cubic vertices.
#[test]
fn trees_decompose_into_cubic_vertices() {
    for t in families::all_cubic_trees(8) {
        let blocks = verify_via_blocks(&t, Mode::Fast);
        assert_eq!(blocks.blocks.len(), t.n() as usize);
        assert!(blocks.blocks.iter().all(|b| b.n == 1));
        assert!(blocks.all_blocks_reflexive);
    }
}

/// isomorphic() is reflexive and symmetric across a sample of corpus pairs.
#[test]
fn isomorphism_is_an_equivalence_on_the_corpus() {
    let sample: Vec<_> = CORPUS
        .iter()
        .filter(|(_, g)| g.n() <= 10)
        .take(12)
        .collect();
    for (_, g) in &sample {
        assert!(cubic_isomorphic(g, g));
    }
    for (i, (_, a)) in sample.iter().enumerate() {
        for (_, b) in &sample[i + 1..] {
            let ab = cubic_isomorphic(a, b);
            let ba = cubic_isomorphic(b, a);
            assert_eq!(ab, ba);
        }
    }
    let k3 = reflex::SimpleGraph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
    let p3 = reflex::SimpleGraph::new(3, [(0, 1), (1, 2)]).unwrap();
    assert!(isomorphic(&k3, &p3).is_none());
}

/// Line graphs contain exactly n vertex-star triangles; extra triangles only
/// with a triangle or a parallel pair in g.
#[test]
fn line_graph_triangle_budget() {
    for (name, g) in CORPUS.iter().filter(|(_, g)| g.edge_count() <= 30) {
        let lg = g.line_graph();
        let triangles = lg.triangles().len();
        // parallel edges can collapse two vertex stars into one triangle
        // (e.g. the triple edge), so count distinct stars
        let stars: std::collections::BTreeSet<Vec<u32>> =
            (0..g.n()).map(|v| g.edges_at(v)).collect();
        let extra_allowed = !g.is_triangle_free() || g.has_multi_edge();
        if extra_allowed {
            assert!(triangles >= stars.len(), "{name}");
        } else {
            assert_eq!(triangles, stars.len(), "{name}");
            assert_eq!(stars.len(), g.n() as usize, "{name}");
        }
    }
}
