//! Shared test support: an independent brute-force coloring oracle and the
//! corpus of graphs used across the acceptance and invariant suites.
//!
//! The oracle deliberately shares no logic with the library's enumeration:
//! it walks all 3^|E| labeled assignments, keeps the proper ones, and
//! quotients by color permutation.

// each test target compiles its own copy; not all of them use every helper
#![allow(dead_code)]

use once_cell::sync::Lazy;
use reflex::families::{self, LadderConvention};
use reflex::graph::CubicGraph;
use std::collections::BTreeSet;

/// All unordered proper 3-edge-colorings of `g`, as canonically sorted class
/// triples. Exponential; callers must keep |E| small (≤ ~14).
pub fn oracle_edge_colorings(g: &CubicGraph) -> BTreeSet<[Vec<u32>; 3]> {
    let m = g.edge_count();
    let n = g.n() as usize;
    // incidence lists rebuilt from endpoints, not from edges_at()
    let mut incident: Vec<Vec<u32>> = vec![Vec::new(); n];
    for e in 0..m as u32 {
        let (u, v) = g.endpoints(e).expect("edge id in range");
        incident[u as usize].push(e);
        if let Some(v) = v {
            incident[v as usize].push(e);
        }
    }
    let mut result = BTreeSet::new();
    if m == 0 {
        return result;
    }
    let mut assign = vec![0u8; m];
    loop {
        let proper = incident.iter().all(|edges| {
            for i in 0..edges.len() {
                for j in i + 1..edges.len() {
                    if assign[edges[i] as usize] == assign[edges[j] as usize] {
                        return false;
                    }
                }
            }
            true
        });
        if proper {
            let mut classes: [Vec<u32>; 3] = Default::default();
            for (e, &c) in assign.iter().enumerate() {
                classes[c as usize].push(e as u32);
            }
            for c in classes.iter_mut() {
                c.sort_unstable();
            }
            classes.sort();
            result.insert(classes);
        }
        // base-3 increment
        let mut i = 0;
        loop {
            if i == m {
                return result;
            }
            assign[i] += 1;
            if assign[i] < 3 {
                break;
            }
            assign[i] = 0;
            i += 1;
        }
    }
}

/// The full corpus from acceptance criteria 1–5, with human-readable labels.
pub static CORPUS: Lazy<Vec<(String, CubicGraph)>> = Lazy::new(|| {
    let mut out: Vec<(String, CubicGraph)> = Vec::new();
    let mut add = |name: String, g: CubicGraph| out.push((name, g));

    // criterion 1: thetas
    for (k, l, m) in [
        (2, 2, 2),
        (2, 2, 3),
        (2, 2, 4),
        (2, 3, 3),
        (2, 3, 4),
        (3, 3, 3),
        (1, 3, 3),
        (2, 2, 5),
        (2, 3, 5),
        (2, 4, 4),
        (3, 3, 4),
    ] {
        add(format!("theta({k},{l},{m})"), families::theta(k, l, m).unwrap());
    }
    for m in 2..=5 {
        add(format!("theta(1,2,{m})"), families::theta(1, 2, m).unwrap());
    }
    for m in 1..=5 {
        add(format!("theta(1,1,{m})"), families::theta(1, 1, m).unwrap());
    }

    // criterion 2: base cases
    add("cubic vertex".into(), families::cubic_vertex());
    add("cubic K2".into(), families::cubic_k2());
    add("cubic C3".into(), families::cubic_cycle(3).unwrap());
    for n in 4..=10 {
        add(format!("cubic path({n})"), families::cubic_path(n).unwrap());
        add(format!("cubic cycle({n})"), families::cubic_cycle(n).unwrap());
    }
    for (i, t) in families::all_cubic_trees(8).into_iter().enumerate() {
        add(format!("cubic tree #{i}"), t);
    }
    for (i, g) in families::enumerate_build_graphs(4).into_iter().enumerate() {
        add(format!("build graph #{i}"), g);
    }

    // criterion 3: prisms
    for n in 3..=6 {
        add(format!("prism({n})"), families::prism(n).unwrap());
    }

    // criterion 4: K33 suite
    let k33 = families::k33();
    add("K33".into(), k33.clone());
    for k in 1..=3 {
        add(
            format!("K33 subdivided {k}x"),
            families::subdivide_plain(&k33, 0, k).unwrap(),
        );
    }
    add(
        "K33 all edges subdivided".into(),
        families::subdivide_every_edge_once(&k33),
    );

    // criterion 5: theta ladders
    for (l, m, n) in [(1, 1, 1), (1, 3, 3), (3, 3, 3), (1, 1, 3)] {
        add(
            format!("tl({l},{m},{n})"),
            families::theta_ladder(l, m, n, LadderConvention::Squares).unwrap(),
        );
    }
    for l in 1u32..=7 {
        for m in l..=7 {
            for n in m..=7 {
                if l + m + n <= 9 && [l, m, n].iter().filter(|p| *p % 2 == 0).count() == 1 {
                    add(
                        format!("tl({l},{m},{n})"),
                        families::theta_ladder(l, m, n, LadderConvention::Squares).unwrap(),
                    );
                }
            }
        }
    }

    out
});
