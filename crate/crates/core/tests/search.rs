use std::collections::BTreeSet;

use cliquebound::verify::{extremal_clique_search, verify_cluster_dichotomy, verify_main_pipeline};
use cliquebound::{
    canonical_form, enumerate_graphs, CanonicalKey, Graph, SearchSpace, VerifyReport,
};
use rayon::prelude::*;
use rayon::ThreadPoolBuilder;

/// Classes of labelled graphs on `n` vertices with `lo ≤ δ` and `Δ ≤ hi`.
fn brute_classes(n: usize, lo: usize, hi: usize) -> BTreeSet<CanonicalKey> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    (0u64..1 << pairs.len())
        .into_par_iter()
        .filter_map(|mask| {
            let edges: Vec<_> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            let g = Graph::from_edges(n, &edges).unwrap();
            let ok = g.max_degree() <= hi && (n == 0 || g.min_degree() >= lo);
            ok.then(|| canonical_form(&g))
        })
        .collect::<Vec<_>>()
        .into_iter()
        .collect()
}

fn enumerated(space: SearchSpace) -> BTreeSet<CanonicalKey> {
    let graphs = enumerate_graphs(&space).unwrap();
    let keys: BTreeSet<_> = graphs.iter().map(canonical_form).collect();
    assert_eq!(keys.len(), graphs.len(), "duplicate classes in {space:?}");
    keys
}

#[test]
fn bounded_enumeration_matches_labelled_brute_force() {
    for n in 0..=6 {
        for r in 0..n.max(1) {
            assert_eq!(
                enumerated(SearchSpace::bounded(n, r)),
                brute_classes(n, 0, r),
                "n={n} r={r}"
            );
        }
    }
    assert_eq!(
        enumerated(SearchSpace::bounded(7, 3)),
        brute_classes(7, 0, 3)
    );
}

#[test]
fn min_degree_enumeration_matches_labelled_brute_force() {
    for n in 1..=6 {
        for lo in 1..3 {
            let space = SearchSpace::all(n).with_min_degree(lo);
            assert_eq!(enumerated(space), brute_classes(n, lo, n), "n={n} δ≥{lo}");
        }
    }
}

#[test]
fn known_bounded_counts() {
    // Δ ≤ 2: disjoint unions of paths and cycles
    let counts: Vec<usize> = (1..=8)
        .map(|n| enumerate_graphs(&SearchSpace::bounded(n, 2)).unwrap().len())
        .collect();
    assert_eq!(counts, [1, 2, 4, 7, 11, 19, 29, 46]);
    // cubic graphs, connected or not
    let cubic = enumerate_graphs(&SearchSpace::bounded(8, 3).with_min_degree(3)).unwrap();
    assert_eq!(cubic.len(), 6);
    let cubic10 = enumerate_graphs(&SearchSpace::bounded(10, 3).with_min_degree(3)).unwrap();
    assert_eq!(cubic10.len(), 21);
}

fn strip_time(mut rep: VerifyReport) -> VerifyReport {
    rep.millis = 0;
    rep
}

#[test]
fn results_do_not_depend_on_worker_count() {
    let run = |workers: usize| {
        let pool = ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .unwrap();
        pool.install(|| {
            (
                enumerate_graphs(&SearchSpace::bounded(9, 3)).unwrap(),
                strip_time(extremal_clique_search(9, 4, 3).unwrap()),
                strip_time(verify_cluster_dichotomy(8, 3).unwrap()),
                strip_time(verify_main_pipeline(8, 4).unwrap()),
            )
        })
    };
    assert_eq!(run(1), run(4));
}

#[test]
fn reports_round_trip_through_json() {
    let rep = extremal_clique_search(8, 3, 3).unwrap();
    let text = serde_json::to_string(&rep).unwrap();
    let back: VerifyReport = serde_json::from_str(&text).unwrap();
    assert_eq!(back, rep);
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    for field in [
        "target",
        "space",
        "examined",
        "extremal_value",
        "conjectured_value",
        "witnesses",
        "violations",
        "millis",
    ] {
        assert!(value.get(field).is_some(), "missing {field}");
    }
}
