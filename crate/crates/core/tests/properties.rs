use alphastab::certify::{certify_decomposition, certify_report};
use alphastab::chordal::{chordal_alpha, is_chordal, peo_violation};
use alphastab::{
    bipartition, bistable_decomposition, classify_edges, classify_edges_by_recomputation, is_alpha_stable, konig_cover,
    maximum_matching, maximum_stable_set, parse_graph, write_graph, Graph, Oracle,
};
use proptest::prelude::*;

/// Bipartite graph with class A = 0..a and each cross pair drawn by mask.
fn bipartite_graph() -> impl Strategy<Value = Graph> {
    (1usize..10, 1usize..10).prop_flat_map(|(a, b)| {
        prop::collection::vec(any::<bool>(), a * b).prop_map(move |bits| {
            let edges = (0..a)
                .flat_map(|u| (0..b).map(move |v| (u, a + v)))
                .zip(bits)
                .filter_map(|(e, keep)| keep.then_some(e));
            Graph::from_edges(a + b, edges).unwrap()
        })
    })
}

fn any_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let edges = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .zip(bits)
                .filter_map(|(e, keep)| keep.then_some(e));
            Graph::from_edges(n, edges).unwrap()
        })
    })
}

/// Chordal graph grown by attaching each new vertex to a clique: the
/// first `k` vertices of a random existing clique ordered by id.
fn chordal_graph() -> impl Strategy<Value = Graph> {
    prop::collection::vec((any::<u16>(), 0usize..4), 1..18).prop_map(|steps| {
        let mut edges: Vec<(usize, usize)> = Vec::new();
        let mut cliques: Vec<Vec<usize>> = vec![vec![0]];
        for (i, (pick, k)) in steps.into_iter().enumerate() {
            let v = i + 1;
            let base = &cliques[pick as usize % cliques.len()];
            let nb: Vec<usize> = base.iter().copied().take(k).collect();
            edges.extend(nb.iter().map(|&u| (u, v)));
            let mut c = nb;
            c.push(v);
            cliques.push(c);
        }
        Graph::from_edges(cliques.len(), edges).unwrap()
    })
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn konig_duality(g in bipartite_graph()) {
        let b = bipartition(&g).unwrap();
        let m = maximum_matching(&g, &b);
        let s = maximum_stable_set(&g, &b);
        let c = konig_cover(&g, &b, &m);
        prop_assert!(c.covers(&g));
        prop_assert_eq!(c.members.len(), m.size());
        prop_assert_eq!(s.len() + m.size(), g.n());
        prop_assert_eq!(s.members.complement(g.n()), c.members);
        prop_assert_eq!(Oracle::default().alpha(&g).unwrap(), s.len());
    }

    #[test]
    fn classification_routes_agree(g in bipartite_graph()) {
        let b = bipartition(&g).unwrap();
        let (fast, slow) = (classify_edges(&g, &b), classify_edges_by_recomputation(&g, &b));
        prop_assert_eq!(fast.statuses(), slow.statuses());
    }

    #[test]
    fn bipartite_reports_certify(g in bipartite_graph()) {
        let r = is_alpha_stable(&g).unwrap();
        prop_assert!(certify_report(&g, &r).is_ok(), "{:?}", certify_report(&g, &r));
        if let Ok(d) = bistable_decomposition(&g) {
            prop_assert!(certify_decomposition(&g, &d).is_ok());
        }
    }

    #[test]
    fn general_reports_certify(g in any_graph(11)) {
        let r = is_alpha_stable(&g).unwrap();
        prop_assert!(certify_report(&g, &r).is_ok(), "{:?}", certify_report(&g, &r));
    }

    #[test]
    fn verdicts_survive_relabeling((g, p) in any_graph(9).prop_flat_map(|g| { let n = g.n(); (Just(g), permutation(n)) })) {
        let h = g.relabel(&p);
        let (r, s) = (is_alpha_stable(&g).unwrap(), is_alpha_stable(&h).unwrap());
        prop_assert_eq!(r.alpha, s.alpha);
        prop_assert_eq!(r.alpha_minus.holds, s.alpha_minus.holds);
        prop_assert_eq!(r.alpha_plus.holds, s.alpha_plus.holds);
        prop_assert_eq!(r.bistable.map(|v| v.holds), s.bistable.map(|v| v.holds));
    }

    #[test]
    fn chordal_greedy_is_exact(g in chordal_graph()) {
        let peo = is_chordal(&g).expect("clique attachment yields a chordal graph");
        prop_assert!(peo_violation(&g, &peo).is_none());
        prop_assert_eq!(chordal_alpha(&g).unwrap(), Oracle::default().alpha(&g).unwrap());
        let r = is_alpha_stable(&g).unwrap();
        prop_assert!(certify_report(&g, &r).is_ok(), "{:?}", certify_report(&g, &r));
    }

    #[test]
    fn edge_list_text_roundtrip(g in any_graph(12)) {
        prop_assert_eq!(parse_graph(&write_graph(&g)).unwrap().graph, g);
    }
}
