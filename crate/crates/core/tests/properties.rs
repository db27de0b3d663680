use charnet_core::analytics::{all_centralities, louvain, modularity};
use charnet_core::features::{feature_vector, profile3, profile4, FeatureMode};
use charnet_core::graph::{global_stats, load_edge_csv, read_gexf, write_edge_csv, write_gexf, write_node_csv};
use charnet_core::{Graph, GraphBuilder, Seed};
use proptest::prelude::*;

fn weighted_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (4..=max_n).prop_flat_map(|n| {
        prop::collection::vec((0..n, 0..n, 1u32..6), 0..n * 3).prop_map(move |edges| {
            let mut b = GraphBuilder::with_nodes(n);
            for (u, v, w) in edges {
                if u != v {
                    b.add_edge(u, v, w as f64).unwrap();
                }
            }
            b.build()
        })
    })
}

fn with_permutation(max_n: usize) -> impl Strategy<Value = (Graph, Vec<usize>)> {
    weighted_graph(max_n).prop_flat_map(|g| {
        let n = g.node_count();
        (Just(g), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn features_ignore_node_order((g, perm) in with_permutation(14)) {
        let h = g.permuted(&perm).unwrap();
        prop_assert_eq!(profile3(&g).unwrap(), profile3(&h).unwrap());
        prop_assert_eq!(profile4(&g).unwrap(), profile4(&h).unwrap());
        let (a, b) = (feature_vector(&g, FeatureMode::Full).unwrap(), feature_vector(&h, FeatureMode::Full).unwrap());
        prop_assert_eq!(a.values(), b.values());
    }

    #[test]
    fn centralities_follow_relabeling((g, perm) in with_permutation(12)) {
        let h = g.permuted(&perm).unwrap();
        let (before, after) = (all_centralities(&g).unwrap(), all_centralities(&h).unwrap());
        for (x, y) in before.iter().zip(&after) {
            for (v, &w) in perm.iter().enumerate() {
                prop_assert!((x.values[v] - y.values[w]).abs() < 1e-7, "{} at {}", x.measure, v);
            }
        }
    }

    #[test]
    fn csv_and_gexf_round_trip(g in weighted_graph(20)) {
        let csv = load_edge_csv(&write_node_csv(&g).unwrap(), &write_edge_csv(&g).unwrap()).unwrap();
        prop_assert_eq!(&csv, &g);
        let gexf = read_gexf(&write_gexf(&g)).unwrap();
        prop_assert_eq!(&gexf, &g);
    }

    #[test]
    fn louvain_is_reproducible_and_consistent(g in weighted_graph(30), seed in any::<u64>()) {
        let part = louvain(&g, Seed(seed));
        prop_assert_eq!(&part, &louvain(&g, Seed(seed)));
        prop_assert!((modularity(&g, &part.assignment).unwrap() - part.q).abs() < 1e-9);
        let singletons: Vec<usize> = (0..g.node_count()).collect();
        prop_assert!(part.q >= modularity(&g, &singletons).unwrap() - 1e-9);
    }

    #[test]
    fn density_matches_mean_degree(g in weighted_graph(25)) {
        let s = global_stats(&g);
        prop_assert!((s.edge_density - s.avg_degree / (g.node_count() - 1) as f64).abs() < 1e-12);
    }
}
