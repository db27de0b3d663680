use charnet_core::extract::{build_network, extract_pipeline, AliasTable, Occurrence, OccurrenceStream, WindowConfig};
use charnet_core::Graph;
use proptest::prelude::*;

const HARBOR: &str = include_str!("fixtures/harbor.txt");
const HARBOR_ALIASES: &str = include_str!("fixtures/harbor_aliases.csv");

fn harbor(distance: usize) -> Graph {
    let table = AliasTable::from_csv(HARBOR_ALIASES).unwrap();
    extract_pipeline(HARBOR, &table, WindowConfig::new(distance).unwrap())
}

fn weight(g: &Graph, a: &str, b: &str) -> f64 {
    let id = |name: &str| g.labels().iter().position(|l| l == name).unwrap();
    g.weight(id(a), id(b)).unwrap_or(0.0)
}

#[test]
fn harbor_fixture_has_two_hundred_tokens() {
    assert_eq!(charnet_core::extract::tokenize(HARBOR).len(), 200);
}

#[test]
fn harbor_hand_counts() {
    let g = harbor(WindowConfig::DEFAULT_DISTANCE);
    assert_eq!(g.node_count(), 4);
    assert_eq!(weight(&g, "Mira Vale", "Tobin Reed"), 3.0);
    assert_eq!(weight(&g, "Oskar Lind", "Lena Dorr"), 3.0);
    assert_eq!(weight(&g, "Tobin Reed", "Lena Dorr"), 1.0);
    assert_eq!(weight(&g, "Mira Vale", "Lena Dorr"), 1.0);
    assert_eq!(weight(&g, "Mira Vale", "Oskar Lind"), 0.0);
    assert_eq!(weight(&g, "Tobin Reed", "Oskar Lind"), 0.0);
    assert_eq!(g.edge_count(), 4);
}

#[test]
fn harbor_boundary_pair_needs_full_window() {
    // One baker/Lena pair sits exactly at the window edge.
    assert_eq!(weight(&harbor(14), "Oskar Lind", "Lena Dorr"), 2.0);
    assert_eq!(weight(&harbor(15), "Oskar Lind", "Lena Dorr"), 3.0);
}

#[test]
fn harbor_window_monotone() {
    let graphs: Vec<Graph> = [5, 10, 15, 30].iter().map(|&d| harbor(d)).collect();
    for pair in graphs.windows(2) {
        for a in 0..4 {
            for b in a + 1..4 {
                assert!(pair[0].weight(a, b).unwrap_or(0.0) <= pair[1].weight(a, b).unwrap_or(0.0));
            }
        }
    }
}

/// Maximum bipartite matching between the hits of `a` and `b` that lie
/// within `distance` of each other (augmenting paths).
fn max_matching(hits: &[Occurrence], a: usize, b: usize, distance: usize) -> usize {
    let left: Vec<usize> = hits.iter().filter(|h| h.character == a).map(|h| h.position).collect();
    let right: Vec<usize> = hits.iter().filter(|h| h.character == b).map(|h| h.position).collect();
    let mut owner: Vec<Option<usize>> = vec![None; right.len()];

    fn augment(
        u: usize,
        left: &[usize],
        right: &[usize],
        distance: usize,
        seen: &mut [bool],
        owner: &mut [Option<usize>],
    ) -> bool {
        for v in 0..right.len() {
            if left[u].abs_diff(right[v]) > distance || seen[v] {
                continue;
            }
            seen[v] = true;
            if owner[v].is_none_or(|w| augment(w, left, right, distance, seen, owner)) {
                owner[v] = Some(u);
                return true;
            }
        }
        false
    }

    (0..left.len())
        .filter(|&u| augment(u, &left, &right, distance, &mut vec![false; right.len()], &mut owner))
        .count()
}

fn hit_stream() -> impl Strategy<Value = (Vec<Occurrence>, usize)> {
    (prop::collection::vec((1usize..6, 0usize..4), 0..40), 1usize..12).prop_map(|(steps, d)| {
        let mut position = 0;
        let hits = steps
            .into_iter()
            .map(|(gap, character)| {
                position += gap;
                Occurrence { position, character }
            })
            .collect();
        (hits, d)
    })
}

proptest! {
    #[test]
    fn weights_equal_maximum_matching((hits, d) in hit_stream()) {
        let names: Vec<String> = (0..4).map(|i| format!("c{i}")).collect();
        let stream = OccurrenceStream::new(names, hits.clone()).unwrap();
        let g = build_network(&stream, WindowConfig::new(d).unwrap());
        for a in 0..4 {
            for b in a + 1..4 {
                let expected = max_matching(&hits, a, b, d) as f64;
                prop_assert_eq!(g.weight(a, b).unwrap_or(0.0), expected);
            }
        }
    }

    #[test]
    fn widening_the_window_never_loses_weight((hits, d) in hit_stream()) {
        let names: Vec<String> = (0..4).map(|i| format!("c{i}")).collect();
        let stream = OccurrenceStream::new(names, hits).unwrap();
        let narrow = build_network(&stream, WindowConfig::new(d).unwrap());
        let wide = build_network(&stream, WindowConfig::new(d + 1).unwrap());
        for a in 0..4 {
            for b in a + 1..4 {
                prop_assert!(narrow.weight(a, b).unwrap_or(0.0) <= wide.weight(a, b).unwrap_or(0.0));
            }
        }
    }
}
