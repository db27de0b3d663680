use serde::Serialize;

use super::Graph;

/// Whole-graph summary metrics.
///
/// Distances are unweighted hop counts. On a disconnected graph the diameter
/// and average distance describe the largest connected component and
/// `disconnected` is set. With fewer than two nodes in that component both
/// are reported as 0 and `distances_defined` is false.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GraphStats {
    pub node_count: usize,
    pub edge_count: usize,
    pub avg_degree: f64,
    pub avg_weighted_degree: f64,
    pub diameter: usize,
    pub edge_density: f64,
    pub avg_distance: f64,
    pub clustering_coeff: f64,
    pub disconnected: bool,
    pub distances_defined: bool,
}

pub fn global_stats(g: &Graph) -> GraphStats {
    let n = g.node_count();
    let m = g.edge_count();
    let avg_degree = if n == 0 { 0.0 } else { 2.0 * m as f64 / n as f64 };
    let avg_weighted_degree = if n == 0 { 0.0 } else { 2.0 * g.total_weight() / n as f64 };
    let edge_density = if n < 2 {
        0.0
    } else {
        m as f64 / (n as f64 * (n as f64 - 1.0) / 2.0)
    };

    let comps = g.components();
    let mut sizes = vec![0usize; comps.iter().max().map_or(0, |&c| c + 1)];
    for &c in &comps {
        sizes[c] += 1;
    }
    let largest = sizes
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0)))
        .map(|(c, _)| c);
    let disconnected = sizes.len() > 1;

    let mut diameter = 0;
    let mut dist_sum = 0u64;
    let mut pairs = 0u64;
    if let Some(lc) = largest {
        for s in (0..n).filter(|&v| comps[v] == lc) {
            for d in g.hop_distances(s).into_iter().flatten().filter(|&d| d > 0) {
                diameter = diameter.max(d);
                dist_sum += d as u64;
                pairs += 1;
            }
        }
    }
    let distances_defined = pairs > 0;
    let avg_distance = if distances_defined {
        dist_sum as f64 / pairs as f64
    } else {
        0.0
    };

    GraphStats {
        node_count: n,
        edge_count: m,
        avg_degree,
        avg_weighted_degree,
        diameter,
        edge_density,
        avg_distance,
        clustering_coeff: average_clustering(g),
        disconnected,
        distances_defined,
    }
}

/// Local clustering coefficient per node; 0 for nodes of degree < 2.
pub fn local_clustering(g: &Graph) -> Vec<f64> {
    (0..g.node_count())
        .map(|v| {
            let nbrs = g.neighbors(v);
            let k = nbrs.len();
            if k < 2 {
                return 0.0;
            }
            let mut links = 0usize;
            for (i, &(a, _)) in nbrs.iter().enumerate() {
                for &(b, _) in &nbrs[i + 1..] {
                    if g.has_edge(a, b) {
                        links += 1;
                    }
                }
            }
            2.0 * links as f64 / (k * (k - 1)) as f64
        })
        .collect()
}

fn average_clustering(g: &Graph) -> f64 {
    let n = g.node_count();
    if n == 0 {
        return 0.0;
    }
    local_clustering(g).iter().sum::<f64>() / n as f64
}
