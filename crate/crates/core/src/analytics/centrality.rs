use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Measure {
    WeightedDegree,
    Closeness,
    Betweenness,
    Eigencentrality,
    PageRank,
}

impl Measure {
    pub const ALL: [Measure; 5] = [
        Measure::WeightedDegree,
        Measure::Closeness,
        Measure::Betweenness,
        Measure::Eigencentrality,
        Measure::PageRank,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Measure::WeightedDegree => "weighted_degree",
            Measure::Closeness => "closeness",
            Measure::Betweenness => "betweenness",
            Measure::Eigencentrality => "eigencentrality",
            Measure::PageRank => "pagerank",
        }
    }

    /// Closeness is an average distance, so smaller means more central.
    pub fn lower_is_central(self) -> bool {
        self == Measure::Closeness
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Measure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Measure::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown measure `{s}`")))
    }
}

/// One score per node. `undefined` lists nodes whose score has no meaning
/// (for example closeness of a node with no reachable peers); they hold 0.
#[derive(Debug, Clone, PartialEq)]
pub struct CentralityScores {
    pub measure: Measure,
    pub values: Vec<f64>,
    pub undefined: Vec<usize>,
}

impl CentralityScores {
    fn new(measure: Measure, values: Vec<f64>) -> Self {
        Self {
            measure,
            values,
            undefined: Vec::new(),
        }
    }

    /// Node ids from most to least central; ties by id.
    pub fn ranking(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.values.len()).collect();
        order.sort_by(|&a, &b| {
            let (x, y) = (self.values[a], self.values[b]);
            let ord = if self.measure.lower_is_central() {
                x.total_cmp(&y)
            } else {
                y.total_cmp(&x)
            };
            ord.then(a.cmp(&b))
        });
        order
    }
}

pub fn weighted_degree(g: &Graph) -> CentralityScores {
    CentralityScores::new(
        Measure::WeightedDegree,
        (0..g.node_count()).map(|v| g.weighted_degree(v)).collect(),
    )
}

/// Mean hop distance from each node to the other members of its component.
pub fn closeness(g: &Graph) -> CentralityScores {
    let n = g.node_count();
    let per_node: Vec<Option<f64>> = (0..n)
        .into_par_iter()
        .map(|u| {
            let (sum, count) = g
                .hop_distances(u)
                .into_iter()
                .flatten()
                .filter(|&d| d > 0)
                .fold((0usize, 0usize), |(s, c), d| (s + d, c + 1));
            (count > 0).then(|| sum as f64 / count as f64)
        })
        .collect();
    let mut scores = CentralityScores::new(Measure::Closeness, per_node.iter().map(|v| v.unwrap_or(0.0)).collect());
    scores.undefined = (0..n).filter(|&v| per_node[v].is_none()).collect();
    scores
}

/// Single-source Brandes dependencies δ_s(v) over hop-count shortest paths.
fn brandes_dependencies(g: &Graph, s: usize) -> Vec<f64> {
    let n = g.node_count();
    let mut sigma = vec![0.0f64; n];
    let mut dist = vec![usize::MAX; n];
    let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut order = Vec::with_capacity(n);
    let mut queue = VecDeque::new();
    sigma[s] = 1.0;
    dist[s] = 0;
    queue.push_back(s);
    while let Some(v) = queue.pop_front() {
        order.push(v);
        for &(w, _) in g.neighbors(v) {
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
            if dist[w] == dist[v] + 1 {
                sigma[w] += sigma[v];
                preds[w].push(v);
            }
        }
    }
    let mut delta = vec![0.0f64; n];
    for &w in order.iter().rev() {
        for &v in &preds[w] {
            delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
        }
    }
    delta[s] = 0.0;
    delta
}

/// Unnormalized betweenness: Σ over unordered pairs {s, t} not containing
/// `v` of σ_st(v)/σ_st. Sources run in parallel; partial sums are added in
/// source order.
pub fn betweenness(g: &Graph) -> CentralityScores {
    let n = g.node_count();
    let partials: Vec<Vec<f64>> = (0..n).into_par_iter().map(|s| brandes_dependencies(g, s)).collect();
    let mut values = vec![0.0; n];
    for partial in &partials {
        for (acc, d) in values.iter_mut().zip(partial) {
            *acc += d;
        }
    }
    // Each unordered pair was visited from both endpoints.
    values.iter_mut().for_each(|v| *v /= 2.0);
    CentralityScores::new(Measure::Betweenness, values)
}

pub const EIGEN_TOLERANCE: f64 = 1e-10;
const EIGEN_MAX_ITERATIONS: usize = 1_000_000;

/// Leading eigenvector of the weighted adjacency matrix, max-normalized.
///
/// Each component is solved separately by power iteration on `A + sI`
/// (`s` = half the component's mean weighted degree, which keeps bipartite
/// components from oscillating) until successive iterates differ by less
/// than 1e-10 in max-norm. A component's vector is scaled by its spectral
/// radius before the global rescaling to max 1, so components compare by
/// their leading eigenvalue. Edgeless graphs score 0 everywhere, flagged.
pub fn eigencentrality(g: &Graph) -> Result<CentralityScores> {
    let n = g.node_count();
    if n == 0 {
        return Err(Error::InvalidParameter("eigencentrality of an empty graph".into()));
    }
    let comps = g.components();
    let count = comps.iter().max().map_or(0, |&c| c + 1);
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); count];
    for (v, &c) in comps.iter().enumerate() {
        members[c].push(v);
    }

    let mut values = vec![0.0; n];
    for nodes in &members {
        if nodes.len() < 2 {
            continue;
        }
        let total: f64 = nodes.iter().map(|&v| g.weighted_degree(v)).sum();
        let shift = 0.5 * total / nodes.len() as f64;
        let mut x = vec![0.0; n];
        nodes.iter().for_each(|&v| x[v] = 1.0);
        let mut radius = 0.0;
        for _ in 0..EIGEN_MAX_ITERATIONS {
            let mut y = vec![0.0; n];
            for &v in nodes {
                y[v] = shift * x[v] + g.neighbors(v).iter().map(|&(w, wt)| wt * x[w]).sum::<f64>();
            }
            let peak = nodes.iter().map(|&v| y[v]).fold(0.0, f64::max);
            nodes.iter().for_each(|&v| y[v] /= peak);
            let change = nodes.iter().map(|&v| (y[v] - x[v]).abs()).fold(0.0, f64::max);
            x = y;
            radius = peak - shift;
            if change < EIGEN_TOLERANCE {
                break;
            }
        }
        for &v in nodes {
            values[v] = x[v] * radius;
        }
    }

    let peak = values.iter().copied().fold(0.0, f64::max);
    let mut scores = CentralityScores::new(Measure::Eigencentrality, values);
    if peak > 0.0 {
        scores.values.iter_mut().for_each(|v| *v /= peak);
    } else {
        scores.undefined = (0..n).collect();
    }
    Ok(scores)
}

pub const DEFAULT_DAMPING: f64 = 0.85;
pub const DEFAULT_PAGERANK_TOLERANCE: f64 = 1e-10;
const PAGERANK_MAX_ITERATIONS: usize = 100_000;

/// Weighted PageRank with uniform teleportation.
///
/// Rank mass on isolated nodes is spread uniformly. Iterates until the L1
/// change drops below `tol`.
pub fn pagerank(g: &Graph, damping: f64, tol: f64) -> Result<CentralityScores> {
    if !(damping > 0.0 && damping < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "damping must lie in (0, 1), got {damping}"
        )));
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidParameter("tolerance must be positive".into()));
    }
    let n = g.node_count();
    if n == 0 {
        return Ok(CentralityScores::new(Measure::PageRank, Vec::new()));
    }
    let strength: Vec<f64> = (0..n).map(|v| g.weighted_degree(v)).collect();
    let uniform = 1.0 / n as f64;
    let mut rank = vec![uniform; n];
    for _ in 0..PAGERANK_MAX_ITERATIONS {
        let dangling: f64 = (0..n).filter(|&v| strength[v] == 0.0).map(|v| rank[v]).sum();
        let base = (1.0 - damping) * uniform + damping * dangling * uniform;
        let mut next = vec![base; n];
        for v in 0..n {
            if strength[v] == 0.0 {
                continue;
            }
            let share = damping * rank[v] / strength[v];
            for &(w, wt) in g.neighbors(v) {
                next[w] += share * wt;
            }
        }
        let change: f64 = next.iter().zip(&rank).map(|(a, b)| (a - b).abs()).sum();
        rank = next;
        if change < tol {
            break;
        }
    }
    let total: f64 = rank.iter().sum();
    rank.iter_mut().for_each(|r| *r /= total);
    Ok(CentralityScores::new(Measure::PageRank, rank))
}

/// Every measure with default parameters, in [`Measure::ALL`] order.
pub fn all_centralities(g: &Graph) -> Result<Vec<CentralityScores>> {
    Ok(vec![
        weighted_degree(g),
        closeness(g),
        betweenness(g),
        eigencentrality(g)?,
        pagerank(g, DEFAULT_DAMPING, DEFAULT_PAGERANK_TOLERANCE)?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::GraphBuilder;

    fn k(n: usize) -> Graph {
        Graph::empty(n).complement()
    }

    fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    fn star(leaves: usize) -> Graph {
        let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        Graph::from_edges(leaves + 1, &edges).unwrap()
    }

    fn assert_close(actual: &[f64], expected: &[f64], tol: f64) {
        assert_eq!(actual.len(), expected.len());
        for (a, e) in actual.iter().zip(expected) {
            assert!((a - e).abs() <= tol, "{actual:?} vs {expected:?}");
        }
    }

    #[test]
    fn weighted_degree_examples() {
        assert_eq!(weighted_degree(&k(3)).values, vec![2.0; 3]);
        let mut b = GraphBuilder::with_nodes(4);
        for (leaf, w) in [(1, 1.0), (2, 2.0), (3, 3.0)] {
            b.add_edge(0, leaf, w).unwrap();
        }
        assert_eq!(weighted_degree(&b.build()).values, vec![6.0, 1.0, 2.0, 3.0]);
        assert_eq!(weighted_degree(&Graph::empty(3)).values, vec![0.0; 3]);
    }

    #[test]
    fn closeness_examples() {
        assert_close(&closeness(&path(3)).values, &[1.5, 1.0, 1.5], 1e-15);
        assert_close(&closeness(&k(5)).values, &[1.0; 5], 1e-15);
        assert_close(&closeness(&star(4)).values, &[1.0, 1.75, 1.75, 1.75, 1.75], 1e-15);
    }

    #[test]
    fn closeness_flags_singletons() {
        let g = Graph::from_edges(3, &[(0, 1)]).unwrap();
        let c = closeness(&g);
        assert_eq!(c.values, vec![1.0, 1.0, 0.0]);
        assert_eq!(c.undefined, vec![2]);
    }

    #[test]
    fn betweenness_examples() {
        assert_close(&betweenness(&k(3)).values, &[0.0; 3], 0.0);
        assert_close(&betweenness(&path(3)).values, &[0.0, 1.0, 0.0], 0.0);
        assert_close(&betweenness(&star(3)).values, &[3.0, 0.0, 0.0, 0.0], 0.0);
        // C4: each node lies on one of the two shortest paths of the opposite pair.
        let c4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert_close(&betweenness(&c4).values, &[0.5; 4], 1e-15);
    }

    #[test]
    fn eigencentrality_examples() {
        assert_close(&eigencentrality(&k(3)).unwrap().values, &[1.0; 3], 1e-9);
        let s = 1.0 / 3f64.sqrt();
        assert_close(&eigencentrality(&star(3)).unwrap().values, &[1.0, s, s, s], 1e-9);
        let mut b = GraphBuilder::with_nodes(2);
        b.add_edge(0, 1, 5.0).unwrap();
        assert_close(&eigencentrality(&b.build()).unwrap().values, &[1.0, 1.0], 1e-9);
        assert!(eigencentrality(&Graph::empty(0)).is_err());
    }

    #[test]
    fn eigencentrality_disconnected() {
        // K3 (radius 2) next to K2 (radius 1) and an isolated node.
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (3, 4)]).unwrap();
        let e = eigencentrality(&g).unwrap();
        assert_close(&e.values, &[1.0, 1.0, 1.0, 0.5, 0.5, 0.0], 1e-9);
        let edgeless = eigencentrality(&Graph::empty(3)).unwrap();
        assert_eq!(edgeless.values, vec![0.0; 3]);
        assert_eq!(edgeless.undefined.len(), 3);
    }

    #[test]
    fn pagerank_examples() {
        let pr = pagerank(&k(3), 0.85, 1e-10).unwrap();
        assert_close(&pr.values, &[1.0 / 3.0; 3], 1e-12);
        let pr = pagerank(&path(2), 0.85, 1e-10).unwrap();
        assert_close(&pr.values, &[0.5, 0.5], 1e-12);
        assert!(pagerank(&k(3), 1.0, 1e-10).is_err());
        assert!(pagerank(&k(3), 0.0, 1e-10).is_err());
    }

    #[test]
    fn pagerank_with_isolated_nodes_sums_to_one() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2)]).unwrap();
        let pr = pagerank(&g, 0.85, 1e-12).unwrap();
        assert!((pr.values.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        assert!((pr.values[3] - pr.values[4]).abs() < 1e-15);
    }

    #[test]
    fn ranking_direction() {
        let c = closeness(&path(3));
        assert_eq!(c.ranking(), vec![1, 0, 2]);
        let d = weighted_degree(&star(2));
        assert_eq!(d.ranking(), vec![0, 1, 2]);
        assert_eq!("pagerank".parse::<Measure>().unwrap(), Measure::PageRank);
    }
}
