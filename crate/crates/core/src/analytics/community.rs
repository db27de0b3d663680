//! Weighted modularity and Louvain community detection.

use rand::seq::SliceRandom;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng::Seed;

/// Smallest modularity improvement that justifies moving a node.
pub const MIN_GAIN: f64 = 1e-9;

/// Community id per node plus the partition's modularity.
#[derive(Debug, Clone, PartialEq)]
pub struct Partition {
    pub assignment: Vec<usize>,
    pub q: f64,
}

impl Partition {
    pub fn community_count(&self) -> usize {
        self.assignment.iter().max().map_or(0, |&c| c + 1)
    }
}

/// Newman modularity `Q = Σ_c [W_c/W − (S_c/2W)²]`.
///
/// `W` is the total edge weight, `W_c` the weight inside community `c` and
/// `S_c` the summed weighted degree of its members. An edgeless graph has
/// `Q = 0`.
pub fn modularity(g: &Graph, assignment: &[usize]) -> Result<f64> {
    let n = g.node_count();
    if assignment.len() != n {
        return Err(Error::InvalidParameter(format!(
            "assignment covers {} of {n} nodes",
            assignment.len()
        )));
    }
    let total = g.total_weight();
    if total == 0.0 {
        return Ok(0.0);
    }
    let k = assignment.iter().max().map_or(0, |&c| c + 1);
    let mut inside = vec![0.0; k];
    let mut strength = vec![0.0; k];
    for e in g.edges() {
        let (cu, cv) = (assignment[e.u], assignment[e.v]);
        if cu == cv {
            inside[cu] += e.weight;
        }
        strength[cu] += e.weight;
        strength[cv] += e.weight;
    }
    Ok(inside
        .iter()
        .zip(&strength)
        .map(|(&w_in, &s)| w_in / total - (s / (2.0 * total)).powi(2))
        .sum())
}

/// Weighted graph with self-loops, used between Louvain levels.
struct Level {
    neighbors: Vec<Vec<(usize, f64)>>,
    /// Weight of the self-loop of each node (edges folded inside it).
    inner: Vec<f64>,
}

impl Level {
    fn from_graph(g: &Graph) -> Self {
        Self {
            neighbors: (0..g.node_count()).map(|v| g.neighbors(v).to_vec()).collect(),
            inner: vec![0.0; g.node_count()],
        }
    }

    fn len(&self) -> usize {
        self.inner.len()
    }

    fn strength(&self, v: usize) -> f64 {
        2.0 * self.inner[v] + self.neighbors[v].iter().map(|&(_, w)| w).sum::<f64>()
    }

    /// Collapses each community into one node.
    fn aggregate(&self, community: &[usize], count: usize) -> Level {
        let mut inner = vec![0.0; count];
        let mut links: Vec<std::collections::BTreeMap<usize, f64>> = vec![Default::default(); count];
        for v in 0..self.len() {
            let cv = community[v];
            inner[cv] += self.inner[v];
            for &(w, wt) in &self.neighbors[v] {
                let cw = community[w];
                if cv == cw {
                    // Seen from both endpoints.
                    inner[cv] += wt / 2.0;
                } else {
                    *links[cv].entry(cw).or_insert(0.0) += wt;
                }
            }
        }
        Level {
            neighbors: links.into_iter().map(|m| m.into_iter().collect()).collect(),
            inner,
        }
    }
}

/// Renumbers labels as 0, 1, … in order of first appearance.
fn compact(labels: &mut [usize]) -> usize {
    let mut map = std::collections::HashMap::new();
    for label in labels.iter_mut() {
        let next = map.len();
        *label = *map.entry(*label).or_insert(next);
    }
    map.len()
}

/// Local-moving phase. Returns whether any node changed community.
fn move_nodes(level: &Level, community: &mut [usize], total: f64, rng: &mut impl rand::Rng) -> bool {
    let n = level.len();
    let strength: Vec<f64> = (0..n).map(|v| level.strength(v)).collect();
    let mut tot = vec![0.0; n];
    for v in 0..n {
        tot[community[v]] += strength[v];
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);

    let mut link = vec![0.0; n];
    let mut touched = Vec::new();
    let mut moved_any = false;
    loop {
        let mut moved = false;
        for &v in &order {
            let home = community[v];
            for &(w, wt) in &level.neighbors[v] {
                let c = community[w];
                if link[c] == 0.0 {
                    touched.push(c);
                }
                link[c] += wt;
            }
            tot[home] -= strength[v];
            let gain = |c: usize, link_c: f64| (link_c - tot[c] * strength[v] / (2.0 * total)) / total;
            let home_gain = gain(home, link[home]);
            let mut best = (home, home_gain);
            for &c in &touched {
                let g = gain(c, link[c]);
                if g > best.1 || (g == best.1 && c < best.0) {
                    best = (c, g);
                }
            }
            let target = if best.0 != home && best.1 - home_gain > MIN_GAIN {
                best.0
            } else {
                home
            };
            tot[target] += strength[v];
            if target != home {
                community[v] = target;
                moved = true;
            }
            for &c in &touched {
                link[c] = 0.0;
            }
            touched.clear();
        }
        if !moved {
            break;
        }
        moved_any = true;
    }
    moved_any
}

/// Louvain community detection.
///
/// Alternates local moves (in a seeded shuffled order, ties toward the
/// lowest community id, moves only for gains above [`MIN_GAIN`]) with
/// aggregation, until a local-moving phase changes nothing. The reported
/// `q` is evaluated on the final aggregated graph.
pub fn louvain(g: &Graph, seed: Seed) -> Partition {
    let n = g.node_count();
    let total = g.total_weight();
    let mut assignment: Vec<usize> = (0..n).collect();
    if total == 0.0 {
        return Partition { assignment, q: 0.0 };
    }
    let mut rng = seed.rng();
    let mut level = Level::from_graph(g);
    loop {
        let mut community: Vec<usize> = (0..level.len()).collect();
        let moved = move_nodes(&level, &mut community, total, &mut rng);
        if !moved {
            break;
        }
        let count = compact(&mut community);
        for a in assignment.iter_mut() {
            *a = community[*a];
        }
        level = level.aggregate(&community, count);
    }
    compact(&mut assignment);
    let q = (0..level.len())
        .map(|c| level.inner[c] / total - (level.strength(c) / (2.0 * total)).powi(2))
        .sum();
    Partition { assignment, q }
}
