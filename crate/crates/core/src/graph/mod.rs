//! Undirected, optionally weighted simple graphs.
//!
//! A [`Graph`] is built once through [`GraphBuilder`] and never mutated
//! afterwards. Node ids are dense (`0..n`), every node carries a label, and
//! every edge has a strictly positive weight. Parallel edges offered to the
//! builder are merged by summing their weights.

mod gexf;
mod io;
mod stats;

pub use gexf::{read_gexf, write_gexf};
pub use io::{load_edge_csv, load_edge_list, read_edge_csv_file, write_edge_csv, write_node_csv};
pub use stats::{global_stats, local_clustering, GraphStats};

use std::collections::{BTreeMap, VecDeque};

use crate::error::{Error, Result};

/// One undirected edge with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub weight: f64,
}

/// Immutable undirected simple graph with positive edge weights.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    labels: Vec<String>,
    adjacency: Vec<Vec<(usize, f64)>>,
    edges: Vec<Edge>,
}

impl Graph {
    /// Graph on `n` nodes without edges; labels are the decimal ids.
    pub fn empty(n: usize) -> Self {
        GraphBuilder::with_nodes(n).build()
    }

    /// Builds a unit-weight graph from an edge list on `n` nodes.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut builder = GraphBuilder::with_nodes(n);
        for &(u, v) in edges {
            builder.add_edge(u, v, 1.0)?;
        }
        Ok(builder.build())
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Edges sorted by `(u, v)` with `u < v`.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Neighbours of `v` with edge weights, sorted by neighbour id.
    pub fn neighbors(&self, v: usize) -> &[(usize, f64)] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(Vec::len).collect()
    }

    /// Sum of incident edge weights.
    pub fn weighted_degree(&self, v: usize) -> f64 {
        self.adjacency[v].iter().map(|&(_, w)| w).sum()
    }

    pub fn total_weight(&self) -> f64 {
        self.edges.iter().map(|e| e.weight).sum()
    }

    pub fn weight(&self, u: usize, v: usize) -> Option<f64> {
        let row = self.adjacency.get(u)?;
        row.binary_search_by_key(&v, |&(x, _)| x).ok().map(|i| row[i].1)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.weight(u, v).is_some()
    }

    /// Same topology with every weight set to 1.
    pub fn unweighted(&self) -> Graph {
        let mut builder = GraphBuilder::new();
        for label in &self.labels {
            builder.add_node(label.clone());
        }
        for e in &self.edges {
            builder.insert_unchecked(e.u, e.v, 1.0);
        }
        builder.build()
    }

    /// Graph whose edges are exactly the non-edges of `self`, all with weight 1.
    pub fn complement(&self) -> Graph {
        let n = self.node_count();
        let mut builder = GraphBuilder::new();
        for label in &self.labels {
            builder.add_node(label.clone());
        }
        for u in 0..n {
            let row = &self.adjacency[u];
            let mut k = row.partition_point(|&(x, _)| x <= u);
            for v in (u + 1)..n {
                if k < row.len() && row[k].0 == v {
                    k += 1;
                } else {
                    builder.insert_unchecked(u, v, 1.0);
                }
            }
        }
        builder.build()
    }

    /// Relabels node `v` as `perm[v]`; labels travel with their nodes.
    pub fn permuted(&self, perm: &[usize]) -> Result<Graph> {
        let n = self.node_count();
        if perm.len() != n {
            return Err(Error::InvalidParameter(format!(
                "permutation has length {}, graph has {n} nodes",
                perm.len()
            )));
        }
        let mut seen = vec![false; n];
        for &p in perm {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidParameter("not a permutation".into()));
            }
        }
        let mut labels = vec![String::new(); n];
        for (v, &p) in perm.iter().enumerate() {
            labels[p] = self.labels[v].clone();
        }
        let mut builder = GraphBuilder::new();
        for label in labels {
            builder.add_node(label);
        }
        for e in &self.edges {
            builder.insert_unchecked(perm[e.u], perm[e.v], e.weight);
        }
        Ok(builder.build())
    }

    /// Unweighted BFS distances from `source`; `None` marks unreachable nodes.
    pub fn hop_distances(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.node_count()];
        let mut queue = VecDeque::new();
        dist[source] = Some(0);
        queue.push_back(source);
        while let Some(v) = queue.pop_front() {
            let d = dist[v].unwrap_or_default();
            for &(w, _) in &self.adjacency[v] {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Connected component id per node, numbered by lowest member.
    pub fn components(&self) -> Vec<usize> {
        let n = self.node_count();
        let mut comp = vec![usize::MAX; n];
        let mut next = 0;
        let mut stack = Vec::new();
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            comp[start] = next;
            stack.push(start);
            while let Some(v) = stack.pop() {
                for &(w, _) in &self.adjacency[v] {
                    if comp[w] == usize::MAX {
                        comp[w] = next;
                        stack.push(w);
                    }
                }
            }
            next += 1;
        }
        comp
    }
}

/// Accumulates nodes and edges, merging parallel edges by weight summation.
#[derive(Debug, Default, Clone)]
pub struct GraphBuilder {
    labels: Vec<String>,
    weights: BTreeMap<(usize, usize), f64>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builder pre-populated with `n` nodes labelled `0..n`.
    pub fn with_nodes(n: usize) -> Self {
        Self {
            labels: (0..n).map(|i| i.to_string()).collect(),
            weights: BTreeMap::new(),
        }
    }

    pub fn add_node(&mut self, label: impl Into<String>) -> usize {
        self.labels.push(label.into());
        self.labels.len() - 1
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn add_edge(&mut self, u: usize, v: usize, weight: f64) -> Result<()> {
        let n = self.labels.len();
        for x in [u, v] {
            if x >= n {
                return Err(Error::UnknownNode(x.to_string()));
            }
        }
        if u == v {
            return Err(Error::SelfLoop(self.labels[u].clone()));
        }
        if !(weight.is_finite() && weight > 0.0) {
            return Err(Error::InvalidWeight(weight.to_string()));
        }
        self.insert_unchecked(u, v, weight);
        Ok(())
    }

    fn insert_unchecked(&mut self, u: usize, v: usize, weight: f64) {
        let key = if u < v { (u, v) } else { (v, u) };
        *self.weights.entry(key).or_insert(0.0) += weight;
    }

    pub fn build(self) -> Graph {
        let n = self.labels.len();
        let mut adjacency = vec![Vec::new(); n];
        let mut edges = Vec::with_capacity(self.weights.len());
        for (&(u, v), &weight) in &self.weights {
            adjacency[u].push((v, weight));
            adjacency[v].push((u, weight));
            edges.push(Edge { u, v, weight });
        }
        for row in &mut adjacency {
            row.sort_unstable_by_key(|&(x, _)| x);
        }
        Graph {
            labels: self.labels,
            adjacency,
            edges,
        }
    }
}

/// `n choose k` as an exact integer.
pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(n: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in (u + 1)..n {
                edges.push((u, v));
            }
        }
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn parallel_edges_merge_by_sum() {
        let mut b = GraphBuilder::with_nodes(2);
        b.add_edge(0, 1, 1.0).unwrap();
        b.add_edge(1, 0, 2.0).unwrap();
        let g = b.build();
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.weight(0, 1), Some(3.0));
        assert_eq!(g.weight(1, 0), Some(3.0));
    }

    #[test]
    fn rejects_self_loops_and_bad_weights() {
        let mut b = GraphBuilder::with_nodes(2);
        assert!(matches!(b.add_edge(0, 0, 1.0), Err(Error::SelfLoop(_))));
        assert!(matches!(b.add_edge(0, 1, 0.0), Err(Error::InvalidWeight(_))));
        assert!(matches!(b.add_edge(0, 1, -1.0), Err(Error::InvalidWeight(_))));
        assert!(matches!(b.add_edge(0, 1, f64::NAN), Err(Error::InvalidWeight(_))));
        assert!(matches!(b.add_edge(0, 5, 1.0), Err(Error::UnknownNode(_))));
    }

    #[test]
    fn complement_of_k4_is_empty() {
        let c = k(4).complement();
        assert_eq!(c.node_count(), 4);
        assert_eq!(c.edge_count(), 0);
    }

    #[test]
    fn complement_of_empty_is_complete() {
        let c = Graph::empty(5).complement();
        assert_eq!(c, k(5));
    }

    #[test]
    fn complement_is_an_involution() {
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 5), (3, 4), (0, 5)]).unwrap();
        assert_eq!(g.complement().complement(), g);
    }

    #[test]
    fn degree_sum_is_twice_edge_count() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]).unwrap();
        let total: usize = g.degrees().iter().sum();
        assert_eq!(total, 2 * g.edge_count());
    }

    #[test]
    fn permutation_preserves_structure() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let p = g.permuted(&[3, 2, 1, 0]).unwrap();
        assert!(p.has_edge(3, 2) && p.has_edge(2, 1) && p.has_edge(1, 0));
        assert_eq!(p.label(3), "0");
        assert!(g.permuted(&[0, 0, 1, 2]).is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(6, 4), 15);
        assert_eq!(binomial(62, 2), 1891);
        assert_eq!(binomial(3, 4), 0);
        assert_eq!(binomial(200, 4), 64_684_950);
    }

    #[test]
    fn components_and_distances() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (3, 4)]).unwrap();
        assert_eq!(g.components(), vec![0, 0, 0, 1, 1]);
        assert_eq!(g.hop_distances(0), vec![Some(0), Some(1), Some(2), None, None]);
    }
}
