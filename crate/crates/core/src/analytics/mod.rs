//! Centrality measures and community structure on weighted graphs.
//!
//! Path-based measures (closeness, betweenness) use hop counts; weights
//! enter through weighted degree, eigencentrality, PageRank and modularity.

mod centrality;
mod community;

pub use centrality::{
    all_centralities, betweenness, closeness, eigencentrality, pagerank, weighted_degree, CentralityScores, Measure,
    DEFAULT_DAMPING, DEFAULT_PAGERANK_TOLERANCE, EIGEN_TOLERANCE,
};
pub use community::{louvain, modularity, Partition, MIN_GAIN};
