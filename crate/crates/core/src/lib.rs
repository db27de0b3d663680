//! Character network mining and random-graph model selection.
//!
//! The crate turns raw text into weighted character co-occurrence networks
//! ([`extract`]), computes centralities and communities on them
//! ([`analytics`]), and decides which random graph family best explains a
//! network ([`genmodels`], [`features`], [`learn`]).

pub mod analytics;
pub mod error;
pub mod extract;
pub mod features;
pub mod genmodels;
pub mod graph;
pub mod learn;
pub mod rng;

pub use error::{Error, Result};
pub use genmodels::{ModelKind, ModelParams};
pub use graph::{Graph, GraphBuilder, GraphStats};
pub use rng::Seed;
