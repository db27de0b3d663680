//! Random graph models with parameters matched to a target network.
//!
//! Four families are supported: preferential attachment (PA), binomial
//! G(n, p) (ER), Chung-Lu expected-degree graphs (CL) and the configuration
//! model (CFG). All generators return simple, unweighted graphs and are
//! deterministic in their [`Seed`].

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{binomial, Graph, GraphBuilder};
use crate::rng::Seed;

/// Random graph family. Declaration order is the report order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ModelKind {
    #[serde(rename = "PA")]
    Pa,
    #[serde(rename = "CL")]
    Cl,
    #[serde(rename = "ER")]
    Er,
    #[serde(rename = "CFG")]
    Cfg,
}

impl ModelKind {
    pub const ALL: [ModelKind; 4] = [ModelKind::Pa, ModelKind::Cl, ModelKind::Er, ModelKind::Cfg];

    pub fn name(self) -> &'static str {
        match self {
            ModelKind::Pa => "PA",
            ModelKind::Cl => "CL",
            ModelKind::Er => "ER",
            ModelKind::Cfg => "CFG",
        }
    }

    /// Position in [`ModelKind::ALL`]; used as the class label in `learn`.
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Option<ModelKind> {
        Self::ALL.get(i).copied()
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ModelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "pa" => Ok(ModelKind::Pa),
            "cl" => Ok(ModelKind::Cl),
            "er" => Ok(ModelKind::Er),
            "cfg" => Ok(ModelKind::Cfg),
            other => Err(Error::InvalidParameter(format!("unknown model `{other}`"))),
        }
    }
}

/// Parameters of one model, matched to a target graph.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model")]
pub enum ModelParams {
    #[serde(rename = "PA")]
    PreferentialAttachment { n: usize, m: usize },
    #[serde(rename = "ER")]
    ErdosRenyi { n: usize, p: f64 },
    /// Expected degrees `w`.
    #[serde(rename = "CL")]
    ChungLu { n: usize, w: Vec<f64> },
    /// Exact target degrees.
    #[serde(rename = "CFG")]
    Configuration { n: usize, w: Vec<usize> },
}

impl ModelParams {
    pub fn kind(&self) -> ModelKind {
        match self {
            ModelParams::PreferentialAttachment { .. } => ModelKind::Pa,
            ModelParams::ErdosRenyi { .. } => ModelKind::Er,
            ModelParams::ChungLu { .. } => ModelKind::Cl,
            ModelParams::Configuration { .. } => ModelKind::Cfg,
        }
    }

    pub fn node_count(&self) -> usize {
        match *self {
            ModelParams::PreferentialAttachment { n, .. }
            | ModelParams::ErdosRenyi { n, .. }
            | ModelParams::ChungLu { n, .. }
            | ModelParams::Configuration { n, .. } => n,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            &ModelParams::PreferentialAttachment { n, m } => {
                if m == 0 || m >= n {
                    return Err(Error::InvalidParameter(format!(
                        "PA needs 1 <= m < n, got m={m}, n={n}"
                    )));
                }
            }
            &ModelParams::ErdosRenyi { p, .. } => {
                if !(0.0..=1.0).contains(&p) {
                    return Err(Error::InvalidParameter(format!("ER needs p in [0,1], got {p}")));
                }
            }
            ModelParams::ChungLu { n, w } => {
                if w.len() != *n || w.iter().any(|&x| !(x.is_finite() && x >= 0.0)) {
                    return Err(Error::InvalidParameter(
                        "CL needs n non-negative expected degrees".into(),
                    ));
                }
            }
            ModelParams::Configuration { n, w } => {
                if w.len() != *n {
                    return Err(Error::InvalidParameter("CFG needs n degrees".into()));
                }
                if w.iter().sum::<usize>() % 2 == 1 {
                    return Err(Error::InvalidParameter("CFG degree sum is odd".into()));
                }
                if w.iter().any(|&d| d + 1 > *n) {
                    return Err(Error::InvalidParameter("CFG degree exceeds n - 1".into()));
                }
            }
        }
        Ok(())
    }
}

/// Fits `model` to `g` (treated as unweighted).
///
/// PA solves `2/n + 2m = 2|E|/n` for `m`, rounds to the nearest integer and
/// clamps to at least 1. ER uses the edge density. CL and CFG take the exact
/// degree sequence.
pub fn match_parameters(g: &Graph, model: ModelKind) -> Result<ModelParams> {
    let n = g.node_count();
    if n < 2 {
        return Err(Error::GraphTooSmall { required: 2, actual: n });
    }
    let edges = g.edge_count();
    let params = match model {
        ModelKind::Pa => {
            if edges == 0 {
                return Err(Error::InvalidParameter(
                    "cannot fit preferential attachment to an edgeless graph".into(),
                ));
            }
            let m = ((edges as f64 - 1.0) / n as f64).round().max(1.0) as usize;
            ModelParams::PreferentialAttachment { n, m: m.min(n - 1) }
        }
        ModelKind::Er => ModelParams::ErdosRenyi {
            n,
            p: edges as f64 / binomial(n, 2) as f64,
        },
        ModelKind::Cl => ModelParams::ChungLu {
            n,
            w: g.degrees().into_iter().map(|d| d as f64).collect(),
        },
        ModelKind::Cfg => ModelParams::Configuration { n, w: g.degrees() },
    };
    Ok(params)
}

/// Preferential attachment grown from a clique on `m + 1` nodes.
///
/// Each arriving node picks `m` distinct targets with probability
/// proportional to their degree before its arrival (draw, reject repeats).
pub fn gen_pa(n: usize, m: usize, seed: Seed) -> Result<Graph> {
    ModelParams::PreferentialAttachment { n, m }.validate()?;
    let mut rng = seed.rng();
    let mut builder = GraphBuilder::with_nodes(n);
    // Every edge endpoint, so a uniform pick is degree-proportional.
    let mut endpoints: Vec<usize> = Vec::with_capacity(2 * (m * n));
    for u in 0..=m {
        for v in (u + 1)..=m {
            builder.add_edge(u, v, 1.0)?;
            endpoints.extend([u, v]);
        }
    }
    let mut targets = Vec::with_capacity(m);
    for t in (m + 1)..n {
        targets.clear();
        while targets.len() < m {
            let candidate = endpoints[rng.gen_range(0..endpoints.len())];
            if !targets.contains(&candidate) {
                targets.push(candidate);
            }
        }
        for &v in &targets {
            builder.add_edge(t, v, 1.0)?;
            endpoints.extend([t, v]);
        }
    }
    Ok(builder.build())
}

/// G(n, p): each pair independently with probability `p`.
pub fn gen_er(n: usize, p: f64, seed: Seed) -> Result<Graph> {
    ModelParams::ErdosRenyi { n, p }.validate()?;
    let mut rng = seed.rng();
    let mut builder = GraphBuilder::with_nodes(n);
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.gen::<f64>() < p {
                builder.add_edge(u, v, 1.0)?;
            }
        }
    }
    Ok(builder.build())
}

/// Edge probability used by [`gen_cl`]: `min(1, w_i w_j / Σw)`.
pub fn chung_lu_probability(w: &[f64], total: f64, i: usize, j: usize) -> f64 {
    if total <= 0.0 {
        0.0
    } else {
        (w[i] * w[j] / total).min(1.0)
    }
}

/// Chung-Lu graph with expected degrees `w` and normalizer `C = Σw`.
pub fn gen_cl(w: &[f64], seed: Seed) -> Result<Graph> {
    let n = w.len();
    ModelParams::ChungLu { n, w: w.to_vec() }.validate()?;
    let total: f64 = w.iter().sum();
    let mut rng = seed.rng();
    let mut builder = GraphBuilder::with_nodes(n);
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.gen::<f64>() < chung_lu_probability(w, total, i, j) {
                builder.add_edge(i, j, 1.0)?;
            }
        }
    }
    Ok(builder.build())
}

/// Configuration-model sample plus the number of stub pairs thrown away.
#[derive(Debug, Clone)]
pub struct ConfigurationSample {
    pub graph: Graph,
    pub self_loops: usize,
    pub multi_edges: usize,
}

impl ConfigurationSample {
    pub fn discarded(&self) -> usize {
        self.self_loops + self.multi_edges
    }
}

/// Uniform stub matching; self-loops and repeated pairs are discarded.
pub fn gen_cfg(w: &[usize], seed: Seed) -> Result<ConfigurationSample> {
    let n = w.len();
    ModelParams::Configuration { n, w: w.to_vec() }.validate()?;
    let mut stubs: Vec<usize> = w
        .iter()
        .enumerate()
        .flat_map(|(v, &d)| std::iter::repeat_n(v, d))
        .collect();
    stubs.shuffle(&mut seed.rng());

    let mut builder = GraphBuilder::with_nodes(n);
    let mut seen = std::collections::HashSet::new();
    let (mut self_loops, mut multi_edges) = (0, 0);
    for pair in stubs.chunks_exact(2) {
        let (u, v) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
        if u == v {
            self_loops += 1;
        } else if !seen.insert((u, v)) {
            multi_edges += 1;
        } else {
            builder.add_edge(u, v, 1.0)?;
        }
    }
    Ok(ConfigurationSample {
        graph: builder.build(),
        self_loops,
        multi_edges,
    })
}

/// Draws one graph from `params`.
pub fn generate(params: &ModelParams, seed: Seed) -> Result<Graph> {
    match params {
        &ModelParams::PreferentialAttachment { n, m } => gen_pa(n, m, seed),
        &ModelParams::ErdosRenyi { n, p } => gen_er(n, p, seed),
        ModelParams::ChungLu { w, .. } => gen_cl(w, seed),
        ModelParams::Configuration { w, .. } => gen_cfg(w, seed).map(|s| s.graph),
    }
}

/// `count` graphs; sample `i` uses `seed.derive(i)`.
pub fn generate_batch(params: &ModelParams, seed: Seed, count: usize) -> Result<Vec<Graph>> {
    params.validate()?;
    (0..count)
        .into_par_iter()
        .map(|i| generate(params, seed.derive(i as u64)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pa_matching_arithmetic() {
        // n = 62, |E| = 575: m = round(574 / 62) = round(9.26) = 9.
        let mut b = GraphBuilder::with_nodes(62);
        let mut count = 0;
        'outer: for u in 0..62 {
            for v in (u + 1)..62 {
                if count == 575 {
                    break 'outer;
                }
                b.add_edge(u, v, 1.0).unwrap();
                count += 1;
            }
        }
        let target = b.build();
        assert_eq!(
            match_parameters(&target, ModelKind::Pa).unwrap(),
            ModelParams::PreferentialAttachment { n: 62, m: 9 }
        );
        match match_parameters(&target, ModelKind::Er).unwrap() {
            ModelParams::ErdosRenyi { p, .. } => {
                assert!((p - 575.0 / 1891.0).abs() < 1e-15);
                assert!((p - 0.304).abs() < 0.001);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn degree_sequence_models_copy_degrees() {
        let g = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2)]).unwrap();
        assert_eq!(
            match_parameters(&g, ModelKind::Cl).unwrap(),
            ModelParams::ChungLu {
                n: 4,
                w: vec![3.0, 2.0, 2.0, 1.0]
            }
        );
        assert_eq!(
            match_parameters(&g, ModelKind::Cfg).unwrap(),
            ModelParams::Configuration {
                n: 4,
                w: vec![3, 2, 2, 1]
            }
        );
    }

    #[test]
    fn pa_rejects_edgeless_and_bad_m() {
        assert!(match_parameters(&Graph::empty(5), ModelKind::Pa).is_err());
        assert!(match_parameters(&Graph::empty(1), ModelKind::Er).is_err());
        assert!(gen_pa(5, 0, Seed(0)).is_err());
        assert!(gen_pa(5, 5, Seed(0)).is_err());
    }

    #[test]
    fn pa_small_is_a_tree() {
        for s in 0..20 {
            let g = gen_pa(3, 1, Seed(s)).unwrap();
            assert_eq!(g.edge_count(), 2);
            assert_eq!(g.components(), vec![0, 0, 0]);
        }
    }

    #[test]
    fn pa_edge_count_is_exact() {
        let g = gen_pa(100, 5, Seed(9)).unwrap();
        assert_eq!(g.edge_count(), 485);
    }

    #[test]
    fn er_extremes() {
        assert_eq!(gen_er(10, 0.0, Seed(3)).unwrap().edge_count(), 0);
        assert_eq!(gen_er(10, 1.0, Seed(3)).unwrap().edge_count(), 45);
        assert!(gen_er(10, 1.5, Seed(3)).is_err());
    }

    #[test]
    fn cl_probabilities() {
        let w = [2.0, 2.0, 2.0];
        assert!((chung_lu_probability(&w, 6.0, 0, 1) - 2.0 / 3.0).abs() < 1e-15);
        // Equal weights c reduce to ER with p = c / n.
        let c = 3.0;
        let w = vec![c; 10];
        assert!((chung_lu_probability(&w, 30.0, 2, 7) - c / 10.0).abs() < 1e-15);
        assert_eq!(gen_cl(&[0.0; 5], Seed(1)).unwrap().edge_count(), 0);
    }

    #[test]
    fn cfg_basics() {
        let s = gen_cfg(&[1, 1], Seed(5)).unwrap();
        assert_eq!(s.graph.edge_count(), 1);
        assert_eq!(s.discarded(), 0);
        assert!(gen_cfg(&[1, 2], Seed(5)).is_err());
        assert!(gen_cfg(&[3, 1], Seed(5)).is_err());
    }

    #[test]
    fn cfg_triangle_degrees_never_exceeded() {
        // 6 stubs have 15 perfect matchings; 8 of them give K3.
        let mut k3 = 0;
        for s in 0..300 {
            let sample = gen_cfg(&[2, 2, 2], Seed(s)).unwrap();
            let g = &sample.graph;
            assert!(g.degrees().iter().all(|&d| d <= 2));
            assert_eq!(g.edge_count() + sample.discarded(), 3);
            if g.edge_count() == 3 {
                k3 += 1;
            }
        }
        // Binomial(300, 8/15): mean 160, sd ~8.6.
        assert!((134..=186).contains(&k3), "K3 count {k3}");
    }

    #[test]
    fn batches_are_deterministic() {
        let params = ModelParams::ChungLu {
            n: 6,
            w: vec![1.0, 2.0, 3.0, 2.0, 1.0, 1.0],
        };
        let a = generate_batch(&params, Seed(11), 5).unwrap();
        let b = generate_batch(&params, Seed(11), 5).unwrap();
        assert_eq!(a, b);
        assert_eq!(a[3], generate(&params, Seed(11).derive(3)).unwrap());
    }

    #[test]
    fn params_serialize_with_model_tag() {
        let json = serde_json::to_string(&ModelParams::PreferentialAttachment { n: 62, m: 9 }).unwrap();
        assert_eq!(json, r#"{"model":"PA","n":62,"m":9}"#);
        assert_eq!("cfg".parse::<ModelKind>().unwrap(), ModelKind::Cfg);
    }
}
