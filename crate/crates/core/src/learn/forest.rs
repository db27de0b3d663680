use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::data::Dataset;
use super::tree::{grow_tree, DecisionTree, TreeParams};
use crate::error::{Error, Result};
use crate::rng::Seed;

pub const DEFAULT_TREES: usize = 100;

/// Bagged CART ensemble with `⌈√d⌉` candidate features per split.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ForestModel {
    pub trees: Vec<DecisionTree>,
    pub max_features: usize,
    pub seed: Seed,
    /// Accuracy of out-of-bag votes over rows left out by at least one tree.
    pub oob_accuracy: Option<f64>,
}

impl ForestModel {
    pub fn trees_count(&self) -> usize {
        self.trees.len()
    }
}

pub fn train_forest(data: &Dataset, trees: usize, seed: Seed) -> Result<ForestModel> {
    if data.is_empty() {
        return Err(Error::InvalidData("empty training set".into()));
    }
    let n = data.len();
    let max_features = (data.dim() as f64).sqrt().ceil().max(1.0) as usize;
    let params = TreeParams {
        max_depth: None,
        max_features,
    };
    let grown: Vec<(DecisionTree, Vec<f64>)> = (0..trees)
        .into_par_iter()
        .map(|t| {
            let mut rng = seed.derive(t as u64).rng();
            let mut counts = vec![0.0; n];
            for _ in 0..n {
                counts[rng.gen_range(0..n)] += 1.0;
            }
            let tree = grow_tree(data.rows(), data.labels(), &counts, data.classes(), params, &mut rng);
            (tree, counts)
        })
        .collect();

    let mut votes = vec![vec![0.0; data.classes()]; n];
    let mut voted = vec![false; n];
    for (tree, counts) in &grown {
        for i in (0..n).filter(|&i| counts[i] == 0.0) {
            let dist = tree.distribution(&data.rows()[i]);
            votes[i].iter_mut().zip(dist).for_each(|(v, p)| *v += p);
            voted[i] = true;
        }
    }
    let scored = voted.iter().filter(|&&v| v).count();
    let oob_accuracy = (scored > 0).then(|| {
        let hits = (0..n)
            .filter(|&i| voted[i] && super::argmax(&votes[i]) == data.labels()[i])
            .count();
        hits as f64 / scored as f64
    });

    Ok(ForestModel {
        trees: grown.into_iter().map(|(t, _)| t).collect(),
        max_features,
        seed,
        oob_accuracy,
    })
}

/// Mean of the trees' leaf class distributions.
pub fn forest_scores(model: &ForestModel, x: &[f64]) -> Result<Vec<f64>> {
    let first = model
        .trees
        .first()
        .ok_or_else(|| Error::InvalidParameter("forest has no trees".into()))?;
    let mut scores = vec![0.0; first.distribution(x).len()];
    for tree in &model.trees {
        scores.iter_mut().zip(tree.distribution(x)).for_each(|(s, p)| *s += p);
    }
    let t = model.trees.len() as f64;
    scores.iter_mut().for_each(|s| *s /= t);
    Ok(scores)
}
