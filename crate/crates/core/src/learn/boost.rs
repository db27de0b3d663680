use serde::Serialize;

use super::data::Dataset;
use super::tree::{grow_tree, DecisionTree, TreeParams};
use crate::error::{Error, Result};
use crate::rng::Seed;

pub const DEFAULT_ROUNDS: usize = 50;
pub const DEFAULT_DEPTH: usize = 2;
/// Error floor used for a perfect stage so its weight stays finite.
const ERROR_FLOOR: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoostStage {
    pub tree: DecisionTree,
    pub alpha: f64,
    /// Weighted training error of the tree when it was accepted.
    pub error: f64,
}

/// Multi-class (SAMME) boosted trees, stages in training order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoostModel {
    pub stages: Vec<BoostStage>,
    pub classes: usize,
    pub depth: usize,
}

/// Runs up to `rounds` boosting rounds with depth-limited trees.
///
/// Stops early once a tree's weighted error reaches `1 − 1/K` (the tree is
/// dropped) or hits zero (the tree is kept).
pub fn train_adaboost(data: &Dataset, rounds: usize, depth: usize, seed: Seed) -> Result<BoostModel> {
    if data.is_empty() {
        return Err(Error::InvalidData("empty training set".into()));
    }
    if depth == 0 {
        return Err(Error::InvalidParameter("tree depth must be at least 1".into()));
    }
    let n = data.len();
    let k = data.classes();
    let chance = 1.0 - 1.0 / k as f64;
    let params = TreeParams {
        max_depth: Some(depth),
        max_features: data.dim(),
    };
    let mut rng = seed.rng();
    let mut weights = vec![1.0 / n as f64; n];
    let mut stages = Vec::new();
    for _ in 0..rounds {
        let tree = grow_tree(data.rows(), data.labels(), &weights, k, params, &mut rng);
        let wrong: Vec<bool> = data
            .rows()
            .iter()
            .zip(data.labels())
            .map(|(x, &l)| tree.predict(x) != l)
            .collect();
        let total: f64 = weights.iter().sum();
        let error: f64 = weights
            .iter()
            .zip(&wrong)
            .filter(|(_, &w)| w)
            .map(|(w, _)| w)
            .sum::<f64>()
            / total;
        if error >= chance {
            break;
        }
        let perfect = error <= ERROR_FLOOR;
        let e = error.max(ERROR_FLOOR);
        let alpha = ((1.0 - e) / e).ln() + ((k - 1) as f64).ln();
        stages.push(BoostStage { tree, alpha, error });
        if perfect {
            break;
        }
        for (w, &miss) in weights.iter_mut().zip(&wrong) {
            if miss {
                *w *= alpha.exp();
            }
        }
        let sum: f64 = weights.iter().sum();
        weights.iter_mut().for_each(|w| *w /= sum);
    }
    Ok(BoostModel {
        stages,
        classes: k,
        depth,
    })
}

/// `Σ α · one-hot(stage prediction)` per class.
pub fn boost_scores(model: &BoostModel, x: &[f64]) -> Vec<f64> {
    let mut scores = vec![0.0; model.classes];
    for stage in &model.stages {
        scores[stage.tree.predict(x)] += stage.alpha;
    }
    scores
}
