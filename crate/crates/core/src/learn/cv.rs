use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rayon::prelude::*;
use serde::Serialize;

use super::boost::{boost_scores, train_adaboost, BoostModel};
use super::data::Dataset;
use super::forest::{forest_scores, train_forest, ForestModel};
use super::svm::{svm_scores, train_svm, HyperplaneModel, Regularization};
use crate::error::{Error, Result};
use crate::rng::Seed;

pub const DEFAULT_FOLDS: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ClassifierKind {
    #[serde(rename = "SVM-l2")]
    SvmL2,
    #[serde(rename = "SVM-l1")]
    SvmL1,
    Forest,
    AdaBoost,
}

impl ClassifierKind {
    pub const ALL: [ClassifierKind; 4] = [
        ClassifierKind::SvmL2,
        ClassifierKind::SvmL1,
        ClassifierKind::Forest,
        ClassifierKind::AdaBoost,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ClassifierKind::SvmL2 => "SVM-l2",
            ClassifierKind::SvmL1 => "SVM-l1",
            ClassifierKind::Forest => "Forest",
            ClassifierKind::AdaBoost => "AdaBoost",
        }
    }

    /// Hyperparameter grid searched by [`cross_validate_select`].
    pub fn default_grid(self) -> Vec<Hyperparams> {
        match self {
            ClassifierKind::SvmL2 | ClassifierKind::SvmL1 => [0.01, 0.1, 1.0, 10.0, 100.0]
                .into_iter()
                .map(|c| Hyperparams::Svm { c })
                .collect(),
            ClassifierKind::Forest => [50, 100, 200]
                .into_iter()
                .map(|trees| Hyperparams::Forest { trees })
                .collect(),
            ClassifierKind::AdaBoost => [25, 50, 100]
                .into_iter()
                .flat_map(|rounds| [1, 2].map(|depth| Hyperparams::Boost { rounds, depth }))
                .collect(),
        }
    }
}

impl fmt::Display for ClassifierKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ClassifierKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ClassifierKind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidParameter(format!("unknown classifier `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Hyperparams {
    Svm { c: f64 },
    Forest { trees: usize },
    Boost { rounds: usize, depth: usize },
}

impl Hyperparams {
    /// Smaller is more regularized.
    fn complexity(&self) -> (f64, usize) {
        match *self {
            Hyperparams::Svm { c } => (c, 0),
            Hyperparams::Forest { trees } => (trees as f64, 0),
            Hyperparams::Boost { rounds, depth } => (rounds as f64, depth),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Classifier {
    Svm(HyperplaneModel),
    Forest(ForestModel),
    Boost(BoostModel),
}

pub fn train_classifier(kind: ClassifierKind, hyper: Hyperparams, data: &Dataset, seed: Seed) -> Result<Classifier> {
    match (kind, hyper) {
        (ClassifierKind::SvmL2, Hyperparams::Svm { c }) => {
            train_svm(data, Regularization::L2, c, seed).map(Classifier::Svm)
        }
        (ClassifierKind::SvmL1, Hyperparams::Svm { c }) => {
            train_svm(data, Regularization::L1, c, seed).map(Classifier::Svm)
        }
        (ClassifierKind::Forest, Hyperparams::Forest { trees }) => {
            train_forest(data, trees, seed).map(Classifier::Forest)
        }
        (ClassifierKind::AdaBoost, Hyperparams::Boost { rounds, depth }) => {
            train_adaboost(data, rounds, depth, seed).map(Classifier::Boost)
        }
        _ => Err(Error::InvalidParameter(format!(
            "hyperparameters {hyper:?} do not fit {kind}"
        ))),
    }
}

impl Classifier {
    /// Per-class confidence; only the argmax is comparable across classes.
    pub fn scores(&self, x: &[f64]) -> Result<Vec<f64>> {
        match self {
            Classifier::Svm(m) => svm_scores(m, x).map(|s| s.scores),
            Classifier::Forest(m) => forest_scores(m, x),
            Classifier::Boost(m) => Ok(boost_scores(m, x)),
        }
    }

    pub fn predict(&self, x: &[f64]) -> Result<usize> {
        self.scores(x).map(|s| super::argmax(&s))
    }
}

/// Fold index per sample. Each class is shuffled and dealt round-robin,
/// continuing the deal across classes so fold sizes stay balanced.
pub fn stratified_kfold(labels: &[usize], k: usize, seed: Seed) -> Result<Vec<usize>> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!("need at least 2 folds, got {k}")));
    }
    let classes = labels.iter().max().map_or(0, |&m| m + 1);
    let mut rng = seed.rng();
    let mut folds = vec![0; labels.len()];
    let mut dealt = 0;
    for class in 0..classes {
        let mut members: Vec<usize> = (0..labels.len()).filter(|&i| labels[i] == class).collect();
        if members.is_empty() {
            continue;
        }
        if members.len() < k {
            return Err(Error::InvalidData(format!(
                "class {class} has {} members, fewer than {k} folds",
                members.len()
            )));
        }
        members.shuffle(&mut rng);
        for i in members {
            folds[i] = dealt % k;
            dealt += 1;
        }
    }
    Ok(folds)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CvOutcome {
    pub best: Hyperparams,
    /// Pooled validation accuracy per grid point, in grid order.
    pub accuracies: Vec<f64>,
}

/// Stratified k-fold grid search. Accuracy ties go to the more
/// regularized point (smaller C, fewer trees or rounds, shallower trees).
pub fn cross_validate_select(
    data: &Dataset,
    kind: ClassifierKind,
    grid: &[Hyperparams],
    folds: usize,
    seed: Seed,
) -> Result<CvOutcome> {
    if grid.is_empty() {
        return Err(Error::InvalidParameter("empty hyperparameter grid".into()));
    }
    let assignment = stratified_kfold(data.labels(), folds, seed)?;
    let split: Vec<(Dataset, Dataset)> = (0..folds)
        .map(|f| {
            let (test, train): (Vec<usize>, Vec<usize>) = (0..data.len()).partition(|&i| assignment[i] == f);
            (data.subset(&train), data.subset(&test))
        })
        .collect();
    let jobs: Vec<(usize, usize)> = (0..grid.len()).flat_map(|g| (0..folds).map(move |f| (g, f))).collect();
    let correct: Vec<usize> = jobs
        .par_iter()
        .map(|&(g, f)| {
            let (train, test) = &split[f];
            let model = train_classifier(kind, grid[g], train, seed.derive(f as u64))?;
            let mut hits = 0;
            for (x, &l) in test.rows().iter().zip(test.labels()) {
                hits += usize::from(model.predict(x)? == l);
            }
            Ok(hits)
        })
        .collect::<Result<_>>()?;

    let mut accuracies = vec![0.0; grid.len()];
    for (&(g, _), hits) in jobs.iter().zip(correct) {
        accuracies[g] += hits as f64;
    }
    accuracies.iter_mut().for_each(|a| *a /= data.len() as f64);
    let mut best = 0;
    for g in 1..grid.len() {
        let better = accuracies[g] > accuracies[best]
            || (accuracies[g] == accuracies[best] && grid[g].complexity() < grid[best].complexity());
        if better {
            best = g;
        }
    }
    Ok(CvOutcome {
        best: grid[best],
        accuracies,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClassMetrics {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

/// One-vs-rest precision, recall and F1 per class. Empty denominators give 0.
pub fn class_metrics(truth: &[usize], predicted: &[usize], classes: usize) -> Vec<ClassMetrics> {
    (0..classes)
        .map(|c| {
            let tp = truth.iter().zip(predicted).filter(|&(&t, &p)| t == c && p == c).count() as f64;
            let predicted_c = predicted.iter().filter(|&&p| p == c).count() as f64;
            let actual_c = truth.iter().filter(|&&t| t == c).count() as f64;
            let precision = if predicted_c > 0.0 { tp / predicted_c } else { 0.0 };
            let recall = if actual_c > 0.0 { tp / actual_c } else { 0.0 };
            let f1 = if precision + recall > 0.0 {
                2.0 * precision * recall / (precision + recall)
            } else {
                0.0
            };
            ClassMetrics { precision, recall, f1 }
        })
        .collect()
}

pub fn macro_f1(metrics: &[ClassMetrics]) -> f64 {
    metrics.iter().map(|m| m.f1).sum::<f64>() / metrics.len() as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::learn::data::standardize_fit;
    use rand::Rng;

    #[test]
    fn balanced_folds() {
        let labels: Vec<usize> = (0..400).map(|i| i / 100).collect();
        let folds = stratified_kfold(&labels, 5, Seed(1)).unwrap();
        for f in 0..5 {
            for c in 0..4 {
                let n = (0..400).filter(|&i| folds[i] == f && labels[i] == c).count();
                assert_eq!(n, 20);
            }
        }
        assert_eq!(folds, stratified_kfold(&labels, 5, Seed(1)).unwrap());
        assert_ne!(folds, stratified_kfold(&labels, 5, Seed(2)).unwrap());
    }

    #[test]
    fn uneven_classes_stay_within_one() {
        let labels: Vec<usize> = (0..37).map(|i| usize::from(i >= 23)).collect();
        let folds = stratified_kfold(&labels, 5, Seed(0)).unwrap();
        for c in 0..2 {
            let total = labels.iter().filter(|&&l| l == c).count() as f64;
            for f in 0..5 {
                let n = (0..37).filter(|&i| folds[i] == f && labels[i] == c).count() as f64;
                assert!((n - total / 5.0).abs() <= 1.0);
            }
        }
        assert!(stratified_kfold(&[0, 0, 1], 2, Seed(0)).is_err());
    }

    fn blobs(seed: u64) -> Dataset {
        let mut rng = Seed(seed).rng();
        let mut rows = Vec::new();
        let mut labels = Vec::new();
        for i in 0..60 {
            let label = i % 3;
            let c = label as f64 * 4.0;
            rows.push(vec![c + rng.gen_range(-1.0..1.0), -c + rng.gen_range(-1.0..1.0)]);
            labels.push(label);
        }
        standardize_fit(&rows, &labels, 3).unwrap()
    }

    #[test]
    fn singleton_grid() {
        let data = blobs(1);
        let grid = [Hyperparams::Forest { trees: 7 }];
        let out = cross_validate_select(&data, ClassifierKind::Forest, &grid, 5, Seed(0)).unwrap();
        assert_eq!(out.best, grid[0]);
        assert!(cross_validate_select(&data, ClassifierKind::Forest, &[], 5, Seed(0)).is_err());
    }

    #[test]
    fn selection_is_argmax_with_regularized_ties() {
        let data = blobs(2);
        for kind in ClassifierKind::ALL {
            let grid = kind.default_grid();
            let out = cross_validate_select(&data, kind, &grid, 5, Seed(3)).unwrap();
            let best = grid.iter().position(|h| *h == out.best).unwrap();
            let top = out.accuracies.iter().cloned().fold(0.0, f64::max);
            // Grids run from most to least regularized.
            assert_eq!(best, out.accuracies.iter().position(|&a| a == top).unwrap());
            assert_eq!(out, cross_validate_select(&data, kind, &grid, 5, Seed(3)).unwrap());
        }
    }

    #[test]
    fn mismatched_hyperparameters() {
        let data = blobs(3);
        assert!(train_classifier(ClassifierKind::Forest, Hyperparams::Svm { c: 1.0 }, &data, Seed(0)).is_err());
    }

    #[test]
    fn metrics() {
        let truth = [0, 0, 1, 1];
        let predicted = [0, 1, 1, 1];
        let m = class_metrics(&truth, &predicted, 3);
        assert_eq!((m[0].precision, m[0].recall), (1.0, 0.5));
        assert_eq!((m[1].precision, m[1].recall), (2.0 / 3.0, 1.0));
        assert_eq!(m[2].f1, 0.0);
        assert!((m[0].f1 - 2.0 / 3.0).abs() < 1e-15);
        assert!((macro_f1(&m[..2]) - 0.7333333333333334).abs() < 1e-12);
        assert_eq!("adaboost".parse::<ClassifierKind>().unwrap(), ClassifierKind::AdaBoost);
    }
}
