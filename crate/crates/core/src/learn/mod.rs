//! Classifiers and the model-selection protocol.
//!
//! Everything here works on standardized feature rows with class indices
//! `0..K`; model selection uses `K = 4` in [`ModelKind`](crate::ModelKind)
//! order. Scores are comparable within one classifier only.

mod boost;
mod cv;
mod data;
mod forest;
mod select;
mod svm;
mod tree;

pub use boost::{boost_scores, train_adaboost, BoostModel, BoostStage, DEFAULT_DEPTH, DEFAULT_ROUNDS};
pub use cv::{
    class_metrics, cross_validate_select, macro_f1, stratified_kfold, train_classifier, ClassMetrics, Classifier,
    ClassifierKind, CvOutcome, Hyperparams, DEFAULT_FOLDS,
};
pub use data::{standardize_fit, Dataset, Standardizer, MIN_STD};
pub use forest::{forest_scores, train_forest, ForestModel, DEFAULT_TREES};
pub use select::{
    select_model, training_set, ClassifierResult, HoldoutResult, PerModel, SelectConfig, SelectionReport, TrainingSet,
    DEFAULT_SAMPLES, MIN_SELECT_NODES,
};
pub use svm::{
    svm_scores, train_svm, Hyperplane, HyperplaneModel, Regularization, SvmScores, SVM_EPOCHS, SVM_RESTARTS,
};
pub use tree::DecisionTree;

/// Index of the first maximum.
pub fn argmax(values: &[f64]) -> usize {
    let mut best = 0;
    for (i, &v) in values.iter().enumerate().skip(1) {
        if v > values[best] {
            best = i;
        }
    }
    best
}
