use rayon::prelude::*;
use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

use super::cv::{class_metrics, cross_validate_select, macro_f1, stratified_kfold, train_classifier};
use super::cv::{ClassMetrics, ClassifierKind, Hyperparams, DEFAULT_FOLDS};
use super::data::standardize_fit;
use crate::error::{Error, Result};
use crate::features::{feature_vector, FeatureMode};
use crate::genmodels::{generate_batch, match_parameters, ModelKind, ModelParams};
use crate::graph::Graph;
use crate::rng::Seed;

pub const DEFAULT_SAMPLES: usize = 100;
pub const MIN_SELECT_NODES: usize = 5;

// Stream indices for seeds derived from the run seed.
const SPLIT_STREAM: u64 = 100;
const CV_STREAM: u64 = 101;
const TRAIN_STREAM: u64 = 200;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SelectConfig {
    pub mode: FeatureMode,
    pub seed: Seed,
    /// Graphs generated per model.
    pub samples: usize,
    pub folds: usize,
}

impl SelectConfig {
    pub fn new(mode: FeatureMode, seed: Seed) -> Self {
        Self {
            mode,
            seed,
            samples: DEFAULT_SAMPLES,
            folds: DEFAULT_FOLDS,
        }
    }
}

/// One value per random graph model, serialized under the model names.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PerModel<T> {
    #[serde(rename = "PA")]
    pub pa: T,
    #[serde(rename = "CL")]
    pub cl: T,
    #[serde(rename = "ER")]
    pub er: T,
    #[serde(rename = "CFG")]
    pub cfg: T,
}

impl<T: Copy> PerModel<T> {
    pub fn from_slice(values: &[T]) -> Self {
        Self {
            pa: values[ModelKind::Pa.index()],
            cl: values[ModelKind::Cl.index()],
            er: values[ModelKind::Er.index()],
            cfg: values[ModelKind::Cfg.index()],
        }
    }

    pub fn get(&self, kind: ModelKind) -> T {
        match kind {
            ModelKind::Pa => self.pa,
            ModelKind::Cl => self.cl,
            ModelKind::Er => self.er,
            ModelKind::Cfg => self.cfg,
        }
    }

    pub fn to_vec(&self) -> Vec<T> {
        ModelKind::ALL.iter().map(|&k| self.get(k)).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassifierResult {
    #[serde(skip)]
    pub kind: ClassifierKind,
    pub scores: PerModel<f64>,
    pub selected: ModelKind,
    pub hyperparameters: Hyperparams,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HoldoutResult {
    #[serde(skip)]
    pub kind: ClassifierKind,
    #[serde(flatten)]
    pub per_class: PerModel<ClassMetrics>,
    pub macro_f1: f64,
}

/// Scores of every classifier for the input graph, plus holdout metrics.
#[derive(Debug, Clone, PartialEq)]
pub struct SelectionReport {
    pub mode: FeatureMode,
    pub seed: Seed,
    pub samples: usize,
    pub classifiers: Vec<ClassifierResult>,
    pub holdout: Vec<HoldoutResult>,
    pub params: Vec<ModelParams>,
}

impl SelectionReport {
    pub fn result(&self, kind: ClassifierKind) -> Option<&ClassifierResult> {
        self.classifiers.iter().find(|r| r.kind == kind)
    }

    pub fn holdout(&self, kind: ClassifierKind) -> Option<&HoldoutResult> {
        self.holdout.iter().find(|r| r.kind == kind)
    }

    /// Number of classifiers that selected `model`.
    pub fn votes(&self, model: ModelKind) -> usize {
        self.classifiers.iter().filter(|r| r.selected == model).count()
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// Classifier-by-model score matrix with the selected model per row.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header = vec!["Classifier"];
        header.extend(ModelKind::ALL.iter().map(|k| k.name()));
        header.push("Selected");
        w.write_record(&header)?;
        for r in &self.classifiers {
            let mut row = vec![r.kind.name().to_string()];
            row.extend(r.scores.to_vec().iter().map(|s| s.to_string()));
            row.push(r.selected.name().to_string());
            w.write_record(&row)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
        String::from_utf8(bytes).map_err(|e| Error::Invariant(e.to_string()))
    }
}

impl Serialize for SelectionReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        struct Holdout<'a>(&'a [HoldoutResult]);
        impl Serialize for Holdout<'_> {
            fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
                let mut map = serializer.serialize_map(Some(self.0.len()))?;
                for h in self.0 {
                    map.serialize_entry(h.kind.name(), h)?;
                }
                map.end()
            }
        }

        let mut map = serializer.serialize_map(None)?;
        map.serialize_entry("mode", &self.mode)?;
        map.serialize_entry("seed", &self.seed)?;
        map.serialize_entry("samples", &self.samples)?;
        for r in &self.classifiers {
            map.serialize_entry(r.kind.name(), r)?;
        }
        map.serialize_entry("holdout", &Holdout(&self.holdout))?;
        map.serialize_entry("params", &self.params)?;
        map.end()
    }
}

/// Raw feature vectors of graphs sampled from each matched model.
#[derive(Debug, Clone, PartialEq)]
pub struct TrainingSet {
    pub features: Vec<Vec<f64>>,
    /// Model index per row, in [`ModelKind::ALL`] order.
    pub labels: Vec<usize>,
    pub params: Vec<ModelParams>,
}

/// Fits all four models to `g` and featurizes `samples` draws from each.
pub fn training_set(g: &Graph, mode: FeatureMode, samples: usize, seed: Seed) -> Result<TrainingSet> {
    let params = ModelKind::ALL
        .iter()
        .map(|&k| match_parameters(g, k))
        .collect::<Result<Vec<_>>>()?;
    let mut graphs = Vec::with_capacity(4 * samples);
    let mut labels = Vec::with_capacity(4 * samples);
    for p in &params {
        let kind = p.kind();
        graphs.extend(generate_batch(p, seed.derive(kind.index() as u64), samples)?);
        labels.extend(std::iter::repeat_n(kind.index(), samples));
    }
    let features = graphs
        .par_iter()
        .map(|h| feature_vector(h, mode).map(|f| f.into_values()))
        .collect::<Result<Vec<_>>>()?;
    Ok(TrainingSet {
        features,
        labels,
        params,
    })
}

fn argmax_model(scores: &[f64]) -> ModelKind {
    ModelKind::from_index(super::argmax(scores)).expect("four scores")
}

/// Classifies `g` as one of the four random graph models.
///
/// Hyperparameters are chosen by stratified cross-validation on a
/// stratified half of the generated samples; the other half yields the
/// holdout metrics. Final models are retrained on all samples with those
/// hyperparameters and score `g`.
pub fn select_model(g: &Graph, config: &SelectConfig) -> Result<SelectionReport> {
    if g.node_count() < MIN_SELECT_NODES {
        return Err(Error::GraphTooSmall {
            required: MIN_SELECT_NODES,
            actual: g.node_count(),
        });
    }
    if config.samples < 2 * config.folds {
        return Err(Error::InvalidParameter(format!(
            "need at least {} samples per model for {}-fold validation of a half split",
            2 * config.folds,
            config.folds
        )));
    }
    let set = training_set(g, config.mode, config.samples, config.seed)?;
    let target = feature_vector(g, config.mode)?.into_values();

    let halves = stratified_kfold(&set.labels, 2, config.seed.derive(SPLIT_STREAM))?;
    let (train_idx, test_idx): (Vec<usize>, Vec<usize>) = (0..set.labels.len()).partition(|&i| halves[i] == 0);
    let pick = |idx: &[usize]| -> (Vec<Vec<f64>>, Vec<usize>) {
        (
            idx.iter().map(|&i| set.features[i].clone()).collect(),
            idx.iter().map(|&i| set.labels[i]).collect(),
        )
    };
    let (train_rows, train_labels) = pick(&train_idx);
    let (test_rows, test_labels) = pick(&test_idx);
    let train = standardize_fit(&train_rows, &train_labels, 4)?;
    let full = standardize_fit(&set.features, &set.labels, 4)?;
    let target_std = full.standardizer().transform(&target)?;

    let mut classifiers = Vec::new();
    let mut holdout = Vec::new();
    for (ci, kind) in ClassifierKind::ALL.into_iter().enumerate() {
        let train_seed = config.seed.derive(TRAIN_STREAM + ci as u64);
        let cv = cross_validate_select(
            &train,
            kind,
            &kind.default_grid(),
            config.folds,
            config.seed.derive(CV_STREAM),
        )?;

        let model = train_classifier(kind, cv.best, &train, train_seed)?;
        let predicted = test_rows
            .iter()
            .map(|x| model.predict(&train.standardizer().transform(x)?))
            .collect::<Result<Vec<_>>>()?;
        let metrics = class_metrics(&test_labels, &predicted, 4);
        holdout.push(HoldoutResult {
            kind,
            per_class: PerModel::from_slice(&metrics),
            macro_f1: macro_f1(&metrics),
        });

        let model = train_classifier(kind, cv.best, &full, train_seed)?;
        let scores = model.scores(&target_std)?;
        classifiers.push(ClassifierResult {
            kind,
            selected: argmax_model(&scores),
            scores: PerModel::from_slice(&scores),
            hyperparameters: cv.best,
        });
    }

    Ok(SelectionReport {
        mode: config.mode,
        seed: config.seed,
        samples: config.samples,
        classifiers,
        holdout,
        params: set.params,
    })
}
