//! Weighted CART classification trees with Gini impurity.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Serialize)]
enum Node {
    Leaf {
        distribution: Vec<f64>,
    },
    Split {
        feature: usize,
        threshold: f64,
        left: usize,
        right: usize,
    },
}

/// Binary tree; `x[feature] <= threshold` goes left. Leaves hold class
/// distributions summing to 1.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecisionTree {
    nodes: Vec<Node>,
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct TreeParams {
    pub max_depth: Option<usize>,
    /// Features drawn per split before falling back to the rest.
    pub max_features: usize,
}

impl DecisionTree {
    pub fn distribution(&self, x: &[f64]) -> &[f64] {
        let mut at = 0;
        loop {
            match &self.nodes[at] {
                Node::Leaf { distribution } => return distribution,
                Node::Split {
                    feature,
                    threshold,
                    left,
                    right,
                } => at = if x[*feature] <= *threshold { *left } else { *right },
            }
        }
    }

    pub fn predict(&self, x: &[f64]) -> usize {
        super::argmax(self.distribution(x))
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn depth(&self) -> usize {
        fn walk(nodes: &[Node], at: usize) -> usize {
            match &nodes[at] {
                Node::Leaf { .. } => 0,
                Node::Split { left, right, .. } => 1 + walk(nodes, *left).max(walk(nodes, *right)),
            }
        }
        walk(&self.nodes, 0)
    }
}

struct Grower<'a, R> {
    rows: &'a [Vec<f64>],
    labels: &'a [usize],
    weights: &'a [f64],
    classes: usize,
    params: TreeParams,
    rng: &'a mut R,
    nodes: Vec<Node>,
}

/// `Σ_sides (W − Σ c²/W)`, the weight-scaled Gini impurity of a split.
fn side_impurity(counts: &[f64], total: f64) -> f64 {
    if total <= 0.0 {
        return 0.0;
    }
    total - counts.iter().map(|c| c * c).sum::<f64>() / total
}

impl<R: Rng> Grower<'_, R> {
    fn class_weights(&self, idx: &[usize]) -> Vec<f64> {
        let mut counts = vec![0.0; self.classes];
        for &i in idx {
            counts[self.labels[i]] += self.weights[i];
        }
        counts
    }

    fn leaf(&mut self, counts: Vec<f64>) -> usize {
        let total: f64 = counts.iter().sum();
        let distribution = counts.into_iter().map(|c| c / total).collect();
        self.nodes.push(Node::Leaf { distribution });
        self.nodes.len() - 1
    }

    /// Best `(impurity, threshold)` for one feature, if it is not constant.
    fn best_threshold(&self, idx: &mut [usize], feature: usize, counts: &[f64]) -> Option<(f64, f64)> {
        let rows = self.rows;
        idx.sort_by(|&a, &b| rows[a][feature].total_cmp(&rows[b][feature]));
        let total: f64 = counts.iter().sum();
        let mut left = vec![0.0; self.classes];
        let mut left_total = 0.0;
        let mut best: Option<(f64, f64)> = None;
        for pos in 0..idx.len() - 1 {
            let i = idx[pos];
            left[self.labels[i]] += self.weights[i];
            left_total += self.weights[i];
            let (a, b) = (rows[i][feature], rows[idx[pos + 1]][feature]);
            if a == b {
                continue;
            }
            let right: Vec<f64> = counts.iter().zip(&left).map(|(c, l)| c - l).collect();
            let impurity = side_impurity(&left, left_total) + side_impurity(&right, total - left_total);
            if best.is_none_or(|(imp, _)| impurity < imp) {
                let mid = a + (b - a) / 2.0;
                let threshold = if mid < b { mid } else { a };
                best = Some((impurity, threshold));
            }
        }
        best
    }

    fn grow(&mut self, mut idx: Vec<usize>, depth: usize) -> usize {
        let counts = self.class_weights(&idx);
        let pure = counts.iter().filter(|&&c| c > 0.0).count() <= 1;
        let capped = self.params.max_depth.is_some_and(|d| depth >= d);
        if pure || capped || idx.len() < 2 {
            return self.leaf(counts);
        }

        let d = self.rows[0].len();
        let mut features: Vec<usize> = (0..d).collect();
        features.shuffle(self.rng);
        let mut best: Option<(f64, usize, f64)> = None;
        for (tried, &f) in features.iter().enumerate() {
            if tried >= self.params.max_features && best.is_some() {
                break;
            }
            if let Some((imp, thr)) = self.best_threshold(&mut idx, f, &counts) {
                if best.is_none_or(|(b, _, _)| imp < b) {
                    best = Some((imp, f, thr));
                }
            }
        }
        let Some((_, feature, threshold)) = best else {
            return self.leaf(counts);
        };

        let (left_idx, right_idx): (Vec<usize>, Vec<usize>) =
            idx.into_iter().partition(|&i| self.rows[i][feature] <= threshold);
        let at = self.nodes.len();
        self.nodes.push(Node::Split {
            feature,
            threshold,
            left: 0,
            right: 0,
        });
        let left = self.grow(left_idx, depth + 1);
        let right = self.grow(right_idx, depth + 1);
        self.nodes[at] = Node::Split {
            feature,
            threshold,
            left,
            right,
        };
        at
    }
}

/// Grows a tree on the rows with positive weight. Zero-gain splits are
/// allowed while a node is impure, so patterns like XOR are reachable.
pub(crate) fn grow_tree(
    rows: &[Vec<f64>],
    labels: &[usize],
    weights: &[f64],
    classes: usize,
    params: TreeParams,
    rng: &mut impl Rng,
) -> DecisionTree {
    let idx: Vec<usize> = (0..rows.len()).filter(|&i| weights[i] > 0.0).collect();
    let mut grower = Grower {
        rows,
        labels,
        weights,
        classes,
        params,
        rng,
        nodes: Vec::new(),
    };
    if idx.is_empty() {
        grower.nodes.push(Node::Leaf {
            distribution: vec![1.0 / classes as f64; classes],
        });
    } else {
        grower.grow(idx, 0);
    }
    DecisionTree { nodes: grower.nodes }
}
