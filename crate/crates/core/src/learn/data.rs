use serde::Serialize;

use crate::error::{Error, Result};

/// Below this a dimension counts as constant and is only centered.
pub const MIN_STD: f64 = 1e-12;

/// Per-dimension affine map to zero mean and unit (population) variance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Standardizer {
    mean: Vec<f64>,
    std: Vec<f64>,
}

impl Standardizer {
    pub fn fit(rows: &[Vec<f64>]) -> Result<Self> {
        let first = rows
            .first()
            .ok_or_else(|| Error::InvalidData("cannot standardize zero rows".into()))?;
        let d = first.len();
        if let Some(bad) = rows.iter().position(|r| r.len() != d) {
            return Err(Error::InvalidData(format!(
                "row {bad} has {} features, expected {d}",
                rows[bad].len()
            )));
        }
        let n = rows.len() as f64;
        let mut mean = vec![0.0; d];
        for row in rows {
            for (m, x) in mean.iter_mut().zip(row) {
                *m += x;
            }
        }
        mean.iter_mut().for_each(|m| *m /= n);
        let mut var = vec![0.0; d];
        for row in rows {
            for ((v, x), m) in var.iter_mut().zip(row).zip(&mean) {
                *v += (x - m) * (x - m);
            }
        }
        let std = var
            .into_iter()
            .map(|v| {
                let s = (v / n).sqrt();
                if s < MIN_STD {
                    1.0
                } else {
                    s
                }
            })
            .collect();
        Ok(Self { mean, std })
    }

    pub fn dim(&self) -> usize {
        self.mean.len()
    }

    pub fn mean(&self) -> &[f64] {
        &self.mean
    }

    pub fn std(&self) -> &[f64] {
        &self.std
    }

    pub fn transform(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.dim() {
            return Err(Error::InvalidData(format!(
                "vector has {} features, expected {}",
                x.len(),
                self.dim()
            )));
        }
        Ok(x.iter()
            .zip(&self.mean)
            .zip(&self.std)
            .map(|((x, m), s)| (x - m) / s)
            .collect())
    }
}

/// Standardized, labelled training rows. Labels are class indices below
/// `classes`.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    rows: Vec<Vec<f64>>,
    labels: Vec<usize>,
    classes: usize,
    standardizer: Standardizer,
}

/// Fits a standardizer on `rows` and returns them standardized.
pub fn standardize_fit(rows: &[Vec<f64>], labels: &[usize], classes: usize) -> Result<Dataset> {
    if rows.len() < 2 {
        return Err(Error::InvalidData(format!("need at least 2 rows, got {}", rows.len())));
    }
    let standardizer = Standardizer::fit(rows)?;
    let rows = rows
        .iter()
        .map(|r| standardizer.transform(r))
        .collect::<Result<Vec<_>>>()?;
    Dataset::new(rows, labels.to_vec(), classes, standardizer)
}

impl Dataset {
    fn new(rows: Vec<Vec<f64>>, labels: Vec<usize>, classes: usize, standardizer: Standardizer) -> Result<Self> {
        if rows.len() != labels.len() {
            return Err(Error::InvalidData(format!(
                "{} rows but {} labels",
                rows.len(),
                labels.len()
            )));
        }
        if let Some(&bad) = labels.iter().find(|&&l| l >= classes) {
            return Err(Error::InvalidData(format!("label {bad} outside {classes} classes")));
        }
        Ok(Self {
            rows,
            labels,
            classes,
            standardizer,
        })
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn classes(&self) -> usize {
        self.classes
    }

    pub fn dim(&self) -> usize {
        self.standardizer.dim()
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn standardizer(&self) -> &Standardizer {
        &self.standardizer
    }

    pub fn class_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.classes];
        self.labels.iter().for_each(|&l| counts[l] += 1);
        counts
    }

    pub(crate) fn present_classes(&self) -> usize {
        self.class_counts().iter().filter(|&&c| c > 0).count()
    }

    /// Rows at `indices`, sharing this dataset's standardizer.
    pub fn subset(&self, indices: &[usize]) -> Dataset {
        Dataset {
            rows: indices.iter().map(|&i| self.rows[i].clone()).collect(),
            labels: indices.iter().map(|&i| self.labels[i]).collect(),
            classes: self.classes,
            standardizer: self.standardizer.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_point_column() {
        let d = standardize_fit(&[vec![1.0], vec![3.0]], &[0, 1], 2).unwrap();
        assert_eq!(d.standardizer().mean(), &[2.0]);
        assert_eq!(d.standardizer().std(), &[1.0]);
        assert_eq!(d.rows(), &[vec![-1.0], vec![1.0]]);
    }

    #[test]
    fn constant_column_is_centered() {
        let rows = vec![vec![5.0, 1.0], vec![5.0, 2.0], vec![5.0, 6.0]];
        let d = standardize_fit(&rows, &[0, 0, 1], 2).unwrap();
        assert_eq!(d.standardizer().std()[0], 1.0);
        assert!(d.rows().iter().all(|r| r[0] == 0.0));
    }

    #[test]
    fn training_means_vanish() {
        let rows: Vec<Vec<f64>> = (0..50)
            .map(|i| vec![i as f64 * 0.37, (i * i) as f64, 1e6 + i as f64])
            .collect();
        let labels = vec![0; 50];
        let d = standardize_fit(&rows, &labels, 1).unwrap();
        for j in 0..3 {
            let mean: f64 = d.rows().iter().map(|r| r[j]).sum::<f64>() / 50.0;
            assert!(mean.abs() <= 1e-12, "column {j} mean {mean}");
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(standardize_fit(&[], &[], 2).is_err());
        assert!(standardize_fit(&[vec![1.0]], &[0], 2).is_err());
        assert!(standardize_fit(&[vec![1.0], vec![1.0, 2.0]], &[0, 1], 2).is_err());
        assert!(standardize_fit(&[vec![1.0], vec![2.0]], &[0, 2], 2).is_err());
    }
}
