//! Normalized Laplacian spectra and their five-bin histograms.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Slack allowed around `[0, 2]` before an eigenvalue is rejected.
pub const SPECTRUM_TOLERANCE: f64 = 1e-9;

/// Largest accepted `‖L v − λ v‖₂` for a unit eigenvector.
pub const RESIDUAL_TOLERANCE: f64 = 1e-8;

/// Interior bin edges; the outer edges are 0 and 2.
pub const BIN_EDGES: [f64; 6] = [0.0, 0.4, 0.8, 1.2, 1.6, 2.0];

/// Eigenvalue counts per bin `[0,0.4), [0.4,0.8), [0.8,1.2), [1.2,1.6), [1.6,2]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SpectralHistogram(pub [u64; 5]);

impl SpectralHistogram {
    pub fn bins(&self) -> &[u64; 5] {
        &self.0
    }

    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }
}

/// Dense `I − D^{-1/2} A D^{-1/2}` over the weighted adjacency matrix.
/// Rows and columns of isolated nodes are all zero.
pub fn normalized_laplacian(g: &Graph) -> DMatrix<f64> {
    let n = g.node_count();
    let inv_sqrt: Vec<f64> = (0..n)
        .map(|v| {
            let d = g.weighted_degree(v);
            if d > 0.0 {
                1.0 / d.sqrt()
            } else {
                0.0
            }
        })
        .collect();
    let mut l = DMatrix::zeros(n, n);
    for v in 0..n {
        if inv_sqrt[v] > 0.0 {
            l[(v, v)] = 1.0;
        }
    }
    for e in g.edges() {
        let x = -e.weight * inv_sqrt[e.u] * inv_sqrt[e.v];
        l[(e.u, e.v)] = x;
        l[(e.v, e.u)] = x;
    }
    l
}

const MAX_SWEEPS: usize = 100;

/// Cyclic Jacobi eigensolver for a symmetric matrix. Returns eigenvalues
/// and the matching eigenvectors as columns.
fn symmetric_eigen(m: &DMatrix<f64>) -> (Vec<f64>, DMatrix<f64>) {
    let n = m.nrows();
    let mut a = m.clone();
    let mut v = DMatrix::<f64>::identity(n, n);
    let scale = m.norm();
    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|p| ((p + 1)..n).map(move |q| (p, q)))
            .map(|(p, q)| a[(p, q)] * a[(p, q)])
            .sum();
        if off.sqrt() <= f64::EPSILON * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[(k, p)], a[(k, q)]);
                    a[(k, p)] = c * akp - s * akq;
                    a[(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[(p, k)], a[(q, k)]);
                    a[(p, k)] = c * apk - s * aqk;
                    a[(q, k)] = s * apk + c * aqk;
                }
                a[(p, q)] = 0.0;
                a[(q, p)] = 0.0;
                for k in 0..n {
                    let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }
    ((0..n).map(|i| a[(i, i)]).collect(), v)
}

/// All eigenvalues of the normalized Laplacian, ascending.
///
/// Fails if any eigenpair has a residual above [`RESIDUAL_TOLERANCE`] or an
/// eigenvalue falls outside `[0, 2]` by more than [`SPECTRUM_TOLERANCE`].
pub fn laplacian_spectrum(g: &Graph) -> Result<Vec<f64>> {
    let n = g.node_count();
    if n == 0 {
        return Ok(Vec::new());
    }
    let l = normalized_laplacian(g);
    let (eigenvalues, eigenvectors) = symmetric_eigen(&l);
    for (k, &lambda) in eigenvalues.iter().enumerate() {
        let v: DVector<f64> = eigenvectors.column(k).into_owned();
        let residual = (&l * &v - lambda * &v).norm();
        if residual > RESIDUAL_TOLERANCE {
            return Err(Error::Invariant(format!("eigenpair {k} has residual {residual:e}")));
        }
        if !(-SPECTRUM_TOLERANCE..=2.0 + SPECTRUM_TOLERANCE).contains(&lambda) {
            return Err(Error::EigenvalueOutOfRange(lambda));
        }
    }
    let mut values = eigenvalues;
    values.sort_by(f64::total_cmp);
    Ok(values)
}

/// Five equal-width bins on `[0, 2]`, half-open except the last.
///
/// Values within [`SPECTRUM_TOLERANCE`] of the range are clamped in, and
/// values within the same distance of an interior edge count as lying on
/// it, so eigensolver round-off cannot move a value like `6/5` across bins.
pub fn spectral_histogram(eigenvalues: &[f64]) -> Result<SpectralHistogram> {
    let mut bins = [0u64; 5];
    for &lambda in eigenvalues {
        if !(-SPECTRUM_TOLERANCE..=2.0 + SPECTRUM_TOLERANCE).contains(&lambda) {
            return Err(Error::EigenvalueOutOfRange(lambda));
        }
        let idx = BIN_EDGES[1..5]
            .iter()
            .filter(|&&edge| lambda >= edge - SPECTRUM_TOLERANCE)
            .count();
        bins[idx] += 1;
    }
    Ok(SpectralHistogram(bins))
}
