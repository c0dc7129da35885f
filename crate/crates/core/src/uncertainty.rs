//! Weighted samples discretizing the model-parameter distribution.

use std::path::Path;

use nalgebra::{Cholesky, DMatrix, DVector};
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

/// One weighted draw from the model-parameter distribution.
#[derive(Debug, Clone, PartialEq)]
pub struct ThetaSample {
    pub theta: Vec<f64>,
    pub weight: f64,
}

/// Weighted sample set `{(theta_j, omega_j)}` with weights normalized to sum 1.
///
/// The set also precomputes the deterministic evaluation order used by the
/// feasibility estimators: descending weight, ties broken by ascending sample
/// index. Summing feasible mass in that fixed order makes the estimate
/// bit-reproducible and permutation-invariant, and lets the bounded estimator
/// interrupt as early as possible.
#[derive(Debug, Clone)]
pub struct UncertaintySet {
    samples: Vec<ThetaSample>,
    /// Indices into `samples`, sorted by descending weight then ascending index.
    eval_order: Vec<usize>,
    /// `remaining_mass[k]` is the total weight still unvisited after the first
    /// `k` samples of `eval_order` have been evaluated; `remaining_mass[len] = 0`.
    remaining_mass: Vec<f64>,
}

impl UncertaintySet {
    /// Builds a set from `(theta, weight)` pairs.
    ///
    /// Weights must be positive and finite; they are normalized to sum 1, with
    /// a logged warning when the raw sum deviates from 1 by more than 1e-6.
    pub fn new(pairs: Vec<(Vec<f64>, f64)>) -> Result<Self> {
        if pairs.is_empty() {
            return Err(Error::InvalidInput(
                "uncertainty set needs at least one sample".into(),
            ));
        }
        let dim = pairs[0].0.len();
        if dim == 0 {
            return Err(Error::InvalidInput(
                "uncertainty samples need at least one dimension".into(),
            ));
        }
        let mut raw_sum = 0.0;
        for (i, (theta, weight)) in pairs.iter().enumerate() {
            if theta.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: theta.len(),
                });
            }
            if theta.iter().any(|t| !t.is_finite()) {
                return Err(Error::InvalidInput(format!(
                    "uncertainty sample {i} has a non-finite component"
                )));
            }
            if !weight.is_finite() || *weight <= 0.0 {
                return Err(Error::InvalidInput(format!(
                    "uncertainty sample {i} has non-positive weight {weight}"
                )));
            }
            raw_sum += weight;
        }
        if (raw_sum - 1.0).abs() > 1e-6 {
            log::warn!("uncertainty weights sum to {raw_sum}; normalizing to 1");
        }
        let samples: Vec<ThetaSample> = pairs
            .into_iter()
            .map(|(theta, weight)| ThetaSample {
                theta,
                weight: weight / raw_sum,
            })
            .collect();

        let mut eval_order: Vec<usize> = (0..samples.len()).collect();
        eval_order.sort_by(|&a, &b| {
            samples[b]
                .weight
                .partial_cmp(&samples[a].weight)
                .expect("weights are finite")
                .then(a.cmp(&b))
        });
        let mut remaining_mass = vec![0.0; samples.len() + 1];
        for k in (0..samples.len()).rev() {
            remaining_mass[k] = remaining_mass[k + 1] + samples[eval_order[k]].weight;
        }

        Ok(Self {
            samples,
            eval_order,
            remaining_mass,
        })
    }

    /// Equal-weight set from bare parameter draws.
    pub fn equal_weights(thetas: Vec<Vec<f64>>) -> Result<Self> {
        let n = thetas.len();
        Self::new(thetas.into_iter().map(|t| (t, 1.0 / n as f64)).collect())
    }

    /// The single-scenario set `{(theta_nom, 1.0)}` used for nominal runs.
    pub fn nominal(theta: Vec<f64>) -> Result<Self> {
        Self::new(vec![(theta, 1.0)])
    }

    /// Equal-weight draws from a multivariate normal with the given mean and
    /// covariance (must be symmetric positive-definite).
    pub fn multivariate_normal<R: Rng>(
        mean: &[f64],
        covariance: &[Vec<f64>],
        count: usize,
        rng: &mut R,
    ) -> Result<Self> {
        let p = mean.len();
        if p == 0 {
            return Err(Error::InvalidInput("mean vector is empty".into()));
        }
        if covariance.len() != p || covariance.iter().any(|row| row.len() != p) {
            return Err(Error::InvalidInput(format!(
                "covariance must be a {p}x{p} matrix"
            )));
        }
        if count == 0 {
            return Err(Error::InvalidInput("sample count must be positive".into()));
        }
        let cov = DMatrix::from_fn(p, p, |i, j| covariance[i][j]);
        let chol = Cholesky::new(cov).ok_or_else(|| {
            Error::InvalidInput("covariance matrix is not positive-definite".into())
        })?;
        let l = chol.l();
        let mu = DVector::from_column_slice(mean);
        let mut thetas = Vec::with_capacity(count);
        for _ in 0..count {
            let z = DVector::from_fn(p, |_, _| rng.sample::<f64, _>(StandardNormal));
            let theta = &mu + &l * z;
            thetas.push(theta.iter().copied().collect());
        }
        Self::equal_weights(thetas)
    }

    /// Reads a set from CSV with header `theta_1,...,theta_p,weight`.
    pub fn from_csv_path<P: AsRef<Path>>(path: P) -> Result<Self> {
        let mut reader = csv::Reader::from_path(path.as_ref())
            .map_err(|e| Error::Csv(format!("{}: {e}", path.as_ref().display())))?;
        let headers = reader
            .headers()
            .map_err(|e| Error::Csv(e.to_string()))?
            .clone();
        if headers.len() < 2 || headers.iter().last() != Some("weight") {
            return Err(Error::Csv(
                "expected header theta_1,...,theta_p,weight".into(),
            ));
        }
        let p = headers.len() - 1;
        for (i, name) in headers.iter().take(p).enumerate() {
            let expected = format!("theta_{}", i + 1);
            if name != expected {
                return Err(Error::Csv(format!(
                    "unexpected column {name:?}, expected {expected:?}"
                )));
            }
        }
        let mut pairs = Vec::new();
        for (row_idx, record) in reader.records().enumerate() {
            let record = record.map_err(|e| Error::Csv(e.to_string()))?;
            let mut values = Vec::with_capacity(headers.len());
            for field in record.iter() {
                values.push(field.trim().parse::<f64>().map_err(|_| {
                    Error::Csv(format!("row {}: cannot parse {field:?}", row_idx + 2))
                })?);
            }
            if values.len() != p + 1 {
                return Err(Error::Csv(format!(
                    "row {}: expected {} fields, got {}",
                    row_idx + 2,
                    p + 1,
                    values.len()
                )));
            }
            let weight = values.pop().expect("non-empty");
            pairs.push((values, weight));
        }
        Self::new(pairs)
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Dimension of the parameter vectors.
    pub fn theta_dim(&self) -> usize {
        self.samples[0].theta.len()
    }

    /// Samples in input order.
    pub fn samples(&self) -> &[ThetaSample] {
        &self.samples
    }

    pub(crate) fn eval_order(&self) -> &[usize] {
        &self.eval_order
    }

    pub(crate) fn remaining_mass(&self) -> &[f64] {
        &self.remaining_mass
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizes_weights() {
        let s = UncertaintySet::new(vec![(vec![0.0], 2.0), (vec![1.0], 6.0)]).unwrap();
        let total: f64 = s.samples().iter().map(|t| t.weight).sum();
        assert!((total - 1.0).abs() < 1e-9);
        assert!((s.samples()[0].weight - 0.25).abs() < 1e-15);
    }

    #[test]
    fn eval_order_descending_with_index_ties() {
        let s = UncertaintySet::new(vec![
            (vec![0.0], 0.25),
            (vec![1.0], 0.5),
            (vec![2.0], 0.25),
        ])
        .unwrap();
        assert_eq!(s.eval_order(), &[1, 0, 2]);
        assert!((s.remaining_mass()[0] - 1.0).abs() < 1e-12);
        assert!((s.remaining_mass()[1] - 0.5).abs() < 1e-12);
        assert_eq!(s.remaining_mass()[3], 0.0);
    }

    #[test]
    fn rejects_invalid_samples() {
        assert!(UncertaintySet::new(vec![]).is_err());
        assert!(UncertaintySet::new(vec![(vec![0.0], 0.0)]).is_err());
        assert!(UncertaintySet::new(vec![(vec![0.0], -1.0)]).is_err());
        assert!(UncertaintySet::new(vec![(vec![0.0], 1.0), (vec![0.0, 1.0], 1.0)]).is_err());
        assert!(UncertaintySet::new(vec![(vec![f64::NAN], 1.0)]).is_err());
    }

    #[test]
    fn nominal_is_single_unit_weight() {
        let s = UncertaintySet::nominal(vec![1.0]).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s.samples()[0].weight, 1.0);
    }
}
