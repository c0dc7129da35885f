//! Helpers shared by the integration tests.

use dsc_core::{ProcessModel, Result, UncertaintySet};

/// Model whose feasibility is a lookup table keyed by the integer value of
/// `theta[0]`; the design point is ignored. Lets tests prescribe exactly
/// which uncertainty scenarios are feasible.
pub struct TableModel {
    pub feasible: Vec<bool>,
}

impl ProcessModel for TableModel {
    fn constraint_count(&self) -> usize {
        1
    }

    fn evaluate(&self, _d: &[f64], theta: &[f64]) -> Result<Vec<f64>> {
        let idx = theta[0] as usize;
        Ok(vec![if self.feasible[idx] { -1.0 } else { 1.0 }])
    }
}

/// Uncertainty set with `theta_j = [j]` and the given weights.
pub fn indexed_set(weights: &[f64]) -> UncertaintySet {
    UncertaintySet::new(
        weights
            .iter()
            .enumerate()
            .map(|(j, &w)| (vec![j as f64], w))
            .collect(),
    )
    .unwrap()
}

/// Equal-weight indexed set of size `n`.
pub fn equal_indexed_set(n: usize) -> UncertaintySet {
    indexed_set(&vec![1.0 / n as f64; n])
}
