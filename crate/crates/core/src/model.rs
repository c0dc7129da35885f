//! The black-box process-model interface and the feasibility-probability
//! estimator, including the early-interrupt acceleration strategy.

use crate::error::{Error, Result};
use crate::uncertainty::UncertaintySet;

/// A black-box process model mapping `(d, theta)` to constraint values.
///
/// An evaluation returns the constraint vector `g` of fixed length
/// [`constraint_count`](ProcessModel::constraint_count); the point is feasible
/// when every component is `<= 0`. Implementations must be deterministic and
/// side-effect-free for a fixed `(d, theta)` pair, and reentrant so that
/// distinct design points can be evaluated concurrently.
pub trait ProcessModel: Send + Sync {
    fn constraint_count(&self) -> usize;

    fn evaluate(&self, d: &[f64], theta: &[f64]) -> Result<Vec<f64>>;
}

impl<M: ProcessModel + ?Sized> ProcessModel for &M {
    fn constraint_count(&self) -> usize {
        (**self).constraint_count()
    }

    fn evaluate(&self, d: &[f64], theta: &[f64]) -> Result<Vec<f64>> {
        (**self).evaluate(d, theta)
    }
}

impl ProcessModel for Box<dyn ProcessModel> {
    fn constraint_count(&self) -> usize {
        (**self).constraint_count()
    }

    fn evaluate(&self, d: &[f64], theta: &[f64]) -> Result<Vec<f64>> {
        (**self).evaluate(d, theta)
    }
}

/// Indicator of constraint satisfaction: `true` iff `g_k <= 0` for every `k`.
///
/// Any NaN or infinite entry is an error, not "infeasible".
pub fn indicator(g: &[f64]) -> Result<bool> {
    if g.is_empty() {
        return Err(Error::InvalidInput(
            "constraint vector must have at least one component".into(),
        ));
    }
    for (index, &value) in g.iter().enumerate() {
        if !value.is_finite() {
            return Err(Error::NonFiniteConstraint {
                index,
                value,
                d: Vec::new(),
                theta: Vec::new(),
            });
        }
    }
    Ok(g.iter().all(|&v| v <= 0.0))
}

/// Outcome of the interruptible feasibility estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundedOutcome {
    /// Fully trustworthy estimate, bit-identical to the uninterrupted sum.
    Value { prob: f64, evals: usize },
    /// The estimate provably cannot reach `floor`; evaluation stopped after
    /// `evals` model runs and the partial probability is discarded.
    RejectedBelowFloor { evals: usize },
}

impl BoundedOutcome {
    pub fn evals(&self) -> usize {
        match self {
            BoundedOutcome::Value { evals, .. } => *evals,
            BoundedOutcome::RejectedBelowFloor { evals } => *evals,
        }
    }
}

/// Estimated probability that all constraints hold at `d` under the sampled
/// parameter distribution: the weighted fraction of feasible scenarios.
///
/// Performs exactly `set.len()` model evaluations. Feasible mass is
/// accumulated in the set's canonical order (descending weight, ties by
/// index), which makes the result invariant, bit for bit, under permutation
/// of the input samples.
pub fn feasibility_probability<M: ProcessModel>(
    model: &M,
    d: &[f64],
    set: &UncertaintySet,
) -> Result<f64> {
    match feasibility_probability_bounded(model, d, set, 0.0)? {
        BoundedOutcome::Value { prob, .. } => Ok(prob),
        BoundedOutcome::RejectedBelowFloor { .. } => {
            unreachable!("a floor of zero can never interrupt")
        }
    }
}

/// Interruptible variant of [`feasibility_probability`].
///
/// Scenarios are visited in the canonical order. After each evaluation, if the
/// feasible mass accumulated so far plus all remaining unvisited mass is
/// strictly below `floor`, the point provably cannot reach `floor` and
/// evaluation stops. Otherwise the returned value is bit-identical to the
/// uninterrupted estimate. A floor of 0 never interrupts.
pub fn feasibility_probability_bounded<M: ProcessModel>(
    model: &M,
    d: &[f64],
    set: &UncertaintySet,
    floor: f64,
) -> Result<BoundedOutcome> {
    if !(0.0..=1.0).contains(&floor) {
        return Err(Error::InvalidInput(format!(
            "floor must lie in [0, 1], got {floor}"
        )));
    }
    let samples = set.samples();
    let remaining = set.remaining_mass();
    let mut feasible_mass = 0.0;
    for (visited, &j) in set.eval_order().iter().enumerate() {
        let sample = &samples[j];
        let g = model.evaluate(d, &sample.theta)?;
        match indicator(&g) {
            Ok(true) => feasible_mass += sample.weight,
            Ok(false) => {}
            Err(e) => return Err(e.with_eval_context(d, &sample.theta)),
        }
        if feasible_mass + remaining[visited + 1] < floor {
            return Ok(BoundedOutcome::RejectedBelowFloor { evals: visited + 1 });
        }
    }
    Ok(BoundedOutcome::Value {
        prob: feasible_mass,
        evals: samples.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn indicator_boundary_counts_as_satisfied() {
        assert!(indicator(&[-1.0, 0.0]).unwrap());
        assert!(!indicator(&[0.001, -5.0]).unwrap());
        assert!(indicator(&[-0.3]).unwrap());
    }

    #[test]
    fn indicator_rejects_non_finite() {
        let err = indicator(&[-1.0, f64::NAN]).unwrap_err();
        assert!(err
            .to_string()
            .contains("model returned non-finite constraint value g[1]"));
        assert!(indicator(&[f64::INFINITY]).is_err());
        assert!(indicator(&[]).is_err());
    }
}
