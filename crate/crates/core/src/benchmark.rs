//! Built-in analytic benchmark: a two-parameter process with one scalar
//! quality attribute `s = theta * d1^2 + d2` constrained to a band, over the
//! knowledge space `[-1, 1]^2`. Under a normal prior on `theta` the
//! probabilistic, nominal, and set-membership design spaces all have closed
//! forms, which makes this model the reference oracle for the samplers.

use crate::error::{Error, Result};
use crate::model::ProcessModel;
use crate::space::KnowledgeSpace;
use crate::special::{erf, erf_inv};

/// Default quality band `0.20 <= s <= 0.75`.
pub const DEFAULT_BAND: (f64, f64) = (0.20, 0.75);

/// The benchmark process model. The quality band is configurable so that
/// deliberately infeasible variants can be constructed.
#[derive(Debug, Clone)]
pub struct IllustrativeModel {
    band: (f64, f64),
}

impl Default for IllustrativeModel {
    fn default() -> Self {
        Self { band: DEFAULT_BAND }
    }
}

impl IllustrativeModel {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_band(lower: f64, upper: f64) -> Result<Self> {
        if !lower.is_finite() || !upper.is_finite() || lower >= upper {
            return Err(Error::InvalidInput(format!(
                "quality band must satisfy lower < upper, got [{lower}, {upper}]"
            )));
        }
        Ok(Self {
            band: (lower, upper),
        })
    }

    pub fn band(&self) -> (f64, f64) {
        self.band
    }

    /// The benchmark's knowledge space `[-1, 1]^2`.
    pub fn knowledge_space() -> KnowledgeSpace {
        KnowledgeSpace::new(vec![-1.0, -1.0], vec![1.0, 1.0]).expect("static bounds")
    }
}

impl ProcessModel for IllustrativeModel {
    fn constraint_count(&self) -> usize {
        2
    }

    fn evaluate(&self, d: &[f64], theta: &[f64]) -> Result<Vec<f64>> {
        if d.len() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                got: d.len(),
            });
        }
        if theta.len() != 1 {
            return Err(Error::DimensionMismatch {
                expected: 1,
                got: theta.len(),
            });
        }
        let s = theta[0] * d[0] * d[0] + d[1];
        Ok(vec![self.band.0 - s, s - self.band.1])
    }
}

/// Normal prior on the scalar model parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalTheta {
    pub mu: f64,
    pub sigma: f64,
}

impl NormalTheta {
    pub fn new(mu: f64, sigma: f64) -> Result<Self> {
        if !mu.is_finite() || !sigma.is_finite() || sigma <= 0.0 {
            return Err(Error::InvalidInput(format!(
                "normal prior needs finite mu and sigma > 0, got mu = {mu}, sigma = {sigma}"
            )));
        }
        Ok(Self { mu, sigma })
    }
}

/// Closed-form feasibility probability of the default band at `d` under the
/// normal prior:
/// `1/2 [erf((0.75 - mu d1^2 - d2) / (sqrt(2) sigma d1^2))
///     - erf((0.20 - mu d1^2 - d2) / (sqrt(2) sigma d1^2))]`.
///
/// At `d1 = 0` the parameter has no effect and the normal collapses to a
/// point mass, so the probability degenerates to the indicator of
/// `0.20 <= d2 <= 0.75`.
pub fn analytic_probability(d: &[f64], prior: &NormalTheta) -> f64 {
    debug_assert_eq!(d.len(), 2);
    let (lo, hi) = DEFAULT_BAND;
    let d1_sq = d[0] * d[0];
    if d1_sq == 0.0 {
        return if (lo..=hi).contains(&d[1]) { 1.0 } else { 0.0 };
    }
    let denom = std::f64::consts::SQRT_2 * prior.sigma * d1_sq;
    let upper = (hi - prior.mu * d1_sq - d[1]) / denom;
    let lower = (lo - prior.mu * d1_sq - d[1]) / denom;
    (0.5 * (erf(upper) - erf(lower))).clamp(0.0, 1.0)
}

/// Set-membership (highest-density interval) counterpart: `d` is a member
/// iff the band holds for every `theta` within `mu +/- z_alpha sigma`, with
/// the quantile `z_alpha = sqrt(2) erf_inv(alpha)`. Requires `alpha` in (0, 1).
pub fn analytic_robust_member(d: &[f64], prior: &NormalTheta, alpha: f64) -> Result<bool> {
    debug_assert_eq!(d.len(), 2);
    let z = std::f64::consts::SQRT_2 * erf_inv(alpha)?;
    let (lo, hi) = DEFAULT_BAND;
    let d1_sq = d[0] * d[0];
    let lower_bound = lo - (prior.mu - z * prior.sigma) * d1_sq;
    let upper_bound = hi - (prior.mu + z * prior.sigma) * d1_sq;
    Ok(lower_bound <= d[1] && d[1] <= upper_bound)
}

/// Membership in the nominal design space (`theta_nom = 1`):
/// `0.20 <= d1^2 + d2 <= 0.75`, bounds inclusive.
pub fn nominal_member(d: &[f64]) -> bool {
    debug_assert_eq!(d.len(), 2);
    let s = d[0] * d[0] + d[1];
    let (lo, hi) = DEFAULT_BAND;
    (lo..=hi).contains(&s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn model_constraints_match_band() {
        let m = IllustrativeModel::new();
        // s = 1 * 0.5^2 + 0.3 = 0.55, inside the band
        let g = m.evaluate(&[0.5, 0.3], &[1.0]).unwrap();
        assert!(g.iter().all(|&v| v <= 0.0));
        // s = 1.9, outside
        let g = m.evaluate(&[1.0, 0.9], &[1.0]).unwrap();
        assert!(g.iter().any(|&v| v > 0.0));
        assert!(m.evaluate(&[0.5], &[1.0]).is_err());
        assert!(m.evaluate(&[0.5, 0.3], &[1.0, 2.0]).is_err());
    }

    #[test]
    fn nominal_band_is_inclusive() {
        assert!(nominal_member(&[0.5, 0.3]));
        assert!(!nominal_member(&[1.0, 0.9]));
        assert!(nominal_member(&[0.0, 0.2]));
        assert!(nominal_member(&[0.0, 0.75]));
    }

    #[test]
    fn degenerate_first_coordinate_is_deterministic() {
        let prior = NormalTheta::new(0.0, 1.0).unwrap();
        assert_eq!(analytic_probability(&[0.0, 0.5], &prior), 1.0);
        assert_eq!(analytic_probability(&[0.0, 0.1], &prior), 0.0);
        assert_eq!(analytic_probability(&[-0.0, 0.75], &prior), 1.0);
    }
}
