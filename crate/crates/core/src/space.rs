//! The knowledge space: the axis-aligned box of process parameters under study.

use rand::Rng;

use crate::error::{Error, Result};

/// Axis-aligned box `[lower, upper]` in the process-parameter space.
#[derive(Debug, Clone, PartialEq)]
pub struct KnowledgeSpace {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl KnowledgeSpace {
    /// Builds a box from per-dimension bounds.
    ///
    /// Requires at least one dimension, finite bounds, and `lower[i] < upper[i]`.
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        if lower.is_empty() {
            return Err(Error::InvalidInput(
                "knowledge space needs at least one dimension".into(),
            ));
        }
        if lower.len() != upper.len() {
            return Err(Error::DimensionMismatch {
                expected: lower.len(),
                got: upper.len(),
            });
        }
        for (i, (lo, hi)) in lower.iter().zip(&upper).enumerate() {
            if !lo.is_finite() || !hi.is_finite() {
                return Err(Error::InvalidInput(format!(
                    "knowledge space bounds must be finite (dimension {i}: lower = {lo}, upper = {hi})"
                )));
            }
            if lo >= hi {
                return Err(Error::InvalidInput(format!(
                    "knowledge space lower bound must be below upper bound (dimension {i}: {lo} >= {hi})"
                )));
            }
        }
        Ok(Self { lower, upper })
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    /// Whether `d` lies inside the box (bounds inclusive).
    pub fn contains(&self, d: &[f64]) -> bool {
        d.len() == self.dim()
            && d.iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(x, (lo, hi))| *x >= *lo && *x <= *hi)
    }

    /// Affine map of a unit-cube point onto the box.
    pub fn from_unit(&self, u: &[f64]) -> Vec<f64> {
        debug_assert_eq!(u.len(), self.dim());
        u.iter()
            .zip(self.lower.iter().zip(&self.upper))
            .map(|(t, (lo, hi))| lo + t * (hi - lo))
            .collect()
    }

    /// Euclidean length of the box diagonal.
    pub fn diagonal(&self) -> f64 {
        self.lower
            .iter()
            .zip(&self.upper)
            .map(|(lo, hi)| (hi - lo) * (hi - lo))
            .sum::<f64>()
            .sqrt()
    }

    /// One uniform draw from the box.
    pub fn sample_uniform<R: Rng>(&self, rng: &mut R) -> Vec<f64> {
        self.lower
            .iter()
            .zip(&self.upper)
            .map(|(lo, hi)| rng.random_range(*lo..*hi))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_bounds() {
        assert!(KnowledgeSpace::new(vec![], vec![]).is_err());
        assert!(KnowledgeSpace::new(vec![0.0], vec![0.0]).is_err());
        assert!(KnowledgeSpace::new(vec![1.0], vec![0.0]).is_err());
        assert!(KnowledgeSpace::new(vec![0.0, 0.0], vec![1.0]).is_err());
        assert!(KnowledgeSpace::new(vec![f64::NAN], vec![1.0]).is_err());
    }

    #[test]
    fn contains_is_inclusive() {
        let k = KnowledgeSpace::new(vec![-1.0, -1.0], vec![1.0, 1.0]).unwrap();
        assert!(k.contains(&[-1.0, 1.0]));
        assert!(k.contains(&[0.0, 0.0]));
        assert!(!k.contains(&[0.0, 1.0 + 1e-12]));
        assert!(!k.contains(&[0.0]));
    }

    #[test]
    fn unit_map_covers_box() {
        let k = KnowledgeSpace::new(vec![2.0, -4.0], vec![3.0, 4.0]).unwrap();
        assert_eq!(k.from_unit(&[0.0, 0.0]), vec![2.0, -4.0]);
        assert_eq!(k.from_unit(&[1.0, 0.5]), vec![3.0, 0.0]);
        assert!((k.diagonal() - (1.0f64 + 64.0).sqrt()).abs() < 1e-15);
    }
}
