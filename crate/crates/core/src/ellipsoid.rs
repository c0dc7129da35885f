//! Enclosing ellipsoids for replacement-proposal generation.
//!
//! The bounding ellipsoid is covariance-based: centered on the point-cloud
//! mean, shaped by the inverse sample covariance, and scaled so the farthest
//! point sits on the boundary. An exact minimum-volume ellipsoid is not
//! needed because the sampler always inflates the result by an enlargement
//! factor anyway.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::space::KnowledgeSpace;

const MAX_REJECTIONS: usize = 100_000;

/// An ellipsoid `{x : (x - c)^T A (x - c) <= 1}` with positive-definite `A`.
#[derive(Debug, Clone)]
pub struct Ellipsoid {
    center: DVector<f64>,
    /// Shape matrix of the enlarged ellipsoid.
    shape: DMatrix<f64>,
    /// Maps the unit ball onto the ellipsoid: `x = c + transform * u`.
    transform: DMatrix<f64>,
    enlargement: f64,
}

impl Ellipsoid {
    pub fn dim(&self) -> usize {
        self.center.len()
    }

    pub fn center(&self) -> &[f64] {
        self.center.as_slice()
    }

    pub fn shape(&self) -> &DMatrix<f64> {
        &self.shape
    }

    pub fn enlargement(&self) -> f64 {
        self.enlargement
    }

    /// The quadratic form `(x - c)^T A (x - c)`; membership means `<= 1`.
    pub fn mahalanobis(&self, x: &[f64]) -> f64 {
        let diff = DVector::from_column_slice(x) - &self.center;
        (diff.transpose() * &self.shape * &diff)[(0, 0)]
    }

    pub fn contains(&self, x: &[f64], tol: f64) -> bool {
        self.mahalanobis(x) <= 1.0 + tol
    }
}

/// Builds the enlarged covariance ellipsoid around a point cloud.
///
/// Every input point is contained in the result (the farthest point defines
/// the boundary before enlargement; axes are then scaled by
/// `1 + enlargement`). The minimum semi-axis is floored at `min_semi_axis` so
/// that degenerate clouds still yield a full-dimensional, invertible shape.
pub fn enclosing_ellipsoid_with_floor(
    points: &[Vec<f64>],
    enlargement: f64,
    min_semi_axis: f64,
) -> Result<Ellipsoid> {
    if points.len() < 2 {
        return Err(Error::TooFewPoints { got: points.len() });
    }
    let dim = points[0].len();
    if dim == 0 || points.iter().any(|p| p.len() != dim) {
        return Err(Error::InvalidInput(
            "ellipsoid points must share a positive dimension".into(),
        ));
    }
    if !(enlargement >= 0.0) {
        return Err(Error::InvalidInput(format!(
            "enlargement must be non-negative, got {enlargement}"
        )));
    }
    let n = points.len() as f64;

    let mut center = DVector::zeros(dim);
    for p in points {
        center += DVector::from_column_slice(p);
    }
    center /= n;

    let mut cov = DMatrix::zeros(dim, dim);
    for p in points {
        let diff = DVector::from_column_slice(p) - &center;
        cov += &diff * diff.transpose();
    }
    cov /= n;
    let ridge = 1e-10 * cov.trace();
    for i in 0..dim {
        cov[(i, i)] += ridge;
    }

    let eigen = SymmetricEigen::new(cov);
    let basis = eigen.eigenvectors;
    let lambda_max = eigen.eigenvalues.iter().cloned().fold(0.0, f64::max);
    let lambda_floor = (lambda_max * 1e-14).max(f64::MIN_POSITIVE);
    let lambda: Vec<f64> = eigen
        .eigenvalues
        .iter()
        .map(|&l| l.max(lambda_floor))
        .collect();

    // Scale so the farthest point (in covariance metric) is on the boundary.
    let mut scale = 0.0f64;
    for p in points {
        let y = basis.transpose() * (DVector::from_column_slice(p) - &center);
        let mah: f64 = y.iter().zip(&lambda).map(|(yi, li)| yi * yi / li).sum();
        scale = scale.max(mah);
    }
    scale *= 1.0 + 1e-9;
    if scale == 0.0 {
        scale = 1.0;
    }

    let floor = min_semi_axis.max(f64::MIN_POSITIVE.sqrt());
    let axes: Vec<f64> = lambda
        .iter()
        .map(|&l| ((l * scale).sqrt() * (1.0 + enlargement)).max(floor))
        .collect();

    let axes_diag = DMatrix::from_diagonal(&DVector::from_vec(axes.clone()));
    let transform = &basis * axes_diag;
    let inv_sq = DMatrix::from_diagonal(&DVector::from_vec(
        axes.iter().map(|a| 1.0 / (a * a)).collect(),
    ));
    let shape = &basis * inv_sq * basis.transpose();

    Ok(Ellipsoid {
        center,
        shape,
        transform,
        enlargement,
    })
}

/// [`enclosing_ellipsoid_with_floor`] with the semi-axis floor derived from
/// the point cloud's own bounding box.
pub fn enclosing_ellipsoid(points: &[Vec<f64>], enlargement: f64) -> Result<Ellipsoid> {
    if points.len() < 2 {
        return Err(Error::TooFewPoints { got: points.len() });
    }
    let dim = points[0].len();
    let mut diag_sq = 0.0;
    for j in 0..dim {
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for p in points.iter().filter(|p| p.len() == dim) {
            lo = lo.min(p[j]);
            hi = hi.max(p[j]);
        }
        diag_sq += (hi - lo) * (hi - lo);
    }
    enclosing_ellipsoid_with_floor(points, enlargement, 1e-12 * diag_sq.sqrt())
}

/// One uniform draw from the intersection of the ellipsoid with the box:
/// uniform in the ellipsoid, rejection-sampled against the box.
pub fn sample_in_ellipsoid<R: Rng>(
    ellipsoid: &Ellipsoid,
    space: &KnowledgeSpace,
    rng: &mut R,
) -> Result<Vec<f64>> {
    let dim = ellipsoid.dim();
    for _ in 0..MAX_REJECTIONS {
        // Uniform in the unit ball: normalized Gaussian direction, radius U^(1/dim).
        let mut u = DVector::from_fn(dim, |_, _| rng.sample::<f64, _>(StandardNormal));
        let norm = u.norm();
        if norm == 0.0 {
            continue;
        }
        let radius: f64 = rng.random_range(0.0..1.0f64).powf(1.0 / dim as f64);
        u *= radius / norm;
        let x = &ellipsoid.center + &ellipsoid.transform * u;
        let point: Vec<f64> = x.iter().copied().collect();
        if space.contains(&point) {
            return Ok(point);
        }
    }
    Err(Error::EllipsoidDisjoint {
        attempts: MAX_REJECTIONS,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn too_few_points_is_an_error() {
        assert!(matches!(
            enclosing_ellipsoid(&[vec![0.0, 0.0]], 0.0),
            Err(Error::TooFewPoints { got: 1 })
        ));
        assert!(enclosing_ellipsoid(&[], 0.3).is_err());
    }

    #[test]
    fn negative_enlargement_is_an_error() {
        let pts = vec![vec![0.0, 0.0], vec![1.0, 1.0], vec![0.0, 1.0]];
        assert!(enclosing_ellipsoid(&pts, -0.1).is_err());
    }
}
