//! Brute-force corner location on a densely sampled L-curve.

use rayon::prelude::*;

use super::curvature::menger_curvature;
use crate::error::{Error, Result};
use crate::lcurve::LCurvePoint;

#[derive(Debug, Clone, PartialEq)]
pub struct DenseCorner {
    /// λ of the sample with the largest positive curvature.
    pub lambda_star: f64,
    /// Position of that sample in the input.
    pub index: usize,
    /// Curvature of each consecutive triple, indexed by its middle point.
    /// First and last entries are `None`.
    pub profile: Vec<Option<f64>>,
}

impl DenseCorner {
    pub fn max_curvature(&self) -> f64 {
        self.profile[self.index].expect("argmax lies on an interior point")
    }
}

/// Curvature of every consecutive triple, indexed by the middle point, with
/// `None` at both ends. Needs at least three points.
pub fn curvature_profile(points: &[LCurvePoint]) -> Result<Vec<Option<f64>>> {
    if points.len() < 3 {
        return Err(Error::TooFewPoints(points.len()));
    }
    let interior: Vec<f64> = points
        .par_windows(3)
        .map(|t| menger_curvature(&t[0], &t[1], &t[2]))
        .collect::<Result<_>>()?;
    let mut profile = Vec::with_capacity(points.len());
    profile.push(None);
    profile.extend(interior.into_iter().map(Some));
    profile.push(None);
    Ok(profile)
}

/// Curvature of every consecutive triple and the λ of the largest positive
/// value. `points` must be sorted by strictly increasing λ.
pub fn dense_corner_oracle(points: &[LCurvePoint]) -> Result<DenseCorner> {
    if points.len() < 3 {
        return Err(Error::TooFewPoints(points.len()));
    }
    for (index, pair) in points.windows(2).enumerate() {
        if !(pair[1].lambda > pair[0].lambda) {
            return Err(Error::NonMonotoneGrid {
                index: index + 1,
                value: pair[1].lambda,
            });
        }
    }

    let profile = curvature_profile(points)?;
    let mut best: Option<(usize, f64)> = None;
    for (i, c) in profile.iter().enumerate() {
        if let Some(c) = *c {
            if c > 0.0 && best.is_none_or(|(_, b)| c > b) {
                best = Some((i, c));
            }
        }
    }
    let (index, _) = best.ok_or(Error::NoPositiveCurvature)?;

    Ok(DenseCorner {
        lambda_star: points[index].lambda,
        index,
        profile,
    })
}
