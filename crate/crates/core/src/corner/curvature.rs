//! Signed Menger curvature of three points in the L-curve plane.

use crate::error::{Error, Result};
use crate::lcurve::LCurvePoint;

/// Smallest admissible squared distance between two of the three points.
pub const MIN_SQUARED_DISTANCE: f64 = 1e-30;

/// Signed curvature of the circle through three points, `±1/R`.
///
/// Positive when `pj → pk → pl` turns counterclockwise, zero for collinear
/// points. Only `(xi, eta)` enter; the λ fields are ignored.
pub fn menger_curvature(pj: &LCurvePoint, pk: &LCurvePoint, pl: &LCurvePoint) -> Result<f64> {
    menger_xy((pj.xi, pj.eta), (pk.xi, pk.eta), (pl.xi, pl.eta))
}

/// [`menger_curvature`] on bare coordinates.
pub fn menger_xy(pj: (f64, f64), pk: (f64, f64), pl: (f64, f64)) -> Result<f64> {
    let (xj, yj) = pj;
    let (xk, yk) = pk;
    let (xl, yl) = pl;

    let d_jk = (xk - xj).powi(2) + (yk - yj).powi(2);
    let d_kl = (xl - xk).powi(2) + (yl - yk).powi(2);
    let d_lj = (xj - xl).powi(2) + (yj - yl).powi(2);
    let closest = d_jk.min(d_kl).min(d_lj);
    if !(closest > MIN_SQUARED_DISTANCE) {
        return Err(Error::DegeneratePoints(closest));
    }

    // twice the signed triangle area; expanded, this is
    // ξⱼηₖ + ξₖη_ℓ + ξ_ℓηⱼ − ξⱼη_ℓ − ξₖηⱼ − ξ_ℓηₖ, written on differences so
    // that nearby points far from the origin do not cancel catastrophically
    let numerator = 2.0 * ((xk - xj) * (yl - yj) - (yk - yj) * (xl - xj));
    // product of squared distances can overflow/underflow for far-apart
    // or tightly clustered points; take the roots first
    let denominator = d_jk.sqrt() * d_kl.sqrt() * d_lj.sqrt();
    Ok(numerator / denominator)
}
