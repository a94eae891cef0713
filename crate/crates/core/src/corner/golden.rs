//! Golden-section placement of the two interior probes.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The golden ratio φ = (1 + √5) / 2.
pub const PHI: f64 = 1.618_033_988_749_895;

/// Coordinate in which the golden-section ratios are applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Scale {
    /// Ratios on raw λ.
    #[default]
    Linear,
    /// Ratios on log₁₀ λ.
    Log,
}

impl Scale {
    pub fn to_coord(self, lambda: f64) -> f64 {
        match self {
            Scale::Linear => lambda,
            Scale::Log => lambda.log10(),
        }
    }

    pub fn to_lambda(self, coord: f64) -> f64 {
        match self {
            Scale::Linear => coord,
            Scale::Log => 10f64.powf(coord),
        }
    }
}

/// Lower interior point of `[lo, hi]`: `(hi + φ·lo) / (1 + φ)`.
pub fn lower_probe(lo: f64, hi: f64) -> f64 {
    (hi + PHI * lo) / (1.0 + PHI)
}

/// Upper interior point, mirrored from the lower one: `lo + (hi − lower)`.
pub fn upper_probe(lo: f64, lower: f64, hi: f64) -> f64 {
    lo + (hi - lower)
}

/// Both interior points of `[lo, hi]` in bare coordinates.
pub fn golden_interior(lo: f64, hi: f64) -> (f64, f64) {
    let lower = lower_probe(lo, hi);
    (lower, upper_probe(lo, lower, hi))
}

/// Interior probes `(λ₂, λ₃)` for the search interval `[lambda_lo, lambda_hi]`.
pub fn golden_section_init(lambda_lo: f64, lambda_hi: f64, scale: Scale) -> Result<(f64, f64)> {
    if !(lambda_lo > 0.0 && lambda_hi > lambda_lo && lambda_hi.is_finite()) {
        return Err(Error::InvalidInterval {
            lo: lambda_lo,
            hi: lambda_hi,
        });
    }
    let (a, b) = golden_interior(scale.to_coord(lambda_lo), scale.to_coord(lambda_hi));
    Ok((scale.to_lambda(a), scale.to_lambda(b)))
}
