//! L-curve corner location: curvature, golden-section placement, the
//! iterative search and a dense-grid reference.

mod curvature;
mod golden;
mod oracle;
mod search;

pub use curvature::{menger_curvature, menger_xy, MIN_SQUARED_DISTANCE};
pub use golden::{golden_interior, golden_section_init, lower_probe, upper_probe, Scale, PHI};
pub use oracle::{curvature_profile, dense_corner_oracle, DenseCorner};
pub use search::{
    corner_search, Branch, CornerResult, CornerSearchConfig, IterationRecord, DEFAULT_EPSILON,
    DEFAULT_LAMBDA_HI, DEFAULT_LAMBDA_LO, DEFAULT_MAX_ITERATIONS,
};
