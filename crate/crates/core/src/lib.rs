//! Regularization parameter selection for discrete ill-posed least-squares
//! problems.
//!
//! The optimal Tikhonov parameter is taken at the corner of the L-curve
//! `(ln‖Ax_λ − b‖², ln‖x_λ‖²)`, the point of maximum positive curvature.
//! [`corner::corner_search`] locates it with a golden-section search driven
//! by the signed curvature of the circle through three consecutive samples,
//! evaluating one new point per step.
//!
//! ```
//! use lcurve_corner::corner::{corner_search, CornerSearchConfig};
//! use lcurve_corner::problems::TestProblem;
//!
//! let demo = TestProblem::smoothing(32, 0.1, 1e-2, 1).unwrap();
//! let config = CornerSearchConfig::default();
//! let result = corner_search(|l| demo.problem.l_curve_point(l), &config).unwrap();
//! assert_eq!(result.evaluations, 4 + result.trace.len());
//! ```

// `!(x > y)` is used on purpose so that NaN lands in the rejecting branch
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod corner;
pub mod error;
pub mod io;
pub mod lcurve;
pub mod problems;
pub mod trace;

pub use error::{Error, Result};
pub use lcurve::{build_problem, LCurvePoint, RegularizedProblem, TikhonovSolution};
