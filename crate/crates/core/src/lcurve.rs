//! Tikhonov solves and L-curve evaluation on a fixed linear system.
//!
//! A [`RegularizedProblem`] factorizes its operator once. Every later solve
//! reuses the cached SVD, so evaluating `x_λ` for a new λ costs O(mn):
//!
//! ```text
//! x_λ = Σ σᵢ / (σᵢ² + λ) · (uᵢᵀ b) · vᵢ
//! ```
//!
//! The penalty weight enters as `λ‖x‖²`, not `λ²‖x‖²`.

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative threshold below which the unregularized problem is treated as singular.
pub const SINGULAR_RATIO: f64 = 1e-12;

/// Squared norms at or below this value have no finite logarithm worth plotting.
pub const DEGENERATE_NORM: f64 = 1e-300;

/// A dense linear system `A x ≈ b` together with the SVD of `A`.
#[derive(Debug, Clone)]
pub struct RegularizedProblem {
    operator: DMatrix<f64>,
    data: DVector<f64>,
    /// m × k, k = min(m, n)
    left: DMatrix<f64>,
    /// non-increasing, non-negative
    singular_values: DVector<f64>,
    /// n × k
    right: DMatrix<f64>,
    /// Uᵀb, cached since it does not depend on λ
    projected_data: DVector<f64>,
    /// ‖b − UUᵀb‖², the part of the residual no λ can remove
    residual_floor: f64,
}

impl RegularizedProblem {
    /// Validates the inputs and factorizes the operator.
    pub fn new(operator: DMatrix<f64>, data: DVector<f64>) -> Result<Self> {
        let (m, n) = operator.shape();
        if m == 0 || n == 0 {
            return Err(Error::EmptyOperator);
        }
        if data.len() != m {
            return Err(Error::DimensionMismatch(format!(
                "data has {} entries but operator has {} rows",
                data.len(),
                m
            )));
        }
        if let Some(pos) = operator.iter().position(|v| !v.is_finite()) {
            // nalgebra storage is column-major
            return Err(Error::NonFiniteInput(format!(
                "operator entry ({}, {})",
                pos % m,
                pos / m
            )));
        }
        if let Some(pos) = data.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFiniteInput(format!("data entry {pos}")));
        }

        let svd = operator.clone().svd(true, true);
        let u = svd.u.expect("svd computed with u");
        let v_t = svd.v_t.expect("svd computed with v_t");
        let raw = svd.singular_values;

        let k = raw.len();
        let mut order: Vec<usize> = (0..k).collect();
        order.sort_by(|&a, &b| raw[b].total_cmp(&raw[a]));

        let singular_values = DVector::from_iterator(k, order.iter().map(|&i| raw[i].max(0.0)));
        let left = DMatrix::from_fn(m, k, |r, c| u[(r, order[c])]);
        let right = DMatrix::from_fn(n, k, |r, c| v_t[(order[c], r)]);
        let projected_data = left.tr_mul(&data);
        let residual_floor = (&data - &left * &projected_data).norm_squared();

        Ok(Self {
            operator,
            data,
            left,
            singular_values,
            right,
            projected_data,
            residual_floor,
        })
    }

    pub fn rows(&self) -> usize {
        self.operator.nrows()
    }

    pub fn cols(&self) -> usize {
        self.operator.ncols()
    }

    pub fn operator(&self) -> &DMatrix<f64> {
        &self.operator
    }

    pub fn data(&self) -> &DVector<f64> {
        &self.data
    }

    /// Singular values in non-increasing order.
    pub fn singular_values(&self) -> &DVector<f64> {
        &self.singular_values
    }

    /// Left singular vectors as columns, matching [`Self::singular_values`].
    pub fn left_vectors(&self) -> &DMatrix<f64> {
        &self.left
    }

    /// Right singular vectors as columns, matching [`Self::singular_values`].
    pub fn right_vectors(&self) -> &DMatrix<f64> {
        &self.right
    }

    pub fn largest_singular_value(&self) -> f64 {
        self.singular_values[0]
    }

    /// `U diag(σ) Vᵀ`, rebuilt from the cached factorization.
    pub fn reconstruct(&self) -> DMatrix<f64> {
        let mut scaled = self.left.clone();
        for (j, sigma) in self.singular_values.iter().enumerate() {
            scaled.column_mut(j).scale_mut(*sigma);
        }
        scaled * self.right.transpose()
    }

    /// Minimizer of `‖Ax − b‖² + λ‖x‖²`.
    pub fn solve(&self, lambda: f64) -> Result<TikhonovSolution> {
        if lambda.is_nan() {
            return Err(Error::NonFiniteInput("lambda is NaN".into()));
        }
        if lambda < 0.0 {
            return Err(Error::NegativeLambda(lambda));
        }
        let sigma_max = self.singular_values[0];
        if lambda == 0.0 {
            let sigma_min = self.singular_values[self.singular_values.len() - 1];
            if !(sigma_min > SINGULAR_RATIO * sigma_max) {
                return Err(Error::SingularAtZero {
                    sigma_min,
                    sigma_max,
                });
            }
        }

        // Both norms are summed in the spectral basis: every term is monotone
        // in λ, so the sums are too, even after rounding.
        let mut residual_sq = self.residual_floor;
        let coefficients = DVector::from_iterator(
            self.singular_values.len(),
            self.singular_values
                .iter()
                .zip(self.projected_data.iter())
                .map(|(&sigma, &beta)| {
                    if sigma > 0.0 {
                        let denom = sigma * sigma + lambda;
                        residual_sq += (lambda / denom * beta).powi(2);
                        sigma / denom * beta
                    } else {
                        residual_sq += beta * beta;
                        0.0
                    }
                }),
        );
        let norm_sq = coefficients.norm_squared();
        let x = &self.right * coefficients;

        Ok(TikhonovSolution {
            lambda,
            residual_sq,
            norm_sq,
            x,
        })
    }

    /// The L-curve point `(λ, ln‖Ax_λ − b‖², ln‖x_λ‖²)`.
    pub fn l_curve_point(&self, lambda: f64) -> Result<LCurvePoint> {
        let sol = self.solve(lambda)?;
        if sol.residual_sq <= DEGENERATE_NORM || sol.norm_sq <= DEGENERATE_NORM {
            return Err(Error::DegenerateNorm {
                lambda,
                residual_sq: sol.residual_sq,
                norm_sq: sol.norm_sq,
            });
        }
        Ok(LCurvePoint {
            lambda,
            xi: sol.residual_sq.ln(),
            eta: sol.norm_sq.ln(),
        })
    }

    /// Evaluates the L-curve on every grid value, in grid order. Points are
    /// computed in parallel.
    pub fn l_curve_sample(&self, grid: &[f64]) -> Result<Vec<LCurvePoint>> {
        validate_grid(grid)?;
        grid.par_iter()
            .map(|&lambda| {
                self.l_curve_point(lambda).map_err(|e| Error::AtLambda {
                    lambda,
                    source: Box::new(e),
                })
            })
            .collect()
    }
}

/// Shorthand for [`RegularizedProblem::new`].
pub fn build_problem(operator: DMatrix<f64>, data: DVector<f64>) -> Result<RegularizedProblem> {
    RegularizedProblem::new(operator, data)
}

pub(crate) fn validate_grid(grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::EmptyGrid);
    }
    let mut prev = 0.0;
    for (index, &value) in grid.iter().enumerate() {
        if !(value > prev) || !value.is_finite() {
            return Err(Error::NonMonotoneGrid { index, value });
        }
        prev = value;
    }
    Ok(())
}

/// `count` values spaced evenly in log10 between `lo` and `hi`, both included.
pub fn log_grid(lo: f64, hi: f64, count: usize) -> Result<Vec<f64>> {
    if !(lo > 0.0 && hi > lo && hi.is_finite()) {
        return Err(Error::InvalidInterval { lo, hi });
    }
    match count {
        0 => Err(Error::EmptyGrid),
        1 => Ok(vec![lo]),
        _ => {
            let (a, b) = (lo.log10(), hi.log10());
            let step = (b - a) / (count - 1) as f64;
            let mut grid: Vec<f64> = (0..count)
                .map(|i| 10f64.powf(a + step * i as f64))
                .collect();
            grid[0] = lo;
            grid[count - 1] = hi;
            Ok(grid)
        }
    }
}

/// Regularized solution at a given λ.
#[derive(Debug, Clone, PartialEq)]
pub struct TikhonovSolution {
    pub lambda: f64,
    pub x: DVector<f64>,
    /// ‖Ax − b‖²
    pub residual_sq: f64,
    /// ‖x‖²
    pub norm_sq: f64,
}

/// One sample of the L-curve. `xi` and `eta` use the natural logarithm.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LCurvePoint {
    pub lambda: f64,
    pub xi: f64,
    pub eta: f64,
}

impl LCurvePoint {
    pub fn new(lambda: f64, xi: f64, eta: f64) -> Self {
        Self { lambda, xi, eta }
    }
}
