//! Seeded discrete ill-posed test problems.
//!
//! The operator is a midpoint-rule discretization of a Gaussian convolution
//! kernel on [0, 1]. Its singular values decay like a Gaussian, so even
//! modest sizes are severely ill-conditioned.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{Error, Result};
use crate::lcurve::RegularizedProblem;

pub const MIN_SIZE: usize = 8;

/// Gaussian-kernel smoothing operator and a smooth ground truth.
///
/// `A[i][j] = h·exp(−((tᵢ − sⱼ)/w)²)` with midpoints `tᵢ = sᵢ = (i + ½)/n`
/// and `h = 1/n`; `x_true(s) = sin(πs) + ½ sin(2πs)`.
pub fn make_smoothing_problem(n: usize, kernel_width: f64) -> Result<(DMatrix<f64>, DVector<f64>)> {
    if n < MIN_SIZE {
        return Err(Error::InvalidSize(format!(
            "n must be at least {MIN_SIZE}, got {n}"
        )));
    }
    if !(kernel_width > 0.0 && kernel_width.is_finite()) {
        return Err(Error::InvalidSize(format!(
            "kernel width must be positive, got {kernel_width}"
        )));
    }
    let h = 1.0 / n as f64;
    let nodes: Vec<f64> = (0..n).map(|i| (i as f64 + 0.5) * h).collect();
    let operator = DMatrix::from_fn(n, n, |i, j| {
        let d = (nodes[i] - nodes[j]) / kernel_width;
        h * (-d * d).exp()
    });
    let x_true = DVector::from_iterator(
        n,
        nodes
            .iter()
            .map(|&s| (PI * s).sin() + 0.5 * (2.0 * PI * s).sin()),
    );
    Ok((operator, x_true))
}

/// `b_clean + e` with `e ~ N(0, (noise_level·‖b_clean‖/√m)²)` per entry.
pub fn add_noise(b_clean: &DVector<f64>, noise_level: f64, seed: u64) -> Result<DVector<f64>> {
    if !(noise_level >= 0.0 && noise_level.is_finite()) {
        return Err(Error::NonFiniteInput(format!(
            "noise level must be finite and non-negative, got {noise_level}"
        )));
    }
    if b_clean.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFiniteInput(
            "clean data contains NaN or infinity".into(),
        ));
    }
    if noise_level == 0.0 || b_clean.is_empty() {
        return Ok(b_clean.clone());
    }
    let sigma = noise_level * b_clean.norm() / (b_clean.len() as f64).sqrt();
    let normal = Normal::new(0.0, sigma).expect("finite positive std");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(DVector::from_iterator(
        b_clean.len(),
        b_clean.iter().map(|&v| v + normal.sample(&mut rng)),
    ))
}

/// Default acceptance battery: `(n, kernel width, noise level)`.
pub const BATTERY: [(usize, f64, f64); 3] = [(32, 0.1, 1e-2), (64, 0.05, 1e-2), (64, 0.1, 1e-3)];
pub const BATTERY_SEEDS: [u64; 3] = [1, 2, 3];

/// A generated problem together with its ground truth.
#[derive(Debug, Clone)]
pub struct TestProblem {
    pub problem: RegularizedProblem,
    pub x_true: DVector<f64>,
    pub b_clean: DVector<f64>,
    /// Requested relative noise `‖b − b_clean‖ / ‖b_clean‖`.
    pub noise_level: f64,
    pub seed: u64,
}

impl TestProblem {
    pub fn smoothing(n: usize, kernel_width: f64, noise_level: f64, seed: u64) -> Result<Self> {
        let (operator, x_true) = make_smoothing_problem(n, kernel_width)?;
        let b_clean = &operator * &x_true;
        let data = add_noise(&b_clean, noise_level, seed)?;
        Ok(Self {
            problem: RegularizedProblem::new(operator, data)?,
            x_true,
            b_clean,
            noise_level,
            seed,
        })
    }

    /// All nine battery problems, configuration-major.
    pub fn battery() -> Result<Vec<Self>> {
        let mut out = Vec::with_capacity(BATTERY.len() * BATTERY_SEEDS.len());
        for &(n, width, noise) in &BATTERY {
            for &seed in &BATTERY_SEEDS {
                out.push(Self::smoothing(n, width, noise, seed)?);
            }
        }
        Ok(out)
    }

    pub fn realized_noise(&self) -> f64 {
        (self.problem.data() - &self.b_clean).norm() / self.b_clean.norm()
    }

    pub fn condition_number(&self) -> f64 {
        let s = self.problem.singular_values();
        s[0] / s[s.len() - 1]
    }

    /// `‖x_λ − x_true‖ / ‖x_true‖`.
    pub fn relative_error(&self, lambda: f64) -> Result<f64> {
        let sol = self.problem.solve(lambda)?;
        Ok((sol.x - &self.x_true).norm() / self.x_true.norm())
    }
}
