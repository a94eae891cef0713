//! Golden-section search for the point of maximum positive curvature.
//!
//! The search keeps four ordered samples `P₁ … P₄` of the L-curve and two
//! curvatures, `C₂` from `(P₁, P₂, P₃)` and `C₃` from `(P₂, P₃, P₄)`.
//!
//! * While `C₃ ≤ 0` the right end is pulled in: `λ₄ ← λ₃`, `λ₃ ← λ₂` and a
//!   fresh `λ₂` is placed by the golden rule.
//! * If `C₂ > C₃` the window moves left the same way and `λ₂` becomes the
//!   current estimate.
//! * Otherwise the window moves right (`λ₁ ← λ₂`, `λ₂ ← λ₃`, fresh `λ₃`) and
//!   `λ₃` becomes the estimate.
//!
//! Each step evaluates exactly one new L-curve point. The search stops once
//! `(λ₄ − λ₁) / λ₄ < ε`, measured on raw λ in both scales.

use serde::{Deserialize, Serialize};

use super::curvature::menger_curvature;
use super::golden::{golden_interior, lower_probe, upper_probe, Scale};
use crate::error::{Error, Result};
use crate::lcurve::LCurvePoint;

pub const DEFAULT_LAMBDA_LO: f64 = 1e-10;
pub const DEFAULT_LAMBDA_HI: f64 = 1e-3;
pub const DEFAULT_EPSILON: f64 = 0.01;
pub const DEFAULT_MAX_ITERATIONS: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CornerSearchConfig {
    /// Initial λ₁.
    pub lambda_lo: f64,
    /// Initial λ₄.
    pub lambda_hi: f64,
    /// Relative-width termination threshold.
    pub epsilon: f64,
    pub scale: Scale,
    /// Cap on the number of iteration records (shrink steps included).
    pub max_iterations: usize,
}

impl Default for CornerSearchConfig {
    fn default() -> Self {
        Self {
            lambda_lo: DEFAULT_LAMBDA_LO,
            lambda_hi: DEFAULT_LAMBDA_HI,
            epsilon: DEFAULT_EPSILON,
            scale: Scale::Linear,
            max_iterations: DEFAULT_MAX_ITERATIONS,
        }
    }
}

impl CornerSearchConfig {
    pub fn new(lambda_lo: f64, lambda_hi: f64, epsilon: f64) -> Self {
        Self {
            lambda_lo,
            lambda_hi,
            epsilon,
            ..Self::default()
        }
    }

    pub fn with_scale(mut self, scale: Scale) -> Self {
        self.scale = scale;
        self
    }

    pub fn with_max_iterations(mut self, max_iterations: usize) -> Self {
        self.max_iterations = max_iterations;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.lambda_lo > 0.0 && self.lambda_hi > self.lambda_lo && self.lambda_hi.is_finite())
        {
            return Err(Error::InvalidInterval {
                lo: self.lambda_lo,
                hi: self.lambda_hi,
            });
        }
        if !(self.epsilon > 0.0 && self.epsilon < 1.0) {
            return Err(Error::InvalidConfig(format!(
                "epsilon must lie in (0, 1), got {}",
                self.epsilon
            )));
        }
        if self.max_iterations < 4 {
            return Err(Error::InvalidConfig(format!(
                "max_iterations must be at least 4, got {}",
                self.max_iterations
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    /// `C₃ ≤ 0`: λ₄ pulled in, λ₁ kept.
    ShrinkNegativeC3,
    /// `C₂ > C₃`: window moved toward smaller λ.
    MoveLeft,
    /// `C₂ ≤ C₃`: window moved toward larger λ.
    MoveRight,
}

/// State after one step of the search.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IterationRecord {
    /// 1-based step number.
    pub index: usize,
    /// `(λ₁, λ₂, λ₃, λ₄)` after the step.
    pub lambdas: [f64; 4],
    /// Curvatures that decided this step, measured before it.
    pub c2: f64,
    pub c3: f64,
    pub branch: Branch,
    /// The single point evaluated by this step.
    pub new_point: LCurvePoint,
}

impl IterationRecord {
    pub fn width(&self) -> f64 {
        self.lambdas[3] - self.lambdas[0]
    }

    pub fn relative_width(&self) -> f64 {
        self.width() / self.lambdas[3]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CornerResult {
    pub lambda_opt: f64,
    pub corner_point: LCurvePoint,
    /// `P₁ … P₄` of the initial quadruple, in λ order.
    pub initial: [LCurvePoint; 4],
    pub trace: Vec<IterationRecord>,
    /// Total number of provider calls.
    pub evaluations: usize,
    /// Final λ₁ is still the configured lower extreme.
    pub touches_lower: bool,
    /// Final λ₄ is still the configured upper extreme.
    pub touches_upper: bool,
}

impl CornerResult {
    pub fn iterations(&self) -> usize {
        self.trace.len()
    }

    /// `(λ₁, λ₂, λ₃, λ₄)` when the search stopped.
    pub fn final_lambdas(&self) -> [f64; 4] {
        match self.trace.last() {
            Some(rec) => rec.lambdas,
            None => self.initial.map(|p| p.lambda),
        }
    }

    /// Every evaluated point, in evaluation order.
    pub fn evaluated_points(&self) -> Vec<LCurvePoint> {
        let mut points = self.initial.to_vec();
        points.extend(self.trace.iter().map(|r| r.new_point));
        points
    }
}

struct Window<F> {
    provider: F,
    scale: Scale,
    /// Positions in the active scale.
    coords: [f64; 4],
    points: [LCurvePoint; 4],
    evaluations: usize,
}

impl<F> Window<F>
where
    F: FnMut(f64) -> Result<LCurvePoint>,
{
    fn evaluate(&mut self, lambda: f64) -> Result<LCurvePoint> {
        self.evaluations += 1;
        let point = (self.provider)(lambda).map_err(|e| match e {
            annotated @ Error::AtLambda { .. } => annotated,
            other => Error::AtLambda {
                lambda,
                source: Box::new(other),
            },
        })?;
        Ok(LCurvePoint { lambda, ..point })
    }

    fn lambdas(&self) -> [f64; 4] {
        self.points.map(|p| p.lambda)
    }

    fn converged(&self, epsilon: f64) -> bool {
        let [l1, _, _, l4] = self.lambdas();
        (l4 - l1) / l4 < epsilon
    }

    fn curvatures(&self) -> Result<(f64, f64)> {
        let [p1, p2, p3, p4] = &self.points;
        Ok((menger_curvature(p1, p2, p3)?, menger_curvature(p2, p3, p4)?))
    }

    /// λ₄ ← λ₃, λ₃ ← λ₂, fresh λ₂.
    fn shift_left(&mut self) -> Result<LCurvePoint> {
        self.coords[3] = self.coords[2];
        self.points[3] = self.points[2];
        self.coords[2] = self.coords[1];
        self.points[2] = self.points[1];
        self.coords[1] = lower_probe(self.coords[0], self.coords[3]);
        let point = self.evaluate(self.scale.to_lambda(self.coords[1]))?;
        self.points[1] = point;
        Ok(point)
    }

    /// λ₁ ← λ₂, λ₂ ← λ₃, fresh λ₃.
    fn shift_right(&mut self) -> Result<LCurvePoint> {
        self.coords[0] = self.coords[1];
        self.points[0] = self.points[1];
        self.coords[1] = self.coords[2];
        self.points[1] = self.points[2];
        self.coords[2] = upper_probe(self.coords[0], self.coords[1], self.coords[3]);
        let point = self.evaluate(self.scale.to_lambda(self.coords[2]))?;
        self.points[2] = point;
        Ok(point)
    }

    fn check_ordered(&self) -> Result<()> {
        let c = self.coords;
        let l = self.lambdas();
        let ordered = c[0] < c[1] && c[1] < c[2] && c[2] < c[3];
        let ordered_raw = l[0] < l[1] && l[1] < l[2] && l[2] < l[3];
        if ordered && ordered_raw {
            Ok(())
        } else {
            Err(Error::IntervalCollapse(l[3] - l[0]))
        }
    }
}

/// Tie-break used when no move step has stored an estimate yet.
fn estimate_from(c2: f64, c3: f64, points: &[LCurvePoint; 4]) -> LCurvePoint {
    if c2 >= c3 {
        points[1]
    } else {
        points[2]
    }
}

/// Locates the L-curve corner on `[config.lambda_lo, config.lambda_hi]`.
///
/// `provider` maps λ to its L-curve point and is called exactly
/// `4 + trace.len()` times.
pub fn corner_search<F>(provider: F, config: &CornerSearchConfig) -> Result<CornerResult>
where
    F: FnMut(f64) -> Result<LCurvePoint>,
{
    config.validate()?;
    let scale = config.scale;
    let lo = scale.to_coord(config.lambda_lo);
    let hi = scale.to_coord(config.lambda_hi);
    let (c2_init, c3_init) = golden_interior(lo, hi);
    let placeholder = LCurvePoint::new(0.0, 0.0, 0.0);

    let mut window = Window {
        provider,
        scale,
        coords: [lo, c2_init, c3_init, hi],
        points: [placeholder; 4],
        evaluations: 0,
    };
    let initial_lambdas = [
        config.lambda_lo,
        scale.to_lambda(c2_init),
        scale.to_lambda(c3_init),
        config.lambda_hi,
    ];
    for (i, &lambda) in initial_lambdas.iter().enumerate() {
        window.points[i] = window.evaluate(lambda)?;
    }
    window.check_ordered()?;
    let initial = window.points;

    let mut trace: Vec<IterationRecord> = Vec::new();
    let mut stored: Option<LCurvePoint> = None;

    let mut step = |window: &mut Window<F>, branch: Branch, c2: f64, c3: f64| -> Result<()> {
        if trace.len() >= config.max_iterations {
            return Err(Error::MaxIterationsExceeded(trace.len()));
        }
        let width_before = window.lambdas()[3] - window.lambdas()[0];
        let new_point = match branch {
            Branch::ShrinkNegativeC3 | Branch::MoveLeft => window.shift_left()?,
            Branch::MoveRight => window.shift_right()?,
        };
        window.check_ordered()?;
        let lambdas = window.lambdas();
        if !(lambdas[3] - lambdas[0] < width_before) {
            return Err(Error::IntervalCollapse(lambdas[3] - lambdas[0]));
        }
        trace.push(IterationRecord {
            index: trace.len() + 1,
            lambdas,
            c2,
            c3,
            branch,
            new_point,
        });
        Ok(())
    };

    let corner_point = 'search: loop {
        if window.converged(config.epsilon) {
            match stored {
                Some(point) => break 'search point,
                None => {
                    let (c2, c3) = window.curvatures()?;
                    break 'search estimate_from(c2, c3, &window.points);
                }
            }
        }
        let (mut c2, mut c3) = window.curvatures()?;
        while c3 <= 0.0 {
            step(&mut window, Branch::ShrinkNegativeC3, c2, c3)?;
            (c2, c3) = window.curvatures()?;
            if window.converged(config.epsilon) {
                break 'search estimate_from(c2, c3, &window.points);
            }
        }
        if c2 > c3 {
            stored = Some(window.points[1]);
            step(&mut window, Branch::MoveLeft, c2, c3)?;
        } else {
            stored = Some(window.points[2]);
            step(&mut window, Branch::MoveRight, c2, c3)?;
        }
    };

    Ok(CornerResult {
        lambda_opt: corner_point.lambda,
        corner_point,
        initial,
        evaluations: window.evaluations,
        touches_lower: window.points[0].lambda == config.lambda_lo,
        touches_upper: window.points[3].lambda == config.lambda_hi,
        trace,
    })
}
