//! Self-describing JSON record of one corner search.

use serde::{Deserialize, Serialize};

use crate::corner::{CornerResult, CornerSearchConfig, IterationRecord};
use crate::lcurve::LCurvePoint;

pub const SCHEMA_VERSION: &str = "lcurve-corner-trace/1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceDocument {
    pub schema_version: String,
    pub config: CornerSearchConfig,
    pub lambda_opt: f64,
    pub corner_point: LCurvePoint,
    pub evaluations: usize,
    /// Final window still starts at the configured lower extreme.
    pub touches_lower: bool,
    /// Final window still ends at the configured upper extreme.
    pub touches_upper: bool,
    pub iterations: Vec<IterationRecord>,
    /// Every evaluated point in evaluation order; the first four are the
    /// initial quadruple.
    pub points: Vec<LCurvePoint>,
}

impl TraceDocument {
    pub fn new(config: &CornerSearchConfig, result: &CornerResult) -> Self {
        Self {
            schema_version: SCHEMA_VERSION.to_string(),
            config: *config,
            lambda_opt: result.lambda_opt,
            corner_point: result.corner_point,
            evaluations: result.evaluations,
            touches_lower: result.touches_lower,
            touches_upper: result.touches_upper,
            iterations: result.trace.clone(),
            points: result.evaluated_points(),
        }
    }

    pub fn to_json(&self) -> serde_json::Result<String> {
        serde_json::to_string_pretty(self)
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    /// Every iteration's new point is listed in `points`, and the counts agree.
    pub fn is_consistent(&self) -> bool {
        self.evaluations == self.points.len()
            && self.points.len() == 4 + self.iterations.len()
            && self
                .iterations
                .iter()
                .all(|rec| self.points.contains(&rec.new_point))
    }
}
