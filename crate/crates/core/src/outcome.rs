//! Evaluated inequality records shared by the scalar and matrix catalogs.

use serde::Serialize;

use crate::scalar::{Region, ScalarRelationId};
use crate::suite::MatrixRelationId;

/// Relative tolerance applied to every `holds` flag unless overridden.
pub const DEFAULT_REL_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(untagged)]
pub enum RelationId {
    Scalar(ScalarRelationId),
    Matrix(MatrixRelationId),
}

impl RelationId {
    pub fn name(&self) -> &'static str {
        match self {
            RelationId::Scalar(r) => r.name(),
            RelationId::Matrix(r) => r.name(),
        }
    }
}

/// Which way the displayed inequality points once its region is fixed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Direction {
    /// `lhs <= rhs`
    #[serde(rename = "<=")]
    Le,
    /// `lhs >= rhs`
    #[serde(rename = ">=")]
    Ge,
}

impl Direction {
    pub fn flip(self) -> Self {
        match self {
            Direction::Le => Direction::Ge,
            Direction::Ge => Direction::Le,
        }
    }

    /// Signed slack of `lhs ? rhs`; nonnegative when the relation holds.
    pub fn margin(self, lhs: f64, rhs: f64) -> f64 {
        match self {
            Direction::Le => rhs - lhs,
            Direction::Ge => lhs - rhs,
        }
    }
}

/// Parameters an outcome was evaluated at.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct ParamEcho {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nu: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tau: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RelationOutcome {
    pub relation: RelationId,
    pub lhs: f64,
    pub rhs: f64,
    /// Middle term of a two-sided chain `lhs <= middle <= rhs`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub middle: Option<f64>,
    pub direction: Direction,
    pub margin: f64,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub region: Option<Region>,
    pub params: ParamEcho,
}

impl RelationOutcome {
    pub(crate) fn compare(
        relation: RelationId,
        lhs: f64,
        rhs: f64,
        direction: Direction,
        tol: f64,
    ) -> Self {
        let margin = direction.margin(lhs, rhs);
        let scale = lhs.abs().max(rhs.abs()).max(1.0);
        RelationOutcome {
            relation,
            lhs,
            rhs,
            middle: None,
            direction,
            margin,
            holds: holds(margin, scale, tol),
            region: None,
            params: ParamEcho::default(),
        }
    }

    /// `lhs <= middle <= rhs`; the margin is the tighter of the two links.
    pub(crate) fn chain(relation: RelationId, lhs: f64, middle: f64, rhs: f64, tol: f64) -> Self {
        let margin = (middle - lhs).min(rhs - middle);
        let scale = lhs.abs().max(rhs.abs()).max(middle.abs()).max(1.0);
        RelationOutcome {
            relation,
            lhs,
            rhs,
            middle: Some(middle),
            direction: Direction::Le,
            margin,
            holds: holds(margin, scale, tol),
            region: None,
            params: ParamEcho::default(),
        }
    }

    pub(crate) fn with_region(mut self, region: Option<Region>) -> Self {
        self.region = region;
        self
    }

    pub(crate) fn with_params(mut self, params: ParamEcho) -> Self {
        self.params = params;
        self
    }
}

fn holds(margin: f64, scale: f64, tol: f64) -> bool {
    // NaN margins never hold.
    margin >= -tol * scale
}
