// Negated comparisons below are deliberate: they reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

//! Heinz means, their quadratic interpolation, and numerical verification of
//! the scalar and matrix inequalities built on them.

pub mod cli;
pub mod error;
pub mod interpolation;
pub mod linalg;
pub mod means;
pub mod outcome;
pub mod scalar;
pub mod suite;

pub use error::{Error, Result};
pub use outcome::{Direction, ParamEcho, RelationId, RelationOutcome};
pub use scalar::{EvalOptions, ParamPair, PositivePair, Region, ScalarRelationId};
pub use suite::MatrixRelationId;
