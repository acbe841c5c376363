use thiserror::Error;

use crate::matrix::Point;

/// Everything that can go wrong inside the engine.
///
/// Budget overruns are hard errors: a computation that runs out of steps
/// never returns a partial answer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        found: usize,
        index: Option<usize>,
    },

    #[error("column {column} of the configuration is zero")]
    ZeroColumn { column: usize },

    #[error("cone is not strongly convex: nonnegative kernel vector {certificate:?}")]
    NotStronglyConvex { certificate: Point },

    #[error("configuration has no columns")]
    EmptyConfiguration,

    #[error("point {point:?} lies outside the cone")]
    OutsideCone { point: Point },

    #[error("point {point:?} is not in the semigroup")]
    PointNotInSemigroup { point: Point },

    #[error("generator {degree:?} is not in the semigroup")]
    GeneratorOutsideSemigroup { degree: Point },

    #[error("overlap is only defined for pairs on the same face")]
    FaceMismatch,

    #[error("face {inner:?} is not contained in face {outer:?}")]
    FaceNotContained {
        inner: Vec<usize>,
        outer: Vec<usize>,
    },

    #[error("face {face:?} is not associated to the ideal")]
    FaceNotAssociated { face: Vec<usize> },

    #[error("unknown face {0:?}")]
    UnknownFace(Vec<usize>),

    #[error("pairs do not cover the standard monomials: {point:?} disagrees")]
    NotACover { point: Point },

    #[error("free variables are not determined by the nonnegative ones")]
    UnboundedFreePart,

    #[error("{what} exceeded its budget of {budget} steps")]
    BudgetExceeded { what: &'static str, budget: usize },

    #[error("integer overflow")]
    Overflow,

    #[error("ideals live over different configurations")]
    ConfigurationMismatch,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
