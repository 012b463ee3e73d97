use alloc::string::String;
use alloc::vec::Vec;

use thiserror::Error;

/// Failures of the exact arithmetic layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not square-free")]
    NotSquareFree(u64),
    #[error("cannot mix sqrt({0}) and sqrt({1}) in one computation")]
    MixedRadicals(u64, u64),
    #[error("cannot parse scalar `{0}`")]
    ParseScalar(String),
    #[error("cannot parse polynomial: {0}")]
    ParsePoly(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("Groebner basis budget exhausted after {0} reduction steps")]
    BudgetExhausted(usize),
    #[error("empty polynomial system")]
    EmptySystem,
    #[error("polynomial is not linear in the designated variables: offending term `{0}`")]
    NonLinear(String),
}

/// Failures of the geometric layer.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("metric is degenerate (det g = 0)")]
    DegenerateMetric,
    #[error("metric is not symmetric")]
    AsymmetricMetric,
    #[error("dimension {0} is too small for this operation (need at least {1})")]
    DimensionTooSmall(usize, usize),
    #[error("operation requires dimension 4, got {0}")]
    RequiresDim4(usize),
    #[error("Jacobi identity fails for {} triple(s)", .0.len())]
    JacobiViolated(Vec<(usize, usize, usize)>),
    #[error("structure constant index out of range or not i < j: ({0}, {1}, {2})")]
    BadIndex(usize, usize, usize),
    #[error("eigenvalues indeterminate at this precision (separation {0:e})")]
    Indeterminate(f64),
    #[error("no canonical form implemented for Segre type {0}")]
    UnsupportedSegre(String),
    #[error("cannot parse Segre type `{0}`")]
    ParseSegre(String),
    #[error("family parameter a must be nonzero")]
    ZeroFamilyParameter,
    #[error("sign parameter must be +1 or -1")]
    BadSign,
}
