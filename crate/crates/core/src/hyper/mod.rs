//! Quadratic extensions `Q(T)(sqrt(P(T)))`: branch points, specializations,
//! rational points on the quadratic twists of `Y^2 = P(T, Z)`, and the
//! parametricity classification for at most four branch points.

mod arith;
mod classify;
mod poly;
mod search;

use thiserror::Error;

pub(crate) use arith::rational_serde;
pub use arith::{exact_sqrt, height, squarefree_part, squarefree_part_with, FactorLimits, Rational, SquarefreeD};
pub use classify::{prop81_classify, Prop81Class, Prop81Report};
pub use poly::{BranchPoints, NonRationalFactor, SeparablePoly};
pub use search::{
    first_nontrivial_point, first_specialization, point_search, realized_discriminants, realized_discriminants_with,
    specialize, specialize_at, specialize_at_with, specialize_infinity, specialize_with, twist_correspondence_check,
    twist_correspondence_check_with, twist_scan, twist_scan_with, HyperCurve, Realized, Skipped, SpecPoint,
    TwistReport, TwistScan, WeightedPoint,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HyperError {
    #[error("invalid polynomial: {0}")]
    InvalidPolynomial(String),
    #[error("polynomial is not separable")]
    NotSeparable,
    #[error("cannot parse: {0}")]
    Parse(String),
    #[error("t0 is a branch point (P(t0) = 0)")]
    BranchPoint,
    #[error("infinity is a branch point for odd degree")]
    OddDegree,
    #[error("{0} is not a squarefree nonzero integer")]
    NotSquarefree(i128),
    #[error("the trivial twist d = 1 is not a quadratic extension")]
    TrivialTwist,
    #[error("zero has no squarefree part")]
    ZeroValue,
    #[error("cannot factor {0} within the trial division bound")]
    FactorizationTooLarge(String),
    #[error("degree {0} is above 4")]
    DegreeTooHigh(usize),
    #[error("height bound must be positive")]
    InvalidBound,
    #[error("integer overflow in exact arithmetic")]
    Overflow,
}
