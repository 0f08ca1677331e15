use thiserror::Error;

use crate::kernel::Point;

/// Every failure a geometric construction can report.
///
/// Most variants mark a degenerate configuration (a point at infinity, a
/// tangency, a collinear triple) rather than a bug; callers running random
/// trials treat them as "skip this instance".
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    #[error("points coincide")]
    CoincidentPoints,
    #[error("lines are parallel (intersection at infinity)")]
    ParallelLines,
    #[error("points are collinear")]
    CollinearPoints,
    #[error("circles do not intersect")]
    DisjointCircles,
    #[error("circles are tangent at ({}, {})", .0.x, .0.y)]
    TangentCircles(Point),
    #[error("circles are concentric")]
    ConcentricCircles,
    #[error("angle ray has zero length")]
    DegenerateRay,
    #[error("cannot invert the center of inversion")]
    CenterInversion,
    #[error("relation {kind} expects {expected}, got {got}")]
    ArityMismatch {
        kind: &'static str,
        expected: &'static str,
        got: String,
    },
    #[error("points are not in general position for fitting")]
    DegenerateConfiguration,
    #[error("design matrix is rank deficient")]
    RankDeficient,
    #[error("line coefficients (l, m) vanish")]
    DegenerateLine,
    #[error("circle radius must be positive and finite, got {0}")]
    InvalidRadius(f64),
    #[error("non-finite value produced")]
    NonFinite,
    #[error("triangle is degenerate")]
    DegenerateTriangle,
    #[error("unknown triangle center {0}")]
    UnknownCenter(String),
    #[error("trilinear weights sum to zero (point at infinity)")]
    PointAtInfinity,
    #[error("Apollonius circles are degenerate for this triangle")]
    DegenerateApollonius,
    #[error("triangle is equilateral: the second isodynamic point is at infinity")]
    EquilateralSingular,
    #[error("external bisector foot is at infinity (isosceles at this vertex)")]
    ExternalFootAtInfinity,
    #[error("pedal triangle is degenerate (point on the circumcircle)")]
    DegeneratePedal,
    #[error("point lies on the circle")]
    PointOnCircle,
    #[error("cevian is parallel to the opposite side")]
    ParallelToSide,
    #[error("point is not on the circumcircle")]
    NotOnCircumcircle,
    #[error("equilateral triangle has no Euler line")]
    EquilateralNoEulerLine,
    #[error("input must be positive, got {0}")]
    NonpositiveInput(f64),
}

pub type Result<T> = std::result::Result<T, GeomError>;
