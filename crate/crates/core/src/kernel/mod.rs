//! Numeric plane primitives and tolerance-aware incidence predicates.
//!
//! Everything here is plain `f64` geometry. Constructions report degenerate
//! input through [`GeomError`]; predicates return a dimensionless residual
//! that callers compare against a [`Tolerance`].

mod construct;
mod fit;
mod relation;

use std::f64::consts::TAU;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::error::{GeomError, Result};

pub use construct::{
    angle_between_circles, circle_through, directed_angle, foot, intersect_circles,
    intersect_lines, invert, line_through, midpoint, radical_axis, reflect,
};
pub use fit::{fit_conic, fit_cubic, on_conic, on_cubic, ConicClass};
pub use relation::{check_relation, Entity, RelationKind};

/// Relative tolerance used by constructions to detect degenerate input.
pub const CONSTRUCTION_REL: f64 = 1e-9;
/// Relative tolerance used by catalog assertions.
pub const CATALOG_REL: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn norm_sq(self) -> f64 {
        self.x * self.x + self.y * self.y
    }

    pub fn dist(self, other: Point) -> f64 {
        (self - other).norm()
    }

    pub fn dot(self, other: Point) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the 3D cross product.
    pub fn cross(self, other: Point) -> f64 {
        self.x * other.y - self.y * other.x
    }

    /// Counterclockwise quarter turn.
    pub fn perp(self) -> Point {
        Point::new(-self.y, self.x)
    }

    pub fn rotate(self, radians: f64) -> Point {
        let (s, c) = radians.sin_cos();
        Point::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }

    pub fn lerp(self, other: Point, t: f64) -> Point {
        self + (other - self) * t
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    /// Lexicographic order on (x, y); NaN sorts last.
    pub fn lex_cmp(&self, other: &Point) -> std::cmp::Ordering {
        self.x.total_cmp(&other.x).then(self.y.total_cmp(&other.y))
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, k: f64) -> Point {
        Point::new(self.x * k, self.y * k)
    }
}

impl Div<f64> for Point {
    type Output = Point;
    fn div(self, k: f64) -> Point {
        Point::new(self.x / k, self.y / k)
    }
}

impl Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

/// `l·x + m·y + n = 0`, stored with `l² + m² = 1` and the first nonzero of
/// `(l, m)` positive, so `eval` is a signed distance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Line {
    l: f64,
    m: f64,
    n: f64,
}

impl Line {
    pub fn new(l: f64, m: f64, n: f64) -> Result<Self> {
        let h = l.hypot(m);
        if !(h > 0.0) || !h.is_finite() || !n.is_finite() {
            return Err(GeomError::DegenerateLine);
        }
        let (mut l, mut m, mut n) = (l / h, m / h, n / h);
        let flip = if l.abs() > 1e-12 { l < 0.0 } else { m < 0.0 };
        if flip {
            l = -l;
            m = -m;
            n = -n;
        }
        Ok(Self { l, m, n })
    }

    /// Line through `p` with direction `dir`.
    pub fn through(p: Point, dir: Point) -> Result<Self> {
        let normal = dir.perp();
        Self::new(normal.x, normal.y, -normal.dot(p))
    }

    pub fn coefficients(&self) -> (f64, f64, f64) {
        (self.l, self.m, self.n)
    }

    pub fn normal(&self) -> Point {
        Point::new(self.l, self.m)
    }

    /// Unit direction vector.
    pub fn direction(&self) -> Point {
        Point::new(-self.m, self.l)
    }

    /// Signed distance from `p`.
    pub fn eval(&self, p: Point) -> f64 {
        self.l * p.x + self.m * p.y + self.n
    }

    /// Some point on the line (the foot of the origin).
    pub fn anchor(&self) -> Point {
        self.normal() * -self.n
    }

    pub fn parallel_through(&self, p: Point) -> Line {
        Line {
            l: self.l,
            m: self.m,
            n: -(self.l * p.x + self.m * p.y),
        }
    }

    pub fn perpendicular_through(&self, p: Point) -> Line {
        Line::through(p, self.normal()).expect("unit normal is nonzero")
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Circle {
    pub center: Point,
    radius: f64,
}

impl Circle {
    pub fn new(center: Point, radius: f64) -> Result<Self> {
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(GeomError::InvalidRadius(radius));
        }
        if !center.is_finite() {
            return Err(GeomError::NonFinite);
        }
        Ok(Self { center, radius })
    }

    /// Circle on the segment `pq` as diameter.
    pub fn on_diameter(p: Point, q: Point) -> Result<Self> {
        Self::new(midpoint(p, q), p.dist(q) / 2.0)
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn point_at(&self, theta: f64) -> Point {
        self.center + Point::new(theta.cos(), theta.sin()) * self.radius
    }

    pub fn power(&self, p: Point) -> f64 {
        (p - self.center).norm_sq() - self.radius * self.radius
    }
}

/// `A·x² + B·xy + C·y² + D·x + E·y + F = 0`.
///
/// Coefficients are held in a local frame `u = (p - origin) / scale` with unit
/// Euclidean norm; fitting happens in that frame to stay well conditioned.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Conic {
    coeffs: [f64; 6],
    origin: Point,
    scale: f64,
}

impl Conic {
    /// Conic from world-frame coefficients.
    pub fn new(coeffs: [f64; 6]) -> Result<Self> {
        Self::in_frame(coeffs, Point::ORIGIN, 1.0)
    }

    pub(crate) fn in_frame(coeffs: [f64; 6], origin: Point, scale: f64) -> Result<Self> {
        if coeffs[..5].iter().all(|c| *c == 0.0) {
            return Err(GeomError::DegenerateConfiguration);
        }
        let norm = coeffs.iter().map(|c| c * c).sum::<f64>().sqrt();
        if !norm.is_finite() {
            return Err(GeomError::NonFinite);
        }
        Ok(Self {
            coeffs: coeffs.map(|c| c / norm),
            origin,
            scale,
        })
    }

    /// Coefficients expressed in world coordinates, unit norm.
    pub fn coefficients(&self) -> [f64; 6] {
        let [a, b, c, d, e, f] = self.coeffs;
        let s = self.scale;
        let (cx, cy) = (self.origin.x, self.origin.y);
        let s2 = s * s;
        let world = [
            a / s2,
            b / s2,
            c / s2,
            -2.0 * a * cx / s2 - b * cy / s2 + d / s,
            -2.0 * c * cy / s2 - b * cx / s2 + e / s,
            (a * cx * cx + b * cx * cy + c * cy * cy) / s2 - (d * cx + e * cy) / s + f,
        ];
        let norm = world.iter().map(|c| c * c).sum::<f64>().sqrt();
        world.map(|c| c / norm)
    }

    pub(crate) fn frame_coefficients(&self) -> [f64; 6] {
        self.coeffs
    }

    pub(crate) fn frame_point(&self, p: Point) -> Point {
        (p - self.origin) / self.scale
    }

    pub(crate) fn frame_scale(&self) -> f64 {
        self.scale
    }
}

/// Degree-3 curve with monomials
/// `x³, x²y, xy², y³, x², xy, y², x, y, 1`, framed like [`Conic`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cubic {
    coeffs: [f64; 10],
    origin: Point,
    scale: f64,
}

impl Cubic {
    pub fn new(coeffs: [f64; 10]) -> Result<Self> {
        Self::in_frame(coeffs, Point::ORIGIN, 1.0)
    }

    pub(crate) fn in_frame(coeffs: [f64; 10], origin: Point, scale: f64) -> Result<Self> {
        let norm = coeffs.iter().map(|c| c * c).sum::<f64>().sqrt();
        if !(norm > 0.0) || !norm.is_finite() {
            return Err(GeomError::DegenerateConfiguration);
        }
        Ok(Self {
            coeffs: coeffs.map(|c| c / norm),
            origin,
            scale,
        })
    }

    /// Unit-norm coefficients in the fitting frame.
    pub fn frame_coefficients(&self) -> [f64; 10] {
        self.coeffs
    }

    pub(crate) fn frame_point(&self, p: Point) -> Point {
        (p - self.origin) / self.scale
    }

    pub(crate) fn frame_scale(&self) -> f64 {
        self.scale
    }
}

/// Counterclockwise rotation in `[0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct DirectedAngle(f64);

impl DirectedAngle {
    pub fn from_radians(r: f64) -> Self {
        let mut v = r.rem_euclid(TAU);
        if v >= TAU {
            v = 0.0;
        }
        Self(v)
    }

    pub fn from_degrees(d: f64) -> Self {
        Self::from_radians(d.to_radians())
    }

    pub fn radians(self) -> f64 {
        self.0
    }

    pub fn degrees(self) -> f64 {
        self.0.to_degrees()
    }

    /// Distance to `other` on the circle of circumference `period`
    /// (`2π` for ray angles, `π` for line angles).
    pub fn gap(self, other: DirectedAngle, period: f64) -> f64 {
        circular_gap(self.0, other.0, period)
    }
}

/// Shortest distance between two angles modulo `period`.
pub fn circular_gap(a: f64, b: f64, period: f64) -> f64 {
    let d = (a - b).rem_euclid(period);
    d.min(period - d)
}

/// Dimensionless tolerance: residuals are compared against `rel`, lengths are
/// normalized by `scale` (the figure diameter).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub rel: f64,
    pub scale: f64,
}

impl Tolerance {
    pub fn new(rel: f64, scale: f64) -> Result<Self> {
        if !(rel > 0.0) || !(scale > 0.0) || !rel.is_finite() || !scale.is_finite() {
            return Err(GeomError::NonpositiveInput(if rel > 0.0 { scale } else { rel }));
        }
        Ok(Self { rel, scale })
    }

    pub fn construction(scale: f64) -> Self {
        Self {
            rel: CONSTRUCTION_REL,
            scale,
        }
    }

    pub fn catalog(scale: f64) -> Self {
        Self {
            rel: CATALOG_REL,
            scale,
        }
    }

    pub fn holds(&self, residual: f64) -> bool {
        residual <= self.rel
    }
}

/// Largest pairwise distance in a point set.
pub fn diameter(points: &[Point]) -> f64 {
    let mut d = 0.0f64;
    for (i, p) in points.iter().enumerate() {
        for q in &points[i + 1..] {
            d = d.max(p.dist(*q));
        }
    }
    d
}
