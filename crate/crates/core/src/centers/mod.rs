//! Triangle data model, trilinear coordinates and named centers.

mod isodynamic;
mod trilinear;

use std::fmt;
use std::str::FromStr;

use crate::error::{GeomError, Result};
use crate::kernel::{Point, CONSTRUCTION_REL};

pub use isodynamic::{
    brocard_points, excenter, isodynamic_first_apollonius, isodynamic_first_trilinear,
    isodynamic_second, side_spread, EQUILATERAL_SPREAD,
};
pub use trilinear::{
    center, trilinear_to_point, CenterId, Expr, Trilinear, TrilinearRegistry, STANDARD_TABLE,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Vertex {
    A,
    B,
    C,
}

impl Vertex {
    pub const ALL: [Vertex; 3] = [Vertex::A, Vertex::B, Vertex::C];

    pub fn index(self) -> usize {
        match self {
            Vertex::A => 0,
            Vertex::B => 1,
            Vertex::C => 2,
        }
    }

    /// The next vertex in the cycle A → B → C → A.
    pub fn next(self) -> Vertex {
        Vertex::ALL[(self.index() + 1) % 3]
    }

    pub fn prev(self) -> Vertex {
        Vertex::ALL[(self.index() + 2) % 3]
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Vertex::A => "A",
            Vertex::B => "B",
            Vertex::C => "C",
        })
    }
}

impl FromStr for Vertex {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "A" | "a" => Ok(Vertex::A),
            "B" | "b" => Ok(Vertex::B),
            "C" | "c" => Ok(Vertex::C),
            _ => Err(format!("not a vertex: `{s}`")),
        }
    }
}

/// Triangle `ABC` with cached side lengths `a = |BC|`, `b = |CA|`,
/// `c = |AB|`, interior angles and area.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Triangle {
    pts: [Point; 3],
    sides: [f64; 3],
    angles: [f64; 3],
    area: f64,
}

impl Triangle {
    pub fn new(a: Point, b: Point, c: Point) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && c.is_finite()) {
            return Err(GeomError::NonFinite);
        }
        let pts = [a, b, c];
        let sides = [b.dist(c), c.dist(a), a.dist(b)];
        let longest = sides.iter().cloned().fold(0.0, f64::max);
        let area = heron(sides);
        if !(longest > 0.0) || !(area > CONSTRUCTION_REL * longest * longest) {
            return Err(GeomError::DegenerateTriangle);
        }
        let mut angles = [0.0; 3];
        for i in 0..3 {
            let p = pts[i];
            let u = pts[(i + 1) % 3] - p;
            let v = pts[(i + 2) % 3] - p;
            angles[i] = u.cross(v).abs().atan2(u.dot(v));
        }
        Ok(Self {
            pts,
            sides,
            angles,
            area,
        })
    }

    /// Triangle with the given side lengths, placed with `B` at the origin,
    /// `C` at `(a, 0)` and `A` in the upper half-plane.
    pub fn from_sides(a: f64, b: f64, c: f64) -> Result<Self> {
        for s in [a, b, c] {
            if !(s > 0.0) || !s.is_finite() {
                return Err(GeomError::NonpositiveInput(s));
            }
        }
        let x = (a * a + c * c - b * b) / (2.0 * a);
        let h2 = c * c - x * x;
        if !(h2 > 0.0) {
            return Err(GeomError::DegenerateTriangle);
        }
        Self::new(
            Point::new(x, h2.sqrt()),
            Point::ORIGIN,
            Point::new(a, 0.0),
        )
    }

    /// Triangle with angles `A` and `B` (radians) on the base `BC` of
    /// length 1, counterclockwise.
    pub fn from_angles(angle_a: f64, angle_b: f64) -> Result<Self> {
        let angle_c = std::f64::consts::PI - angle_a - angle_b;
        if !(angle_a > 0.0 && angle_b > 0.0 && angle_c > 0.0) {
            return Err(GeomError::DegenerateTriangle);
        }
        let sa = angle_a.sin();
        Self::from_sides(1.0, angle_b.sin() / sa, angle_c.sin() / sa)
    }

    pub fn points(&self) -> [Point; 3] {
        self.pts
    }

    pub fn vertex(&self, v: Vertex) -> Point {
        self.pts[v.index()]
    }

    /// Length of the side opposite `v`.
    pub fn side(&self, v: Vertex) -> f64 {
        self.sides[v.index()]
    }

    /// Interior angle at `v`, radians.
    pub fn angle(&self, v: Vertex) -> f64 {
        self.angles[v.index()]
    }

    pub fn sides(&self) -> [f64; 3] {
        self.sides
    }

    pub fn angles(&self) -> [f64; 3] {
        self.angles
    }

    pub fn area(&self) -> f64 {
        self.area
    }

    pub fn semiperimeter(&self) -> f64 {
        self.sides.iter().sum::<f64>() / 2.0
    }

    pub fn circumradius(&self) -> f64 {
        self.sides[0] * self.sides[1] * self.sides[2] / (4.0 * self.area)
    }

    pub fn inradius(&self) -> f64 {
        self.area / self.semiperimeter()
    }

    /// Longest side, which is also the diameter of the vertex set.
    pub fn diameter(&self) -> f64 {
        self.sides.iter().cloned().fold(0.0, f64::max)
    }

    pub fn is_ccw(&self) -> bool {
        let [a, b, c] = self.pts;
        (b - a).cross(c - a) > 0.0
    }

    /// Same triangle with vertices relabeled so that `A → B → C` runs
    /// counterclockwise (swaps `B` and `C` when needed).
    pub fn to_ccw(&self) -> Triangle {
        if self.is_ccw() {
            *self
        } else {
            let [a, b, c] = self.pts;
            Triangle::new(a, c, b).expect("relabeling keeps the triangle nondegenerate")
        }
    }

    /// Triangle with vertices rotated so that `v` plays the role of `A`.
    pub fn rotated(&self, v: Vertex) -> Triangle {
        let i = v.index();
        let p = |k: usize| self.pts[(i + k) % 3];
        Triangle::new(p(0), p(1), p(2)).expect("rotation keeps the triangle nondegenerate")
    }

    pub fn circumcenter(&self) -> Point {
        let [a, b, c] = self.pts;
        let u = b - a;
        let v = c - a;
        let d = 2.0 * u.cross(v);
        let off = Point::new(
            v.y * u.norm_sq() - u.y * v.norm_sq(),
            u.x * v.norm_sq() - v.x * u.norm_sq(),
        ) / d;
        a + off
    }
}

/// Heron's formula in the numerically stable ordering.
fn heron(sides: [f64; 3]) -> f64 {
    let mut s = sides;
    s.sort_by(|x, y| y.total_cmp(x));
    let [a, b, c] = s;
    let prod = (a + (b + c)) * (c - (a - b)) * (c + (a - b)) * (a + (b - c));
    if prod > 0.0 {
        prod.sqrt() / 4.0
    } else {
        0.0
    }
}
