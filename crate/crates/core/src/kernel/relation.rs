//! Incidence relations and their scale-invariant residuals.
//!
//! Every residual is dimensionless: lengths are divided by the figure
//! diameter `tol.scale`, angles are measured in radians and ratios are
//! compared relatively. A relation holds iff its residual is at most
//! `tol.rel`.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::str::FromStr;

use super::fit::{fit_conic, fit_cubic, on_conic, on_cubic, ConicClass};
use super::{circular_gap, Circle, Conic, Cubic, Line, Point, Tolerance};
use crate::error::{GeomError, Result};

/// Anything a relation can take as an argument.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Entity {
    Point(Point),
    Line(Line),
    Circle(Circle),
    Conic(Conic),
    Cubic(Cubic),
    Scalar(f64),
}

macro_rules! relation_kinds {
    ($($variant:ident => $name:literal),* $(,)?) => {
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum RelationKind {
            $($variant),*
        }

        impl RelationKind {
            pub const ALL: &'static [RelationKind] = &[$(RelationKind::$variant),*];

            pub fn name(self) -> &'static str {
                match self {
                    $(RelationKind::$variant => $name),*
                }
            }
        }

        impl FromStr for RelationKind {
            type Err = String;
            fn from_str(s: &str) -> std::result::Result<Self, String> {
                match s {
                    $($name => Ok(RelationKind::$variant),)*
                    _ => Err(format!("unknown relation `{s}`")),
                }
            }
        }
    };
}

relation_kinds! {
    Coincide => "coincide",
    Collinear => "collinear",
    Concyclic => "concyclic",
    Concurrent => "concurrent",
    Parallel => "parallel",
    Perpendicular => "perpendicular",
    EqualAngle => "equal_angle",
    EqualLineAngle => "equal_line_angle",
    Equal => "equal",
    Less => "less",
    EqualLength => "equal_length",
    Equilateral => "equilateral",
    Similar => "similar",
    Congruent => "congruent",
    MidpointOf => "midpoint_of",
    Bisects => "bisects",
    TangentCircles => "tangent_circles",
    OrthogonalCircles => "orthogonal_circles",
    OnCircle => "on_circle",
    OnLine => "on_line",
    OnConic => "on_conic",
    OnCubic => "on_cubic",
    Conconic => "conconic",
    Concubic => "concubic",
    Kite => "kite",
    Inside => "inside",
    Outside => "outside",
    Ellipse => "ellipse",
    Parabola => "parabola",
    Hyperbola => "hyperbola",
}

impl fmt::Display for RelationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Band around `B² − 4AC = 0` (normalized) treated as a parabola.
pub const PARABOLA_BAND: f64 = 1e-9;

struct Args<'a> {
    kind: RelationKind,
    items: &'a [Entity],
}

impl<'a> Args<'a> {
    fn mismatch(&self, expected: &'static str) -> GeomError {
        GeomError::ArityMismatch {
            kind: self.kind.name(),
            expected,
            got: describe(self.items),
        }
    }

    fn points(&self, expected: &'static str, min: usize, max: usize) -> Result<Vec<Point>> {
        let pts: Vec<Point> = self
            .items
            .iter()
            .filter_map(|e| match e {
                Entity::Point(p) => Some(*p),
                _ => None,
            })
            .collect();
        if pts.len() != self.items.len() || pts.len() < min || pts.len() > max {
            return Err(self.mismatch(expected));
        }
        Ok(pts)
    }

    fn scalars2(&self) -> Result<(f64, f64)> {
        match self.items {
            [Entity::Scalar(a), Entity::Scalar(b)] => Ok((*a, *b)),
            _ => Err(self.mismatch("2 scalars")),
        }
    }

    fn lines(&self, expected: &'static str, n: usize) -> Result<Vec<Line>> {
        let ls: Vec<Line> = self
            .items
            .iter()
            .filter_map(|e| match e {
                Entity::Line(l) => Some(*l),
                _ => None,
            })
            .collect();
        if ls.len() != self.items.len() || ls.len() != n {
            return Err(self.mismatch(expected));
        }
        Ok(ls)
    }

    fn circles2(&self) -> Result<(Circle, Circle)> {
        match self.items {
            [Entity::Circle(a), Entity::Circle(b)] => Ok((*a, *b)),
            _ => Err(self.mismatch("2 circles")),
        }
    }
}

fn describe(items: &[Entity]) -> String {
    let names: Vec<&str> = items
        .iter()
        .map(|e| match e {
            Entity::Point(_) => "point",
            Entity::Line(_) => "line",
            Entity::Circle(_) => "circle",
            Entity::Conic(_) => "conic",
            Entity::Cubic(_) => "cubic",
            Entity::Scalar(_) => "scalar",
        })
        .collect();
    format!("[{}]", names.join(", "))
}

fn relative(a: f64, b: f64) -> f64 {
    let m = a.abs().max(b.abs());
    if m == 0.0 {
        0.0
    } else {
        (a - b).abs() / m
    }
}

/// Residual of `kind` on `args`; the relation holds iff it is `≤ tol.rel`.
pub fn check_relation(kind: RelationKind, args: &[Entity], tol: &Tolerance) -> Result<f64> {
    let a = Args { kind, items: args };
    let scale = tol.scale;
    use RelationKind::*;
    let r = match kind {
        Coincide => {
            let p = a.points("2 points", 2, 2)?;
            p[0].dist(p[1]) / scale
        }
        Collinear => collinear(&a.points("at least 3 points", 3, usize::MAX)?) / scale,
        Concyclic => concyclic(&a.points("at least 4 points", 4, usize::MAX)?, scale),
        Concurrent => {
            let ls = a.lines("3 lines", 3)?;
            concurrent(&ls, scale)
        }
        Parallel => {
            let ls = a.lines("2 lines", 2)?;
            ls[0].normal().cross(ls[1].normal()).abs()
        }
        Perpendicular => {
            let ls = a.lines("2 lines", 2)?;
            ls[0].normal().dot(ls[1].normal()).abs()
        }
        EqualAngle => {
            let (x, y) = a.scalars2()?;
            circular_gap(x, y, TAU)
        }
        EqualLineAngle => {
            let (x, y) = a.scalars2()?;
            circular_gap(x, y, PI)
        }
        Equal => {
            let (x, y) = a.scalars2()?;
            relative(x, y)
        }
        Less => {
            let (x, y) = a.scalars2()?;
            if x < y {
                0.0
            } else {
                let m = x.abs().max(y.abs());
                if m == 0.0 {
                    f64::INFINITY
                } else {
                    // equality must not count as holding
                    (x - y) / m + f64::EPSILON
                }
            }
        }
        EqualLength => {
            let p = a.points("4 points (two segments)", 4, 4)?;
            relative(p[0].dist(p[1]), p[2].dist(p[3]))
        }
        Equilateral => {
            let p = a.points("3 points", 3, 3)?;
            equilateral(p[0], p[1], p[2])
        }
        Similar => {
            let p = a.points("6 points (two triangles)", 6, 6)?;
            similar(&p)
        }
        Congruent => {
            let p = a.points("6 points (two triangles)", 6, 6)?;
            similar(&p)
                .max(relative(p[0].dist(p[1]), p[3].dist(p[4])))
                .max(relative(p[0].dist(p[2]), p[3].dist(p[5])))
        }
        MidpointOf => {
            let p = a.points("3 points (midpoint, end, end)", 3, 3)?;
            p[0].dist((p[1] + p[2]) * 0.5) / scale
        }
        Bisects => match args {
            [Entity::Line(l), Entity::Point(p), Entity::Point(q)] => {
                l.eval((*p + *q) * 0.5).abs() / scale
            }
            _ => return Err(a.mismatch("line, point, point")),
        },
        TangentCircles => {
            let (c1, c2) = a.circles2()?;
            let d = c1.center.dist(c2.center);
            let ext = (d - (c1.radius() + c2.radius())).abs();
            let int = (d - (c1.radius() - c2.radius()).abs()).abs();
            ext.min(int) / scale
        }
        OrthogonalCircles => {
            let (c1, c2) = a.circles2()?;
            let d2 = (c1.center - c2.center).norm_sq();
            let (r1, r2) = (c1.radius(), c2.radius());
            (d2 - r1 * r1 - r2 * r2).abs() / (2.0 * r1 * r2)
        }
        OnCircle => match args {
            [Entity::Point(p), Entity::Circle(c)] => (p.dist(c.center) - c.radius()).abs() / scale,
            _ => return Err(a.mismatch("point, circle")),
        },
        OnLine => match args {
            [Entity::Point(p), Entity::Line(l)] => l.eval(*p).abs() / scale,
            _ => return Err(a.mismatch("point, line")),
        },
        OnConic => match args {
            [Entity::Point(p), Entity::Conic(c)] => on_conic(c, *p) / scale,
            _ => return Err(a.mismatch("point, conic")),
        },
        OnCubic => match args {
            [Entity::Point(p), Entity::Cubic(c)] => on_cubic(c, *p) / scale,
            _ => return Err(a.mismatch("point, cubic")),
        },
        Conconic => {
            let p = a.points("at least 6 points", 6, usize::MAX)?;
            let conic = fit_conic(&[p[0], p[1], p[2], p[3], p[4]])?;
            p[5..]
                .iter()
                .map(|q| on_conic(&conic, *q) / scale)
                .fold(0.0, f64::max)
        }
        Concubic => {
            let p = a.points("at least 10 points", 10, usize::MAX)?;
            let first: [Point; 9] = p[..9].try_into().expect("length checked");
            let cubic = fit_cubic(&first)?;
            p[9..]
                .iter()
                .map(|q| on_cubic(&cubic, *q) / scale)
                .fold(0.0, f64::max)
        }
        Kite => {
            let p = a.points("4 points (quadrilateral)", 4, 4)?;
            let s: Vec<f64> = (0..4).map(|i| p[i].dist(p[(i + 1) % 4])).collect();
            let first = relative(s[0], s[1]).max(relative(s[2], s[3]));
            let second = relative(s[1], s[2]).max(relative(s[3], s[0]));
            first.min(second)
        }
        Inside => {
            let p = a.points("point and 3 triangle vertices", 4, 4)?;
            let depth = inside_depth(p[0], p[1], p[2], p[3]);
            (-depth).max(0.0) / scale
        }
        Outside => {
            let p = a.points("point and 3 triangle vertices", 4, 4)?;
            let depth = inside_depth(p[0], p[1], p[2], p[3]);
            depth.max(0.0) / scale
        }
        Ellipse | Parabola | Hyperbola => match args {
            [Entity::Conic(c)] => {
                let want = match kind {
                    Ellipse => ConicClass::Ellipse,
                    Parabola => ConicClass::Parabola,
                    _ => ConicClass::Hyperbola,
                };
                if c.class(PARABOLA_BAND) == want {
                    0.0
                } else {
                    1.0
                }
            }
            _ => return Err(a.mismatch("conic")),
        },
    };
    if r.is_nan() {
        return Err(GeomError::NonFinite);
    }
    Ok(r)
}

/// Largest distance from a point to the line through the farthest pair.
fn collinear(p: &[Point]) -> f64 {
    let (mut i0, mut j0, mut best) = (0, 1, -1.0);
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            let d = p[i].dist(p[j]);
            if d > best {
                (i0, j0, best) = (i, j, d);
            }
        }
    }
    if best <= 0.0 {
        return 0.0;
    }
    let dir = (p[j0] - p[i0]) / best;
    p.iter()
        .map(|q| dir.cross(*q - p[i0]).abs())
        .fold(0.0, f64::max)
}

fn concyclic(p: &[Point], scale: f64) -> f64 {
    let n = p.len() as f64;
    let c = p.iter().fold(Point::ORIGIN, |acc, q| acc + *q) / n;
    let u: Vec<Point> = p.iter().map(|q| (*q - c) / scale).collect();
    // the best-conditioned triangle anchors the circle
    let mut anchor = (0, 1, 2);
    let mut best = -1.0;
    for i in 0..u.len() {
        for j in i + 1..u.len() {
            for k in j + 1..u.len() {
                let area = (u[j] - u[i]).cross(u[k] - u[i]).abs();
                if area > best {
                    best = area;
                    anchor = (i, j, k);
                }
            }
        }
    }
    let (i, j, k) = anchor;
    (0..u.len())
        .filter(|&m| m != i && m != j && m != k)
        .map(|m| cocircular_det([u[i], u[j], u[k], u[m]]))
        .fold(0.0, f64::max)
}

/// `|det|` of the rows `(x²+y², x, y, 1)`, divided by the product of row
/// norms.
fn cocircular_det(q: [Point; 4]) -> f64 {
    let rows: Vec<[f64; 4]> = q.iter().map(|p| [p.norm_sq(), p.x, p.y, 1.0]).collect();
    let m = nalgebra::Matrix4::from_fn(|r, c| rows[r][c]);
    let hadamard: f64 = rows
        .iter()
        .map(|r| r.iter().map(|v| v * v).sum::<f64>().sqrt())
        .product();
    m.determinant().abs() / hadamard
}

fn concurrent(ls: &[Line], scale: f64) -> f64 {
    let origin = ls[0].anchor();
    let rows: Vec<(f64, f64, f64)> = ls
        .iter()
        .map(|l| {
            let (a, b, _) = l.coefficients();
            (a, b, l.eval(origin) / scale)
        })
        .collect();
    let m = nalgebra::Matrix3::new(
        rows[0].0, rows[0].1, rows[0].2, rows[1].0, rows[1].1, rows[1].2, rows[2].0, rows[2].1,
        rows[2].2,
    );
    m.determinant().abs()
}

fn equilateral(p: Point, q: Point, r: Point) -> f64 {
    let s = [p.dist(q), q.dist(r), r.dist(p)];
    let max = s.iter().cloned().fold(0.0, f64::max);
    let min = s.iter().cloned().fold(f64::INFINITY, f64::min);
    if max == 0.0 {
        0.0
    } else {
        (max - min) / max
    }
}

/// Direct similarity of triangles `p0p1p2` and `p3p4p5`, compared through
/// the complex ratio `(p1 − p0) / (p2 − p0)`.
fn similar(p: &[Point]) -> f64 {
    let ratio = |a: Point, b: Point, c: Point| {
        let u = b - a;
        let v = c - a;
        let d = v.norm_sq();
        Point::new(u.dot(v), v.cross(u)) / d
    };
    let z1 = ratio(p[0], p[1], p[2]);
    let z2 = ratio(p[3], p[4], p[5]);
    let m = z1.norm().max(z2.norm());
    if m == 0.0 {
        0.0
    } else {
        z1.dist(z2) / m
    }
}

/// Minimum signed distance to the side lines, positive inside.
fn inside_depth(p: Point, a: Point, b: Point, c: Point) -> f64 {
    let orient = (b - a).cross(c - a).signum();
    [(a, b), (b, c), (c, a)]
        .iter()
        .map(|(u, v)| {
            let d = *v - *u;
            orient * d.cross(p - *u) / d.norm()
        })
        .fold(f64::INFINITY, f64::min)
}
