use std::f64::consts::{FRAC_PI_2, TAU};

use super::{Circle, DirectedAngle, Line, Point, CONSTRUCTION_REL};
use crate::error::{GeomError, Result};

pub fn line_through(p: Point, q: Point) -> Result<Line> {
    let d = p.dist(q);
    let scale = p.norm().max(q.norm()).max(d);
    if d == 0.0 || d <= CONSTRUCTION_REL * scale {
        return Err(GeomError::CoincidentPoints);
    }
    Line::through(p, q - p)
}

pub fn intersect_lines(a: &Line, b: &Line) -> Result<Point> {
    let (l1, m1, _) = a.coefficients();
    let (l2, m2, _) = b.coefficients();
    // unit normals, so det is the sine of the angle between the lines
    let det = l1 * m2 - l2 * m1;
    if det.abs() <= CONSTRUCTION_REL {
        return Err(GeomError::ParallelLines);
    }
    // solve relative to a point on `a` to limit cancellation far from origin
    let base = a.anchor();
    let n2b = b.eval(base);
    let offset = Point::new(m1 * n2b, -l1 * n2b) / det;
    let p = base + offset;
    if !p.is_finite() {
        return Err(GeomError::NonFinite);
    }
    Ok(p)
}

pub fn circle_through(p: Point, q: Point, r: Point) -> Result<Circle> {
    let b = q - p;
    let c = r - p;
    let d = 2.0 * b.cross(c);
    let span = b.norm_sq().max(c.norm_sq()).max((r - q).norm_sq());
    if d.abs() <= CONSTRUCTION_REL * span {
        return Err(GeomError::CollinearPoints);
    }
    let bb = b.norm_sq();
    let cc = c.norm_sq();
    let u = Point::new(c.y * bb - b.y * cc, b.x * cc - c.x * bb) / d;
    Circle::new(p + u, u.norm())
}

/// Both intersection points, ordered lexicographically by `(x, y)`.
pub fn intersect_circles(c1: &Circle, c2: &Circle) -> Result<(Point, Point)> {
    let (r1, r2) = (c1.radius(), c2.radius());
    let delta = c2.center - c1.center;
    let d = delta.norm();
    let scale = r1.max(r2).max(d);
    let eps = CONSTRUCTION_REL * scale;
    if d <= eps {
        return Err(GeomError::ConcentricCircles);
    }
    let u = delta / d;
    let outer = d - (r1 + r2);
    let inner = (r1 - r2).abs() - d;
    if outer.abs() <= eps || inner.abs() <= eps {
        // internally tangent with c1 the smaller circle: the contact point
        // lies away from c2's center
        let along = if outer.abs() > eps && r1 < r2 { -r1 } else { r1 };
        return Err(GeomError::TangentCircles(c1.center + u * along));
    }
    if outer > 0.0 || inner > 0.0 {
        return Err(GeomError::DisjointCircles);
    }
    let a = (d * d + r1 * r1 - r2 * r2) / (2.0 * d);
    let h = ((r1 + a) * (r1 - a)).max(0.0).sqrt();
    let base = c1.center + u * a;
    let off = u.perp() * h;
    let (p, q) = (base + off, base - off);
    Ok(if p.lex_cmp(&q).is_le() { (p, q) } else { (q, p) })
}

pub fn reflect(p: Point, l: &Line) -> Point {
    p - l.normal() * (2.0 * l.eval(p))
}

pub fn foot(p: Point, l: &Line) -> Point {
    p - l.normal() * l.eval(p)
}

pub fn midpoint(p: Point, q: Point) -> Point {
    (p + q) * 0.5
}

/// Counterclockwise rotation taking ray `y→x` onto ray `y→z`.
pub fn directed_angle(x: Point, y: Point, z: Point) -> Result<DirectedAngle> {
    let u = x - y;
    let v = z - y;
    let scale = x.norm().max(y.norm()).max(z.norm()).max(u.norm()).max(v.norm());
    let eps = CONSTRUCTION_REL * scale;
    if u.norm() <= eps || v.norm() <= eps {
        return Err(GeomError::DegenerateRay);
    }
    let theta = u.cross(v).atan2(u.dot(v));
    Ok(DirectedAngle::from_radians(theta.rem_euclid(TAU)))
}

/// Angle between the tangents at an intersection point, in `[0, π/2]`.
pub fn angle_between_circles(c1: &Circle, c2: &Circle) -> Result<f64> {
    let (r1, r2) = (c1.radius(), c2.radius());
    let d = c1.center.dist(c2.center);
    let eps = CONSTRUCTION_REL * r1.max(r2).max(d);
    if d <= eps {
        return if (r1 - r2).abs() <= eps {
            Ok(0.0)
        } else {
            Err(GeomError::DisjointCircles)
        };
    }
    if d > r1 + r2 + eps || d < (r1 - r2).abs() - eps {
        return Err(GeomError::DisjointCircles);
    }
    let cos = ((r1 * r1 + r2 * r2 - d * d) / (2.0 * r1 * r2)).abs().min(1.0);
    let angle = cos.acos();
    Ok(angle.min(FRAC_PI_2))
}

/// Inversion in the circle about `center` with squared radius `power`.
pub fn invert(p: Point, center: Point, power: f64) -> Result<Point> {
    if !(power > 0.0) {
        return Err(GeomError::NonpositiveInput(power));
    }
    let v = p - center;
    let n2 = v.norm_sq();
    let scale = p.norm().max(center.norm()).max(power.sqrt());
    if n2.sqrt() <= CONSTRUCTION_REL * scale {
        return Err(GeomError::CenterInversion);
    }
    Ok(center + v * (power / n2))
}

/// Locus of equal power with respect to two non-concentric circles.
pub fn radical_axis(c1: &Circle, c2: &Circle) -> Result<Line> {
    let delta = c2.center - c1.center;
    let d = delta.norm();
    if d <= CONSTRUCTION_REL * c1.radius().max(c2.radius()) {
        return Err(GeomError::ConcentricCircles);
    }
    // point on the center line at signed distance t from c1.center
    let t = (d * d + c1.radius().powi(2) - c2.radius().powi(2)) / (2.0 * d);
    let p = c1.center + delta * (t / d);
    Line::through(p, delta.perp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-12
    }

    #[test]
    fn axis_lines() {
        let l = line_through(Point::new(0.0, 0.0), Point::new(1.0, 0.0)).unwrap();
        assert_eq!(l.coefficients(), (0.0, 1.0, 0.0));
        let l = line_through(Point::new(0.0, 0.0), Point::new(0.0, 1.0)).unwrap();
        let (a, b, c) = l.coefficients();
        assert!(close(a, 1.0) && close(b, 0.0) && close(c, 0.0));
        assert_eq!(
            line_through(Point::new(1.0, 1.0), Point::new(1.0, 1.0)),
            Err(GeomError::CoincidentPoints)
        );
    }

    #[test]
    fn line_intersections() {
        let x0 = Line::new(1.0, 0.0, 0.0).unwrap();
        let y0 = Line::new(0.0, 1.0, 0.0).unwrap();
        let y1 = Line::new(0.0, 1.0, -1.0).unwrap();
        let p = intersect_lines(&x0, &y0).unwrap();
        assert!(close(p.x, 0.0) && close(p.y, 0.0));
        assert_eq!(intersect_lines(&y0, &y1), Err(GeomError::ParallelLines));
        let diag = line_through(Point::new(0.0, 0.0), Point::new(1.0, 1.0)).unwrap();
        let anti = line_through(Point::new(0.0, 2.0), Point::new(2.0, 0.0)).unwrap();
        let p = intersect_lines(&diag, &anti).unwrap();
        assert!(close(p.x, 1.0) && close(p.y, 1.0));
    }

    #[test]
    fn circle_through_points() {
        let c = circle_through(
            Point::new(1.0, 0.0),
            Point::new(0.0, 1.0),
            Point::new(-1.0, 0.0),
        )
        .unwrap();
        assert!(c.center.norm() < 1e-12 && close(c.radius(), 1.0));
        assert_eq!(
            circle_through(
                Point::new(0.0, 0.0),
                Point::new(1.0, 0.0),
                Point::new(2.0, 0.0)
            ),
            Err(GeomError::CollinearPoints)
        );
    }

    #[test]
    fn right_triangle_circumradius_matches_heron_oracle() {
        let (a, b, c) = (3.0f64, 4.0f64, 5.0f64);
        let s = (a + b + c) / 2.0;
        let area = (s * (s - a) * (s - b) * (s - c)).sqrt();
        let expected = a * b * c / (4.0 * area);
        let circle = circle_through(
            Point::new(0.0, 0.0),
            Point::new(4.0, 0.0),
            Point::new(0.0, 3.0),
        )
        .unwrap();
        assert!((circle.radius() - expected).abs() < 1e-12);
        assert!((expected - 2.5).abs() < 1e-12);
    }

    #[test]
    fn circle_pairs() {
        let u0 = Circle::new(Point::new(0.0, 0.0), 1.0).unwrap();
        let u1 = Circle::new(Point::new(1.0, 0.0), 1.0).unwrap();
        let (p, q) = intersect_circles(&u0, &u1).unwrap();
        let h = 3f64.sqrt() / 2.0;
        assert!(close(p.x, 0.5) && close(p.y, -h));
        assert!(close(q.x, 0.5) && close(q.y, h));

        let u3 = Circle::new(Point::new(3.0, 0.0), 1.0).unwrap();
        assert_eq!(intersect_circles(&u0, &u3), Err(GeomError::DisjointCircles));

        let u2 = Circle::new(Point::new(2.0, 0.0), 1.0).unwrap();
        match intersect_circles(&u0, &u2) {
            Err(GeomError::TangentCircles(t)) => assert!(close(t.x, 1.0) && close(t.y, 0.0)),
            other => panic!("expected tangency, got {other:?}"),
        }
        assert_eq!(
            intersect_circles(&u0, &Circle::new(Point::ORIGIN, 2.0).unwrap()),
            Err(GeomError::ConcentricCircles)
        );
    }

    #[test]
    fn reflect_foot_midpoint() {
        let x_axis = Line::new(0.0, 1.0, 0.0).unwrap();
        assert_eq!(reflect(Point::new(0.0, 1.0), &x_axis), Point::new(0.0, -1.0));
        assert_eq!(foot(Point::new(3.0, 4.0), &x_axis), Point::new(3.0, 0.0));
        assert_eq!(
            midpoint(Point::new(0.0, 0.0), Point::new(2.0, 2.0)),
            Point::new(1.0, 1.0)
        );
    }

    #[test]
    fn directed_angles() {
        let o = Point::ORIGIN;
        let e1 = Point::new(1.0, 0.0);
        let e2 = Point::new(0.0, 1.0);
        assert!(close(directed_angle(e1, o, e2).unwrap().radians(), PI / 2.0));
        assert!(close(directed_angle(e2, o, e1).unwrap().radians(), 3.0 * PI / 2.0));
        assert_eq!(directed_angle(e1, o, e1).unwrap().radians(), 0.0);
        assert_eq!(directed_angle(o, o, e1), Err(GeomError::DegenerateRay));
    }

    #[test]
    fn circle_angles() {
        let a = Circle::new(Point::ORIGIN, 1.0).unwrap();
        let b = Circle::new(Point::new(2f64.sqrt(), 0.0), 1.0).unwrap();
        assert!(close(angle_between_circles(&a, &b).unwrap(), PI / 2.0));
        assert_eq!(angle_between_circles(&a, &a).unwrap(), 0.0);
        let far = Circle::new(Point::new(5.0, 0.0), 1.0).unwrap();
        assert_eq!(angle_between_circles(&a, &far), Err(GeomError::DisjointCircles));
    }

    #[test]
    fn inversion() {
        let p = invert(Point::new(2.0, 0.0), Point::ORIGIN, 1.0).unwrap();
        assert!(close(p.x, 0.5) && close(p.y, 0.0));
        let p = invert(Point::new(1.0, 0.0), Point::ORIGIN, 1.0).unwrap();
        assert!(close(p.x, 1.0) && close(p.y, 0.0));
        assert_eq!(
            invert(Point::ORIGIN, Point::ORIGIN, 1.0),
            Err(GeomError::CenterInversion)
        );
    }

    #[test]
    fn radical_axis_passes_through_common_points() {
        let a = Circle::new(Point::new(0.3, -0.2), 1.3).unwrap();
        let b = Circle::new(Point::new(1.1, 0.4), 0.9).unwrap();
        let (p, q) = intersect_circles(&a, &b).unwrap();
        let axis = radical_axis(&a, &b).unwrap();
        assert!(axis.eval(p).abs() < 1e-12);
        assert!(axis.eval(q).abs() < 1e-12);
    }
}
