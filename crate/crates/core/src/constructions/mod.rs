//! Parts of a triangle and derived figures: Apollonius circles, pedal and
//! circumcevian triangles, traces, Simson and Euler lines, sagittae and the
//! chord family.

mod figure;

use crate::centers::{Triangle, Vertex};
use crate::error::{GeomError, Result};
use crate::kernel::{foot, intersect_lines, line_through, Circle, Line, Point, CONSTRUCTION_REL};

pub use figure::{Figure, Object, ObjectKind, Segment};

/// The circumcircle of `t`.
pub fn circumcircle(t: &Triangle) -> Circle {
    Circle::new(t.circumcenter(), t.circumradius()).expect("nondegenerate triangle")
}

/// Line through the two vertices other than `v`.
pub fn side_line(t: &Triangle, v: Vertex) -> Line {
    line_through(t.vertex(v.next()), t.vertex(v.prev())).expect("nondegenerate triangle")
}

/// Foot of the internal bisector from `v` on the opposite side.
pub fn bisector_foot(t: &Triangle, v: Vertex) -> Point {
    let (p, q) = (t.vertex(v.next()), t.vertex(v.prev()));
    // divides PQ in the ratio |VP| : |VQ|
    let (wp, wq) = (t.side(v.next()), t.side(v.prev()));
    (p * wp + q * wq) / (wp + wq)
}

/// Foot of the external bisector from `v` on the opposite side line.
pub fn external_bisector_foot(t: &Triangle, v: Vertex) -> Result<Point> {
    let (p, q) = (t.vertex(v.next()), t.vertex(v.prev()));
    let (wp, wq) = (t.side(v.next()), t.side(v.prev()));
    if (wp - wq).abs() <= CONSTRUCTION_REL * wp.max(wq) {
        return Err(GeomError::ExternalFootAtInfinity);
    }
    Ok((p * wp - q * wq) / (wp - wq))
}

/// Circle on the two bisector feet from `v` as diameter: the locus of
/// points whose distances to the other two vertices are in the ratio of
/// the adjacent sides.
pub fn apollonius_circle(t: &Triangle, v: Vertex) -> Result<Circle> {
    let outer = external_bisector_foot(t, v)?;
    Circle::on_diameter(bisector_foot(t, v), outer)
}

/// Triangle of the feet of the perpendiculars from `p` to the side lines,
/// listed opposite `A`, `B`, `C`.
pub fn pedal_triangle(t: &Triangle, p: Point) -> Result<Triangle> {
    let [fa, fb, fc] = Vertex::ALL.map(|v| foot(p, &side_line(t, v)));
    Triangle::new(fa, fb, fc).map_err(|e| match e {
        GeomError::DegenerateTriangle => GeomError::DegeneratePedal,
        other => other,
    })
}

/// Second intersection of the line from `v` through `p` with the
/// circumcircle.
pub fn circumcevian(t: &Triangle, p: Point, v: Vertex) -> Result<Point> {
    let circle = circumcircle(t);
    if circle.power(p).abs() <= CONSTRUCTION_REL * circle.radius() * circle.radius() {
        return Err(GeomError::PointOnCircle);
    }
    second_on_circle(&circle, t.vertex(v), p)
}

/// Circumcevian points of `p` from `A`, `B` and `C`.
pub fn circumcevian_points(t: &Triangle, p: Point) -> Result<[Point; 3]> {
    Ok([
        circumcevian(t, p, Vertex::A)?,
        circumcevian(t, p, Vertex::B)?,
        circumcevian(t, p, Vertex::C)?,
    ])
}

/// Intersection, other than `start`, of the line `start → through` with a
/// circle passing through `start`.
fn second_on_circle(circle: &Circle, start: Point, through: Point) -> Result<Point> {
    let d = through - start;
    let len2 = d.norm_sq();
    if len2 <= (CONSTRUCTION_REL * circle.radius()).powi(2) {
        return Err(GeomError::CoincidentPoints);
    }
    let k = -2.0 * d.dot(start - circle.center) / len2;
    Ok(start + d * k)
}

/// Where the cevian from `v` through `p` meets the opposite side line.
pub fn cevian_trace(t: &Triangle, p: Point, v: Vertex) -> Result<Point> {
    let cevian = line_through(t.vertex(v), p)?;
    intersect_lines(&cevian, &side_line(t, v)).map_err(|e| match e {
        GeomError::ParallelLines => GeomError::ParallelToSide,
        other => other,
    })
}

/// Simson line of a point on the circumcircle.
pub fn simson_line(t: &Triangle, p: Point) -> Result<Line> {
    let o = t.circumcenter();
    let r = t.circumradius();
    if (p.dist(o) - r).abs() > CONSTRUCTION_REL.sqrt() * r {
        return Err(GeomError::NotOnCircumcircle);
    }
    let feet = Vertex::ALL.map(|v| foot(p, &side_line(t, v)));
    let mut best = (0, 1);
    let mut len = -1.0;
    for (i, j) in [(0, 1), (1, 2), (2, 0)] {
        let d = feet[i].dist(feet[j]);
        if d > len {
            len = d;
            best = (i, j);
        }
    }
    line_through(feet[best.0], feet[best.1])
}

/// Line through the circumcenter and the centroid.
pub fn euler_line(t: &Triangle) -> Result<Line> {
    let [a, b, c] = t.points();
    let g = (a + b + c) / 3.0;
    let o = t.circumcenter();
    if o.dist(g) <= CONSTRUCTION_REL * t.diameter() {
        return Err(GeomError::EquilateralNoEulerLine);
    }
    line_through(o, g)
}

/// Sagitta on the side opposite `v`: from the side's midpoint to the
/// farthest circumcircle point on the far side of that side.
pub fn sagitta(t: &Triangle, v: Vertex) -> Segment {
    let (p, q) = (t.vertex(v.next()), t.vertex(v.prev()));
    let m = (p + q) * 0.5;
    let mut n = (q - p).perp() / p.dist(q);
    if n.dot(t.vertex(v) - m) > 0.0 {
        n = -n;
    }
    let far = t.circumcenter() + n * t.circumradius();
    Segment(m, far)
}

fn lines_meet(a: &Line, b: &Line) -> Result<Point> {
    intersect_lines(a, b).map_err(|e| match e {
        GeomError::ParallelLines => GeomError::ParallelToSide,
        other => other,
    })
}

/// Chord through `p` parallel to the side opposite `v`, ending on the two
/// sides through `v` (first on the side opposite `v.prev()`, then on the
/// side opposite `v.next()`).
pub fn parachord(t: &Triangle, p: Point, v: Vertex) -> Result<Segment> {
    let dir = side_line(t, v).parallel_through(p);
    Ok(Segment(
        lines_meet(&dir, &side_line(t, v.prev()))?,
        lines_meet(&dir, &side_line(t, v.next()))?,
    ))
}

/// Chord through `p` antiparallel to the side opposite `v`: its endpoints
/// and the other two vertices are concyclic.
pub fn antiparallel(t: &Triangle, p: Point, v: Vertex) -> Result<Segment> {
    let apex = t.vertex(v);
    let side = t.vertex(v.prev()) - t.vertex(v.next());
    // reflect the side direction in the bisector at v
    let bis = bisector_foot(t, v) - apex;
    let b = bis / bis.norm();
    let dir = b * (2.0 * side.dot(b)) - side;
    let l = Line::through(p, dir)?;
    Ok(Segment(
        lines_meet(&l, &side_line(t, v.prev()))?,
        lines_meet(&l, &side_line(t, v.next()))?,
    ))
}

/// Apothem from `p` to the side opposite `v`.
pub fn apothem(t: &Triangle, p: Point, v: Vertex) -> Segment {
    Segment(p, foot(p, &side_line(t, v)))
}

/// Segment from `p` parallel to the side opposite `parallel_to`, ending on
/// the side opposite `end_on`.
pub fn pararadius(t: &Triangle, p: Point, parallel_to: Vertex, end_on: Vertex) -> Result<Segment> {
    if parallel_to == end_on {
        return Err(GeomError::ParallelToSide);
    }
    let l = side_line(t, parallel_to).parallel_through(p);
    Ok(Segment(p, lines_meet(&l, &side_line(t, end_on))?))
}

/// Segment from `p` to the side opposite `v`, turned `radians`
/// counterclockwise from the side's direction `v.next() → v.prev()`.
pub fn incline(t: &Triangle, p: Point, v: Vertex, radians: f64) -> Result<Segment> {
    let side = t.vertex(v.prev()) - t.vertex(v.next());
    let l = Line::through(p, side.rotate(radians))?;
    Ok(Segment(p, lines_meet(&l, &side_line(t, v))?))
}

/// From `v` through `p` to the circle through `p` and the other two
/// vertices.
pub fn circlecevian(t: &Triangle, p: Point, v: Vertex) -> Result<Segment> {
    let apex = t.vertex(v);
    let circle = crate::kernel::circle_through(p, t.vertex(v.next()), t.vertex(v.prev()))?;
    // the line meets the circle at p and at apex + k (p − apex)
    let d = p - apex;
    let len2 = d.norm_sq();
    if len2 <= (CONSTRUCTION_REL * circle.radius()).powi(2) {
        return Err(GeomError::CoincidentPoints);
    }
    let k = circle.power(apex) / len2;
    Ok(Segment(apex, apex + d * k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::centers::{center, isodynamic_first_trilinear, CenterId};
    use crate::kernel::{check_relation, Entity, RelationKind, Tolerance};

    fn scalene() -> Triangle {
        Triangle::new(Point::new(0.3, 2.1), Point::new(-1.2, -0.4), Point::new(2.5, 0.2)).unwrap()
    }

    #[test]
    fn apollonius_circle_of_right_triangle() {
        let t = Triangle::from_sides(3.0, 4.0, 5.0).unwrap();
        let circle = apollonius_circle(&t, Vertex::A).unwrap();
        // B = (0,0), C = (3,0); feet split BC in ratio c:b = 5:4
        let inner = Point::new(3.0 * 5.0 / 9.0, 0.0);
        let outer = Point::new(15.0, 0.0);
        assert!(circle.center.dist((inner + outer) * 0.5) < 1e-12);
        assert!((circle.radius() - inner.dist(outer) / 2.0).abs() < 1e-12);
        let iso = Triangle::from_sides(2.0, 3.0, 3.0).unwrap();
        assert_eq!(
            apollonius_circle(&iso, Vertex::A),
            Err(GeomError::ExternalFootAtInfinity)
        );
    }

    #[test]
    fn apollonius_circles_share_s() {
        let t = scalene();
        let s = isodynamic_first_trilinear(&t).unwrap();
        for v in Vertex::ALL {
            let c = apollonius_circle(&t, v).unwrap();
            assert!((c.center.dist(s) - c.radius()).abs() < 1e-12 * c.radius().max(1.0));
        }
    }

    #[test]
    fn pedal_of_circumcenter_is_medial() {
        let t = scalene();
        let ped = pedal_triangle(&t, t.circumcenter()).unwrap();
        let [a, b, c] = t.points();
        assert!(ped.vertex(Vertex::A).dist((b + c) * 0.5) < 1e-12);
        assert!(ped.vertex(Vertex::B).dist((c + a) * 0.5) < 1e-12);
        let on = circumcircle(&t).point_at(0.7);
        assert_eq!(pedal_triangle(&t, on), Err(GeomError::DegeneratePedal));
    }

    #[test]
    fn circumcevians_of_circumcenter_are_antipodes() {
        let t = scalene();
        let o = t.circumcenter();
        let pts = circumcevian_points(&t, o).unwrap();
        for (v, p) in Vertex::ALL.iter().zip(pts) {
            assert!(p.dist(o * 2.0 - t.vertex(*v)) < 1e-12);
        }
        let on = circumcircle(&t).point_at(2.0);
        assert_eq!(circumcevian(&t, on, Vertex::A), Err(GeomError::PointOnCircle));
    }

    #[test]
    fn pedal_and_circumcevian_of_s_are_equilateral() {
        let t = scalene();
        let s = isodynamic_first_trilinear(&t).unwrap();
        let tol = Tolerance::catalog(t.diameter());
        let ped = pedal_triangle(&t, s).unwrap().points().map(Entity::Point);
        assert!(check_relation(RelationKind::Equilateral, &ped, &tol).unwrap() < 1e-12);
        let cc = circumcevian_points(&t, s).unwrap().map(Entity::Point);
        assert!(check_relation(RelationKind::Equilateral, &cc, &tol).unwrap() < 1e-12);
    }

    #[test]
    fn trace_of_centroid_is_midpoint() {
        let t = scalene();
        let g = center(&t, CenterId::X(2)).unwrap();
        let [a, b, c] = t.points();
        assert!(cevian_trace(&t, g, Vertex::A).unwrap().dist((b + c) * 0.5) < 1e-12);
        // cevian from A parallel to BC
        let p = a + (c - b);
        assert_eq!(cevian_trace(&t, p, Vertex::A), Err(GeomError::ParallelToSide));
    }

    #[test]
    fn simson_line_of_a_vertex_passes_through_the_altitude_foot() {
        let t = scalene();
        let a = t.vertex(Vertex::A);
        let l = simson_line(&t, a).unwrap();
        let h = foot(a, &side_line(&t, Vertex::A));
        assert!(l.eval(a).abs() < 1e-12 && l.eval(h).abs() < 1e-12);
        assert_eq!(
            simson_line(&t, t.circumcenter()),
            Err(GeomError::NotOnCircumcircle)
        );
    }

    #[test]
    fn euler_line_contains_centroid_and_orthocenter() {
        let t = Triangle::from_sides(3.0, 4.0, 5.0).unwrap();
        let l = euler_line(&t).unwrap();
        for n in [2, 3, 4, 5] {
            assert!(l.eval(center(&t, CenterId::X(n)).unwrap()).abs() < 1e-12);
        }
        let eq = Triangle::from_sides(1.0, 1.0, 1.0).unwrap();
        assert_eq!(euler_line(&eq), Err(GeomError::EquilateralNoEulerLine));
    }

    #[test]
    fn sagitta_reaches_the_far_arc() {
        let t = scalene();
        let Segment(m, far) = sagitta(&t, Vertex::A);
        let a = t.vertex(Vertex::A);
        let side = side_line(&t, Vertex::A);
        assert!(side.eval(a) * side.eval(far) < 0.0);
        assert!((far.dist(t.circumcenter()) - t.circumradius()).abs() < 1e-12);
        assert!(m.dist(far) < t.circumradius() * 2.0);
    }

    #[test]
    fn chord_family() {
        let t = scalene();
        let p = center(&t, CenterId::X(1)).unwrap();
        let Segment(u, w) = parachord(&t, p, Vertex::A).unwrap();
        let [a, b, c] = t.points();
        assert!((w - u).cross(c - b).abs() < 1e-12);
        // antiparallel endpoints are concyclic with B and C
        let Segment(u, w) = antiparallel(&t, p, Vertex::A).unwrap();
        let pts = [u, w, b, c].map(Entity::Point);
        let tol = Tolerance::catalog(t.diameter());
        assert!(check_relation(RelationKind::Concyclic, &pts, &tol).unwrap() < 1e-12);
        let Segment(_, f) = apothem(&t, p, Vertex::A);
        assert!((f.dist(p) - t.inradius()).abs() < 1e-12);
        let Segment(_, e) = pararadius(&t, p, Vertex::A, Vertex::B).unwrap();
        assert!(side_line(&t, Vertex::B).eval(e).abs() < 1e-12);
        let Segment(_, e) = incline(&t, p, Vertex::A, 60f64.to_radians()).unwrap();
        assert!(side_line(&t, Vertex::A).eval(e).abs() < 1e-12);
        let Segment(_, e) = circlecevian(&t, p, Vertex::A).unwrap();
        let pts = [e, p, b, c].map(Entity::Point);
        assert!(check_relation(RelationKind::Concyclic, &pts, &tol).unwrap() < 1e-12);
        let cl = [a, p, e].map(Entity::Point);
        assert!(check_relation(RelationKind::Collinear, &cl, &tol).unwrap() < 1e-12);
    }
}
