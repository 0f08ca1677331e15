//! The isodynamic points, Brocard points and excenters.

use super::trilinear::{center, CenterId};
use super::{Triangle, Vertex};
use crate::error::{GeomError, Result};
use crate::constructions::apollonius_circle;
use crate::kernel::{intersect_circles, Point};

/// Relative side spread below which a triangle is treated as equilateral.
pub const EQUILATERAL_SPREAD: f64 = 1e-6;

/// `(max side − min side) / max side`.
pub fn side_spread(t: &Triangle) -> f64 {
    let s = t.sides();
    let max = s.iter().cloned().fold(0.0, f64::max);
    let min = s.iter().cloned().fold(f64::INFINITY, f64::min);
    (max - min) / max
}

/// First isodynamic point from its trilinears
/// `sin(A + π/3) : sin(B + π/3) : sin(C + π/3)`.
pub fn isodynamic_first_trilinear(t: &Triangle) -> Result<Point> {
    center(t, CenterId::X(15))
}

/// First isodynamic point as the common point of two Apollonius circles
/// lying inside the circumcircle.
pub fn isodynamic_first_apollonius(t: &Triangle) -> Result<Point> {
    if side_spread(t) < EQUILATERAL_SPREAD {
        let [a, b, c] = t.points();
        return Ok((a + b + c) / 3.0);
    }
    let (u, v) = best_apollonius_pair(t);
    let c1 = apollonius_circle(t, u)?;
    let c2 = apollonius_circle(t, v)?;
    let (p, q) = intersect_circles(&c1, &c2).map_err(|e| match e {
        GeomError::TangentCircles(_) | GeomError::DisjointCircles | GeomError::ConcentricCircles => {
            GeomError::DegenerateApollonius
        }
        other => other,
    })?;
    let o = t.circumcenter();
    Ok(if p.dist(o) <= q.dist(o) { p } else { q })
}

/// The two vertices whose Apollonius circles are best conditioned: those
/// with the largest difference between the adjacent sides.
fn best_apollonius_pair(t: &Triangle) -> (Vertex, Vertex) {
    let gap = |v: Vertex| (t.side(v.next()) - t.side(v.prev())).abs();
    let mut vs = Vertex::ALL;
    vs.sort_by(|x, y| gap(*y).total_cmp(&gap(*x)));
    (vs[0], vs[1])
}

/// Second isodynamic point, `sin(A − π/3) : sin(B − π/3) : sin(C − π/3)`.
pub fn isodynamic_second(t: &Triangle) -> Result<Point> {
    if side_spread(t) < EQUILATERAL_SPREAD {
        return Err(GeomError::EquilateralSingular);
    }
    center(t, CenterId::X(16)).map_err(|e| match e {
        GeomError::PointAtInfinity => GeomError::EquilateralSingular,
        other => other,
    })
}

/// First and second Brocard points.
pub fn brocard_points(t: &Triangle) -> Result<(Point, Point)> {
    Ok((
        center(t, CenterId::Brocard1)?,
        center(t, CenterId::Brocard2)?,
    ))
}

/// Excenter opposite `v`.
pub fn excenter(t: &Triangle, v: Vertex) -> Result<Point> {
    center(t, CenterId::excenter(v))
}
