//! Conic and cubic interpolation through the null vector of the monomial
//! design matrix.

use nalgebra::DMatrix;

use super::{Conic, Cubic, Point};
use crate::error::{GeomError, Result};

/// Relative singular-value gap below which a design matrix counts as
/// rank deficient.
const RANK_GAP: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConicClass {
    Ellipse,
    Parabola,
    Hyperbola,
}

impl Conic {
    /// Classification by the sign of `B² − 4AC` over the quadratic part,
    /// with a dead zone of half-width `band` treated as a parabola.
    pub fn class(&self, band: f64) -> ConicClass {
        let [a, b, c, ..] = self.frame_coefficients();
        let q = a * a + b * b + c * c;
        let disc = (b * b - 4.0 * a * c) / q;
        if disc.abs() <= band {
            ConicClass::Parabola
        } else if disc < 0.0 {
            ConicClass::Ellipse
        } else {
            ConicClass::Hyperbola
        }
    }
}

/// Centroid and spread used to normalize the fitting frame.
fn frame(points: &[Point]) -> (Point, f64) {
    let n = points.len() as f64;
    let c = points.iter().fold(Point::ORIGIN, |acc, p| acc + *p) / n;
    let s = points
        .iter()
        .map(|p| p.dist(c))
        .fold(0.0f64, f64::max);
    (c, if s > 0.0 { s } else { 1.0 })
}

fn conic_row(u: Point) -> [f64; 6] {
    [u.x * u.x, u.x * u.y, u.y * u.y, u.x, u.y, 1.0]
}

fn cubic_row(u: Point) -> [f64; 10] {
    let (x, y) = (u.x, u.y);
    [
        x * x * x,
        x * x * y,
        x * y * y,
        y * y * y,
        x * x,
        x * y,
        y * y,
        x,
        y,
        1.0,
    ]
}

/// Null vector of an `N−1`-row design padded to a square matrix, together
/// with the ratio of the second-smallest to the largest singular value.
fn null_vector<const N: usize>(rows: &[[f64; N]]) -> Option<([f64; N], f64)> {
    let mut m = DMatrix::<f64>::zeros(N, N);
    for (i, row) in rows.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            m[(i, j)] = *v;
        }
    }
    let svd = m.svd(false, true);
    let v_t = svd.v_t?;
    let mut order: Vec<usize> = (0..N).collect();
    order.sort_by(|a, b| svd.singular_values[*b].total_cmp(&svd.singular_values[*a]));
    let largest = svd.singular_values[order[0]];
    let second_smallest = svd.singular_values[order[N - 2]];
    let smallest = order[N - 1];
    let gap = if largest > 0.0 {
        second_smallest / largest
    } else {
        0.0
    };
    let mut out = [0.0; N];
    for (j, v) in out.iter_mut().enumerate() {
        *v = v_t[(smallest, j)];
    }
    Some((out, gap))
}

/// The conic through five points.
pub fn fit_conic(points: &[Point; 5]) -> Result<Conic> {
    if points.iter().any(|p| !p.is_finite()) {
        return Err(GeomError::NonFinite);
    }
    let (origin, scale) = frame(points);
    let rows: Vec<[f64; 6]> = points
        .iter()
        .map(|p| conic_row((*p - origin) / scale))
        .collect();
    let (v, gap) = null_vector::<6>(&rows).ok_or(GeomError::DegenerateConfiguration)?;
    if gap <= RANK_GAP {
        return Err(GeomError::DegenerateConfiguration);
    }
    Conic::in_frame(v, origin, scale)
}

/// The cubic through nine points.
pub fn fit_cubic(points: &[Point; 9]) -> Result<Cubic> {
    if points.iter().any(|p| !p.is_finite()) {
        return Err(GeomError::NonFinite);
    }
    let (origin, scale) = frame(points);
    let rows: Vec<[f64; 10]> = points
        .iter()
        .map(|p| cubic_row((*p - origin) / scale))
        .collect();
    let (v, gap) = null_vector::<10>(&rows).ok_or(GeomError::RankDeficient)?;
    if gap <= RANK_GAP {
        return Err(GeomError::RankDeficient);
    }
    Cubic::in_frame(v, origin, scale)
}

/// Approximate distance from `p` to the conic (first-order, Sampson),
/// in world units.
pub fn on_conic(c: &Conic, p: Point) -> f64 {
    let u = c.frame_point(p);
    let [a, b, cc, d, e, f] = c.frame_coefficients();
    let val = a * u.x * u.x + b * u.x * u.y + cc * u.y * u.y + d * u.x + e * u.y + f;
    let gx = 2.0 * a * u.x + b * u.y + d;
    let gy = b * u.x + 2.0 * cc * u.y + e;
    sampson(val, gx, gy) * c.frame_scale()
}

/// Approximate distance from `p` to the cubic, in world units.
pub fn on_cubic(c: &Cubic, p: Point) -> f64 {
    let u = c.frame_point(p);
    let k = c.frame_coefficients();
    let (x, y) = (u.x, u.y);
    let val = cubic_row(u).iter().zip(k.iter()).map(|(m, c)| m * c).sum::<f64>();
    let gx = 3.0 * k[0] * x * x + 2.0 * k[1] * x * y + k[2] * y * y + 2.0 * k[4] * x + k[5] * y
        + k[7];
    let gy = k[1] * x * x + 2.0 * k[2] * x * y + 3.0 * k[3] * y * y + k[5] * x + 2.0 * k[6] * y
        + k[8];
    sampson(val, gx, gy) * c.frame_scale()
}

fn sampson(val: f64, gx: f64, gy: f64) -> f64 {
    let g = gx.hypot(gy);
    if g > 1e-300 {
        val.abs() / g
    } else if val == 0.0 {
        0.0
    } else {
        f64::INFINITY
    }
}
