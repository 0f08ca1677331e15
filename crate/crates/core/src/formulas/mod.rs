//! Closed-form metric formulas for the isodynamic points and the extremal
//! constant of `SI / R`.

mod extremal;

use crate::centers::{side_spread, Triangle, Vertex, EQUILATERAL_SPREAD};
use crate::error::{GeomError, Result};

pub use extremal::{
    si_ratio, si_ratio_supremum, sextic, sextic_root, Extremal, ExtremalConfig,
};

const SQRT3: f64 = 1.732_050_807_568_877_2;

/// A formula value together with the magnitude of its critical
/// denominator, so callers can judge how close the input was to a
/// singularity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FormulaResult {
    pub value: f64,
    pub formula_id: &'static str,
    pub condition: f64,
}

/// Sides rotated so that `v` is opposite the first entry.
fn rotated_sides(t: &Triangle, v: Vertex) -> (f64, f64, f64) {
    (t.side(v), t.side(v.next()), t.side(v.prev()))
}

/// `a² + b² + c² + 4K√3`.
fn shape_sum(t: &Triangle) -> f64 {
    let [a, b, c] = t.sides();
    a * a + b * b + c * c + 4.0 * t.area() * SQRT3
}

/// Distance from vertex `v` to the first isodynamic point,
/// `bc√2 / √(a² + b² + c² + 4K√3)` for `v = A`.
pub fn spoke_length(t: &Triangle, v: Vertex) -> FormulaResult {
    let (_, b, c) = rotated_sides(t, v);
    let den = shape_sum(t).sqrt();
    FormulaResult {
        value: b * c * std::f64::consts::SQRT_2 / den,
        formula_id: "spoke_length",
        condition: den,
    }
}

/// `|SS′| = 2√3·abc / √((a² + b² + c²)² − 48K²)`.
pub fn isodynamic_separation(t: &Triangle) -> Result<FormulaResult> {
    let [a, b, c] = t.sides();
    let q = a * a + b * b + c * c;
    let k = t.area();
    let radicand = q * q - 48.0 * k * k;
    if side_spread(t) < EQUILATERAL_SPREAD || !(radicand > 0.0) {
        return Err(GeomError::EquilateralSingular);
    }
    let den = radicand.sqrt();
    Ok(FormulaResult {
        value: 2.0 * SQRT3 * a * b * c / den,
        formula_id: "isodynamic_separation",
        condition: radicand / (q * q),
    })
}

/// Area of the pedal triangle of the first isodynamic point,
/// `2K²√3 / (a² + b² + c² + 4K√3)`.
pub fn pedal_area(t: &Triangle) -> FormulaResult {
    let k = t.area();
    let den = shape_sum(t);
    FormulaResult {
        value: 2.0 * k * k * SQRT3 / den,
        formula_id: "pedal_area",
        condition: den,
    }
}

/// Length of the cevian from `v` through the first isodynamic point to
/// the opposite side line. The raw expression is signed (negative when the
/// trace falls on the far side of `v`, which needs an angle above 120°);
/// the magnitude is returned.
pub fn cevian_length(t: &Triangle, v: Vertex) -> Result<FormulaResult> {
    let (a, b, c) = rotated_sides(t, v);
    let k = t.area();
    let num = 4.0 * std::f64::consts::SQRT_2 * b * c * k * shape_sum(t).sqrt();
    let den = (b * b + c * c) * (4.0 * k + a * a * SQRT3) - SQRT3 * (b * b - c * c).powi(2);
    let scale = (a * a + b * b + c * c).powi(2);
    if den.abs() <= 1e-12 * scale {
        return Err(GeomError::ParallelToSide);
    }
    Ok(FormulaResult {
        value: (num / den).abs(),
        formula_id: "cevian_length",
        condition: den / scale,
    })
}

/// Radius of the circle traced by the first isodynamic point of `XBC` as
/// `X` runs along a line parallel to `BC` at height `h`, with `a = |BC|`.
pub fn locus_radius(a: f64, h: f64) -> Result<FormulaResult> {
    for v in [a, h] {
        if !(v > 0.0) || !v.is_finite() {
            return Err(GeomError::NonpositiveInput(v));
        }
    }
    let den = 2.0 * h + a * SQRT3;
    Ok(FormulaResult {
        value: a * a / den,
        formula_id: "locus_radius",
        condition: den,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::centers::isodynamic_first_trilinear;

    #[test]
    fn equilateral_values() {
        let t = Triangle::from_sides(1.0, 1.0, 1.0).unwrap();
        assert!((spoke_length(&t, Vertex::A).value - 1.0 / 3f64.sqrt()).abs() < 1e-15);
        assert!((pedal_area(&t).value - 3f64.sqrt() / 16.0).abs() < 1e-15);
        assert!((cevian_length(&t, Vertex::A).unwrap().value - 3f64.sqrt() / 2.0).abs() < 1e-15);
        assert_eq!(isodynamic_separation(&t), Err(GeomError::EquilateralSingular));
    }

    #[test]
    fn right_triangle_spoke() {
        let t = Triangle::from_sides(3.0, 4.0, 5.0).unwrap();
        let expected = 20.0 * 2f64.sqrt() / (50.0 + 24.0 * 3f64.sqrt()).sqrt();
        assert!((spoke_length(&t, Vertex::A).value - expected).abs() < 1e-14);
        let s = isodynamic_first_trilinear(&t).unwrap();
        for v in Vertex::ALL {
            let d = s.dist(t.vertex(v));
            assert!((spoke_length(&t, v).value - d).abs() < 1e-12 * d);
        }
    }

    #[test]
    fn isosceles_cevian_is_the_altitude() {
        let t = Triangle::from_sides(2.0, 3.0, 3.0).unwrap();
        let h = 2.0 * t.area() / 2.0;
        assert!((cevian_length(&t, Vertex::A).unwrap().value - h).abs() < 1e-14);
    }

    #[test]
    fn locus_radius_values() {
        let r = locus_radius(2.0, 3f64.sqrt()).unwrap().value;
        assert!((r - 1.0 / 3f64.sqrt()).abs() < 1e-15);
        assert!(locus_radius(2.0, 1e12).unwrap().value < 1e-11);
        assert_eq!(locus_radius(0.0, 1.0), Err(GeomError::NonpositiveInput(0.0)));
    }

    #[test]
    fn similarity_covariance() {
        let t = Triangle::from_sides(3.0, 4.0, 5.0).unwrap();
        let u = Triangle::from_sides(6.0, 8.0, 10.0).unwrap();
        assert!((pedal_area(&u).value / pedal_area(&t).value - 4.0).abs() < 1e-13);
        let r = isodynamic_separation(&u).unwrap().value / isodynamic_separation(&t).unwrap().value;
        assert!((r - 2.0).abs() < 1e-13);
    }
}
