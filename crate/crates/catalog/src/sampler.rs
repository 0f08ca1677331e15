//! Random triangles drawn from a constrained shape class.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use isodyn_core::centers::{Triangle, Vertex};
use isodyn_core::kernel::Point;
use rand::Rng;

/// Smallest angle any sampled triangle may have, in degrees.
pub const MIN_ANGLE_DEG: f64 = 5.0;

/// Largest angle produced by the `angle-gt` class, in degrees.
const MAX_OBTUSE_DEG: f64 = 170.0;

/// Shape constraint for the triangles a program is evaluated on.
///
/// Fixed-angle classes build the constrained vertex directly instead of
/// rejecting samples, so the constraint holds to rounding.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TriangleClass {
    Generic,
    AllAnglesLt120,
    AngleAt(Vertex, f64),
    AngleGt(Vertex, f64),
    Isosceles,
    Equilateral,
}

impl TriangleClass {
    /// Interior angles in radians, indexed by vertex.
    pub fn angles(&self, rng: &mut impl Rng) -> [f64; 3] {
        match *self {
            TriangleClass::Generic => simplex_angles(rng),
            TriangleClass::AllAnglesLt120 => loop {
                let a = simplex_angles(rng);
                if a.iter().all(|x| *x < 2.0 * PI / 3.0) {
                    break a;
                }
            },
            TriangleClass::AngleAt(v, deg) => split_rest(rng, v, deg),
            TriangleClass::AngleGt(v, deg) => {
                let d = rng.random_range(deg..MAX_OBTUSE_DEG);
                split_rest(rng, v, d)
            }
            TriangleClass::Isosceles => {
                let base = rng.random_range(MIN_ANGLE_DEG..(180.0 - MIN_ANGLE_DEG) / 2.0);
                [180.0 - 2.0 * base, base, base].map(f64::to_radians)
            }
            TriangleClass::Equilateral => [PI / 3.0; 3],
        }
    }

    pub fn sample(&self, rng: &mut impl Rng) -> Triangle {
        let angles = self.angles(rng);
        place_randomly(angles, rng)
    }
}

fn simplex_angles(rng: &mut impl Rng) -> [f64; 3] {
    let m = MIN_ANGLE_DEG.to_radians();
    loop {
        let u: f64 = rng.random();
        let v: f64 = rng.random();
        let (u, v) = if u + v > 1.0 { (1.0 - u, 1.0 - v) } else { (u, v) };
        let (a, b) = (PI * u, PI * v);
        let c = PI - a - b;
        if a >= m && b >= m && c >= m {
            return [a, b, c];
        }
    }
}

/// Angle `deg` at `v`, the remainder split at random between the other two.
fn split_rest(rng: &mut impl Rng, v: Vertex, deg: f64) -> [f64; 3] {
    let rest = 180.0 - deg;
    let lo = MIN_ANGLE_DEG.min(rest / 3.0);
    let u = rng.random_range(lo..rest - lo);
    let mut out = [0.0; 3];
    out[v.index()] = deg.to_radians();
    out[v.next().index()] = u.to_radians();
    out[v.prev().index()] = (rest - u).to_radians();
    out
}

/// Counterclockwise triangle with the given angles on a circle of random
/// radius `10^U(-1, 1)`, random rotation and an offset of up to five radii.
pub fn place_randomly(angles: [f64; 3], rng: &mut impl Rng) -> Triangle {
    let rho = 10f64.powf(rng.random_range(-1.0..1.0));
    let phi = rng.random_range(0.0..2.0 * PI);
    let shift = Point::new(
        rng.random_range(-5.0..5.0) * rho,
        rng.random_range(-5.0..5.0) * rho,
    );
    place(angles, rho, phi, shift).expect("sampled angles are at least 5 degrees")
}

/// `A` at angle `phi` on the circle, `B` at `phi + 2C`, `C` at
/// `phi + 2C + 2A`.
pub fn place(angles: [f64; 3], rho: f64, phi: f64, shift: Point) -> isodyn_core::Result<Triangle> {
    let [a, _, c] = angles;
    let on = |t: f64| shift + Point::new(t.cos(), t.sin()) * rho;
    Triangle::new(on(phi), on(phi + 2.0 * c), on(phi + 2.0 * c + 2.0 * a))
}

impl fmt::Display for TriangleClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TriangleClass::Generic => f.write_str("generic"),
            TriangleClass::AllAnglesLt120 => f.write_str("all-angles-lt-120"),
            TriangleClass::AngleAt(v, d) => write!(f, "angle-at({v}, {d})"),
            TriangleClass::AngleGt(v, d) => write!(f, "angle-gt({v}, {d})"),
            TriangleClass::Isosceles => f.write_str("isosceles"),
            TriangleClass::Equilateral => f.write_str("equilateral"),
        }
    }
}

impl FromStr for TriangleClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        match s {
            // a cyclic quadrilateral or free point is drawn by the program
            // itself; the triangle is unconstrained
            "generic" | "cyclic-quad" | "free-point-param" => return Ok(TriangleClass::Generic),
            "all-angles-lt-120" => return Ok(TriangleClass::AllAnglesLt120),
            "isosceles" => return Ok(TriangleClass::Isosceles),
            "equilateral" => return Ok(TriangleClass::Equilateral),
            _ => {}
        }
        let (head, rest) = s
            .split_once('(')
            .ok_or_else(|| format!("unknown triangle class `{s}`"))?;
        let inner = rest
            .strip_suffix(')')
            .ok_or_else(|| format!("missing `)` in `{s}`"))?;
        let (v, d) = inner
            .split_once(',')
            .ok_or_else(|| format!("expected (vertex, degrees) in `{s}`"))?;
        let v: Vertex = v.trim().parse()?;
        let d: f64 = d
            .trim()
            .parse()
            .map_err(|_| format!("bad angle in `{s}`"))?;
        match head.trim() {
            "angle-at" if d > 0.0 && d < MAX_OBTUSE_DEG => Ok(TriangleClass::AngleAt(v, d)),
            "angle-gt" if d > 0.0 && d < MAX_OBTUSE_DEG => Ok(TriangleClass::AngleGt(v, d)),
            "angle-at" | "angle-gt" => Err(format!("angle out of range in `{s}`")),
            _ => Err(format!("unknown triangle class `{s}`")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn classes_parse_and_print() {
        for s in ["generic", "all-angles-lt-120", "angle-at(A, 60)", "angle-gt(B, 120)", "isosceles"] {
            let c: TriangleClass = s.parse().unwrap();
            assert_eq!(c.to_string(), s);
        }
        assert_eq!("cyclic-quad".parse::<TriangleClass>(), Ok(TriangleClass::Generic));
        assert!("angle-at(D, 60)".parse::<TriangleClass>().is_err());
        assert!("angle-gt(A, 175)".parse::<TriangleClass>().is_err());
        assert!("obtuse".parse::<TriangleClass>().is_err());
    }

    #[test]
    fn constrained_vertex_is_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for class in ["angle-at(A, 60)", "angle-at(B, 120)", "angle-at(A, 150)", "angle-at(C, 30)"] {
            let c: TriangleClass = class.parse().unwrap();
            let TriangleClass::AngleAt(v, d) = c else { unreachable!() };
            for _ in 0..100 {
                let t = c.sample(&mut rng);
                assert!(t.is_ccw());
                assert!((t.angle(v).to_degrees() - d).abs() < 1e-9, "{class}");
            }
        }
    }

    #[test]
    fn classes_respect_their_bounds() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..500 {
            let t = TriangleClass::AllAnglesLt120.sample(&mut rng);
            assert!(t.angles().iter().all(|a| a.to_degrees() < 120.0));
            let t = TriangleClass::AngleGt(Vertex::B, 120.0).sample(&mut rng);
            assert!(t.angle(Vertex::B).to_degrees() > 120.0);
            let t = TriangleClass::Isosceles.sample(&mut rng);
            assert!((t.side(Vertex::B) - t.side(Vertex::C)).abs() < 1e-12 * t.diameter());
            let t = TriangleClass::Generic.sample(&mut rng);
            assert!(t.angles().iter().all(|a| a.to_degrees() >= MIN_ANGLE_DEG - 1e-9));
        }
    }
}
