#![allow(dead_code)]

use std::f64::consts::PI;

use isodyn_core::centers::Triangle;
use isodyn_core::kernel::Point;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Places a triangle with the given angles (radians) on a circle of radius
/// `rho`, rotated by `phi` and shifted by `shift`, counterclockwise.
pub fn place(angles: [f64; 3], rho: f64, phi: f64, shift: Point) -> Triangle {
    let [a, _, c] = angles;
    let on = |t: f64| shift + Point::new(t.cos(), t.sin()) * rho;
    Triangle::new(on(phi), on(phi + 2.0 * c), on(phi + 2.0 * c + 2.0 * a)).unwrap()
}

/// Angles uniform on the simplex with every angle at least `min_deg`.
pub fn random_angles(rng: &mut impl Rng, min_deg: f64) -> [f64; 3] {
    loop {
        let u: f64 = rng.random();
        let v: f64 = rng.random();
        let (u, v) = if u + v > 1.0 { (1.0 - u, 1.0 - v) } else { (u, v) };
        let a = PI * u;
        let b = PI * v;
        let c = PI - a - b;
        let m = min_deg.to_radians();
        if a >= m && b >= m && c >= m {
            return [a, b, c];
        }
    }
}

pub fn random_triangle(rng: &mut impl Rng, min_deg: f64) -> Triangle {
    let angles = random_angles(rng, min_deg);
    let rho = 10f64.powf(rng.random_range(-1.0..1.0));
    let phi = rng.random_range(0.0..2.0 * PI);
    let shift = Point::new(
        rng.random_range(-5.0..5.0) * rho,
        rng.random_range(-5.0..5.0) * rho,
    );
    place(angles, rho, phi, shift)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Proptest strategy for counterclockwise triangles with min angle 5°.
pub fn triangles() -> impl Strategy<Value = Triangle> {
    (
        5.0f64..170.0,
        5.0f64..170.0,
        -1.0f64..1.0,
        0.0f64..(2.0 * PI),
        -5.0f64..5.0,
        -5.0f64..5.0,
    )
        .prop_filter("third angle at least 5°", |(a, b, ..)| a + b <= 175.0)
        .prop_map(|(a, b, e, phi, x, y)| {
            let (a, b) = (a.to_radians(), b.to_radians());
            let rho = 10f64.powf(e);
            place([a, b, PI - a - b], rho, phi, Point::new(x * rho, y * rho))
        })
}

pub fn rel(a: f64, b: f64) -> f64 {
    let m = a.abs().max(b.abs());
    if m == 0.0 {
        0.0
    } else {
        (a - b).abs() / m
    }
}
