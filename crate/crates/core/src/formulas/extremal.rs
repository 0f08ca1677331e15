//! Supremum of `SI / R` over triangle shapes.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::centers::{center, isodynamic_first_trilinear, CenterId, Triangle};
use crate::error::Result;

/// `4x⁶ + 36x⁵ + 120x⁴ + 288x³ + 513x² − 72x − 16`.
pub fn sextic(x: f64) -> f64 {
    [4.0, 36.0, 120.0, 288.0, 513.0, -72.0, -16.0]
        .iter()
        .fold(0.0, |acc, c| acc * x + c)
}

/// The root of [`sextic`] in `(0.1, 0.5)`, by bisection to `1e-12`.
pub fn sextic_root() -> f64 {
    let (mut lo, mut hi) = (0.1, 0.5);
    let neg_lo = sextic(lo) < 0.0;
    while hi - lo > 1e-12 {
        let mid = 0.5 * (lo + hi);
        if (sextic(mid) < 0.0) == neg_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Distance from the first isodynamic point to the incenter, over the
/// circumradius.
pub fn si_ratio(t: &Triangle) -> Result<f64> {
    let s = isodynamic_first_trilinear(t)?;
    let i = center(t, CenterId::X(1))?;
    Ok(s.dist(i) / t.circumradius())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtremalConfig {
    pub starts: usize,
    pub seed: u64,
    /// Minimum angle (degrees) for each stage of the search.
    pub schedule: [f64; 3],
    pub max_evals: usize,
}

impl Default for ExtremalConfig {
    fn default() -> Self {
        Self {
            starts: 200,
            seed: 42,
            schedule: [5.0, 1.0, 0.1],
            max_evals: 400,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extremal {
    /// Best `SI / R` found.
    pub k: f64,
    /// Witness angles `(A, B, C)` in degrees.
    pub angles: [f64; 3],
    pub witness: Triangle,
    /// Root of the sextic for comparison.
    pub sextic_root: f64,
}

fn objective(x: [f64; 2], min_angle: f64) -> f64 {
    let [a, b] = x;
    let c = 180.0 - a - b;
    if a < min_angle || b < min_angle || c < min_angle {
        return f64::NEG_INFINITY;
    }
    Triangle::from_angles(a.to_radians(), b.to_radians())
        .and_then(|t| si_ratio(&t))
        .unwrap_or(f64::NEG_INFINITY)
}

/// Maximizes `f` by Nelder–Mead from `x0` with initial step `step`.
fn nelder_mead(f: impl Fn([f64; 2]) -> f64, x0: [f64; 2], step: f64, max_evals: usize) -> ([f64; 2], f64) {
    let mut simplex = [x0, [x0[0] + step, x0[1]], [x0[0], x0[1] + step]];
    let mut vals = simplex.map(&f);
    let mut evals = 3;
    let lerp = |p: [f64; 2], q: [f64; 2], t: f64| [p[0] + (q[0] - p[0]) * t, p[1] + (q[1] - p[1]) * t];
    while evals < max_evals {
        // best first
        let mut idx = [0, 1, 2];
        idx.sort_by(|i, j| vals[*j].total_cmp(&vals[*i]));
        simplex = idx.map(|i| simplex[i]);
        vals = idx.map(|i| vals[i]);
        let spread = (simplex[0][0] - simplex[2][0]).abs() + (simplex[0][1] - simplex[2][1]).abs();
        if spread < 1e-10 {
            break;
        }
        let centroid = lerp(simplex[0], simplex[1], 0.5);
        let reflected = lerp(simplex[2], centroid, 2.0);
        let fr = f(reflected);
        evals += 1;
        if fr > vals[0] {
            let expanded = lerp(simplex[2], centroid, 3.0);
            let fe = f(expanded);
            evals += 1;
            if fe > fr {
                simplex[2] = expanded;
                vals[2] = fe;
            } else {
                simplex[2] = reflected;
                vals[2] = fr;
            }
        } else if fr > vals[1] {
            simplex[2] = reflected;
            vals[2] = fr;
        } else {
            let contracted = lerp(simplex[2], centroid, 0.5);
            let fc = f(contracted);
            evals += 1;
            if fc > vals[2] {
                simplex[2] = contracted;
                vals[2] = fc;
            } else {
                for i in 1..3 {
                    simplex[i] = lerp(simplex[0], simplex[i], 0.5);
                    vals[i] = f(simplex[i]);
                    evals += 1;
                }
            }
        }
    }
    let best = (0..3).max_by(|i, j| vals[*i].total_cmp(&vals[*j])).unwrap_or(0);
    (simplex[best], vals[best])
}

fn run_start(cfg: &ExtremalConfig, index: usize) -> ([f64; 2], f64) {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(index as u64));
    let lo = cfg.schedule[0];
    // uniform point of the angle simplex with every angle ≥ lo
    let span = 180.0 - 3.0 * lo;
    let (mut u, mut v): (f64, f64) = (rng.random(), rng.random());
    if u + v > 1.0 {
        u = 1.0 - u;
        v = 1.0 - v;
    }
    let mut x = [lo + span * u, lo + span * v];
    let mut fx = objective(x, lo);
    let mut step = 10.0;
    for &bound in &cfg.schedule {
        let (y, fy) = nelder_mead(|p| objective(p, bound), x, step, cfg.max_evals);
        if fy >= fx {
            x = y;
            fx = fy;
        }
        step *= 0.1;
    }
    (x, fx)
}

/// Multi-start search for the largest `SI / R`. Starts run in parallel;
/// ties resolve to the lowest start index, so the result only depends on
/// the configuration.
pub fn si_ratio_supremum(cfg: &ExtremalConfig) -> Extremal {
    let starts = cfg.starts.max(1);
    let results: Vec<([f64; 2], f64)> = (0..starts).into_par_iter().map(|i| run_start(cfg, i)).collect();
    let mut best = 0;
    for (i, r) in results.iter().enumerate() {
        if r.1 > results[best].1 {
            best = i;
        }
    }
    let ([a, b], k) = results[best];
    let witness = Triangle::from_angles(a.to_radians(), b.to_radians())
        .expect("search stays inside the angle simplex");
    Extremal {
        k,
        angles: [a, b, 180.0 - a - b],
        witness,
        sextic_root: sextic_root(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sextic_root_value() {
        let r = sextic_root();
        assert!((r - 0.2370406267).abs() < 1e-9);
        assert!(sextic(r).abs() < 1e-8);
    }

    #[test]
    fn equilateral_ratio_is_zero() {
        let t = Triangle::from_sides(1.0, 1.0, 1.0).unwrap();
        assert!(si_ratio(&t).unwrap() < 1e-15);
    }

    #[test]
    fn small_search_is_deterministic() {
        let cfg = ExtremalConfig {
            starts: 8,
            ..ExtremalConfig::default()
        };
        let a = si_ratio_supremum(&cfg);
        let b = si_ratio_supremum(&cfg);
        assert_eq!(a.k, b.k);
        assert_eq!(a.angles, b.angles);
    }
}
