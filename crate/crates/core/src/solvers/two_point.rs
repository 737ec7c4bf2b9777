//! Two-point constants on the unit sphere:
//! `Jm = sup min(||x - y||, ||x + y||)` and `g = inf max(||x - y||, ||x + y||)`.
//!
//! Pairs are parameterized as `(u / ||u||, v / ||v||)`. Starts come from the
//! best pairs of a quasi-uniform sample and from coordinate pairs; each start
//! is refined by a compass search that alternates between the two points.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::sampling;
use crate::spaces::NormedSpace;

use super::config::SolverConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TwoPointMode {
    /// Maximize `min(||x - y||, ||x + y||)`; the value is a lower bound.
    James,
    /// Minimize `max(||x - y||, ||x + y||)`; the value is an upper bound.
    G,
}

impl TwoPointMode {
    fn score(self, minus: f64, plus: f64) -> f64 {
        match self {
            TwoPointMode::James => minus.min(plus),
            TwoPointMode::G => -minus.max(plus),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TwoPointResult {
    pub mode: TwoPointMode,
    pub value: f64,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    /// `||x - y||`
    pub minus: f64,
    /// `||x + y||`
    pub plus: f64,
    pub starts: usize,
}

pub fn two_point_constant(space: &NormedSpace, mode: TwoPointMode, config: &SolverConfig) -> Result<TwoPointResult> {
    two_point_seeded(space, mode, config, &[])
}

/// As [`two_point_constant`], with extra starting pairs refined first.
pub fn two_point_seeded(
    space: &NormedSpace,
    mode: TwoPointMode,
    config: &SolverConfig,
    seeds: &[(Vec<f64>, Vec<f64>)],
) -> Result<TwoPointResult> {
    config.validate()?;
    if space.is_quasinorm() {
        return Err(Error::Quasinorm("two-point constants"));
    }
    let n = space.dim();
    if n < 2 {
        return Err(Error::InvalidArgument("two-point constants need dimension at least 2".into()));
    }
    for (x, y) in seeds {
        if x.len() != n || y.len() != n {
            return Err(Error::DimensionMismatch {
                context: "two-point seed",
                expected: n,
                got: if x.len() != n { x.len() } else { y.len() },
            });
        }
    }
    let sphere = |v: &[f64]| -> Option<Vec<f64>> {
        let r = space.eval(v);
        (r > 0.0 && r.is_finite()).then(|| linalg::scale(v, 1.0 / r))
    };

    // candidate pool: coordinate directions, their pairwise sums and differences, quasi-uniform directions
    let mut pool: Vec<Vec<f64>> = Vec::new();
    for i in 0..n {
        pool.push(linalg::unit(n, i));
        for j in (i + 1)..n {
            let mut a = linalg::unit(n, i);
            a[j] = 1.0;
            let mut b = linalg::unit(n, i);
            b[j] = -1.0;
            pool.push(a);
            pool.push(b);
        }
    }
    pool.extend(sampling::quasi_directions((24 * n).clamp(48, 160), n));
    let pool: Vec<Vec<f64>> = pool.iter().filter_map(|v| sphere(v)).collect();

    let mut pairs: Vec<(f64, usize, usize)> = (0..pool.len())
        .into_par_iter()
        .flat_map_iter(|i| {
            let pool = &pool;
            ((i + 1)..pool.len()).map(move |j| {
                let minus = space.dist(&pool[i], &pool[j]);
                let plus = space.eval(&linalg::add(&pool[i], &pool[j]));
                (mode.score(minus, plus), i, j)
            })
        })
        .collect();
    pairs.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));

    let mut starts: Vec<(Vec<f64>, Vec<f64>)> = seeds
        .iter()
        .filter_map(|(x, y)| Some((sphere(x)?, sphere(y)?)))
        .collect();
    let top = config.restarts.clamp(4, 16);
    starts.extend(pairs.iter().take(top).map(|&(_, i, j)| (pool[i].clone(), pool[j].clone())));
    for r in 0..(top / 2) {
        let mut rng = sampling::rng_for(config.seed ^ 0x2b7, r as u64);
        let x = sampling::gaussian_vec(&mut rng, n);
        let y = sampling::gaussian_vec(&mut rng, n);
        if let (Some(x), Some(y)) = (sphere(&x), sphere(&y)) {
            starts.push((x, y));
        }
    }

    let refined: Vec<(f64, Vec<f64>, Vec<f64>)> = starts
        .par_iter()
        .enumerate()
        .map(|(k, (x, y))| refine(space, mode, x.clone(), y.clone(), config, k as u64))
        .collect();
    let mut best = 0;
    for (k, r) in refined.iter().enumerate() {
        if r.0 > refined[best].0 {
            best = k;
        }
    }
    let (_, x, y) = refined[best].clone();
    let minus = space.dist(&x, &y);
    let plus = space.eval(&linalg::add(&x, &y));
    let value = match mode {
        TwoPointMode::James => minus.min(plus),
        TwoPointMode::G => minus.max(plus),
    };
    Ok(TwoPointResult {
        mode,
        value,
        x,
        y,
        minus,
        plus,
        starts: starts.len(),
    })
}

/// Alternating compass search over `x` and `y`, each renormalized to the sphere.
fn refine(
    space: &NormedSpace,
    mode: TwoPointMode,
    mut x: Vec<f64>,
    mut y: Vec<f64>,
    config: &SolverConfig,
    stream: u64,
) -> (f64, Vec<f64>, Vec<f64>) {
    let n = space.dim();
    let mut rng = sampling::rng_for(config.seed ^ 0x7a0, stream);
    let score = |x: &[f64], y: &[f64]| mode.score(space.dist(x, y), space.eval(&linalg::add(x, y)));
    let sphere = |v: Vec<f64>| -> Option<Vec<f64>> {
        let r = space.eval(&v);
        (r > 0.0 && r.is_finite()).then(|| linalg::scale(&v, 1.0 / r))
    };
    let mut best = score(&x, &y);
    let mut step = 0.1 * space.euclid_radius();
    let floor = 1e-11 * space.euclid_radius();
    let mut evals = 0;
    let cap = config.max_iters.max(200) * 4 * n;
    while step > floor && evals < cap {
        let mut improved = false;
        for which in 0..3 {
            let mut dirs: Vec<Vec<f64>> = Vec::with_capacity(2 * n + 2);
            for i in 0..n {
                dirs.push(linalg::unit(n, i));
                dirs.push(linalg::scale(&linalg::unit(n, i), -1.0));
            }
            dirs.push(sampling::euclidean_direction(&mut rng, n));
            dirs.push(sampling::euclidean_direction(&mut rng, n));
            for d in &dirs {
                evals += 1;
                // 0 moves x, 1 moves y, 2 moves both in opposite directions
                let (nx, ny) = match which {
                    0 => (sphere(step_along(&x, step, d)), Some(y.clone())),
                    1 => (Some(x.clone()), sphere(step_along(&y, step, d))),
                    _ => (sphere(step_along(&x, step, d)), sphere(step_along(&y, -step, d))),
                };
                let (Some(nx), Some(ny)) = (nx, ny) else { continue };
                let s = score(&nx, &ny);
                if s > best {
                    best = s;
                    x = nx;
                    y = ny;
                    improved = true;
                    break;
                }
            }
        }
        step *= if improved { 1.5 } else { 0.5 };
    }
    (best, x, y)
}

fn step_along(x: &[f64], step: f64, d: &[f64]) -> Vec<f64> {
    let mut v = x.to_vec();
    linalg::axpy(&mut v, step, d);
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaces::SpaceSpec;

    fn grid_oracle(space: &NormedSpace, mode: TwoPointMode, steps: usize) -> f64 {
        let pt = |t: f64| {
            let v = [t.cos(), t.sin()];
            let r = space.eval(&v);
            [v[0] / r, v[1] / r]
        };
        let mut best = f64::NEG_INFINITY;
        for i in 0..steps {
            let x = pt(std::f64::consts::PI * i as f64 / steps as f64);
            for j in 0..(2 * steps) {
                let y = pt(std::f64::consts::PI * j as f64 / steps as f64);
                best = best.max(mode.score(space.dist(&x, &y), space.eval(&[x[0] + y[0], x[1] + y[1]])));
            }
        }
        match mode {
            TwoPointMode::James => best,
            TwoPointMode::G => -best,
        }
    }

    #[test]
    fn euclidean_plane() {
        let s = NormedSpace::build(&SpaceSpec::lp(2, 2.0)).unwrap();
        let j = two_point_constant(&s, TwoPointMode::James, &SolverConfig::quick()).unwrap();
        let g = two_point_constant(&s, TwoPointMode::G, &SolverConfig::quick()).unwrap();
        assert!((j.value - 2f64.sqrt()).abs() < 1e-6);
        assert!((g.value - 2f64.sqrt()).abs() < 1e-6);
    }

    #[test]
    fn lp_plane_matches_grid() {
        for p in [1.2, 3.0] {
            let s = NormedSpace::build(&SpaceSpec::lp(2, p)).unwrap();
            let j = two_point_constant(&s, TwoPointMode::James, &SolverConfig::quick()).unwrap();
            let g = two_point_constant(&s, TwoPointMode::G, &SolverConfig::quick()).unwrap();
            assert!((j.value - grid_oracle(&s, TwoPointMode::James, 720)).abs() < 2e-3);
            assert!((j.value * g.value - 2.0).abs() < 2e-3, "{p}: {} {}", j.value, g.value);
        }
    }

    #[test]
    fn rejects_quasinorm() {
        let s = NormedSpace::build(&SpaceSpec::twisted_kp(2, 0.5)).unwrap();
        assert!(matches!(
            two_point_constant(&s, TwoPointMode::James, &SolverConfig::quick()),
            Err(Error::Quasinorm(_))
        ));
    }
}
