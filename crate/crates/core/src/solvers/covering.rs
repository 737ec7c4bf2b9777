//! Covering radius minimization: `min max_{p in T} min_i ||p - c_i||` with
//! `T` the unit sphere (centers on the sphere) or the unit ball (free centers).
//!
//! The target is discretized by a deterministic quasi-uniform probe set. The
//! optimizer works on a subset of the probes, annealing a softmax over probes
//! of a softmin over centers, and exchanges the worst full-set probes into the
//! working set between rounds. The reported radius is the exact maximum over
//! the full probe set plus the adversarial points found by local maximization.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, norm2};
use crate::sampling;
use crate::spaces::NormedSpace;

use super::config::SolverConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoverTarget {
    Sphere,
    Ball,
}

impl CoverTarget {
    pub fn label(&self) -> &'static str {
        match self {
            CoverTarget::Sphere => "sphere",
            CoverTarget::Ball => "ball",
        }
    }
}

/// Probe set: `base_size` deterministic quasi-uniform points of the target
/// followed by the adversarial points.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeSet {
    pub description: String,
    pub base_size: usize,
    pub adversarial: Vec<Vec<f64>>,
    /// Largest distance from a set of check points of the target to the base probes.
    pub resolution: f64,
    pub resolution_checks: usize,
}

impl ProbeSet {
    /// Every probe point, base points first.
    pub fn points(&self, space: &NormedSpace, target: CoverTarget) -> Vec<Vec<f64>> {
        let mut pts = base_probes(space, target, self.base_size);
        pts.extend(self.adversarial.iter().cloned());
        pts
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoveringDiagnostics {
    /// Full-probe radius reached by each restart, in restart order.
    pub restart_best: Vec<f64>,
    pub best_restart: usize,
    pub seeded_restarts: usize,
    pub flags: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoveringResult {
    pub centers: Vec<Vec<f64>>,
    /// Exact maximum over the probe set of the distance to the nearest center.
    pub radius: f64,
    pub target: CoverTarget,
    pub probe: ProbeSet,
    pub diagnostics: CoveringDiagnostics,
}

impl CoveringResult {
    /// Upper bound on the true covering radius of these centers.
    pub fn certified_upper(&self) -> f64 {
        self.radius + self.probe.resolution
    }
}

/// `max_p min_i ||p - c_i||` over the given points.
pub fn covering_radius(space: &NormedSpace, centers: &[Vec<f64>], points: &[Vec<f64>]) -> f64 {
    points
        .iter()
        .map(|p| nearest(space, centers, p))
        .fold(0.0, f64::max)
}

fn nearest(space: &NormedSpace, centers: &[Vec<f64>], p: &[f64]) -> f64 {
    centers
        .iter()
        .map(|c| space.dist(p, c))
        .fold(f64::INFINITY, f64::min)
}

pub fn covering(
    space: &NormedSpace,
    n_centers: usize,
    target: CoverTarget,
    config: &SolverConfig,
) -> Result<CoveringResult> {
    covering_seeded(space, n_centers, target, config, &[])
}

/// As [`covering`], with extra starting center sets run first.
pub fn covering_seeded(
    space: &NormedSpace,
    n_centers: usize,
    target: CoverTarget,
    config: &SolverConfig,
    seeds: &[Vec<Vec<f64>>],
) -> Result<CoveringResult> {
    config.validate()?;
    let budget = &config.covering;
    let dim = space.dim();
    if n_centers < 1 {
        return Err(Error::InvalidArgument("covering needs at least one center".into()));
    }
    if dim > budget.max_dim {
        return Err(Error::Budget(format!(
            "covering probe set infeasible in dimension {dim} (limit {})",
            budget.max_dim
        )));
    }
    let base_size = budget.probe_per_dim.checked_mul(dim).filter(|&s| s <= 2_000_000).ok_or_else(|| {
        Error::Budget(format!("{} probes per dimension is too many", budget.probe_per_dim))
    })?;
    if base_size < n_centers {
        return Err(Error::Budget(format!(
            "probe set of {base_size} points cannot resolve {n_centers} centers"
        )));
    }
    let mut flags = Vec::new();
    if space.is_quasinorm() {
        flags.push(format!(
            "quasinorm distance (measured constant {:.4})",
            space.quasinorm_constant()
        ));
    }

    let probes = base_probes(space, target, base_size);
    let working_size = (budget.working_per_dim * dim).clamp(n_centers, base_size);
    let stride = base_size / working_size;
    let working: Vec<Vec<f64>> = probes.iter().step_by(stride).take(working_size).cloned().collect();

    let mut starts: Vec<Vec<Vec<f64>>> = Vec::new();
    for s in seeds {
        if s.len() != n_centers || s.iter().any(|c| c.len() != dim) {
            return Err(Error::InvalidArgument("seed centers have the wrong shape".into()));
        }
        starts.push(s.iter().map(|c| place(space, target, c.clone())).collect());
    }
    starts.extend(canonical_seeds(space, n_centers, target));
    let seeded = starts.len();
    let total = budget.restarts.max(seeded).max(1);

    let runs: Vec<(Vec<Vec<f64>>, f64)> = (0..total)
        .into_par_iter()
        .map(|r| {
            let init = if r < seeded {
                starts[r].clone()
            } else {
                random_start(space, &probes, n_centers, target, config.seed, r as u64)
            };
            run_restart(space, init, &working, &probes, target, config)
        })
        .collect();
    let mut best_restart = 0;
    for (r, run) in runs.iter().enumerate() {
        if run.1 < runs[best_restart].1 {
            best_restart = r;
        }
    }
    let mut centers = runs[best_restart].0.clone();

    // adversarial local maxima from the worst probes, re-optimizing while they matter
    let mut adversarial: Vec<Vec<f64>> = Vec::new();
    let mut extra_working = worst_points(space, &centers, &probes, 8 * dim);
    for round in 0..3 {
        let found = adversarial_points(space, &centers, &probes, &adversarial, target, config, round);
        let before = covering_radius(space, &centers, &probes).max(covering_radius(space, &centers, &adversarial));
        let after = covering_radius(space, &centers, &found);
        adversarial.extend(found);
        if after <= before * (1.0 + 1e-9) {
            break;
        }
        let mut w = working.clone();
        w.append(&mut extra_working);
        w.extend(adversarial.iter().cloned());
        let refined = optimize(space, centers.clone(), &w, target, config, config.covering.max_iters / 2);
        let all: Vec<Vec<f64>> = probes.iter().chain(&adversarial).cloned().collect();
        if covering_radius(space, &refined, &all) < covering_radius(space, &centers, &all) {
            centers = refined;
        }
        extra_working = worst_points(space, &centers, &all, 8 * dim);
    }

    let checks = 100;
    let resolution = probe_resolution(space, target, &probes, checks, config.seed);
    let probe = ProbeSet {
        description: match target {
            CoverTarget::Sphere => "quasi-uniform directions radially normalized to the unit sphere",
            CoverTarget::Ball => "quasi-uniform unit-sphere directions (quarter) and radial ball points (rest)",
        }
        .to_string(),
        base_size,
        adversarial,
        resolution,
        resolution_checks: checks,
    };
    let all = probe.points(space, target);
    let radius = covering_radius(space, &centers, &all);
    Ok(CoveringResult {
        centers,
        radius,
        target,
        probe,
        diagnostics: CoveringDiagnostics {
            restart_best: runs.iter().map(|r| r.1).collect(),
            best_restart,
            seeded_restarts: seeded,
            flags,
        },
    })
}

fn to_sphere(space: &NormedSpace, v: &[f64]) -> Option<Vec<f64>> {
    let n = space.eval(v);
    (n > 0.0 && n.is_finite()).then(|| linalg::scale(v, 1.0 / n))
}

/// Map a point onto the admissible center set.
fn place(space: &NormedSpace, target: CoverTarget, v: Vec<f64>) -> Vec<f64> {
    match target {
        CoverTarget::Sphere => to_sphere(space, &v).unwrap_or_else(|| {
            let e = linalg::unit(space.dim(), 0);
            linalg::scale(&e, 1.0 / space.eval(&e))
        }),
        CoverTarget::Ball => v,
    }
}

/// Map a point onto the target set (probe admissibility).
fn onto_target(space: &NormedSpace, target: CoverTarget, v: &[f64]) -> Option<Vec<f64>> {
    match target {
        CoverTarget::Sphere => to_sphere(space, v),
        CoverTarget::Ball => {
            let n = space.eval(v);
            Some(if n > 1.0 { linalg::scale(v, 1.0 / n) } else { v.to_vec() })
        }
    }
}

fn base_probes(space: &NormedSpace, target: CoverTarget, size: usize) -> Vec<Vec<f64>> {
    let dim = space.dim();
    let sphere = |count: usize| -> Vec<Vec<f64>> {
        sampling::quasi_directions(count, dim)
            .into_iter()
            .filter_map(|d| to_sphere(space, &d))
            .collect()
    };
    match target {
        CoverTarget::Sphere => sphere(size),
        CoverTarget::Ball => {
            let boundary = size / 4;
            let mut pts = sphere(boundary);
            for v in sampling::quasi_ball(size - boundary, dim) {
                let r = norm2(&v);
                match to_sphere(space, &v) {
                    Some(s) => pts.push(linalg::scale(&s, r)),
                    None => pts.push(vec![0.0; dim]),
                }
            }
            pts
        }
    }
}

fn probe_resolution(space: &NormedSpace, target: CoverTarget, probes: &[Vec<f64>], checks: usize, seed: u64) -> f64 {
    let dim = space.dim();
    (0..checks)
        .into_par_iter()
        .map(|k| {
            let mut rng = sampling::rng_for(seed ^ 0x5e50, k as u64);
            let d = sampling::euclidean_direction(&mut rng, dim);
            let p = match target {
                CoverTarget::Sphere => to_sphere(space, &d),
                CoverTarget::Ball => {
                    let r: f64 = rand::Rng::random::<f64>(&mut rng).powf(1.0 / dim as f64);
                    to_sphere(space, &d).map(|s| linalg::scale(&s, r))
                }
            };
            p.map_or(0.0, |p| nearest(space, probes, &p))
        })
        .reduce(|| 0.0, f64::max)
}

fn canonical_seeds(space: &NormedSpace, n: usize, target: CoverTarget) -> Vec<Vec<Vec<f64>>> {
    let dim = space.dim();
    let mut out = Vec::new();
    match target {
        CoverTarget::Sphere => {
            if dim >= 2 {
                // regular polygon in the first coordinate plane
                let poly: Vec<Vec<f64>> = (0..n)
                    .map(|k| {
                        let a = std::f64::consts::TAU * k as f64 / n as f64;
                        let mut v = vec![0.0; dim];
                        v[0] = a.cos();
                        v[1] = a.sin();
                        place(space, target, v)
                    })
                    .collect();
                out.push(poly);
            }
            if n <= 2 * dim {
                let cross: Vec<Vec<f64>> = (0..n)
                    .map(|k| {
                        let s = if k % 2 == 0 { 1.0 } else { -1.0 };
                        place(space, target, linalg::scale(&linalg::unit(dim, k / 2), s))
                    })
                    .collect();
                out.push(cross);
            }
        }
        CoverTarget::Ball => {
            if n == 1 {
                out.push(vec![vec![0.0; dim]]);
            } else if dim == 1 {
                let e = 1.0 / space.eval(&[1.0]);
                out.push(
                    (0..n)
                        .map(|k| vec![e * (-1.0 + (2 * k + 1) as f64 / n as f64)])
                        .collect(),
                );
            } else {
                // polygons in the first coordinate plane, with and without a center at the origin
                let polygon = |k: usize, scale: f64| -> Vec<Vec<f64>> {
                    (0..k)
                        .map(|j| {
                            let a = std::f64::consts::TAU * j as f64 / k as f64;
                            let mut v = vec![0.0; dim];
                            v[0] = a.cos();
                            v[1] = a.sin();
                            to_sphere(space, &v).map_or(v.clone(), |s| linalg::scale(&s, scale))
                        })
                        .collect()
                };
                for scale in [0.6, 0.75] {
                    let mut poly = polygon(n - 1, scale);
                    poly.push(vec![0.0; dim]);
                    out.push(poly);
                }
                for scale in [0.5, 0.7, 0.85] {
                    out.push(polygon(n, scale));
                }
            }
        }
    }
    out
}

fn random_start(
    space: &NormedSpace,
    probes: &[Vec<f64>],
    n: usize,
    target: CoverTarget,
    seed: u64,
    stream: u64,
) -> Vec<Vec<f64>> {
    let mut rng = sampling::rng_for(seed ^ 0xc0fe, stream);
    (0..n)
        .map(|_| {
            let i = rand::Rng::random_range(&mut rng, 0..probes.len());
            place(space, target, probes[i].clone())
        })
        .collect()
}

/// `k` points with the largest nearest-center distance, in decreasing order.
fn worst_points(space: &NormedSpace, centers: &[Vec<f64>], points: &[Vec<f64>], k: usize) -> Vec<Vec<f64>> {
    let mut scored: Vec<(f64, usize)> = points
        .iter()
        .enumerate()
        .map(|(i, p)| (nearest(space, centers, p), i))
        .collect();
    scored.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));
    scored.iter().take(k).map(|&(_, i)| points[i].clone()).collect()
}

/// The `k` farthest points of every Voronoi cell.
fn cell_worst(space: &NormedSpace, centers: &[Vec<f64>], points: &[Vec<f64>], k: usize) -> Vec<Vec<f64>> {
    let mut cells: Vec<Vec<(f64, usize)>> = vec![Vec::new(); centers.len()];
    for (j, p) in points.iter().enumerate() {
        let (i, d) = centers
            .iter()
            .map(|c| space.dist(p, c))
            .enumerate()
            .fold((0, f64::INFINITY), |acc, (i, d)| if d < acc.1 { (i, d) } else { acc });
        cells[i].push((d, j));
    }
    cells
        .into_iter()
        .flat_map(|mut cell| {
            cell.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));
            cell.into_iter().take(k).map(|(_, j)| points[j].clone()).collect::<Vec<_>>()
        })
        .collect()
}

/// One restart: anneal on the working set, then exchange the worst full-set
/// probes in and re-optimize. Returns the centers and their full-probe radius.
fn run_restart(
    space: &NormedSpace,
    init: Vec<Vec<f64>>,
    working: &[Vec<f64>],
    probes: &[Vec<f64>],
    target: CoverTarget,
    cfg: &SolverConfig,
) -> (Vec<Vec<f64>>, f64) {
    let dim = space.dim();
    let budget = &cfg.covering;
    let mut w = working.to_vec();
    let init_radius = covering_radius(space, &init, probes);
    let mut centers = optimize(space, init.clone(), &w, target, cfg, budget.max_iters);
    let mut radius = covering_radius(space, &centers, probes);
    if init_radius <= radius {
        centers = init;
        radius = init_radius;
    }
    for _ in 0..budget.refine_rounds {
        let mut worst = worst_points(space, &centers, probes, 10 * dim);
        worst.extend(cell_worst(space, &centers, probes, 2));
        worst.retain(|p| !w.contains(p));
        if worst.is_empty() {
            break;
        }
        w.extend(worst);
        let next = optimize(space, centers.clone(), &w, target, cfg, (budget.max_iters / 4).max(1));
        let r = covering_radius(space, &next, probes);
        if r < radius {
            radius = r;
            centers = next;
        }
    }
    (centers, radius)
}

/// Softmax-over-probes of softmin-over-centers value and its gradient.
fn smoothed(
    space: &NormedSpace,
    centers: &[Vec<f64>],
    pts: &[Vec<f64>],
    tau: f64,
) -> (f64, Vec<Vec<f64>>) {
    let n = centers.len();
    let dim = space.dim();
    let dists: Vec<Vec<f64>> = pts
        .iter()
        .map(|p| centers.iter().map(|c| space.dist(p, c)).collect())
        .collect();
    let mins: Vec<f64> = dists.iter().map(|d| d.iter().cloned().fold(f64::INFINITY, f64::min)).collect();
    let top = mins.iter().cloned().fold(0.0, f64::max);
    let mut grads = vec![vec![0.0; dim]; n];
    let mut total = 0.0;
    for (j, p) in pts.iter().enumerate() {
        let b = ((mins[j] - top) / tau).exp();
        if b < 1e-12 {
            continue;
        }
        total += b;
        let weights: Vec<f64> = dists[j].iter().map(|d| (-(d - mins[j]) / tau).exp()).collect();
        let wsum: f64 = weights.iter().sum();
        for (i, c) in centers.iter().enumerate() {
            let a = b * weights[i] / wsum;
            if a < 1e-12 {
                continue;
            }
            let g = space.subgradient(&linalg::sub(p, c));
            linalg::axpy(&mut grads[i], -a, &g);
        }
    }
    if total > 0.0 {
        for g in grads.iter_mut() {
            g.iter_mut().for_each(|v| *v /= total);
        }
    }
    (top, grads)
}

fn descend(
    space: &NormedSpace,
    centers: &[Vec<f64>],
    grads: &[Vec<f64>],
    eta: f64,
    target: CoverTarget,
) -> Option<Vec<Vec<f64>>> {
    let gmax = grads.iter().map(|g| norm2(g)).fold(0.0, f64::max);
    if !(gmax > 0.0) {
        return None;
    }
    Some(
        centers
            .iter()
            .zip(grads)
            .map(|(c, g)| {
                let mut x = c.clone();
                linalg::axpy(&mut x, -eta / gmax, g);
                place(space, target, x)
            })
            .collect(),
    )
}

fn optimize(
    space: &NormedSpace,
    init: Vec<Vec<f64>>,
    pts: &[Vec<f64>],
    target: CoverTarget,
    cfg: &SolverConfig,
    iters: usize,
) -> Vec<Vec<f64>> {
    let scale = space.euclid_radius().max(1e-12);
    let mut centers = init;
    let mut best = centers.clone();
    let mut best_val = covering_radius(space, &centers, pts);
    let anneal = (iters * 3 / 4).max(1);
    let polish = iters.saturating_sub(anneal);
    for t in 0..anneal {
        let frac = t as f64 / (anneal.max(2) - 1) as f64;
        let tau = SolverConfig::geometric(cfg.tau0, cfg.tau_min, frac) * 0.25;
        let eta = scale * SolverConfig::geometric(cfg.step0, cfg.step_min, frac);
        let (top, grads) = smoothed(space, &centers, pts, tau);
        if top < best_val {
            best_val = top;
            best.clone_from(&centers);
        }
        match descend(space, &centers, &grads, eta, target) {
            Some(next) => centers = next,
            None => break,
        }
    }
    let last = covering_radius(space, &centers, pts);
    if last < best_val {
        best_val = last;
        best.clone_from(&centers);
    }
    centers = best.clone();
    let mut eta = scale * cfg.step_min * 10.0;
    for t in 0..polish {
        let frac = t as f64 / (polish.max(2) - 1) as f64;
        let tau = SolverConfig::geometric(cfg.tau_min, cfg.tau_min * 1e-3, frac) * 0.25;
        let (_, grads) = smoothed(space, &centers, pts, tau);
        let Some(next) = descend(space, &centers, &grads, eta, target) else {
            break;
        };
        let val = covering_radius(space, &next, pts);
        if val < best_val {
            best_val = val;
            best.clone_from(&next);
            centers = next;
            eta *= 1.5;
        } else {
            eta *= 0.5;
            if eta < 1e-13 * scale {
                break;
            }
        }
    }
    best
}

/// Local maxima of the nearest-center distance over the target, started from
/// the worst probes, by compass search.
fn adversarial_points(
    space: &NormedSpace,
    centers: &[Vec<f64>],
    probes: &[Vec<f64>],
    known: &[Vec<f64>],
    target: CoverTarget,
    cfg: &SolverConfig,
    round: u64,
) -> Vec<Vec<f64>> {
    let dim = space.dim();
    let all: Vec<Vec<f64>> = probes.iter().chain(known).cloned().collect();
    let starts = worst_points(space, centers, &all, 4 + 2 * dim);
    starts
        .into_par_iter()
        .enumerate()
        .map(|(k, start)| {
            let mut rng = sampling::rng_for(cfg.seed ^ 0xad5e, round * 1024 + k as u64);
            let mut p = start;
            let mut val = nearest(space, centers, &p);
            let mut step = 0.05 * space.euclid_radius();
            let mut evals = 0;
            while step > 1e-10 && evals < 400 * dim {
                let mut dirs: Vec<Vec<f64>> = (0..dim)
                    .flat_map(|i| [linalg::unit(dim, i), linalg::scale(&linalg::unit(dim, i), -1.0)])
                    .collect();
                dirs.push(sampling::euclidean_direction(&mut rng, dim));
                let mut improved = false;
                for d in dirs {
                    let mut q = p.clone();
                    linalg::axpy(&mut q, step, &d);
                    evals += 1;
                    let Some(q) = onto_target(space, target, &q) else { continue };
                    let v = nearest(space, centers, &q);
                    if v > val {
                        val = v;
                        p = q;
                        improved = true;
                        break;
                    }
                }
                step *= if improved { 1.5 } else { 0.5 };
            }
            p
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaces::SpaceSpec;

    fn small() -> SolverConfig {
        let mut c = SolverConfig::quick();
        c.covering.restarts = 4;
        c.covering.max_iters = 200;
        c.covering.probe_per_dim = 2000;
        c
    }

    #[test]
    fn circle_six_centers() {
        let s = NormedSpace::build(&SpaceSpec::lp(2, 2.0)).unwrap();
        let r = covering(&s, 6, CoverTarget::Sphere, &small()).unwrap();
        let exact = 2.0 * (std::f64::consts::PI / 12.0).sin();
        assert!((r.radius - exact).abs() < 2e-3, "{}", r.radius);
        for c in &r.centers {
            assert!((s.eval(c) - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn one_center_covers_ball_from_origin() {
        let s = NormedSpace::build(&SpaceSpec::lp(3, 1.0)).unwrap();
        let r = covering(&s, 1, CoverTarget::Ball, &small()).unwrap();
        assert!((r.radius - 1.0).abs() < 1e-9, "{}", r.radius);
    }

    #[test]
    fn interval_two_centers() {
        let s = NormedSpace::build(&SpaceSpec::lp(1, 2.0)).unwrap();
        let r = covering(&s, 2, CoverTarget::Ball, &small()).unwrap();
        assert!((r.radius - 0.5).abs() < 1e-3, "{}", r.radius);
    }

    #[test]
    fn radius_is_recomputable() {
        let s = NormedSpace::build(&SpaceSpec::lp(2, 3.0)).unwrap();
        let r = covering(&s, 3, CoverTarget::Sphere, &small()).unwrap();
        let pts = r.probe.points(&s, r.target);
        assert_eq!(covering_radius(&s, &r.centers, &pts), r.radius);
    }

    #[test]
    fn dimension_budget_is_enforced() {
        let s = NormedSpace::build(&SpaceSpec::lp(9, 2.0)).unwrap();
        assert!(matches!(
            covering(&s, 2, CoverTarget::Sphere, &small()),
            Err(Error::Budget(_))
        ));
    }
}
