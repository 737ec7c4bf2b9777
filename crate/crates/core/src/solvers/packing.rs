//! Maximin packing in the unit ball: `max min_{i<j} d(x_i, x_j)`.
//!
//! Each restart anneals a softmin of the pairwise dissimilarities with
//! normalized gradient steps and ball projection, then polishes with
//! backtracking steps that are only accepted when the exact minimum improves.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, norm2};
use crate::sampling;
use crate::spaces::NormedSpace;

use super::config::SolverConfig;

/// Disjoint-support partition of the coordinates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Blocks {
    Auto,
    Explicit(Vec<Vec<usize>>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PackingMode {
    /// `d = ||x - y||`
    Plain,
    /// `d = min(||x - y||, ||x + y||)`
    Symmetric,
    /// Plain distance with point `i` supported in block `i`.
    Disjoint(Blocks),
}

impl PackingMode {
    pub fn disjoint_auto() -> Self {
        PackingMode::Disjoint(Blocks::Auto)
    }

    pub fn is_symmetric(&self) -> bool {
        matches!(self, PackingMode::Symmetric)
    }

    pub fn label(&self) -> &'static str {
        match self {
            PackingMode::Plain => "plain",
            PackingMode::Symmetric => "symmetric",
            PackingMode::Disjoint(_) => "disjoint",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PackingDiagnostics {
    /// Best exact separation reached by each restart, in restart order.
    pub restart_best: Vec<f64>,
    pub iterations: Vec<usize>,
    pub best_restart: usize,
    /// Number of leading restarts started from supplied or canonical configurations.
    pub seeded_restarts: usize,
    pub flags: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PackingResult {
    pub points: Vec<Vec<f64>>,
    /// Exact minimum pairwise dissimilarity of `points`.
    pub separation: f64,
    pub mode: PackingMode,
    /// Resolved partition in disjoint mode.
    pub blocks: Option<Vec<Vec<usize>>>,
    pub diagnostics: PackingDiagnostics,
}

/// Exact minimum pairwise dissimilarity.
pub fn separation(space: &NormedSpace, points: &[Vec<f64>], symmetric: bool) -> f64 {
    let mut best = f64::INFINITY;
    for i in 0..points.len() {
        for j in (i + 1)..points.len() {
            best = best.min(dissimilarity(space, &points[i], &points[j], symmetric));
        }
    }
    best
}

pub fn dissimilarity(space: &NormedSpace, x: &[f64], y: &[f64], symmetric: bool) -> f64 {
    let minus = space.dist(x, y);
    if symmetric {
        minus.min(space.eval(&linalg::add(x, y)))
    } else {
        minus
    }
}

/// Maximin packing of `n_points` points in the unit ball of `space`.
pub fn maximin_packing(
    space: &NormedSpace,
    n_points: usize,
    mode: &PackingMode,
    config: &SolverConfig,
) -> Result<PackingResult> {
    maximin_packing_seeded(space, n_points, mode, config, &[])
}

/// As [`maximin_packing`], with extra starting configurations run first.
pub fn maximin_packing_seeded(
    space: &NormedSpace,
    n_points: usize,
    mode: &PackingMode,
    config: &SolverConfig,
    seeds: &[Vec<Vec<f64>>],
) -> Result<PackingResult> {
    config.validate()?;
    if n_points < 2 {
        return Err(Error::InvalidArgument(format!(
            "packing needs at least 2 points, got {n_points}"
        )));
    }
    let dim = space.dim();
    let mut flags = Vec::new();
    if space.is_quasinorm() {
        flags.push(format!(
            "quasinorm dissimilarity (measured constant {:.4})",
            space.quasinorm_constant()
        ));
    }
    let blocks = match mode {
        PackingMode::Disjoint(b) => {
            if !space.is_coordinate() {
                return Err(Error::NotCoordinate("disjoint packing"));
            }
            if n_points > dim {
                return Err(Error::InvalidArgument(format!(
                    "{n_points} disjoint blocks requested but the space has {dim} coordinates"
                )));
            }
            Some(match b {
                Blocks::Explicit(parts) => {
                    check_partition(parts, n_points, dim)?;
                    parts.clone()
                }
                Blocks::Auto => auto_partition(space, n_points, config)?,
            })
        }
        _ => None,
    };
    let masks = blocks.as_ref().map(|b| masks_from(b, dim));
    let symmetric = mode.is_symmetric();

    let mut starts: Vec<Vec<Vec<f64>>> = Vec::new();
    for s in seeds {
        if s.len() != n_points || s.iter().any(|p| p.len() != dim) {
            return Err(Error::InvalidArgument(
                "seed configuration has the wrong shape".into(),
            ));
        }
        starts.push(s.clone());
    }
    starts.extend(canonical_seeds(space, n_points, symmetric, masks.as_deref()));
    let seeded = starts.len();
    let total = config.restarts.max(seeded);

    let runs: Vec<(Vec<Vec<f64>>, f64, usize)> = (0..total)
        .into_par_iter()
        .map(|r| {
            let init = if r < seeded {
                starts[r].clone()
            } else {
                random_start(space, n_points, masks.as_deref(), config.seed, r as u64)
            };
            run_restart(space, init, symmetric, masks.as_deref(), config)
        })
        .collect();

    let mut best_restart = 0;
    for (r, run) in runs.iter().enumerate() {
        if run.1 > runs[best_restart].1 {
            best_restart = r;
        }
    }
    let points = runs[best_restart].0.clone();
    let separation = separation(space, &points, symmetric);
    Ok(PackingResult {
        points,
        separation,
        mode: mode.clone(),
        blocks,
        diagnostics: PackingDiagnostics {
            restart_best: runs.iter().map(|r| r.1).collect(),
            iterations: runs.iter().map(|r| r.2).collect(),
            best_restart,
            seeded_restarts: seeded,
            flags,
        },
    })
}

fn check_partition(parts: &[Vec<usize>], n_points: usize, dim: usize) -> Result<()> {
    if parts.len() != n_points {
        return Err(Error::InvalidArgument(format!(
            "partition has {} blocks, expected {n_points}",
            parts.len()
        )));
    }
    let mut seen = vec![false; dim];
    for b in parts {
        if b.is_empty() {
            return Err(Error::InvalidArgument("empty block in partition".into()));
        }
        for &i in b {
            if i >= dim || seen[i] {
                return Err(Error::InvalidArgument(format!(
                    "coordinate {i} out of range or repeated in partition"
                )));
            }
            seen[i] = true;
        }
    }
    Ok(())
}

/// Contiguous blocks with sizes differing by at most one (larger blocks first).
pub fn contiguous_blocks(dim: usize, parts: usize) -> Vec<Vec<usize>> {
    let base = dim / parts;
    let extra = dim % parts;
    let mut out = Vec::with_capacity(parts);
    let mut start = 0;
    for k in 0..parts {
        let len = base + usize::from(k < extra);
        out.push((start..start + len).collect());
        start += len;
    }
    out
}

fn masks_from(blocks: &[Vec<usize>], dim: usize) -> Vec<Vec<bool>> {
    blocks
        .iter()
        .map(|b| {
            let mut m = vec![false; dim];
            for &i in b {
                m[i] = true;
            }
            m
        })
        .collect()
}

fn auto_partition(space: &NormedSpace, parts: usize, config: &SolverConfig) -> Result<Vec<Vec<usize>>> {
    let dim = space.dim();
    let start = contiguous_blocks(dim, parts);
    let symmetric_lattice = space
        .lp_parameters()
        .is_some_and(|(_, w)| w.iter().all(|v| (v - w[0]).abs() <= 1e-15 * w[0].abs()));
    if symmetric_lattice {
        return Ok(start);
    }
    // hill-climb over single-coordinate moves scored by a short packing run
    let quick = SolverConfig {
        restarts: 4,
        max_iters: 300,
        ..config.clone()
    };
    let score = |b: &Vec<Vec<usize>>| -> Result<f64> {
        Ok(maximin_packing(space, parts, &PackingMode::Disjoint(Blocks::Explicit(b.clone())), &quick)?.separation)
    };
    let mut current = start;
    let mut current_score = score(&current)?;
    let mut moves = 0;
    'outer: while moves < 100 {
        for from in 0..parts {
            if current[from].len() < 2 {
                continue;
            }
            for pos in 0..current[from].len() {
                for to in 0..parts {
                    if to == from {
                        continue;
                    }
                    let mut cand = current.clone();
                    let c = cand[from].remove(pos);
                    cand[to].push(c);
                    cand[to].sort_unstable();
                    let s = score(&cand)?;
                    if s > current_score + 1e-12 {
                        current = cand;
                        current_score = s;
                        moves += 1;
                        continue 'outer;
                    }
                }
            }
        }
        break;
    }
    Ok(current)
}

fn to_sphere(space: &NormedSpace, mut x: Vec<f64>) -> Option<Vec<f64>> {
    let n = space.eval(&x);
    if !(n > 0.0) || !n.is_finite() {
        return None;
    }
    x.iter_mut().for_each(|v| *v /= n);
    Some(x)
}

/// Signed basis vectors, sign vectors and block indicators, normalized to the sphere.
fn canonical_seeds(
    space: &NormedSpace,
    n_points: usize,
    symmetric: bool,
    masks: Option<&[Vec<bool>]>,
) -> Vec<Vec<Vec<f64>>> {
    let dim = space.dim();
    let mut out = Vec::new();
    let collect = |cands: Vec<Vec<f64>>| -> Option<Vec<Vec<f64>>> {
        cands.into_iter().map(|v| to_sphere(space, v)).collect()
    };
    if let Some(masks) = masks {
        let first: Vec<Vec<f64>> = masks
            .iter()
            .map(|m| {
                let i = m.iter().position(|&b| b).unwrap_or(0);
                linalg::unit(dim, i)
            })
            .collect();
        let flat: Vec<Vec<f64>> = masks
            .iter()
            .map(|m| m.iter().map(|&b| if b { 1.0 } else { 0.0 }).collect())
            .collect();
        out.extend(collect(first));
        out.extend(collect(flat));
        return out;
    }
    let mut basis: Vec<Vec<f64>> = (0..dim).map(|i| linalg::unit(dim, i)).collect();
    if !symmetric {
        basis.extend((0..dim).map(|i| linalg::scale(&linalg::unit(dim, i), -1.0)));
    }
    if n_points <= basis.len() {
        out.extend(collect(basis[..n_points].to_vec()));
    }
    if dim <= 16 && n_points <= (1usize << dim) {
        let limit = if symmetric { 1usize << (dim - 1) } else { 1usize << dim };
        if n_points <= limit {
            let signs: Vec<Vec<f64>> = (0..n_points)
                .map(|k| {
                    (0..dim)
                        .map(|i| if k >> i & 1 == 1 { -1.0 } else { 1.0 })
                        .collect()
                })
                .collect();
            out.extend(collect(signs));
        }
    }
    out
}

fn random_start(
    space: &NormedSpace,
    n_points: usize,
    masks: Option<&[Vec<bool>]>,
    seed: u64,
    stream: u64,
) -> Vec<Vec<f64>> {
    let mut rng = sampling::rng_for(seed, stream);
    let dim = space.dim();
    (0..n_points)
        .map(|i| loop {
            let mut v = sampling::gaussian_vec(&mut rng, dim);
            if let Some(m) = masks {
                for (vk, keep) in v.iter_mut().zip(&m[i]) {
                    if !keep {
                        *vk = 0.0;
                    }
                }
            }
            if let Some(x) = to_sphere(space, v) {
                break x;
            }
        })
        .collect()
}

fn project(space: &NormedSpace, x: &mut [f64]) {
    let n = space.eval(x);
    if n > 1.0 {
        x.iter_mut().for_each(|v| *v /= n);
    }
}

struct Eval {
    min: f64,
    grads: Vec<Vec<f64>>,
}

/// Exact minimum dissimilarity and softmin gradient at temperature `tau`.
fn evaluate(space: &NormedSpace, pts: &[Vec<f64>], symmetric: bool, tau: f64) -> Eval {
    let n = pts.len();
    let dim = space.dim();
    let mut terms: Vec<(usize, usize, f64, f64, Vec<f64>)> = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in (i + 1)..n {
            let signs: &[f64] = if symmetric { &[-1.0, 1.0] } else { &[-1.0] };
            for &s in signs {
                let mut u = pts[i].clone();
                linalg::axpy(&mut u, s, &pts[j]);
                let d = space.eval(&u);
                let g = space.subgradient(&u);
                terms.push((i, j, s, d, g));
            }
        }
    }
    let min = terms.iter().map(|t| t.3).fold(f64::INFINITY, f64::min);
    let mut grads = vec![vec![0.0; dim]; n];
    let mut total = 0.0;
    for t in &terms {
        let w = (-(t.3 - min) / tau).exp();
        if w < 1e-300 {
            continue;
        }
        total += w;
        linalg::axpy(&mut grads[t.0], w, &t.4);
        linalg::axpy(&mut grads[t.1], w * t.2, &t.4);
    }
    if total > 0.0 {
        for g in grads.iter_mut() {
            g.iter_mut().for_each(|v| *v /= total);
        }
    }
    Eval { min, grads }
}

fn step(
    space: &NormedSpace,
    pts: &[Vec<f64>],
    grads: &[Vec<f64>],
    eta: f64,
    masks: Option<&[Vec<bool>]>,
) -> Option<Vec<Vec<f64>>> {
    let gmax = grads.iter().map(|g| norm2(g)).fold(0.0, f64::max);
    if !(gmax > 0.0) {
        return None;
    }
    let mut next = pts.to_vec();
    for (i, x) in next.iter_mut().enumerate() {
        linalg::axpy(x, eta / gmax, &grads[i]);
        if let Some(m) = masks {
            for (v, keep) in x.iter_mut().zip(&m[i]) {
                if !keep {
                    *v = 0.0;
                }
            }
        }
        project(space, x);
    }
    Some(next)
}

/// One restart: returns (best configuration, its exact separation, iterations used).
fn run_restart(
    space: &NormedSpace,
    init: Vec<Vec<f64>>,
    symmetric: bool,
    masks: Option<&[Vec<bool>]>,
    cfg: &SolverConfig,
) -> (Vec<Vec<f64>>, f64, usize) {
    let mut pts = init;
    for x in pts.iter_mut() {
        project(space, x);
    }
    let scale = space.euclid_radius().max(1e-12);
    let anneal = (cfg.max_iters * 3 / 4).max(1);
    let polish = cfg.max_iters - anneal;
    let mut best = pts.clone();
    let mut best_val = separation(space, &pts, symmetric);
    let mut iters = 0;

    for t in 0..anneal {
        iters += 1;
        let frac = t as f64 / (anneal.max(2) - 1) as f64;
        let tau = SolverConfig::geometric(cfg.tau0, cfg.tau_min, frac);
        let eta = scale * SolverConfig::geometric(cfg.step0, cfg.step_min, frac);
        let ev = evaluate(space, &pts, symmetric, tau);
        if ev.min > best_val {
            best_val = ev.min;
            best.clone_from(&pts);
        }
        match step(space, &pts, &ev.grads, eta, masks) {
            Some(next) => pts = next,
            None => break,
        }
    }

    // polish from the best configuration with monotone backtracking
    pts = best.clone();
    let mut eta = scale * cfg.step_min * 10.0;
    for t in 0..polish {
        iters += 1;
        let frac = t as f64 / (polish.max(2) - 1) as f64;
        let tau = SolverConfig::geometric(cfg.tau_min, cfg.tau_min * 1e-3, frac);
        let ev = evaluate(space, &pts, symmetric, tau);
        let Some(next) = step(space, &pts, &ev.grads, eta, masks) else {
            break;
        };
        let val = separation(space, &next, symmetric);
        if val > best_val {
            best_val = val;
            best.clone_from(&next);
            pts = next;
            eta *= 1.5;
        } else {
            eta *= 0.5;
            if eta < 1e-13 * scale {
                break;
            }
        }
    }
    (best, best_val, iters)
}

/// Subset of `k` points with the largest exact separation, indices ascending.
pub fn best_subset(space: &NormedSpace, points: &[Vec<f64>], k: usize, symmetric: bool) -> (Vec<usize>, f64) {
    super::brute::exact_maximin_subset(space, points, k, symmetric)
}
