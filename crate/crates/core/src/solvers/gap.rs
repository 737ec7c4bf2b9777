//! Distances to subspace balls and the gap between subspaces.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::convex::{self, EllipsoidOptions};
use crate::error::{Error, Result};
use crate::linalg::{self, norm2};
use crate::sampling;
use crate::spaces::Subspace;

use super::config::SolverConfig;

/// `min { ||x - y|| : y in L, ||y|| <= 1 }` and its minimizer (ambient coordinates).
pub fn distance_to_ball(l: &Subspace, x: &[f64]) -> Result<(f64, Vec<f64>)> {
    let amb = l.ambient();
    if x.len() != amb.dim() {
        return Err(Error::DimensionMismatch {
            context: "distance_to_ball",
            expected: amb.dim(),
            got: x.len(),
        });
    }
    if x.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite);
    }
    if l.contains(x, 1e-13) && amb.eval(x) <= 1.0 {
        return Ok((0.0, x.to_vec()));
    }
    let q = l.basis();
    let objective = |c: &[f64]| {
        let y = l.embed(c);
        let r = linalg::sub(x, &y);
        let g = amb.subgradient(&r);
        (amb.eval(&r), q.iter().map(|qi| -linalg::dot(qi, &g)).collect())
    };
    let constraint = |c: &[f64]| {
        let y = l.embed(c);
        let g = amb.subgradient(&y);
        (amb.eval(&y) - 1.0, q.iter().map(|qi| linalg::dot(qi, &g)).collect())
    };
    let radius = amb.euclid_radius() * 1.01 + 1e-9;
    let start = l.coordinates(x);
    let start_norm = amb.eval(&l.embed(&start));
    let center = if start_norm > 1.0 {
        linalg::scale(&start, 1.0 / start_norm)
    } else {
        start
    };
    let opts = EllipsoidOptions {
        tol: 1e-12 * (1.0 + norm2(x)),
        max_iter: 50_000,
    };
    // the feasible set lies in the Euclidean ball of `radius` around 0, and the
    // shifted center is feasible, so a ball of twice that size around it is safe
    let out = convex::minimize(&center, 2.0 * radius, &objective, Some(&constraint), &opts);
    let mut y = l.embed(&out.x);
    let ny = amb.eval(&y);
    if ny > 1.0 {
        y.iter_mut().for_each(|v| *v /= ny);
    }
    let value = amb.dist(x, &y);
    Ok((value, y))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GapWitness {
    /// Point of the source unit ball (ambient coordinates).
    pub point: Vec<f64>,
    /// Its nearest point in the target unit ball.
    pub approximant: Vec<f64>,
    pub distance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GapResult {
    /// `sup_{x in B_M} dist(x, B_L)`
    pub g_ml: f64,
    /// `sup_{y in B_L} dist(y, B_M)`
    pub g_lm: f64,
    pub g: f64,
    pub witness_ml: GapWitness,
    pub witness_lm: GapWitness,
    /// Inner distances are exact convex solves; the outer maximization is heuristic,
    /// so `g` is a lower bound on the true gap.
    pub lower_bound: bool,
}

/// Symmetrized gap between two subspaces of one ambient space.
pub fn subspace_gap(m: &Subspace, l: &Subspace, config: &SolverConfig) -> Result<GapResult> {
    if !m.same_ambient(l) {
        return Err(Error::InvalidArgument(
            "subspaces live in different ambient spaces".into(),
        ));
    }
    let witness_ml = directed_gap(m, l, config)?;
    let witness_lm = directed_gap(l, m, config)?;
    let g_ml = witness_ml.distance;
    let g_lm = witness_lm.distance;
    Ok(GapResult {
        g_ml,
        g_lm,
        g: g_ml.max(g_lm),
        witness_ml,
        witness_lm,
        lower_bound: true,
    })
}

/// `sup_{x in B_M} dist(x, B_L)`. The distance is convex in `x`, so the sup is
/// searched on the unit sphere of `M`.
pub fn directed_gap(m: &Subspace, l: &Subspace, config: &SolverConfig) -> Result<GapWitness> {
    let k = m.dim();
    let amb = m.ambient();
    let to_sphere = |c: &[f64]| -> Option<Vec<f64>> {
        let x = m.embed(c);
        let n = amb.eval(&x);
        (n > 0.0).then(|| linalg::scale(&x, 1.0 / n))
    };
    let eval = |c: &[f64]| -> Result<Option<GapWitness>> {
        let Some(x) = to_sphere(c) else { return Ok(None) };
        let (d, y) = distance_to_ball(l, &x)?;
        Ok(Some(GapWitness {
            point: x,
            approximant: y,
            distance: d,
        }))
    };

    let mut starts: Vec<Vec<f64>> = Vec::new();
    for i in 0..k {
        for s in [1.0, -1.0] {
            starts.push(linalg::scale(&linalg::unit(k, i), s));
        }
        for j in (i + 1)..k {
            for (a, b) in [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)] {
                let mut c = vec![0.0; k];
                c[i] = a;
                c[j] = b;
                starts.push(c);
            }
        }
    }
    let samples = (32 * k * k).clamp(64, 1200);
    starts.extend(sampling::quasi_directions(samples, k));

    let evaluated: Vec<Option<(Vec<f64>, GapWitness)>> = starts
        .par_iter()
        .map(|c| eval(c).map(|w| w.map(|w| (c.clone(), w))))
        .collect::<Result<Vec<_>>>()?;
    let mut ranked: Vec<(Vec<f64>, GapWitness)> = evaluated.into_iter().flatten().collect();
    ranked.sort_by(|a, b| b.1.distance.total_cmp(&a.1.distance));
    let top = ranked.len().min(4);

    let refined: Vec<GapWitness> = ranked[..top]
        .par_iter()
        .enumerate()
        .map(|(r, (c, w))| refine(k, c.clone(), w.clone(), &eval, config, r as u64))
        .collect::<Result<Vec<_>>>()?;
    let mut best = ranked[0].1.clone();
    for w in refined {
        if w.distance > best.distance {
            best = w;
        }
    }
    Ok(best)
}

/// Compass search on the sphere of `M` (in subspace coordinates).
fn refine(
    k: usize,
    mut c: Vec<f64>,
    mut best: GapWitness,
    eval: &(dyn Fn(&[f64]) -> Result<Option<GapWitness>> + Sync),
    config: &SolverConfig,
    stream: u64,
) -> Result<GapWitness> {
    let mut rng = sampling::rng_for(config.seed ^ 0x6a9, stream);
    let cn = norm2(&c);
    c.iter_mut().for_each(|v| *v /= cn);
    let mut step = 0.1;
    let mut evals = 0;
    while step > 1e-8 && evals < 60 * k + 200 {
        let mut dirs: Vec<Vec<f64>> = Vec::with_capacity(2 * k + 2);
        for i in 0..k {
            dirs.push(linalg::unit(k, i));
            dirs.push(linalg::scale(&linalg::unit(k, i), -1.0));
        }
        dirs.push(sampling::euclidean_direction(&mut rng, k));
        let mut improved = false;
        for d in dirs {
            let mut cand = c.clone();
            linalg::axpy(&mut cand, step, &d);
            let n = norm2(&cand);
            cand.iter_mut().for_each(|v| *v /= n);
            evals += 1;
            if let Some(w) = eval(&cand)? {
                if w.distance > best.distance + 1e-15 {
                    best = w;
                    c = cand;
                    improved = true;
                    break;
                }
            }
        }
        if improved {
            step *= 1.5;
        } else {
            step *= 0.5;
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaces::SpaceSpec;

    fn line(angle: f64) -> Subspace {
        Subspace::new(&SpaceSpec::lp(2, 2.0), vec![vec![angle.cos(), angle.sin()]]).unwrap()
    }

    #[test]
    fn orthogonal_projection_distance() {
        let l = line(0.0);
        let (d, y) = distance_to_ball(&l, &[0.0, 0.5]).unwrap();
        assert!((d - 0.5).abs() < 1e-10);
        assert!(norm2(&y) < 1e-8);
        assert_eq!(distance_to_ball(&l, &[0.5, 0.0]).unwrap().0, 0.0);
    }

    #[test]
    fn distance_between_lines_is_sine() {
        let a: f64 = 0.7;
        let (d, _) = distance_to_ball(&line(0.0), &[a.cos(), a.sin()]).unwrap();
        assert!((d - a.sin()).abs() < 1e-8, "{d}");
    }

    #[test]
    fn gap_of_identical_subspaces_vanishes() {
        let g = subspace_gap(&line(0.3), &line(0.3), &SolverConfig::quick()).unwrap();
        assert!(g.g < 1e-12);
    }

    #[test]
    fn pullback_gap_has_closed_form() {
        let eps = 0.1;
        let (ambient, pb, split) = crate::spaces::pullback_embedding(&SpaceSpec::lp(4, 1.0), eps).unwrap();
        let m = Subspace::new(&ambient, pb).unwrap();
        let l = Subspace::new(&ambient, split).unwrap();
        let g = subspace_gap(&m, &l, &SolverConfig::quick()).unwrap();
        assert!((g.g - 2.0 * eps / (1.0 + 2.0 * eps)).abs() < 1e-6, "{g:?}");
        assert!(g.g_ml.min(g.g_lm) <= eps + 1e-6, "{} {}", g.g_ml, g.g_lm);
    }
}
