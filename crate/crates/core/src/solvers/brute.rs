//! Exact maximin over finite candidate sets, used as an oracle for the
//! continuous packing solver.

use serde::{Deserialize, Serialize};

use crate::clique::Graph;
use crate::error::{Error, Result};
use crate::spaces::{NormedSpace, SpaceSpec};

use super::packing::{dissimilarity, PackingDiagnostics, PackingMode, PackingResult};

/// Largest candidate list accepted by the brute-force oracle.
pub const CANDIDATE_CAP: usize = 4096;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CandidateSet {
    /// Extreme points of the unit ball (polyhedral balls only).
    ExtremePoints,
    /// Surface grid of the cube `[-1,1]^n` with the given spacing, radially projected onto the sphere.
    Grid(f64),
    Explicit(Vec<Vec<f64>>),
}

/// Exact maximin of `n_points` points chosen from the candidate set.
pub fn brute_force_packing(
    space: &NormedSpace,
    n_points: usize,
    candidates: &CandidateSet,
    mode: &PackingMode,
) -> Result<PackingResult> {
    if matches!(mode, PackingMode::Disjoint(_)) {
        return Err(Error::InvalidArgument(
            "brute-force oracle supports plain and symmetric modes".into(),
        ));
    }
    let cands = candidate_points(space, candidates)?;
    if cands.len() > CANDIDATE_CAP {
        return Err(Error::Budget(format!(
            "{} candidates exceed the brute-force cap {CANDIDATE_CAP}",
            cands.len()
        )));
    }
    if n_points < 2 || n_points > cands.len() {
        return Err(Error::InvalidArgument(format!(
            "cannot choose {n_points} points from {} candidates",
            cands.len()
        )));
    }
    let (idx, sep) = exact_maximin_subset(space, &cands, n_points, mode.is_symmetric());
    Ok(PackingResult {
        points: idx.iter().map(|&i| cands[i].clone()).collect(),
        separation: sep,
        mode: mode.clone(),
        blocks: None,
        diagnostics: PackingDiagnostics {
            restart_best: vec![sep],
            iterations: vec![cands.len()],
            best_restart: 0,
            seeded_restarts: 0,
            flags: vec![format!("exact over {} candidates", cands.len())],
        },
    })
}

/// Best `k`-subset by threshold bisection over the distinct pairwise values,
/// each threshold decided by a clique search.
pub fn exact_maximin_subset(
    space: &NormedSpace,
    points: &[Vec<f64>],
    k: usize,
    symmetric: bool,
) -> (Vec<usize>, f64) {
    let n = points.len();
    let mut d = vec![vec![0.0; n]; n];
    let mut values = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in (i + 1)..n {
            let v = dissimilarity(space, &points[i], &points[j], symmetric);
            d[i][j] = v;
            d[j][i] = v;
            values.push(v);
        }
    }
    values.sort_by(|a, b| a.total_cmp(b));
    values.dedup();
    let feasible = |t: f64| -> Option<Vec<usize>> {
        let g = Graph::from_fn(n, |i, j| d[i][j] >= t);
        let c = g.max_clique(Some(k));
        (c.len() >= k).then(|| c[..k].to_vec())
    };
    // the smallest value is always feasible
    let mut lo = 0;
    let mut hi = values.len() - 1;
    let mut best = feasible(values[0]).expect("any k points reach the minimum distance");
    while lo < hi {
        let mid = (lo + hi).div_ceil(2);
        match feasible(values[mid]) {
            Some(c) => {
                lo = mid;
                best = c;
            }
            None => hi = mid - 1,
        }
    }
    let sep = super::packing::separation(space, &best.iter().map(|&i| points[i].clone()).collect::<Vec<_>>(), symmetric);
    (best, sep)
}

fn candidate_points(space: &NormedSpace, set: &CandidateSet) -> Result<Vec<Vec<f64>>> {
    let dim = space.dim();
    let normalize = |v: Vec<f64>| -> Vec<f64> {
        let n = space.eval(&v);
        v.into_iter().map(|x| x / n).collect()
    };
    match set {
        CandidateSet::Explicit(v) => {
            if v.iter().any(|p| p.len() != dim) {
                return Err(Error::DimensionMismatch {
                    context: "candidate set",
                    expected: dim,
                    got: v.iter().map(|p| p.len()).find(|&l| l != dim).unwrap_or(0),
                });
            }
            Ok(v.clone())
        }
        CandidateSet::ExtremePoints => extreme_points(space),
        CandidateSet::Grid(h) => {
            if !(*h > 0.0 && *h <= 2.0) {
                return Err(Error::InvalidArgument(format!("grid spacing {h} outside (0, 2]")));
            }
            let steps = (2.0 / h).round() as usize;
            let per_axis = steps + 1;
            let total = per_axis.checked_pow(dim as u32).unwrap_or(usize::MAX);
            let interior = (per_axis.saturating_sub(2)).checked_pow(dim as u32).unwrap_or(0);
            if total.saturating_sub(interior) > CANDIDATE_CAP {
                return Err(Error::Budget(format!(
                    "grid spacing {h} in dimension {dim} gives more than {CANDIDATE_CAP} candidates"
                )));
            }
            let mut out = Vec::new();
            let mut idx = vec![0usize; dim];
            loop {
                if idx.iter().any(|&i| i == 0 || i == steps) {
                    let v: Vec<f64> = idx.iter().map(|&i| -1.0 + 2.0 * i as f64 / steps as f64).collect();
                    out.push(normalize(v));
                }
                let mut k = 0;
                loop {
                    if k == dim {
                        return Ok(out);
                    }
                    idx[k] += 1;
                    if idx[k] <= steps {
                        break;
                    }
                    idx[k] = 0;
                    k += 1;
                }
            }
        }
    }
}

fn extreme_points(space: &NormedSpace) -> Result<Vec<Vec<f64>>> {
    let dim = space.dim();
    let not_finite = || {
        Err(Error::InvalidArgument(format!(
            "unit ball of `{}` has no finite extreme point set",
            space.spec().kind()
        )))
    };
    let normalize = |v: Vec<f64>| -> Vec<f64> {
        let n = space.eval(&v);
        v.into_iter().map(|x| x / n).collect()
    };
    match space.spec() {
        SpaceSpec::Polyhedral { n, functionals } => {
            let vs = crate::spaces::polyhedral::vertices(functionals, *n)?;
            Ok(vs
                .iter()
                .flat_map(|v| [v.clone(), v.iter().map(|c| -c).collect()])
                .collect())
        }
        _ => match space.lp_parameters() {
            Some((p, _)) if p == 1.0 => Ok((0..dim)
                .flat_map(|i| {
                    let e = crate::linalg::unit(dim, i);
                    [normalize(e.clone()), normalize(crate::linalg::scale(&e, -1.0))]
                })
                .collect()),
            Some((p, _)) if p.is_infinite() => {
                if dim > 12 {
                    return Err(Error::Budget(format!("2^{dim} sign vectors")));
                }
                Ok((0..1usize << dim)
                    .map(|k| {
                        normalize((0..dim).map(|i| if k >> i & 1 == 1 { -1.0 } else { 1.0 }).collect())
                    })
                    .collect())
            }
            _ => not_finite(),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space(spec: SpaceSpec) -> NormedSpace {
        NormedSpace::build(&spec).unwrap()
    }

    #[test]
    fn sign_corners_of_the_square() {
        let s = space(SpaceSpec::lp(2, f64::INFINITY));
        let r = brute_force_packing(&s, 3, &CandidateSet::ExtremePoints, &PackingMode::Plain).unwrap();
        assert_eq!(r.separation, 2.0);
    }

    #[test]
    fn l1_cross() {
        let s = space(SpaceSpec::lp(2, 1.0));
        let r = brute_force_packing(&s, 4, &CandidateSet::ExtremePoints, &PackingMode::Plain).unwrap();
        assert_eq!(r.separation, 2.0);
    }

    #[test]
    fn grid_size_in_the_plane() {
        let s = space(SpaceSpec::lp(2, 2.0));
        let pts = candidate_points(&s, &CandidateSet::Grid(0.05)).unwrap();
        assert_eq!(pts.len(), 160);
        assert!(extreme_points(&s).is_err());
    }
}
