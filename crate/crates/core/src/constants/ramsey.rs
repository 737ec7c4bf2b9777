//! Finite Ramsey extraction: a large index subset whose pairwise distances
//! all fall in a short interval.

use serde::{Deserialize, Serialize};

use crate::clique::Graph;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RamseySelection {
    /// Selected indices, ascending.
    pub indices: Vec<usize>,
    /// Smallest pairwise distance among the selection.
    pub lo: f64,
    /// Largest pairwise distance among the selection.
    pub hi: f64,
    pub width: f64,
}

impl RamseySelection {
    pub(crate) fn over(d: &[Vec<f64>], indices: Vec<usize>) -> Self {
        let (lo, hi) = range(d, &indices);
        RamseySelection {
            indices,
            lo,
            hi,
            width: hi - lo,
        }
    }
}

pub(crate) fn range(d: &[Vec<f64>], idx: &[usize]) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for (a, &i) in idx.iter().enumerate() {
        for &j in &idx[a + 1..] {
            lo = lo.min(d[i][j]);
            hi = hi.max(d[i][j]);
        }
    }
    (lo, hi)
}

pub(crate) fn check_matrix(d: &[Vec<f64>]) -> Result<()> {
    let n = d.len();
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "distance matrix needs at least 2 points, got {n}"
        )));
    }
    for (i, row) in d.iter().enumerate() {
        if row.len() != n {
            return Err(Error::DimensionMismatch {
                context: "distance matrix row",
                expected: n,
                got: row.len(),
            });
        }
        if row[i] != 0.0 {
            return Err(Error::InvalidArgument(format!("nonzero diagonal entry at {i}")));
        }
        for (j, &v) in row.iter().enumerate() {
            if !v.is_finite() || v < 0.0 || v != d[j][i] {
                return Err(Error::InvalidArgument(format!(
                    "entry ({i},{j}) is negative, non-finite or asymmetric"
                )));
            }
        }
    }
    Ok(())
}

/// One bisection step: the largest subset of `current` whose pairwise
/// distances lie in one half of `[lo, hi]`; ties go to the lower half.
pub(crate) fn bisect(d: &[Vec<f64>], current: &[usize]) -> Vec<usize> {
    let (lo, hi) = range(d, current);
    let mid = 0.5 * (lo + hi);
    let half = |a: f64, b: f64| -> Vec<usize> {
        let g = Graph::from_fn(current.len(), |i, j| {
            let v = d[current[i]][current[j]];
            v >= a && v <= b
        });
        g.max_clique(None).into_iter().map(|k| current[k]).collect()
    };
    let lower = half(lo, mid);
    let upper = half(mid, hi);
    if upper.len() > lower.len() {
        upper
    } else {
        lower
    }
}

/// Repeatedly bisects the distance interval of the current selection, keeping
/// the larger compatible half, until the width is at most `target_width` or
/// only two indices remain.
pub fn ramsey_extract(d: &[Vec<f64>], target_width: f64) -> Result<RamseySelection> {
    check_matrix(d)?;
    if !(target_width >= 0.0) {
        return Err(Error::InvalidArgument(format!("target width {target_width} is negative")));
    }
    let mut current: Vec<usize> = (0..d.len()).collect();
    loop {
        let (lo, hi) = range(d, &current);
        if hi - lo <= target_width || current.len() <= 2 {
            return Ok(RamseySelection::over(d, current));
        }
        current = bisect(d, &current);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn equal_distances_keep_everything() {
        let d: Vec<Vec<f64>> = (0..5).map(|i| (0..5).map(|j| if i == j { 0.0 } else { 1.5 }).collect()).collect();
        let s = ramsey_extract(&d, 0.0).unwrap();
        assert_eq!(s.indices, vec![0, 1, 2, 3, 4]);
        assert_eq!(s.width, 0.0);
    }

    #[test]
    fn rejects_single_point_and_asymmetry() {
        assert!(ramsey_extract(&[vec![0.0]], 0.1).is_err());
        assert!(ramsey_extract(&[vec![0.0, 1.0], vec![2.0, 0.0]], 0.1).is_err());
    }
}
