//! Exact finite-N values used on the right-hand side of asserted rows.

use crate::solvers::PackingMode;
use crate::spaces::NormedSpace;

/// Exact `N`-point constant of an unweighted (or uniformly weighted) lp space
/// when one is known:
/// - disjoint mode, `N <= n`: disjoint unit vectors give `2^(1/p)`, which is
///   also the largest distance between disjoint vectors of the ball;
/// - plain mode, `p = 1`, `N <= 2n` and `p = inf`, `N <= 2^n`: the diameter 2
///   is reached by signed basis or sign vectors;
/// - plain mode, `p = 2`: the regular simplex `sqrt(2N/(N-1))` for `N <= n+1`
///   and `sqrt(2)` for `n+2 <= N <= 2n` (at most `2n` points have pairwise
///   angles of at least 90 degrees, and the signed basis reaches it).
pub fn known_kottman(space: &NormedSpace, n_points: usize, mode: &PackingMode) -> Option<f64> {
    let (p, w) = space.lp_parameters()?;
    if w.iter().any(|v| (v - w[0]).abs() > 1e-15 * w[0]) || n_points < 2 {
        return None;
    }
    let n = space.dim();
    match mode {
        PackingMode::Disjoint(_) if n_points <= n => Some(if p.is_infinite() { 1.0 } else { 2f64.powf(1.0 / p) }),
        PackingMode::Plain => {
            if p == 1.0 && n_points <= 2 * n {
                Some(2.0)
            } else if p.is_infinite() && n < 31 && n_points <= 1usize << n {
                Some(2.0)
            } else if p == 2.0 && n_points <= n + 1 {
                Some((2.0 * n_points as f64 / (n_points - 1) as f64).sqrt())
            } else if p == 2.0 && n_points <= 2 * n {
                Some(2f64.sqrt())
            } else {
                None
            }
        }
        _ => None,
    }
}

/// Plane in R^4 spanned by `cos(a) e1 + sin(a) e3` and `cos(a) e2 + sin(a) e4`.
/// Both principal angles to the coordinate plane `span(e1, e2)` equal `a`.
pub fn rotated_plane(alpha: f64) -> Vec<Vec<f64>> {
    let (s, c) = alpha.sin_cos();
    vec![vec![c, 0.0, s, 0.0], vec![0.0, c, 0.0, s]]
}

/// The coordinate plane followed by its rotations by each angle.
pub fn rotated_planes(alphas: &[f64]) -> Vec<Vec<Vec<f64>>> {
    std::iter::once(rotated_plane(0.0))
        .chain(alphas.iter().map(|&a| rotated_plane(a)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaces::SpaceSpec;

    #[test]
    fn simplex_and_cross_values() {
        let e = NormedSpace::build(&SpaceSpec::lp(3, 2.0)).unwrap();
        assert_eq!(known_kottman(&e, 4, &PackingMode::Plain), Some((8.0f64 / 3.0).sqrt()));
        assert_eq!(known_kottman(&e, 6, &PackingMode::Plain), Some(2f64.sqrt()));
        assert_eq!(known_kottman(&e, 7, &PackingMode::Plain), None);
        let w = NormedSpace::build(&SpaceSpec::weighted_lp(3, 2.0, vec![1.0, 2.0, 1.0])).unwrap();
        assert_eq!(known_kottman(&w, 3, &PackingMode::Plain), None);
    }
}
