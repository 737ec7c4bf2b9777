//! Auerbach systems: unit vectors with unit-norm biorthogonal functionals.
//!
//! A basis maximizing `|det(x_1, .., x_n)|` over the unit sphere is Auerbach.
//! The determinant is linear in each column, `det(.., y, ..) = det * <r_i, y>`
//! with `r_i` the `i`-th row of the inverse, so the column update
//! `x_i <- argmax_{||y|| <= 1} <r_i, y>` never decreases it. At a fixed point
//! every `r_i` attains its dual norm 1 at `x_i`, which is exactly the Auerbach
//! condition.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::sampling;
use crate::spaces::NormedSpace;

use super::config::SolverConfig;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuerbachSystem {
    pub basis: Vec<Vec<f64>>,
    /// Biorthogonal functionals `x*_i` with `<x*_i, x_j> = delta_ij`.
    pub functionals: Vec<Vec<f64>>,
    /// `max |<x*_i, x_j> - delta_ij|`
    pub residual: f64,
    /// `max |norm(x_i) - 1|`
    pub norm_error: f64,
    /// `max dual_norm(x*_i)`
    pub max_dual_norm: f64,
    pub determinant: f64,
    pub method: String,
}

pub fn auerbach(space: &NormedSpace, config: &SolverConfig) -> Result<AuerbachSystem> {
    config.validate()?;
    if space.is_quasinorm() {
        return Err(Error::Quasinorm("auerbach"));
    }
    let n = space.dim();
    if let Some((_, w)) = space.lp_parameters() {
        let basis: Vec<Vec<f64>> = (0..n).map(|i| linalg::scale(&linalg::unit(n, i), 1.0 / w[i])).collect();
        let functionals: Vec<Vec<f64>> = (0..n).map(|i| linalg::scale(&linalg::unit(n, i), w[i])).collect();
        return certify(space, basis, functionals, "closed form: scaled coordinate basis");
    }

    let restarts = config.restarts.clamp(1, 8);
    let mut best: Option<(f64, Vec<Vec<f64>>)> = None;
    for r in 0..restarts {
        let start: Vec<Vec<f64>> = if r == 0 {
            (0..n).map(|i| linalg::unit(n, i)).collect()
        } else {
            let mut rng = sampling::rng_for(config.seed ^ 0xa0e7, r as u64);
            (0..n).map(|_| sampling::gaussian_vec(&mut rng, n)).collect()
        };
        if let Some((det, cols)) = ascend(space, start, config.max_iters) {
            if best.as_ref().is_none_or(|b| det > b.0 * (1.0 + 1e-12)) {
                best = Some((det, cols));
            }
        }
    }
    let (_, basis) = best.ok_or_else(|| Error::NonConvergence("auerbach: no nonsingular start".into()))?;
    let inv = inverse_rows(&basis).ok_or_else(|| Error::NonConvergence("auerbach: singular basis".into()))?;
    certify(space, basis, inv, "determinant ascent by support-point column updates")
}

fn ascend(space: &NormedSpace, start: Vec<Vec<f64>>, max_sweeps: usize) -> Option<(f64, Vec<Vec<f64>>)> {
    let mut cols: Vec<Vec<f64>> = start
        .into_iter()
        .map(|v| {
            let nv = space.eval(&v);
            linalg::scale(&v, 1.0 / nv)
        })
        .collect();
    for _ in 0..max_sweeps.max(1) {
        let mut gain: f64 = 1.0;
        for i in 0..cols.len() {
            let rows = inverse_rows(&cols)?;
            let (value, y) = space.support_point(&rows[i]);
            if value > 1.0 + 1e-14 {
                gain = gain.max(value);
                cols[i] = y;
            }
        }
        if gain <= 1.0 + 1e-13 {
            break;
        }
    }
    let det = linalg::from_columns(&cols).determinant().abs();
    (det > 0.0).then_some((det, cols))
}

/// Rows of the inverse of the matrix whose columns are `cols`.
fn inverse_rows(cols: &[Vec<f64>]) -> Option<Vec<Vec<f64>>> {
    let m: DMatrix<f64> = linalg::from_columns(cols);
    let inv = m.try_inverse()?;
    Some((0..cols.len()).map(|i| inv.row(i).iter().cloned().collect()).collect())
}

fn certify(
    space: &NormedSpace,
    basis: Vec<Vec<f64>>,
    functionals: Vec<Vec<f64>>,
    method: &str,
) -> Result<AuerbachSystem> {
    let n = basis.len();
    let mut residual: f64 = 0.0;
    for (i, f) in functionals.iter().enumerate() {
        for (j, x) in basis.iter().enumerate() {
            let target = if i == j { 1.0 } else { 0.0 };
            residual = residual.max((linalg::dot(f, x) - target).abs());
        }
    }
    let norm_error = basis.iter().map(|x| (space.eval(x) - 1.0).abs()).fold(0.0, f64::max);
    let max_dual_norm = functionals
        .iter()
        .map(|f| space.support_point(f).0)
        .fold(0.0, f64::max);
    let determinant = linalg::from_columns(&basis).determinant().abs();
    if residual > 1e-9 || norm_error > 1e-9 || max_dual_norm > 1.0 + 1e-6 {
        return Err(Error::NonConvergence(format!(
            "auerbach certificate failed in dimension {n}: residual {residual:.2e}, \
             norm error {norm_error:.2e}, max dual norm {max_dual_norm:.8}"
        )));
    }
    Ok(AuerbachSystem {
        basis,
        functionals,
        residual,
        norm_error,
        max_dual_norm,
        determinant,
        method: method.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaces::{polyhedral, SpaceSpec};

    #[test]
    fn weighted_basis_is_scaled() {
        let s = NormedSpace::build(&SpaceSpec::weighted_lp(3, 1.0, vec![2.0, 1.0, 4.0])).unwrap();
        let a = auerbach(&s, &SolverConfig::default()).unwrap();
        assert_eq!(a.basis[0], vec![0.5, 0.0, 0.0]);
        assert_eq!(a.residual, 0.0);
        assert!((a.max_dual_norm - 1.0).abs() < 1e-12);
    }

    #[test]
    fn hexagon_system_is_biorthogonal() {
        let s = NormedSpace::build(&SpaceSpec::polyhedral(polyhedral::hexagon(0.2))).unwrap();
        let a = auerbach(&s, &SolverConfig::default()).unwrap();
        assert!(a.residual <= 1e-9);
        assert!(a.max_dual_norm <= 1.0 + 1e-9);
    }
}
