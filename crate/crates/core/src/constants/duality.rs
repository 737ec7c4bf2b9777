//! Duality certificate: from an Auerbach system, every pair satisfies
//! `<x*_i - x*_j, x_i - x_j> = 2`, so `||x_i - x_j|| * ||x*_i - x*_j||_* >= 2`.
//! A joint Ramsey selection with both distance ranges of width at most `w`
//! then gives `(k + w)(k* + w) >= 2` for the minimal distances `k`, `k*`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::solvers::{auerbach, AuerbachSystem, SolverConfig};
use crate::spaces::NormedSpace;

use super::ramsey::{bisect, range, RamseySelection};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DualityCertificate {
    pub primal: RamseySelection,
    pub dual: RamseySelection,
    /// Smallest primal distance among the selection.
    pub k: f64,
    /// Smallest dual distance among the selection.
    pub k_star: f64,
    /// `max(primal width, dual width)`
    pub width: f64,
    pub product_lower: f64,
    /// `(k + width) * (k_star + width)`
    pub certified_product: f64,
    /// Smallest `||x_i - x_j|| * ||x*_i - x*_j||_*` over selected pairs.
    pub min_pair_product: f64,
    pub system: AuerbachSystem,
}

/// Certificate with target width `config.tol`.
pub fn duality_certificate(space: &NormedSpace, config: &SolverConfig) -> Result<DualityCertificate> {
    duality_certificate_with_width(space, config.tol, config)
}

pub fn duality_certificate_with_width(
    space: &NormedSpace,
    target_width: f64,
    config: &SolverConfig,
) -> Result<DualityCertificate> {
    if space.dim() < 2 {
        return Err(Error::InvalidArgument("duality certificate needs dimension at least 2".into()));
    }
    if !(target_width >= 0.0) {
        return Err(Error::InvalidArgument(format!("target width {target_width} is negative")));
    }
    let system = auerbach(space, config)?;
    let n = system.basis.len();
    let mut primal = vec![vec![0.0; n]; n];
    let mut dual = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let p = space.dist(&system.basis[i], &system.basis[j]);
            let q = space.support_point(&linalg::sub(&system.functionals[i], &system.functionals[j])).0;
            primal[i][j] = p;
            primal[j][i] = p;
            dual[i][j] = q;
            dual[j][i] = q;
        }
    }

    // alternate primal and dual bisection on one shared index set
    let mut current: Vec<usize> = (0..n).collect();
    loop {
        let wp = spread(&primal, &current);
        let wd = spread(&dual, &current);
        if (wp <= target_width && wd <= target_width) || current.len() <= 2 {
            break;
        }
        if wp > target_width {
            current = bisect(&primal, &current);
        }
        if current.len() > 2 && spread(&dual, &current) > target_width {
            current = bisect(&dual, &current);
        }
    }

    let primal_sel = RamseySelection::over(&primal, current.clone());
    let dual_sel = RamseySelection::over(&dual, current.clone());
    let mut min_pair_product = f64::INFINITY;
    for (a, &i) in current.iter().enumerate() {
        for &j in &current[a + 1..] {
            min_pair_product = min_pair_product.min(primal[i][j] * dual[i][j]);
        }
    }
    let k = primal_sel.lo;
    let k_star = dual_sel.lo;
    let width = primal_sel.width.max(dual_sel.width);
    Ok(DualityCertificate {
        primal: primal_sel,
        dual: dual_sel,
        k,
        k_star,
        width,
        product_lower: k * k_star,
        certified_product: (k + width) * (k_star + width),
        min_pair_product,
        system,
    })
}

fn spread(d: &[Vec<f64>], idx: &[usize]) -> f64 {
    let (lo, hi) = range(d, idx);
    hi - lo
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaces::{polyhedral, SpaceSpec};

    #[test]
    fn lp_basis_gives_exactly_two() {
        let s = NormedSpace::build(&SpaceSpec::lp(4, 3.0)).unwrap();
        let c = duality_certificate(&s, &SolverConfig::default()).unwrap();
        assert_eq!(c.primal.indices.len(), 4);
        assert!((c.product_lower - 2.0).abs() < 1e-9);
    }

    #[test]
    fn hexagon_certificate_holds() {
        let s = NormedSpace::build(&SpaceSpec::polyhedral(polyhedral::hexagon(0.4))).unwrap();
        let c = duality_certificate(&s, &SolverConfig::default()).unwrap();
        assert!(c.certified_product >= 2.0 - 1e-6);
        assert!(c.min_pair_product >= 2.0 - 1e-6);
    }
}
