//! Banach duals and Koethe duals.

use crate::error::{Error, Result};

use super::engine::NormedSpace;
use super::polyhedral;
use super::spec::{conjugate, SpaceSpec};

/// Closed-form description of the dual when one exists.
pub(crate) fn closed_dual_spec(spec: &SpaceSpec) -> Result<Option<SpaceSpec>> {
    if spec.has_quasinorm() {
        return Err(Error::Quasinorm("dual_space"));
    }
    Ok(match spec {
        SpaceSpec::Lp { n, p } => Some(SpaceSpec::lp(*n, conjugate(*p))),
        SpaceSpec::WeightedLp { n, p, weights } => Some(SpaceSpec::weighted_lp(
            *n,
            conjugate(*p),
            weights.iter().map(|w| 1.0 / w).collect(),
        )),
        SpaceSpec::Polyhedral { n, functionals } => polyhedral::vertices(functionals, *n)
            .ok()
            .map(SpaceSpec::polyhedral),
        SpaceSpec::Calderon { factors, weights_a } => {
            super::calderon::closed_form(factors, weights_a).map(|(p, w)| {
                let n = w.len();
                SpaceSpec::weighted_lp(n, conjugate(p), w.iter().map(|v| 1.0 / v).collect())
            })
        }
        SpaceSpec::Dual { inner } => Some((**inner).clone()),
        _ => None,
    })
}

/// The dual space `X*` with `||f||* = max { <f, x> : ||x|| <= 1 }`.
///
/// Closed forms for lp families, exact vertex enumeration for polyhedral norms;
/// other spaces get a numerical support solve and are flagged heuristic.
pub fn dual_space(space: &NormedSpace) -> Result<NormedSpace> {
    match closed_dual_spec(space.spec())? {
        Some(spec) => NormedSpace::build(&spec),
        None => NormedSpace::build(&SpaceSpec::Dual {
            inner: Box::new(space.spec().clone()),
        }),
    }
}

/// Koethe dual spec of a coordinate space.
pub fn koethe_dual_spec(spec: &SpaceSpec) -> Result<SpaceSpec> {
    Ok(match spec {
        SpaceSpec::Lp { n, p } => SpaceSpec::lp(*n, conjugate(*p)),
        SpaceSpec::WeightedLp { n, p, weights } => SpaceSpec::weighted_lp(
            *n,
            conjugate(*p),
            weights.iter().map(|w| 1.0 / w).collect(),
        ),
        SpaceSpec::Calderon { factors, weights_a } => SpaceSpec::calderon(
            factors.iter().map(koethe_dual_spec).collect::<Result<_>>()?,
            weights_a.clone(),
        ),
        SpaceSpec::DirectSum { outer, summands } => SpaceSpec::direct_sum(
            conjugate(*outer),
            summands.iter().map(koethe_dual_spec).collect::<Result<_>>()?,
        ),
        SpaceSpec::VectorSum { lambda, inner } => {
            SpaceSpec::vector_sum(koethe_dual_spec(lambda)?, koethe_dual_spec(inner)?)
        }
        SpaceSpec::Dual { inner } if inner.is_coordinate() => (**inner).clone(),
        _ => return Err(Error::NotCoordinate("koethe_dual")),
    })
}

/// Koethe dual `X^x` of a coordinate space.
pub fn koethe_dual(space: &NormedSpace) -> Result<NormedSpace> {
    NormedSpace::build(&koethe_dual_spec(space.spec())?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lp_duals_are_conjugate() {
        let d = dual_space(&NormedSpace::build(&SpaceSpec::lp(4, 3.0)).unwrap()).unwrap();
        assert_eq!(d.spec(), &SpaceSpec::lp(4, 1.5));
        let d = dual_space(&NormedSpace::build(&SpaceSpec::lp(4, 1.0)).unwrap()).unwrap();
        assert_eq!(d.spec(), &SpaceSpec::lp(4, f64::INFINITY));
    }

    #[test]
    fn twisted_has_no_dual() {
        let t = NormedSpace::build(&SpaceSpec::twisted_kp(2, 0.5)).unwrap();
        assert!(matches!(dual_space(&t), Err(Error::Quasinorm(_))));
    }

    #[test]
    fn koethe_dual_rejects_polyhedral() {
        let s = NormedSpace::build(&SpaceSpec::polyhedral(polyhedral::hexagon(0.0))).unwrap();
        assert!(matches!(koethe_dual(&s), Err(Error::NotCoordinate(_))));
    }
}
