//! Finite-dimensional normed spaces described by a [`SpaceSpec`] tree.

mod calderon;
mod duality;
mod engine;
mod kalton_peck;
pub mod polyhedral;
mod spec;
mod subspace;

pub use calderon::closed_form as calderon_closed_form;
pub use duality::{dual_space, koethe_dual, koethe_dual_spec};
pub use engine::{build_space, NormedSpace, SpaceMeta};
pub use kalton_peck::kalton_peck_omega;
pub use spec::{conjugate, exponent, SpaceSpec};
pub use subspace::Subspace;

use crate::error::{Error, Result};

/// Checked norm evaluation, same as [`NormedSpace::norm`].
pub fn norm(space: &NormedSpace, x: &[f64]) -> Result<f64> {
    space.norm(x)
}

/// Ambient space `base (+)_inf Z` hosting a pullback, where `Z` is the tail
/// coordinate space of `base`. Returns the ambient spec together with bases of
/// the embedded pullback `{((a, b), b / eps)}` and of `Y (+)_inf Z = {((a, 0), z)}`.
pub fn pullback_embedding(
    base: &SpaceSpec,
    eps: f64,
) -> Result<(SpaceSpec, Vec<Vec<f64>>, Vec<Vec<f64>>)> {
    base.validate()?;
    if !base.is_coordinate() {
        return Err(Error::NotCoordinate("pullback_embedding"));
    }
    if !(eps.is_finite() && eps > 0.0) {
        return Err(Error::spec("eps", format!("eps {eps} must be > 0")));
    }
    let d = base.dim()?;
    if d % 2 != 0 {
        return Err(Error::spec("base", format!("base dimension {d} is not even")));
    }
    let n = d / 2;
    let tail: Vec<Vec<f64>> = (n..d).map(|i| crate::linalg::unit(d, i)).collect();
    let ambient = SpaceSpec::direct_sum(
        f64::INFINITY,
        vec![base.clone(), SpaceSpec::subspace(base.clone(), tail)],
    );
    let total = d + n;
    let mut pb = Vec::with_capacity(d);
    let mut split = Vec::with_capacity(d);
    for i in 0..n {
        pb.push(crate::linalg::unit(total, i));
        split.push(crate::linalg::unit(total, i));
    }
    for k in 0..n {
        let mut v = vec![0.0; total];
        v[n + k] = 1.0;
        v[d + k] = 1.0 / eps;
        pb.push(v);
        split.push(crate::linalg::unit(total, d + k));
    }
    Ok((ambient, pb, split))
}
