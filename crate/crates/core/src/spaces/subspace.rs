//! Linear subspaces of a built ambient space.

use crate::error::{Error, Result};
use crate::linalg::{self, dot};

use super::engine::NormedSpace;
use super::spec::SpaceSpec;

/// Subspace spanned by `basis` inside `ambient`. The stored basis is the
/// Euclidean orthonormalization of the supplied vectors; subspace coordinates
/// refer to it.
#[derive(Debug, Clone)]
pub struct Subspace {
    ambient: NormedSpace,
    basis: Vec<Vec<f64>>,
    space: NormedSpace,
}

impl Subspace {
    pub fn new(ambient: &SpaceSpec, basis: Vec<Vec<f64>>) -> Result<Self> {
        Subspace::from_space(&NormedSpace::build(ambient)?, basis)
    }

    pub fn from_space(ambient: &NormedSpace, basis: Vec<Vec<f64>>) -> Result<Self> {
        let space = NormedSpace::build(&SpaceSpec::subspace(ambient.spec().clone(), basis.clone()))?;
        let q = linalg::orthonormalize(&basis, 1e-10)
            .ok_or_else(|| Error::spec("basis", "basis vectors are linearly dependent"))?;
        Ok(Subspace {
            ambient: ambient.clone(),
            basis: q,
            space,
        })
    }

    /// Builds from a `subspace` spec.
    pub fn from_spec(spec: &SpaceSpec) -> Result<Self> {
        match spec {
            SpaceSpec::Subspace { ambient, basis } => Subspace::new(ambient, basis.clone()),
            other => Err(Error::spec(
                "kind",
                format!("expected a subspace spec, got `{}`", other.kind()),
            )),
        }
    }

    pub fn ambient(&self) -> &NormedSpace {
        &self.ambient
    }

    pub fn basis(&self) -> &[Vec<f64>] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// The subspace as a normed space in its own coordinates.
    pub fn space(&self) -> &NormedSpace {
        &self.space
    }

    pub fn embed(&self, c: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.ambient.dim()];
        for (q, ci) in self.basis.iter().zip(c) {
            linalg::axpy(&mut out, *ci, q);
        }
        out
    }

    /// Coordinates of the orthogonal projection of `x` onto the subspace.
    pub fn coordinates(&self, x: &[f64]) -> Vec<f64> {
        self.basis.iter().map(|q| dot(q, x)).collect()
    }

    /// Membership by comparing `x` with its coordinate projection.
    pub fn contains(&self, x: &[f64], tol: f64) -> bool {
        let back = self.embed(&self.coordinates(x));
        linalg::norm2(&linalg::sub(x, &back)) <= tol * (1.0 + linalg::norm2(x))
    }

    pub fn same_ambient(&self, other: &Subspace) -> bool {
        self.ambient.spec() == other.ambient.spec()
    }
}
