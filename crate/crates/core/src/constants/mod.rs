//! Named constants on top of the solvers, each tagged with the side of the
//! true value it bounds.

mod duality;
mod ramsey;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::solvers::{
    self, CoverTarget, CoveringResult, GapResult, PackingMode, PackingResult, SolverConfig, TwoPointMode,
    TwoPointResult,
};
use crate::spaces::{NormedSpace, Subspace};

pub use duality::{duality_certificate, duality_certificate_with_width, DualityCertificate};
pub use ramsey::{ramsey_extract, RamseySelection};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ConstantKind {
    #[serde(rename = "kottman_N")]
    Kottman,
    #[serde(rename = "kottman_symmetric_N")]
    KottmanSymmetric,
    #[serde(rename = "kottman_disjoint_N")]
    KottmanDisjoint,
    #[serde(rename = "thickness_N")]
    Thickness,
    #[serde(rename = "entropy_N")]
    Entropy,
    #[serde(rename = "james")]
    James,
    #[serde(rename = "g_james")]
    GJames,
    #[serde(rename = "gap")]
    Gap,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundSide {
    Lower,
    Upper,
    Heuristic,
}

impl ConstantKind {
    /// Side of the true value the estimate lies on. Packing and sup-type
    /// searches give lower bounds, covering and inf-type searches upper bounds,
    /// and the gap is a lower bound because its outer maximization is heuristic.
    pub fn bound_side(self) -> BoundSide {
        match self {
            ConstantKind::Kottman
            | ConstantKind::KottmanSymmetric
            | ConstantKind::KottmanDisjoint
            | ConstantKind::James
            | ConstantKind::Gap => BoundSide::Lower,
            ConstantKind::Thickness | ConstantKind::Entropy | ConstantKind::GJames => BoundSide::Upper,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ConstantKind::Kottman => "kottman_N",
            ConstantKind::KottmanSymmetric => "kottman_symmetric_N",
            ConstantKind::KottmanDisjoint => "kottman_disjoint_N",
            ConstantKind::Thickness => "thickness_N",
            ConstantKind::Entropy => "entropy_N",
            ConstantKind::James => "james",
            ConstantKind::GJames => "g_james",
            ConstantKind::Gap => "gap",
        }
    }

    pub fn for_mode(mode: &PackingMode) -> Self {
        match mode {
            PackingMode::Plain => ConstantKind::Kottman,
            PackingMode::Symmetric => ConstantKind::KottmanSymmetric,
            PackingMode::Disjoint(_) => ConstantKind::KottmanDisjoint,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstantEstimate {
    pub kind: ConstantKind,
    pub value: f64,
    pub bound_side: BoundSide,
    #[serde(rename = "N", skip_serializing_if = "Option::is_none", default)]
    pub n: Option<usize>,
    pub seed: u64,
    pub fingerprint: String,
    pub witnesses: Vec<Vec<f64>>,
    /// Solver-specific numbers such as probe resolution or directed gaps.
    #[serde(default)]
    pub extra: BTreeMap<String, f64>,
}

impl ConstantEstimate {
    fn new(kind: ConstantKind, value: f64, n: Option<usize>, config: &SolverConfig, witnesses: Vec<Vec<f64>>) -> Self {
        ConstantEstimate {
            kind,
            value,
            bound_side: kind.bound_side(),
            n,
            seed: config.seed,
            fingerprint: config.fingerprint(),
            witnesses,
            extra: BTreeMap::new(),
        }
    }

    pub fn from_packing(result: &PackingResult, config: &SolverConfig) -> Self {
        ConstantEstimate::new(
            ConstantKind::for_mode(&result.mode),
            result.separation,
            Some(result.points.len()),
            config,
            result.points.clone(),
        )
    }

    pub fn from_covering(result: &CoveringResult, config: &SolverConfig) -> Self {
        let kind = match result.target {
            CoverTarget::Sphere => ConstantKind::Thickness,
            CoverTarget::Ball => ConstantKind::Entropy,
        };
        let mut e = ConstantEstimate::new(kind, result.radius, Some(result.centers.len()), config, result.centers.clone());
        e.extra.insert("probe_resolution".into(), result.probe.resolution);
        e.extra.insert("certified_upper".into(), result.certified_upper());
        e.extra.insert("probe_count".into(), (result.probe.base_size + result.probe.adversarial.len()) as f64);
        e
    }

    pub fn from_two_point(result: &TwoPointResult, config: &SolverConfig) -> Self {
        let kind = match result.mode {
            TwoPointMode::James => ConstantKind::James,
            TwoPointMode::G => ConstantKind::GJames,
        };
        let mut e = ConstantEstimate::new(kind, result.value, None, config, vec![result.x.clone(), result.y.clone()]);
        e.extra.insert("norm_minus".into(), result.minus);
        e.extra.insert("norm_plus".into(), result.plus);
        e
    }

    pub fn from_gap(result: &GapResult, config: &SolverConfig) -> Self {
        let mut e = ConstantEstimate::new(
            ConstantKind::Gap,
            result.g,
            None,
            config,
            vec![
                result.witness_ml.point.clone(),
                result.witness_ml.approximant.clone(),
                result.witness_lm.point.clone(),
                result.witness_lm.approximant.clone(),
            ],
        );
        e.extra.insert("g_ml".into(), result.g_ml);
        e.extra.insert("g_lm".into(), result.g_lm);
        e
    }
}

/// Best `n_points`-point separation in the unit ball.
pub fn kottman(space: &NormedSpace, n_points: usize, mode: &PackingMode, config: &SolverConfig) -> Result<ConstantEstimate> {
    kottman_seeded(space, n_points, mode, config, &[])
}

pub fn kottman_seeded(
    space: &NormedSpace,
    n_points: usize,
    mode: &PackingMode,
    config: &SolverConfig,
    seeds: &[Vec<Vec<f64>>],
) -> Result<ConstantEstimate> {
    let r = solvers::maximin_packing_seeded(space, n_points, mode, config, seeds)?;
    let mut e = ConstantEstimate::from_packing(&r, config);
    if let Some(blocks) = &r.blocks {
        e.extra.insert("blocks".into(), blocks.len() as f64);
    }
    Ok(e)
}

/// Best `n_centers`-center covering radius of the unit sphere by sphere points.
pub fn thickness(space: &NormedSpace, n_centers: usize, config: &SolverConfig) -> Result<ConstantEstimate> {
    let r = solvers::covering(space, n_centers, CoverTarget::Sphere, config)?;
    Ok(ConstantEstimate::from_covering(&r, config))
}

/// Best `n_centers`-center covering radius of the unit ball by free centers.
pub fn entropy_covering(space: &NormedSpace, n_centers: usize, config: &SolverConfig) -> Result<ConstantEstimate> {
    let r = solvers::covering(space, n_centers, CoverTarget::Ball, config)?;
    Ok(ConstantEstimate::from_covering(&r, config))
}

/// `(Jm, g)`: a lower bound on the James constant and an upper bound on its lower counterpart.
pub fn james_constants(space: &NormedSpace, config: &SolverConfig) -> Result<(ConstantEstimate, ConstantEstimate)> {
    let j = solvers::two_point_constant(space, TwoPointMode::James, config)?;
    let g = solvers::two_point_constant(space, TwoPointMode::G, config)?;
    Ok((
        ConstantEstimate::from_two_point(&j, config),
        ConstantEstimate::from_two_point(&g, config),
    ))
}

pub fn gap(m: &Subspace, l: &Subspace, config: &SolverConfig) -> Result<ConstantEstimate> {
    let r = solvers::subspace_gap(m, l, config)?;
    Ok(ConstantEstimate::from_gap(&r, config))
}
