//! One-parameter sweeps producing a value column and, where known, a reference column.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::constants;
use crate::error::{Error, Result};
use crate::solvers::{self, PackingMode, SolverConfig};
use crate::spaces::{pullback_embedding, NormedSpace, SpaceSpec, Subspace};

use super::known::{known_kottman, rotated_plane};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SweepParameter {
    #[serde(rename = "theta")]
    Theta,
    #[serde(rename = "eps")]
    Eps,
    #[serde(rename = "alpha")]
    Alpha,
    #[serde(rename = "p")]
    P,
    #[serde(rename = "N")]
    N,
}

impl SweepParameter {
    pub fn name(self) -> &'static str {
        match self {
            SweepParameter::Theta => "theta",
            SweepParameter::Eps => "eps",
            SweepParameter::Alpha => "alpha",
            SweepParameter::P => "p",
            SweepParameter::N => "N",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Experiment {
    /// theta: Kottman estimate of the Calderón interpolant of `(x0, x1)`.
    Interpolation {
        x0: SpaceSpec,
        x1: SpaceSpec,
        n_points: usize,
        mode: PackingMode,
    },
    /// theta: `T_N(X_theta) / (T_N(X0)^(1-theta) T_N(X1)^theta)`.
    ThicknessInterpolation { x0: SpaceSpec, x1: SpaceSpec, n_points: usize },
    /// eps: gap between the pullback renorming and `Y (+)_inf Z`.
    PullbackGap { base: SpaceSpec },
    /// alpha: gap between the coordinate plane of `lp(4, p)` and its rotation.
    RotatedPlanes {
        #[serde(with = "crate::spaces::exponent")]
        p: f64,
    },
    /// p: James constant of `lp(n, p)`.
    James { n: usize },
    /// N: Kottman estimate.
    Kottman { space: SpaceSpec, mode: PackingMode },
    /// N: sphere covering radius.
    Thickness { space: SpaceSpec },
    /// N: ball covering radius.
    Entropy { space: SpaceSpec },
}

impl Experiment {
    pub fn parameter(&self) -> SweepParameter {
        match self {
            Experiment::Interpolation { .. } | Experiment::ThicknessInterpolation { .. } => SweepParameter::Theta,
            Experiment::PullbackGap { .. } => SweepParameter::Eps,
            Experiment::RotatedPlanes { .. } => SweepParameter::Alpha,
            Experiment::James { .. } => SweepParameter::P,
            Experiment::Kottman { .. } | Experiment::Thickness { .. } | Experiment::Entropy { .. } => SweepParameter::N,
        }
    }

    pub fn value_label(&self) -> &'static str {
        match self {
            Experiment::Interpolation { mode, .. } => constants::ConstantKind::for_mode(mode).name(),
            Experiment::ThicknessInterpolation { .. } => "thickness_ratio",
            Experiment::PullbackGap { .. } | Experiment::RotatedPlanes { .. } => "gap",
            Experiment::James { .. } => "james",
            Experiment::Kottman { mode, .. } => constants::ConstantKind::for_mode(mode).name(),
            Experiment::Thickness { .. } => "thickness_N",
            Experiment::Entropy { .. } => "entropy_N",
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Experiment::Interpolation { .. } => "interpolation",
            Experiment::ThicknessInterpolation { .. } => "thickness_interpolation",
            Experiment::PullbackGap { .. } => "pullback_gap",
            Experiment::RotatedPlanes { .. } => "rotated_planes",
            Experiment::James { .. } => "james",
            Experiment::Kottman { .. } => "kottman",
            Experiment::Thickness { .. } => "thickness",
            Experiment::Entropy { .. } => "entropy",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub parameter: SweepParameter,
    /// Accepts `"inf"` entries, for exponent sweeps.
    #[serde(with = "grid")]
    pub grid: Vec<f64>,
    pub experiment: Experiment,
}

mod grid {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Value(#[serde(with = "crate::spaces::exponent")] f64);

    pub fn serialize<S: Serializer>(v: &[f64], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(|&x| Value(x)).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<f64>, D::Error> {
        Ok(Vec::<Value>::deserialize(d)?.into_iter().map(|v| v.0).collect())
    }
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if self.grid.is_empty() {
            return Err(Error::spec("grid", "sweep grid is empty"));
        }
        if self.grid.iter().any(|v| !v.is_finite() && !(self.parameter == SweepParameter::P && *v == f64::INFINITY)) {
            return Err(Error::spec("grid", "sweep grid has a non-finite value"));
        }
        let increasing = self.grid.windows(2).all(|w| w[0] < w[1]);
        let decreasing = self.grid.windows(2).all(|w| w[0] > w[1]);
        if !(increasing || decreasing) {
            return Err(Error::spec("grid", "sweep grid is not strictly monotone"));
        }
        if self.parameter != self.experiment.parameter() {
            return Err(Error::spec(
                "parameter",
                format!(
                    "experiment `{}` sweeps `{}`, not `{}`",
                    self.experiment.label(),
                    self.experiment.parameter().name(),
                    self.parameter.name()
                ),
            ));
        }
        match self.parameter {
            SweepParameter::N if self.grid.iter().any(|v| *v < 1.0 || v.fract() != 0.0) => {
                Err(Error::spec("grid", "N values must be positive integers"))
            }
            SweepParameter::Theta if self.grid.iter().any(|v| !(0.0..=1.0).contains(v)) => {
                Err(Error::spec("grid", "theta values must lie in [0,1]"))
            }
            SweepParameter::Eps if self.grid.iter().any(|v| *v <= 0.0) => Err(Error::spec("grid", "eps values must be positive")),
            SweepParameter::P if self.grid.iter().any(|v| *v < 1.0) => Err(Error::spec("grid", "p values must be at least 1")),
            _ => Ok(()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    #[serde(with = "crate::spaces::exponent")]
    pub param: f64,
    pub value: f64,
    pub reference: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepTable {
    pub parameter: SweepParameter,
    pub experiment: String,
    pub value_label: String,
    pub rows: Vec<SweepRow>,
}

pub fn run_sweep(spec: &SweepSpec, config: &SolverConfig) -> Result<SweepTable> {
    spec.validate()?;
    let exp = &spec.experiment;
    let rows: Vec<SweepRow> = spec
        .grid
        .par_iter()
        .map(|&t| evaluate(exp, t, config).map(|(value, reference)| SweepRow { param: t, value, reference }))
        .collect::<Result<_>>()?;
    Ok(SweepTable {
        parameter: spec.parameter,
        experiment: exp.label().to_string(),
        value_label: exp.value_label().to_string(),
        rows,
    })
}

fn evaluate(exp: &Experiment, t: f64, config: &SolverConfig) -> Result<(f64, Option<f64>)> {
    match exp {
        Experiment::Interpolation { x0, x1, n_points, mode } => {
            let space = NormedSpace::build(&SpaceSpec::interpolated(x0.clone(), x1.clone(), t))?;
            let v = constants::kottman(&space, *n_points, mode, config)?.value;
            Ok((v, known_kottman(&space, *n_points, mode)))
        }
        Experiment::ThicknessInterpolation { x0, x1, n_points } => {
            let th = |s: &SpaceSpec| -> Result<f64> {
                Ok(constants::thickness(&NormedSpace::build(s)?, *n_points, config)?.value)
            };
            let mid = th(&SpaceSpec::interpolated(x0.clone(), x1.clone(), t))?;
            Ok((mid / (th(x0)?.powf(1.0 - t) * th(x1)?.powf(t)), None))
        }
        Experiment::PullbackGap { base } => {
            let (ambient, pb, split) = pullback_embedding(base, t)?;
            let amb = NormedSpace::build(&ambient)?;
            let m = Subspace::from_space(&amb, pb)?;
            let l = Subspace::from_space(&amb, split)?;
            Ok((solvers::subspace_gap(&m, &l, config)?.g, Some(t)))
        }
        Experiment::RotatedPlanes { p } => {
            let amb = NormedSpace::build(&SpaceSpec::lp(4, *p))?;
            let m = Subspace::from_space(&amb, rotated_plane(0.0))?;
            let l = Subspace::from_space(&amb, rotated_plane(t))?;
            let reference = (*p == 2.0).then(|| t.sin());
            Ok((solvers::subspace_gap(&m, &l, config)?.g, reference))
        }
        Experiment::James { n } => {
            let space = NormedSpace::build(&SpaceSpec::lp(*n, t))?;
            let (j, _) = constants::james_constants(&space, config)?;
            let reference = (*n == 2).then(|| {
                let inv = if t.is_infinite() { 0.0 } else { 1.0 / t };
                2f64.powf(inv).max(2f64.powf(1.0 - inv))
            });
            Ok((j.value, reference))
        }
        Experiment::Kottman { space, mode } => {
            let space = NormedSpace::build(space)?;
            let n = t as usize;
            Ok((constants::kottman(&space, n, mode, config)?.value, known_kottman(&space, n, mode)))
        }
        Experiment::Thickness { space } => {
            let reference = matches!(space, SpaceSpec::Lp { n: 2, p } if *p == 2.0)
                .then(|| 2.0 * (std::f64::consts::PI / (2.0 * t)).sin());
            let space = NormedSpace::build(space)?;
            Ok((constants::thickness(&space, t as usize, config)?.value, reference))
        }
        Experiment::Entropy { space } => {
            let space = NormedSpace::build(space)?;
            let reference = (t == 1.0).then_some(1.0);
            Ok((constants::entropy_covering(&space, t as usize, config)?.value, reference))
        }
    }
}
