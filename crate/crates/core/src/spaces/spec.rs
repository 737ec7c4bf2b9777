//! Declarative description of a finite-dimensional (quasi)normed space.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Constructor tree for a space. Serialized with a `kind` tag.
///
/// ```
/// use bcl::spaces::SpaceSpec;
/// let spec: SpaceSpec = serde_json::from_str(r#"{"kind":"lp","n":3,"p":"inf"}"#).unwrap();
/// assert_eq!(spec.dim().unwrap(), 3);
/// ```
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SpaceSpec {
    Lp {
        n: usize,
        #[serde(with = "exponent")]
        p: f64,
    },
    WeightedLp {
        n: usize,
        #[serde(with = "exponent")]
        p: f64,
        weights: Vec<f64>,
    },
    /// Norm `max_i |<f_i, x>|`.
    Polyhedral {
        n: usize,
        functionals: Vec<Vec<f64>>,
    },
    /// Calderón product `prod_j X_j^{a_j}` of coordinate spaces on the same index set.
    Calderon {
        factors: Vec<SpaceSpec>,
        weights_a: Vec<f64>,
    },
    DirectSum {
        #[serde(with = "exponent")]
        outer: f64,
        summands: Vec<SpaceSpec>,
    },
    /// `lambda(X)`: blocks `x = (x_1, .., x_m)` with `x_r` in `inner`, normed by
    /// `|| (||x_r||_inner)_r ||_lambda`. Coordinates are block-major.
    VectorSum {
        lambda: Box<SpaceSpec>,
        inner: Box<SpaceSpec>,
    },
    /// Kalton-Peck quasinorm `||(y, x)|| = ||y - eps Omega(x)||_2 + ||x||_2` on `R^n x R^n`.
    TwistedKp { n: usize, eps: f64 },
    /// Pullback renorming of a `2n`-dimensional base along the tail projection.
    Pullback { base: Box<SpaceSpec>, eps: f64 },
    Subspace {
        ambient: Box<SpaceSpec>,
        basis: Vec<Vec<f64>>,
    },
    /// Banach dual of `inner`.
    Dual { inner: Box<SpaceSpec> },
}

impl SpaceSpec {
    pub fn lp(n: usize, p: f64) -> Self {
        SpaceSpec::Lp { n, p }
    }

    pub fn weighted_lp(n: usize, p: f64, weights: Vec<f64>) -> Self {
        SpaceSpec::WeightedLp { n, p, weights }
    }

    pub fn polyhedral(functionals: Vec<Vec<f64>>) -> Self {
        let n = functionals.first().map_or(0, |f| f.len());
        SpaceSpec::Polyhedral { n, functionals }
    }

    pub fn calderon(factors: Vec<SpaceSpec>, weights_a: Vec<f64>) -> Self {
        SpaceSpec::Calderon { factors, weights_a }
    }

    /// Two-factor Calderón product `X0^{1-theta} X1^theta`; the endpoints
    /// collapse to the factor itself.
    pub fn interpolated(x0: SpaceSpec, x1: SpaceSpec, theta: f64) -> Self {
        if theta <= 0.0 {
            x0
        } else if theta >= 1.0 {
            x1
        } else {
            SpaceSpec::calderon(vec![x0, x1], vec![1.0 - theta, theta])
        }
    }

    pub fn direct_sum(outer: f64, summands: Vec<SpaceSpec>) -> Self {
        SpaceSpec::DirectSum { outer, summands }
    }

    pub fn vector_sum(lambda: SpaceSpec, inner: SpaceSpec) -> Self {
        SpaceSpec::VectorSum {
            lambda: Box::new(lambda),
            inner: Box::new(inner),
        }
    }

    pub fn twisted_kp(n: usize, eps: f64) -> Self {
        SpaceSpec::TwistedKp { n, eps }
    }

    pub fn pullback(base: SpaceSpec, eps: f64) -> Self {
        SpaceSpec::Pullback {
            base: Box::new(base),
            eps,
        }
    }

    pub fn subspace(ambient: SpaceSpec, basis: Vec<Vec<f64>>) -> Self {
        SpaceSpec::Subspace {
            ambient: Box::new(ambient),
            basis,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            SpaceSpec::Lp { .. } => "lp",
            SpaceSpec::WeightedLp { .. } => "weighted_lp",
            SpaceSpec::Polyhedral { .. } => "polyhedral",
            SpaceSpec::Calderon { .. } => "calderon",
            SpaceSpec::DirectSum { .. } => "direct_sum",
            SpaceSpec::VectorSum { .. } => "vector_sum",
            SpaceSpec::TwistedKp { .. } => "twisted_kp",
            SpaceSpec::Pullback { .. } => "pullback",
            SpaceSpec::Subspace { .. } => "subspace",
            SpaceSpec::Dual { .. } => "dual",
        }
    }

    /// Dimension implied by the tree, validating consistency on the way.
    pub fn dim(&self) -> Result<usize> {
        match self {
            SpaceSpec::Lp { n, .. } | SpaceSpec::WeightedLp { n, .. } => Ok(*n),
            SpaceSpec::Polyhedral { n, .. } => Ok(*n),
            SpaceSpec::Calderon { factors, .. } => {
                let first = factors
                    .first()
                    .ok_or_else(|| Error::spec("factors", "at least one factor required"))?;
                first.dim()
            }
            SpaceSpec::DirectSum { summands, .. } => {
                summands.iter().map(|s| s.dim()).sum::<Result<usize>>()
            }
            SpaceSpec::VectorSum { lambda, inner } => Ok(lambda.dim()? * inner.dim()?),
            SpaceSpec::TwistedKp { n, .. } => Ok(2 * n),
            SpaceSpec::Pullback { base, .. } => base.dim(),
            SpaceSpec::Subspace { basis, .. } => Ok(basis.len()),
            SpaceSpec::Dual { inner } => inner.dim(),
        }
    }

    /// Checks the structural invariants that do not need numerics.
    pub fn validate(&self) -> Result<()> {
        match self {
            SpaceSpec::Lp { n, p } => {
                check_n(*n, "n")?;
                check_p(*p, "p")
            }
            SpaceSpec::WeightedLp { n, p, weights } => {
                check_n(*n, "n")?;
                check_p(*p, "p")?;
                if weights.len() != *n {
                    return Err(Error::spec(
                        "weights",
                        format!("expected {n} weights, got {}", weights.len()),
                    ));
                }
                if let Some(w) = weights.iter().find(|w| !(w.is_finite() && **w > 0.0)) {
                    return Err(Error::spec("weights", format!("weight {w} is not positive")));
                }
                Ok(())
            }
            SpaceSpec::Polyhedral { n, functionals } => {
                check_n(*n, "n")?;
                if functionals.is_empty() {
                    return Err(Error::spec("functionals", "empty functional list"));
                }
                for f in functionals {
                    if f.len() != *n {
                        return Err(Error::spec(
                            "functionals",
                            format!("functional of length {} in dimension {n}", f.len()),
                        ));
                    }
                    if f.iter().any(|v| !v.is_finite()) {
                        return Err(Error::spec("functionals", "non-finite entry"));
                    }
                }
                Ok(())
            }
            SpaceSpec::Calderon { factors, weights_a } => {
                if factors.is_empty() {
                    return Err(Error::spec("factors", "at least one factor required"));
                }
                if factors.len() != weights_a.len() {
                    return Err(Error::spec(
                        "weights_a",
                        format!("{} weights for {} factors", weights_a.len(), factors.len()),
                    ));
                }
                if let Some(a) = weights_a.iter().find(|a| !(a.is_finite() && **a > 0.0)) {
                    return Err(Error::spec("weights_a", format!("weight {a} is not positive")));
                }
                let total: f64 = weights_a.iter().sum();
                if (total - 1.0).abs() > 1e-12 {
                    return Err(Error::spec(
                        "weights_a",
                        format!("weights sum to {total}, expected 1"),
                    ));
                }
                let n = factors[0].dim()?;
                for f in factors {
                    f.validate()?;
                    if f.dim()? != n {
                        return Err(Error::spec(
                            "factors",
                            format!("factor dimension {} differs from {n}", f.dim()?),
                        ));
                    }
                    if !f.is_coordinate() {
                        return Err(Error::spec(
                            "factors",
                            format!("factor of kind `{}` is not a coordinate space", f.kind()),
                        ));
                    }
                }
                Ok(())
            }
            SpaceSpec::DirectSum { outer, summands } => {
                check_p(*outer, "outer")?;
                if summands.is_empty() {
                    return Err(Error::spec("summands", "at least one summand required"));
                }
                summands.iter().try_for_each(|s| s.validate())
            }
            SpaceSpec::VectorSum { lambda, inner } => {
                lambda.validate()?;
                inner.validate()?;
                if !lambda.is_coordinate() {
                    return Err(Error::spec("lambda", "lambda must be a coordinate space"));
                }
                Ok(())
            }
            SpaceSpec::TwistedKp { n, eps } => {
                check_n(*n, "n")?;
                if !(eps.is_finite() && *eps >= 0.0) {
                    return Err(Error::spec("eps", format!("eps {eps} must be >= 0")));
                }
                Ok(())
            }
            SpaceSpec::Pullback { base, eps } => {
                base.validate()?;
                let d = base.dim()?;
                if d % 2 != 0 || d == 0 {
                    return Err(Error::spec(
                        "base",
                        format!("base dimension {d} is not even and positive"),
                    ));
                }
                if !(eps.is_finite() && *eps > 0.0) {
                    return Err(Error::spec("eps", format!("eps {eps} must be > 0")));
                }
                Ok(())
            }
            SpaceSpec::Subspace { ambient, basis } => {
                ambient.validate()?;
                let d = ambient.dim()?;
                if basis.is_empty() {
                    return Err(Error::spec("basis", "empty basis"));
                }
                for b in basis {
                    if b.len() != d {
                        return Err(Error::spec(
                            "basis",
                            format!("basis vector of length {} in ambient dimension {d}", b.len()),
                        ));
                    }
                    if b.iter().any(|v| !v.is_finite()) {
                        return Err(Error::spec("basis", "non-finite entry"));
                    }
                }
                Ok(())
            }
            SpaceSpec::Dual { inner } => inner.validate(),
        }
    }

    /// Whether the tree contains a quasinormed constructor.
    pub fn has_quasinorm(&self) -> bool {
        match self {
            SpaceSpec::TwistedKp { .. } => true,
            SpaceSpec::Calderon { factors: v, .. } | SpaceSpec::DirectSum { summands: v, .. } => {
                v.iter().any(|s| s.has_quasinorm())
            }
            SpaceSpec::VectorSum { lambda, inner } => {
                lambda.has_quasinorm() || inner.has_quasinorm()
            }
            SpaceSpec::Pullback { base: s, .. }
            | SpaceSpec::Subspace { ambient: s, .. }
            | SpaceSpec::Dual { inner: s } => s.has_quasinorm(),
            _ => false,
        }
    }

    /// Whether this is a coordinate (Koethe) space: lattice norm, monotone in `|x_i|`.
    pub fn is_coordinate(&self) -> bool {
        match self {
            SpaceSpec::Lp { .. } | SpaceSpec::WeightedLp { .. } => true,
            SpaceSpec::Calderon { factors, .. } => factors.iter().all(|f| f.is_coordinate()),
            SpaceSpec::VectorSum { lambda, inner } => {
                lambda.is_coordinate() && inner.is_coordinate()
            }
            SpaceSpec::DirectSum { summands, .. } => summands.iter().all(|s| s.is_coordinate()),
            SpaceSpec::Dual { inner } => inner.is_coordinate(),
            _ => false,
        }
    }
}

fn check_n(n: usize, field: &str) -> Result<()> {
    if n == 0 {
        return Err(Error::spec(field, "dimension must be positive"));
    }
    Ok(())
}

fn check_p(p: f64, field: &str) -> Result<()> {
    if !(p >= 1.0) || p.is_nan() {
        return Err(Error::spec(field, format!("exponent {p} outside [1, inf]")));
    }
    Ok(())
}

/// Conjugate exponent with `1* = inf` and `inf* = 1`.
pub fn conjugate(p: f64) -> f64 {
    if p == 1.0 {
        f64::INFINITY
    } else if p.is_infinite() {
        1.0
    } else {
        p / (p - 1.0)
    }
}

/// Exponents in `[1, inf]`; infinity travels as the string `"inf"`.
pub mod exponent {
    use serde::de::{self, Visitor};
    use serde::{Deserializer, Serializer};
    use std::fmt;

    pub fn serialize<S: Serializer>(p: &f64, s: S) -> Result<S::Ok, S::Error> {
        if p.is_infinite() {
            s.serialize_str("inf")
        } else {
            s.serialize_f64(*p)
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = f64;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a number >= 1 or the string \"inf\"")
            }
            fn visit_f64<E: de::Error>(self, v: f64) -> Result<f64, E> {
                Ok(v)
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<f64, E> {
                Ok(v as f64)
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<f64, E> {
                Ok(v as f64)
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<f64, E> {
                match v.trim().to_ascii_lowercase().as_str() {
                    "inf" | "infinity" | "∞" => Ok(f64::INFINITY),
                    other => other
                        .parse::<f64>()
                        .map_err(|_| E::custom(format!("bad exponent `{v}`"))),
                }
            }
        }
        d.deserialize_any(V)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip_keeps_infinity() {
        let spec = SpaceSpec::direct_sum(
            f64::INFINITY,
            vec![SpaceSpec::lp(2, 1.0), SpaceSpec::lp(3, f64::INFINITY)],
        );
        let text = serde_json::to_string(&spec).unwrap();
        assert!(text.contains("\"outer\":\"inf\""));
        let back: SpaceSpec = serde_json::from_str(&text).unwrap();
        assert_eq!(back, spec);
        assert_eq!(back.dim().unwrap(), 5);
    }

    #[test]
    fn rejects_bad_calderon_weights() {
        let spec = SpaceSpec::calderon(vec![SpaceSpec::lp(3, 1.0), SpaceSpec::lp(3, 2.0)], vec![0.5, 0.6]);
        let err = spec.validate().unwrap_err();
        assert!(matches!(err, Error::InvalidSpec { ref field, .. } if field == "weights_a"));
    }

    #[test]
    fn rejects_zero_weights_and_mismatched_factors() {
        assert!(SpaceSpec::weighted_lp(2, 2.0, vec![1.0, 0.0]).validate().is_err());
        let spec = SpaceSpec::calderon(vec![SpaceSpec::lp(3, 1.0), SpaceSpec::lp(4, 2.0)], vec![0.5, 0.5]);
        assert!(spec.validate().is_err());
    }

    #[test]
    fn conjugate_handles_endpoints() {
        assert!(conjugate(1.0).is_infinite());
        assert_eq!(conjugate(f64::INFINITY), 1.0);
        assert!((conjugate(3.0) - 1.5).abs() < 1e-15);
    }
}
