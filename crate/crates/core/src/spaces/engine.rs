//! Compiled spaces: norm and subgradient evaluation.

use crate::convex::{self, EllipsoidOptions};
use crate::error::{Error, Result};
use crate::linalg::{self, dot, norm2};
use crate::sampling;

use super::calderon::CalderonSolver;
use super::kalton_peck::omega_unchecked;
use super::polyhedral;
use super::spec::SpaceSpec;

/// Metadata recorded on a built space.
#[derive(Debug, Clone, PartialEq)]
pub struct SpaceMeta {
    /// Norm values come from a numerical inner solve that is not certified exact.
    pub heuristic: bool,
    /// Tolerance of the inner solver, when there is one.
    pub solver_tol: Option<f64>,
}

/// A finite-dimensional normed (or quasinormed) space built from a [`SpaceSpec`].
///
/// Immutable after construction; evaluation is pure and thread-safe.
#[derive(Debug, Clone)]
pub struct NormedSpace {
    spec: SpaceSpec,
    dim: usize,
    engine: Engine,
    quasinorm_constant: f64,
    euclid_radius: f64,
    meta: SpaceMeta,
}

#[derive(Debug, Clone)]
pub(crate) enum Engine {
    Lp {
        p: f64,
    },
    WeightedLp {
        p: f64,
        w: Vec<f64>,
    },
    Polyhedral {
        f: Vec<Vec<f64>>,
        /// Vertices of the unit ball, one per antipodal pair, when enumeration fits the budget.
        vertices: Option<Vec<Vec<f64>>>,
    },
    Calderon {
        closed: Option<(f64, Vec<f64>)>,
        solver: Box<CalderonSolver>,
    },
    DirectSum {
        outer: f64,
        parts: Vec<(usize, NormedSpace)>,
    },
    VectorSum {
        lambda: Box<NormedSpace>,
        inner: Box<NormedSpace>,
    },
    Twisted {
        n: usize,
        eps: f64,
    },
    Pullback {
        base: Box<NormedSpace>,
        eps: f64,
        half: usize,
        lattice: bool,
    },
    Subspace {
        ambient: Box<NormedSpace>,
        q: Vec<Vec<f64>>,
    },
    NumericDual {
        inner: Box<NormedSpace>,
    },
}

/// Builds a space, validating the spec first.
pub fn build_space(spec: &SpaceSpec) -> Result<NormedSpace> {
    NormedSpace::build(spec)
}

impl NormedSpace {
    pub fn build(spec: &SpaceSpec) -> Result<Self> {
        spec.validate()?;
        let dim = spec.dim()?;
        let mut meta = SpaceMeta {
            heuristic: false,
            solver_tol: None,
        };
        let engine = match spec {
            SpaceSpec::Lp { p, .. } => Engine::Lp { p: *p },
            SpaceSpec::WeightedLp { p, weights, .. } => Engine::WeightedLp {
                p: *p,
                w: weights.clone(),
            },
            SpaceSpec::Polyhedral { n, functionals } => {
                if linalg::rank(functionals, *n, 1e-10) < *n {
                    return Err(Error::spec(
                        "functionals",
                        "functionals do not span the dual, the result would not be a norm",
                    ));
                }
                Engine::Polyhedral {
                    f: functionals.clone(),
                    vertices: polyhedral::vertices(functionals, *n).ok(),
                }
            }
            SpaceSpec::Calderon { factors, weights_a } => {
                let built = factors
                    .iter()
                    .map(NormedSpace::build)
                    .collect::<Result<Vec<_>>>()?;
                let solver = CalderonSolver::new(built, weights_a.clone());
                meta.solver_tol = Some(solver.tol());
                Engine::Calderon {
                    closed: super::calderon::closed_form(factors, weights_a),
                    solver: Box::new(solver),
                }
            }
            SpaceSpec::DirectSum { outer, summands } => {
                let mut parts = Vec::with_capacity(summands.len());
                let mut offset = 0;
                for s in summands {
                    let space = NormedSpace::build(s)?;
                    meta.heuristic |= space.meta.heuristic;
                    let d = space.dim;
                    parts.push((offset, space));
                    offset += d;
                }
                Engine::DirectSum {
                    outer: *outer,
                    parts,
                }
            }
            SpaceSpec::VectorSum { lambda, inner } => {
                let lambda = NormedSpace::build(lambda)?;
                let inner = NormedSpace::build(inner)?;
                meta.heuristic |= lambda.meta.heuristic || inner.meta.heuristic;
                Engine::VectorSum {
                    lambda: Box::new(lambda),
                    inner: Box::new(inner),
                }
            }
            SpaceSpec::TwistedKp { n, eps } => Engine::Twisted { n: *n, eps: *eps },
            SpaceSpec::Pullback { base, eps } => {
                let lattice = base.is_coordinate();
                let base = NormedSpace::build(base)?;
                if base.is_quasinorm() {
                    return Err(Error::spec("base", "pullback base must be a genuine norm"));
                }
                meta.heuristic |= base.meta.heuristic || !lattice;
                let half = base.dim / 2;
                Engine::Pullback {
                    base: Box::new(base),
                    eps: *eps,
                    half,
                    lattice,
                }
            }
            SpaceSpec::Subspace { ambient, basis } => {
                let ambient = NormedSpace::build(ambient)?;
                let q = linalg::orthonormalize(basis, 1e-10).ok_or_else(|| {
                    Error::spec("basis", "basis vectors are linearly dependent")
                })?;
                meta.heuristic |= ambient.meta.heuristic;
                Engine::Subspace {
                    ambient: Box::new(ambient),
                    q,
                }
            }
            SpaceSpec::Dual { inner } => {
                let inner_space = NormedSpace::build(inner)?;
                if inner_space.is_quasinorm() {
                    return Err(Error::Quasinorm("dual_space"));
                }
                match super::duality::closed_dual_spec(inner)? {
                    Some(closed) => return NormedSpace::build(&closed).map(|mut s| {
                        s.spec = spec.clone();
                        s
                    }),
                    None => {
                        meta.heuristic = true;
                        meta.solver_tol = Some(1e-10);
                        Engine::NumericDual {
                            inner: Box::new(inner_space),
                        }
                    }
                }
            }
        };
        let mut space = NormedSpace {
            spec: spec.clone(),
            dim,
            engine,
            quasinorm_constant: 1.0,
            euclid_radius: 1.0,
            meta,
        };
        space.euclid_radius = space.compute_euclid_radius();
        if space.is_quasinorm() {
            space.quasinorm_constant = space.measure_quasinorm_constant();
        }
        Ok(space)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn spec(&self) -> &SpaceSpec {
        &self.spec
    }

    pub fn meta(&self) -> &SpaceMeta {
        &self.meta
    }

    /// 1 for genuine norms; measured constant `C` with `||u+v|| <= C(||u||+||v||)` otherwise.
    pub fn quasinorm_constant(&self) -> f64 {
        self.quasinorm_constant
    }

    pub fn is_quasinorm(&self) -> bool {
        self.spec.has_quasinorm()
    }

    pub fn is_coordinate(&self) -> bool {
        self.spec.is_coordinate()
    }

    /// Upper bound `R` with `|x|_2 <= R ||x||` (exact for lp families, sampled otherwise).
    pub fn euclid_radius(&self) -> f64 {
        self.euclid_radius
    }

    /// Checked norm evaluation.
    pub fn norm(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                context: "norm",
                expected: self.dim,
                got: x.len(),
            });
        }
        if x.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(self.eval(x))
    }

    /// Unchecked norm evaluation for hot loops.
    pub fn eval(&self, x: &[f64]) -> f64 {
        match &self.engine {
            Engine::Lp { p } => lp_eval(*p, x, None),
            Engine::WeightedLp { p, w } => lp_eval(*p, x, Some(w)),
            Engine::Polyhedral { f, .. } => f.iter().map(|fi| dot(fi, x).abs()).fold(0.0, f64::max),
            Engine::Calderon { closed, solver } => match closed {
                Some((p, w)) => lp_eval(*p, x, Some(w)),
                None => solver.norm(x),
            },
            Engine::DirectSum { outer, parts } => {
                let norms: Vec<f64> = parts
                    .iter()
                    .map(|(off, s)| s.eval(&x[*off..*off + s.dim]))
                    .collect();
                lp_eval(*outer, &norms, None)
            }
            Engine::VectorSum { lambda, inner } => {
                let k = inner.dim;
                let norms: Vec<f64> = x.chunks(k).map(|b| inner.eval(b)).collect();
                lambda.eval(&norms)
            }
            Engine::Twisted { n, eps } => {
                let (y, xs) = x.split_at(*n);
                let nx = norm2(xs);
                if nx == 0.0 {
                    return norm2(y);
                }
                let om = omega_unchecked(xs, nx);
                let r: f64 = y
                    .iter()
                    .zip(&om)
                    .map(|(a, b)| (a - eps * b).powi(2))
                    .sum::<f64>()
                    .sqrt();
                r + nx
            }
            Engine::Pullback {
                base,
                eps,
                half,
                lattice,
            } => {
                let whole = base.eval(x);
                let q = quotient_tail(base, &x[*half..], *half, *lattice);
                whole.max(q / eps)
            }
            Engine::Subspace { ambient, q } => ambient.eval(&combine(q, x)),
            Engine::NumericDual { inner } => {
                let (v, _) = numeric_support(inner, x);
                v
            }
        }
    }

    /// Distance `||x - y||`.
    pub fn dist(&self, x: &[f64], y: &[f64]) -> f64 {
        self.eval(&linalg::sub(x, y))
    }

    /// An element of the subdifferential of the norm at `x` (closed forms where
    /// available, central differences otherwise).
    pub fn subgradient(&self, x: &[f64]) -> Vec<f64> {
        match &self.engine {
            Engine::Lp { p } => lp_subgradient(*p, x, None),
            Engine::WeightedLp { p, w } => lp_subgradient(*p, x, Some(w)),
            Engine::Polyhedral { f, .. } => {
                let mut best = 0.0;
                let mut arg = None;
                for (i, fi) in f.iter().enumerate() {
                    let v = dot(fi, x);
                    if v.abs() > best {
                        best = v.abs();
                        arg = Some((i, v.signum()));
                    }
                }
                match arg {
                    Some((i, s)) => f[i].iter().map(|c| s * c).collect(),
                    None => vec![0.0; x.len()],
                }
            }
            Engine::Calderon { closed, .. } => match closed {
                Some((p, w)) => lp_subgradient(*p, x, Some(w)),
                None => self.fd_gradient(x),
            },
            Engine::DirectSum { outer, parts } => {
                let norms: Vec<f64> = parts
                    .iter()
                    .map(|(off, s)| s.eval(&x[*off..*off + s.dim]))
                    .collect();
                let c = lp_subgradient(*outer, &norms, None);
                let mut g = vec![0.0; x.len()];
                for ((off, s), ci) in parts.iter().zip(&c) {
                    if *ci != 0.0 {
                        let gi = s.subgradient(&x[*off..*off + s.dim]);
                        for (k, v) in gi.iter().enumerate() {
                            g[off + k] = ci * v;
                        }
                    }
                }
                g
            }
            Engine::VectorSum { lambda, inner } => {
                let k = inner.dim;
                let norms: Vec<f64> = x.chunks(k).map(|b| inner.eval(b)).collect();
                let c = lambda.subgradient(&norms);
                let mut g = vec![0.0; x.len()];
                for (r, b) in x.chunks(k).enumerate() {
                    if c[r] != 0.0 {
                        let gi = inner.subgradient(b);
                        for (j, v) in gi.iter().enumerate() {
                            g[r * k + j] = c[r] * v;
                        }
                    }
                }
                g
            }
            Engine::Twisted { .. } => self.fd_gradient(x),
            Engine::Pullback {
                base,
                eps,
                half,
                lattice,
            } => {
                let whole = base.eval(x);
                let tail = &x[*half..];
                let q = quotient_tail(base, tail, *half, *lattice);
                if whole >= q / eps {
                    base.subgradient(x)
                } else if *lattice {
                    let mut padded = vec![0.0; base.dim];
                    padded[*half..].copy_from_slice(tail);
                    let g = base.subgradient(&padded);
                    let mut out = vec![0.0; x.len()];
                    for i in *half..x.len() {
                        out[i] = g[i] / eps;
                    }
                    out
                } else {
                    self.fd_gradient(x)
                }
            }
            Engine::Subspace { ambient, q } => {
                let g = ambient.subgradient(&combine(q, x));
                q.iter().map(|qi| dot(qi, &g)).collect()
            }
            Engine::NumericDual { inner } => numeric_support(inner, x).1,
        }
    }

    fn fd_gradient(&self, x: &[f64]) -> Vec<f64> {
        let h = 1e-6 * (1.0 + norm2(x));
        let mut xp = x.to_vec();
        (0..x.len())
            .map(|i| {
                let orig = xp[i];
                xp[i] = orig + h;
                let fp = self.eval(&xp);
                xp[i] = orig - h;
                let fm = self.eval(&xp);
                xp[i] = orig;
                (fp - fm) / (2.0 * h)
            })
            .collect()
    }

    /// Point `x` of the closed unit ball maximizing `<f, x>`, with the maximum.
    /// Exact for lp families and polyhedral norms; a constrained convex solve otherwise.
    pub fn support_point(&self, f: &[f64]) -> (f64, Vec<f64>) {
        match &self.engine {
            Engine::Lp { p } => lp_support(*p, f, None),
            Engine::WeightedLp { p, w } => lp_support(*p, f, Some(w)),
            Engine::Calderon {
                closed: Some((p, w)),
                ..
            } => lp_support(*p, f, Some(w)),
            Engine::Polyhedral {
                vertices: Some(vs), ..
            } => polyhedral::support(vs, f),
            _ => numeric_support(self, f),
        }
    }

    fn compute_euclid_radius(&self) -> f64 {
        let n = self.dim as f64;
        let lp_factor = |p: f64| {
            let e = 0.5 - if p.is_infinite() { 0.0 } else { 1.0 / p };
            n.powf(e.max(0.0))
        };
        match &self.engine {
            Engine::Lp { p } => lp_factor(*p),
            Engine::WeightedLp { p, w } | Engine::Calderon { closed: Some((p, w)), .. } => {
                lp_factor(*p) / w.iter().cloned().fold(f64::INFINITY, f64::min)
            }
            Engine::Polyhedral {
                vertices: Some(vs), ..
            } => vs.iter().map(|v| norm2(v)).fold(0.0, f64::max),
            _ => self.sampled_radius(),
        }
    }

    fn sampled_radius(&self) -> f64 {
        let mut worst: f64 = 0.0;
        let mut dirs = sampling::quasi_directions(256, self.dim);
        for i in 0..self.dim {
            dirs.push(linalg::unit(self.dim, i));
        }
        for u in dirs {
            let v = self.eval(&u);
            if v > 0.0 {
                worst = worst.max(1.0 / v);
            }
        }
        1.5 * worst
    }

    fn measure_quasinorm_constant(&self) -> f64 {
        use rand::Rng;
        let mut rng = sampling::rng_for(0x7157, 0);
        let mut worst: f64 = 1.0;
        for _ in 0..4000 {
            let u = sampling::gaussian_vec(&mut rng, self.dim);
            let mut v = sampling::gaussian_vec(&mut rng, self.dim);
            // near-cancelling pairs stress the twisting term
            if rng.random::<f64>() < 0.5 {
                let t: f64 = rng.random::<f64>() * 0.5;
                v = u.iter().zip(&v).map(|(a, b)| -a + t * b).collect();
            }
            let s = self.eval(&linalg::add(&u, &v));
            let d = self.eval(&u) + self.eval(&v);
            if d > 0.0 {
                worst = worst.max(s / d);
            }
        }
        worst
    }

    /// Runs the Calderón factorization solver even when a closed form exists.
    pub fn factorization_norm(&self, x: &[f64]) -> Option<f64> {
        match &self.engine {
            Engine::Calderon { solver, .. } => Some(solver.norm(x)),
            _ => None,
        }
    }

    /// Closed-form weighted lp parameters `(p, w)` when the space reduces to one.
    pub fn lp_parameters(&self) -> Option<(f64, Vec<f64>)> {
        match &self.engine {
            Engine::Lp { p } => Some((*p, vec![1.0; self.dim])),
            Engine::WeightedLp { p, w } => Some((*p, w.clone())),
            Engine::Calderon { closed, .. } => closed.clone(),
            _ => None,
        }
    }
}

fn combine(q: &[Vec<f64>], c: &[f64]) -> Vec<f64> {
    let d = q.first().map_or(0, |v| v.len());
    let mut out = vec![0.0; d];
    for (qi, ci) in q.iter().zip(c) {
        linalg::axpy(&mut out, *ci, qi);
    }
    out
}

/// Quotient norm of `b` under the tail projection of `base`.
fn quotient_tail(base: &NormedSpace, b: &[f64], half: usize, lattice: bool) -> f64 {
    let mut padded = vec![0.0; base.dim];
    padded[half..].copy_from_slice(b);
    let upper = base.eval(&padded);
    if lattice || upper == 0.0 {
        return upper;
    }
    let objective = |a: &[f64]| {
        let mut z = padded.clone();
        z[..half].copy_from_slice(a);
        let v = base.eval(&z);
        let g = base.subgradient(&z);
        (v, g[..half].to_vec())
    };
    let radius = 2.0 * base.euclid_radius * upper + 1e-12;
    let opts = EllipsoidOptions {
        tol: 1e-11 * upper,
        max_iter: 4000,
    };
    let out = convex::minimize(&vec![0.0; half], radius, &objective, None, &opts);
    out.value.min(upper)
}

/// Maximizes `<f, x>` over the unit ball of `space` with the ellipsoid method.
pub(crate) fn numeric_support(space: &NormedSpace, f: &[f64]) -> (f64, Vec<f64>) {
    let n = space.dim;
    if f.iter().all(|v| *v == 0.0) {
        return (0.0, vec![0.0; n]);
    }
    let objective = |x: &[f64]| (-dot(f, x), f.iter().map(|v| -v).collect::<Vec<_>>());
    let constraint = |x: &[f64]| (space.eval(x) - 1.0, space.subgradient(x));
    let mut radius = space.euclid_radius * 1.01 + 1e-9;
    let scale = norm2(f);
    for _ in 0..4 {
        let opts = EllipsoidOptions {
            tol: 1e-11 * scale * radius,
            max_iter: 20_000,
        };
        let out = convex::minimize(&vec![0.0; n], radius, &objective, Some(&constraint), &opts);
        let r = norm2(&out.x);
        if r < 0.95 * radius {
            let mut x = out.x;
            let nx = space.eval(&x);
            if nx > 1.0 {
                x.iter_mut().for_each(|v| *v /= nx);
            }
            return (dot(f, &x), x);
        }
        radius *= 4.0;
    }
    let x = vec![0.0; n];
    (0.0, x)
}

/// `||w . x||_p` with overflow-safe scaling.
pub(crate) fn lp_eval(p: f64, x: &[f64], w: Option<&[f64]>) -> f64 {
    let get = |i: usize| match w {
        Some(w) => (w[i] * x[i]).abs(),
        None => x[i].abs(),
    };
    let n = x.len();
    if p == 1.0 {
        return (0..n).map(get).sum();
    }
    let m = (0..n).map(get).fold(0.0, f64::max);
    if m == 0.0 || p.is_infinite() {
        return m;
    }
    if p == 2.0 {
        return m * (0..n).map(|i| (get(i) / m).powi(2)).sum::<f64>().sqrt();
    }
    m * (0..n).map(|i| (get(i) / m).powf(p)).sum::<f64>().powf(1.0 / p)
}

pub(crate) fn lp_subgradient(p: f64, x: &[f64], w: Option<&[f64]>) -> Vec<f64> {
    let wi = |i: usize| w.map_or(1.0, |w| w[i]);
    let n = x.len();
    let mut g = vec![0.0; n];
    if p == 1.0 {
        for i in 0..n {
            g[i] = wi(i) * sgn(x[i]);
        }
        return g;
    }
    if p.is_infinite() {
        let mut best = 0.0;
        let mut arg = None;
        for i in 0..n {
            let v = (wi(i) * x[i]).abs();
            if v > best {
                best = v;
                arg = Some(i);
            }
        }
        if let Some(i) = arg {
            g[i] = wi(i) * sgn(x[i]);
        }
        return g;
    }
    let nrm = lp_eval(p, x, w);
    if nrm == 0.0 {
        return g;
    }
    for i in 0..n {
        let a = (wi(i) * x[i]).abs() / nrm;
        g[i] = wi(i) * sgn(x[i]) * a.powf(p - 1.0);
    }
    g
}

/// Hölder equality case: maximizer of `<f, x>` over `||w . x||_p <= 1`.
pub(crate) fn lp_support(p: f64, f: &[f64], w: Option<&[f64]>) -> (f64, Vec<f64>) {
    let n = f.len();
    let wi = |i: usize| w.map_or(1.0, |w| w[i]);
    // substitute z = w . x; maximize <f / w, z> over the lp ball
    let h: Vec<f64> = (0..n).map(|i| f[i] / wi(i)).collect();
    let q = super::spec::conjugate(p);
    let value = lp_eval(q, &h, None);
    let mut z = vec![0.0; n];
    if value == 0.0 {
        return (0.0, z);
    }
    if p.is_infinite() {
        for i in 0..n {
            z[i] = if h[i] >= 0.0 { 1.0 } else { -1.0 };
        }
    } else if p == 1.0 {
        let mut arg = 0;
        for i in 0..n {
            if h[i].abs() > h[arg].abs() {
                arg = i;
            }
        }
        z[arg] = sgn(h[arg]);
    } else {
        for i in 0..n {
            z[i] = sgn(h[i]) * (h[i].abs() / value).powf(q - 1.0);
        }
    }
    let x: Vec<f64> = (0..n).map(|i| z[i] / wi(i)).collect();
    (value, x)
}

#[inline]
fn sgn(v: f64) -> f64 {
    if v > 0.0 {
        1.0
    } else if v < 0.0 {
        -1.0
    } else {
        0.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space(spec: SpaceSpec) -> NormedSpace {
        NormedSpace::build(&spec).unwrap()
    }

    #[test]
    fn trivial_norm_values() {
        assert_eq!(space(SpaceSpec::lp(3, 1.0)).norm(&[1.0, -2.0, 3.0]).unwrap(), 6.0);
        assert_eq!(space(SpaceSpec::lp(4, 2.0)).norm(&[1.0; 4]).unwrap(), 2.0);
        let w = space(SpaceSpec::weighted_lp(2, f64::INFINITY, vec![2.0, 1.0]));
        assert_eq!(w.norm(&[1.0, 1.0]).unwrap(), 2.0);
    }

    #[test]
    fn pullback_norm_formula() {
        let pb = space(SpaceSpec::pullback(SpaceSpec::lp(8, 1.0), 0.1));
        let x: [f64; 8] = [0.3, -0.1, 0.2, 0.0, 0.01, 0.02, -0.03, 0.0];
        let whole: f64 = x.iter().map(|v| v.abs()).sum();
        let tail: f64 = x[4..].iter().map(|v| v.abs()).sum();
        assert!((pb.eval(&x) - whole.max(tail / 0.1)).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_input() {
        let s = space(SpaceSpec::lp(3, 2.0));
        assert!(matches!(s.norm(&[1.0, 2.0]), Err(Error::DimensionMismatch { .. })));
        assert!(matches!(s.norm(&[1.0, f64::NAN, 0.0]), Err(Error::NonFinite)));
        let bad = SpaceSpec::polyhedral(vec![vec![1.0, 0.0], vec![2.0, 0.0]]);
        assert!(NormedSpace::build(&bad).is_err());
    }

    #[test]
    fn lp_subgradient_is_a_supporting_functional() {
        for p in [1.0, 1.5, 2.0, 3.0, f64::INFINITY] {
            let x = [0.4, -1.3, 0.7];
            let g = lp_subgradient(p, &x, None);
            assert!((dot(&g, &x) - lp_eval(p, &x, None)).abs() < 1e-12, "p={p}");
            let q = crate::spaces::conjugate(p);
            assert!(lp_eval(q, &g, None) <= 1.0 + 1e-12);
        }
    }

    #[test]
    fn support_point_matches_numeric_route() {
        let s = space(SpaceSpec::weighted_lp(3, 3.0, vec![1.0, 2.0, 0.5]));
        let f = [0.3, -0.8, 0.1];
        let (v, x) = s.support_point(&f);
        let (vn, _) = numeric_support(&s, &f);
        assert!((v - vn).abs() < 1e-7, "{v} vs {vn}");
        assert!((s.eval(&x) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn subspace_coordinates_are_orthonormal() {
        let sub = space(SpaceSpec::subspace(
            SpaceSpec::lp(3, 2.0),
            vec![vec![1.0, 1.0, 0.0], vec![0.0, 0.0, 2.0]],
        ));
        assert_eq!(sub.dim(), 2);
        assert!((sub.eval(&[3.0, 4.0]) - 5.0).abs() < 1e-12);
    }
}
