//! Calderón products `prod_j X_j^{a_j}` of coordinate spaces.
//!
//! The norm is the factorization infimum
//! `inf { prod_j ||y_j||_j^{a_j} : |x| = prod_j |y_j|^{a_j} }`.
//! On the support `S` of `x` substitute `y_j = exp(u_j)`: the constraint becomes
//! `sum_j a_j u_j = log|x|` and the objective `sum_j a_j log ||exp(u_j)||_j` is
//! convex. The last factor is eliminated through the constraint and the other
//! `u_j` are restricted to the complement of the constant vector, which removes
//! the scaling invariance of the objective.

use crate::convex::{self, EllipsoidOptions};
use crate::linalg::norm2;

use super::engine::NormedSpace;
use super::spec::SpaceSpec;

/// Weighted lp parameters `(p, w)` of a Calderón product whose factors are all
/// (weighted) lp spaces: `1/p = sum a_j / p_j` and `w = prod w_j^{a_j}`.
pub fn closed_form(factors: &[SpaceSpec], a: &[f64]) -> Option<(f64, Vec<f64>)> {
    let forms = factors.iter().map(lp_form).collect::<Option<Vec<_>>>()?;
    let n = forms[0].1.len();
    let inv: f64 = forms
        .iter()
        .zip(a)
        .map(|((p, _), aj)| if p.is_infinite() { 0.0 } else { aj / p })
        .sum();
    let p = if inv <= 0.0 { f64::INFINITY } else { 1.0 / inv };
    let w = (0..n)
        .map(|i| forms.iter().zip(a).map(|((_, w), aj)| w[i].powf(*aj)).product())
        .collect();
    Some((p, w))
}

fn lp_form(spec: &SpaceSpec) -> Option<(f64, Vec<f64>)> {
    match spec {
        SpaceSpec::Lp { n, p } => Some((*p, vec![1.0; *n])),
        SpaceSpec::WeightedLp { p, weights, .. } => Some((*p, weights.clone())),
        SpaceSpec::Calderon { factors, weights_a } => closed_form(factors, weights_a),
        _ => None,
    }
}

/// Numerical factorization solver.
#[derive(Debug, Clone)]
pub struct CalderonSolver {
    factors: Vec<NormedSpace>,
    a: Vec<f64>,
    tol: f64,
}

impl CalderonSolver {
    pub fn new(factors: Vec<NormedSpace>, a: Vec<f64>) -> Self {
        CalderonSolver {
            factors,
            a,
            tol: 1e-9,
        }
    }

    /// Relative tolerance of the returned norm.
    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn norm(&self, x: &[f64]) -> f64 {
        let n = x.len();
        let support: Vec<usize> = (0..n).filter(|&i| x[i] != 0.0).collect();
        let s = support.len();
        let nf = self.factors.len();
        if s == 0 {
            return 0.0;
        }
        if nf == 1 {
            return self.factors[0].eval(x);
        }
        if s == 1 {
            let i = support[0];
            let e = crate::linalg::unit(n, i);
            let scale: f64 = self
                .factors
                .iter()
                .zip(&self.a)
                .map(|(f, aj)| f.eval(&e).powf(*aj))
                .product();
            return x[i].abs() * scale;
        }

        let logx: Vec<f64> = support.iter().map(|&i| x[i].abs().ln()).collect();
        let helmert = helmert_basis(s);
        let block = s - 1;
        let m = (nf - 1) * block;
        let last = nf - 1;

        let unpack = |t: &[f64]| -> Vec<Vec<f64>> {
            let mut u = vec![vec![0.0; s]; nf];
            for j in 0..last {
                for (k, h) in helmert.iter().enumerate() {
                    let c = t[j * block + k];
                    for i in 0..s {
                        u[j][i] += c * h[i];
                    }
                }
            }
            for i in 0..s {
                let rest: f64 = (0..last).map(|j| self.a[j] * u[j][i]).sum();
                u[last][i] = (logx[i] - rest) / self.a[last];
            }
            u
        };

        let objective = |t: &[f64]| {
            let u = unpack(t);
            let mut value = 0.0;
            let mut grads = Vec::with_capacity(nf);
            for j in 0..nf {
                let (fj, gj) = self.log_factor(j, &u[j], &support, n);
                value += self.a[j] * fj;
                grads.push(gj);
            }
            let mut g = vec![0.0; m];
            for j in 0..last {
                for (k, h) in helmert.iter().enumerate() {
                    let mut acc = 0.0;
                    for i in 0..s {
                        acc += h[i] * (grads[j][i] - grads[last][i]);
                    }
                    g[j * block + k] = self.a[j] * acc;
                }
            }
            (value, g)
        };

        let spread = logx.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
            - logx.iter().cloned().fold(f64::INFINITY, f64::min);
        let ratio: f64 = self
            .factors
            .iter()
            .zip(&self.a)
            .map(|(f, aj)| {
                let vals: Vec<f64> = support.iter().map(|&i| f.eval(&crate::linalg::unit(n, i))).collect();
                let hi = vals.iter().cloned().fold(0.0, f64::max);
                let lo = vals.iter().cloned().fold(f64::INFINITY, f64::min);
                aj * (hi / lo).ln()
            })
            .sum();
        let mut radius = 2.0 * s as f64 * (spread + ratio) + 1.0;
        let opts = EllipsoidOptions {
            tol: self.tol * 0.5,
            max_iter: 200_000,
        };
        let center = vec![0.0; m];
        let mut best = f64::INFINITY;
        for _ in 0..4 {
            let out = convex::minimize(&center, radius, &objective, None, &opts);
            best = best.min(out.value);
            if norm2(&out.x) < 0.8 * radius {
                break;
            }
            radius *= 4.0;
        }
        best.exp()
    }

    /// `log ||exp(u)||_j` on the support and its gradient in `u`.
    fn log_factor(&self, j: usize, u: &[f64], support: &[usize], n: usize) -> (f64, Vec<f64>) {
        let mu = u.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let mut v = vec![0.0; n];
        for (k, &i) in support.iter().enumerate() {
            v[i] = (u[k] - mu).exp();
        }
        let f = &self.factors[j];
        let nv = f.eval(&v);
        let g = f.subgradient(&v);
        let grad = support.iter().map(|&i| v[i] * g[i] / nv).collect();
        (mu + nv.ln(), grad)
    }
}

/// Orthonormal basis of the complement of the constant vector in `R^s`.
fn helmert_basis(s: usize) -> Vec<Vec<f64>> {
    (1..s)
        .map(|k| {
            let c = 1.0 / ((k * (k + 1)) as f64).sqrt();
            let mut h = vec![0.0; s];
            for v in h.iter_mut().take(k) {
                *v = c;
            }
            h[k] = -(k as f64) * c;
            h
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::dot;

    #[test]
    fn helmert_is_orthonormal_and_mean_free() {
        let h = helmert_basis(5);
        for (i, a) in h.iter().enumerate() {
            assert!(a.iter().sum::<f64>().abs() < 1e-14);
            for (j, b) in h.iter().enumerate() {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((dot(a, b) - expect).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn closed_form_exponents() {
        let (p, w) = closed_form(
            &[SpaceSpec::lp(3, 1.0), SpaceSpec::lp(3, f64::INFINITY)],
            &[0.5, 0.5],
        )
        .unwrap();
        assert_eq!(p, 2.0);
        assert_eq!(w, vec![1.0; 3]);
        let (p, w) = closed_form(
            &[
                SpaceSpec::weighted_lp(2, 2.0, vec![4.0, 1.0]),
                SpaceSpec::weighted_lp(2, 2.0, vec![1.0, 9.0]),
            ],
            &[0.5, 0.5],
        )
        .unwrap();
        assert_eq!(p, 2.0);
        assert_eq!(w, vec![2.0, 3.0]);
    }

    #[test]
    fn solver_agrees_with_closed_form_on_plane() {
        let spec = SpaceSpec::calderon(
            vec![SpaceSpec::lp(2, 1.0), SpaceSpec::lp(2, f64::INFINITY)],
            vec![0.5, 0.5],
        );
        let s = NormedSpace::build(&spec).unwrap();
        let v = s.factorization_norm(&[1.0, 1.0]).unwrap();
        assert!((v - 2f64.sqrt()).abs() < 1e-7, "{v}");
    }
}
