//! Ellipsoid method for small nonsmooth convex programs.
//!
//! Used wherever an inner problem is convex and low dimensional: Calderón
//! factorization infima, distances to balls of subspaces, support points of
//! unit balls and quotient norms. Every call needs a subgradient oracle; at
//! kinks any element of the subdifferential is accepted.

/// Objective or constraint oracle: returns value and a subgradient.
pub type Oracle<'a> = dyn Fn(&[f64]) -> (f64, Vec<f64>) + 'a;

#[derive(Debug, Clone)]
pub struct EllipsoidOptions {
    /// Absolute tolerance on the objective gap.
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for EllipsoidOptions {
    fn default() -> Self {
        Self {
            tol: 1e-10,
            max_iter: 20_000,
        }
    }
}

#[derive(Debug, Clone)]
pub struct EllipsoidOutcome {
    /// Best feasible point found.
    pub x: Vec<f64>,
    pub value: f64,
    /// Certified lower bound on the minimum over the initial ellipsoid.
    pub lower_bound: f64,
    pub iterations: usize,
    pub feasible_found: bool,
}

impl EllipsoidOutcome {
    pub fn gap(&self) -> f64 {
        self.value - self.lower_bound
    }
}

/// Minimizes `objective` over `{x : constraint(x) <= 0} ∩ B(center, radius)`.
pub fn minimize(
    center: &[f64],
    radius: f64,
    objective: &Oracle<'_>,
    constraint: Option<&Oracle<'_>>,
    opts: &EllipsoidOptions,
) -> EllipsoidOutcome {
    let n = center.len();
    if n == 0 {
        let (v, _) = objective(center);
        return EllipsoidOutcome {
            x: Vec::new(),
            value: v,
            lower_bound: v,
            iterations: 0,
            feasible_found: true,
        };
    }
    if n == 1 {
        return minimize_interval(center[0], radius, objective, constraint, opts);
    }

    let nf = n as f64;
    let mut c = center.to_vec();
    let mut b = vec![0.0; n * n];
    for i in 0..n {
        b[i * n + i] = radius;
    }
    let mut best_x = c.clone();
    let mut best_v = f64::INFINITY;
    let mut lower = f64::NEG_INFINITY;
    let mut feasible_found = false;
    let mut bth = vec![0.0; n];
    let mut bh = vec![0.0; n];
    let mut iterations = 0;

    for it in 0..opts.max_iter {
        iterations = it + 1;
        // Pick a cut: constraint cut when infeasible, objective cut otherwise.
        let (h, alpha_num, is_objective_cut) = match constraint {
            Some(g) => {
                let (gv, gh) = g(&c);
                if gv > 0.0 {
                    (gh, gv, false)
                } else {
                    let (fv, fh) = objective(&c);
                    feasible_found = true;
                    if fv < best_v {
                        best_v = fv;
                        best_x.clone_from(&c);
                    }
                    (fh, fv - best_v, true)
                }
            }
            None => {
                let (fv, fh) = objective(&c);
                feasible_found = true;
                if fv < best_v {
                    best_v = fv;
                    best_x.clone_from(&c);
                }
                (fh, fv - best_v, true)
            }
        };

        // P = B B^T; bth = B^T h
        for j in 0..n {
            bth[j] = (0..n).map(|i| b[i * n + j] * h[i]).sum();
        }
        let hph: f64 = bth.iter().map(|v| v * v).sum();
        if !(hph > 1e-300) {
            // zero subgradient at a feasible point means optimality
            if alpha_num <= 0.0 && feasible_found {
                lower = lower.max(best_v);
            }
            break;
        }
        let sq = hph.sqrt();
        if is_objective_cut {
            // f(x*) >= f(c) + <h, x* - c> >= f(c) - sqrt(h'Ph) for x* in the ellipsoid
            let fc = alpha_num + best_v;
            lower = lower.max(fc - sq);
            if best_v - lower <= opts.tol {
                break;
            }
        }
        let mut alpha = alpha_num / sq;
        if alpha >= 1.0 {
            if is_objective_cut {
                // the remaining ellipsoid has no point better than best_v
                lower = lower.max(best_v);
            }
            break;
        }
        if alpha < 0.0 {
            alpha = 0.0;
        }
        let tau = (1.0 + nf * alpha) / (nf + 1.0);
        let sigma = 2.0 * (1.0 + nf * alpha) / ((nf + 1.0) * (1.0 + alpha));
        let delta = nf * nf * (1.0 - alpha * alpha) / (nf * nf - 1.0);
        for v in bth.iter_mut() {
            *v /= sq;
        }
        for i in 0..n {
            bh[i] = (0..n).map(|j| b[i * n + j] * bth[j]).sum();
        }
        for i in 0..n {
            c[i] -= tau * bh[i];
        }
        let k = (1.0 - sigma).sqrt() - 1.0;
        let root = delta.sqrt();
        for i in 0..n {
            for j in 0..n {
                b[i * n + j] = root * (b[i * n + j] + k * bh[i] * bth[j]);
            }
        }
    }

    EllipsoidOutcome {
        x: best_x,
        value: best_v,
        lower_bound: lower.min(best_v),
        iterations,
        feasible_found,
    }
}

fn minimize_interval(
    center: f64,
    radius: f64,
    objective: &Oracle<'_>,
    constraint: Option<&Oracle<'_>>,
    opts: &EllipsoidOptions,
) -> EllipsoidOutcome {
    let mut lo = center - radius;
    let mut hi = center + radius;
    let mut best_x = center;
    let mut best_v = f64::INFINITY;
    let mut lower = f64::NEG_INFINITY;
    let mut feasible_found = false;
    let mut iterations = 0;
    for it in 0..opts.max_iter {
        iterations = it + 1;
        if hi < lo {
            break;
        }
        let m = 0.5 * (lo + hi);
        let half = 0.5 * (hi - lo);
        if let Some(g) = constraint {
            let (gv, gh) = g(&[m]);
            if gv > 0.0 {
                let s = gh[0];
                if s == 0.0 {
                    break;
                }
                // keep {x : gv + s (x - m) <= 0}
                if s > 0.0 {
                    hi = hi.min(m - gv / s);
                } else {
                    lo = lo.max(m - gv / s);
                }
                continue;
            }
        }
        let (fv, fh) = objective(&[m]);
        feasible_found = true;
        if fv < best_v {
            best_v = fv;
            best_x = m;
        }
        let s = fh[0];
        lower = lower.max(fv - s.abs() * half);
        if s == 0.0 {
            lower = lower.max(fv);
        }
        if best_v - lower <= opts.tol || half < 1e-16 * (1.0 + m.abs()) {
            break;
        }
        if s > 0.0 {
            hi = hi.min(m + (best_v - fv) / s);
        } else if s < 0.0 {
            lo = lo.max(m + (best_v - fv) / s);
        } else {
            break;
        }
    }
    EllipsoidOutcome {
        x: vec![best_x],
        value: best_v,
        lower_bound: lower.min(best_v),
        iterations,
        feasible_found,
    }
}
