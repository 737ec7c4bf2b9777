//! Exact geometry of polyhedral norms `max_i |<f_i, x>|` by vertex enumeration.

use itertools::Itertools;
use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::linalg::{self, dot};

/// Largest number of (functional subset, sign pattern) systems we are willing to solve.
pub const VERTEX_BUDGET: usize = 2_000_000;

/// Vertices of the unit ball `{x : |<f_i, x>| <= 1}`, one representative per antipodal pair.
pub fn vertices(f: &[Vec<f64>], n: usize) -> Result<Vec<Vec<f64>>> {
    let m = f.len();
    let systems = binomial(m, n).saturating_mul(1usize << n.min(60));
    if systems > VERTEX_BUDGET {
        return Err(Error::Budget(format!(
            "vertex enumeration needs {systems} systems (cap {VERTEX_BUDGET})"
        )));
    }
    let mut out: Vec<Vec<f64>> = Vec::new();
    for subset in (0..m).combinations(n) {
        let a = DMatrix::from_fn(n, n, |i, j| f[subset[i]][j]);
        let lu = a.lu();
        if lu.determinant().abs() < 1e-12 {
            continue;
        }
        // the first sign is fixed to +1 to pick one vertex of each antipodal pair
        for signs in 0..(1usize << (n - 1)) {
            let rhs: Vec<f64> = (0..n)
                .map(|i| if i > 0 && signs >> (i - 1) & 1 == 1 { -1.0 } else { 1.0 })
                .collect();
            let Some(x) = lu.solve(&nalgebra::DVector::from_vec(rhs)) else {
                continue;
            };
            let x: Vec<f64> = x.iter().cloned().collect();
            let feasible = f.iter().all(|fi| dot(fi, &x).abs() <= 1.0 + 1e-9);
            if !feasible {
                continue;
            }
            let dup = out.iter().any(|v| {
                linalg::max_abs(&linalg::sub(v, &x)) < 1e-9 || linalg::max_abs(&linalg::add(v, &x)) < 1e-9
            });
            if !dup {
                out.push(x);
            }
        }
    }
    Ok(out)
}

/// Maximizer of `<g, x>` over the ball with the given (antipodally reduced) vertex list.
pub fn support(vertices: &[Vec<f64>], g: &[f64]) -> (f64, Vec<f64>) {
    let mut best = 0.0;
    let mut arg = vec![0.0; g.len()];
    for v in vertices {
        let s = dot(v, g);
        if s.abs() > best {
            best = s.abs();
            arg = if s >= 0.0 { v.clone() } else { v.iter().map(|c| -c).collect() };
        }
    }
    (best, arg)
}

fn binomial(m: usize, k: usize) -> usize {
    if k > m {
        return 0;
    }
    let mut r: usize = 1;
    for i in 0..k.min(m - k) {
        r = r.saturating_mul(m - i) / (i + 1);
    }
    r
}

/// Functionals of the regular hexagon norm in the plane (rotated by `phase`).
pub fn hexagon(phase: f64) -> Vec<Vec<f64>> {
    (0..3)
        .map(|k| {
            let a = phase + k as f64 * std::f64::consts::PI / 3.0;
            vec![a.cos(), a.sin()]
        })
        .collect()
}
