//! Small dense helpers on `&[f64]` slices. Matrix work goes through nalgebra.

use nalgebra::DMatrix;

#[inline]
pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[inline]
pub fn norm2(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

#[inline]
pub fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

#[inline]
pub fn add(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

#[inline]
pub fn scale(a: &[f64], s: f64) -> Vec<f64> {
    a.iter().map(|x| x * s).collect()
}

/// `y += s * x`
#[inline]
pub fn axpy(y: &mut [f64], s: f64, x: &[f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += s * xi;
    }
}

pub fn unit(n: usize, i: usize) -> Vec<f64> {
    let mut e = vec![0.0; n];
    e[i] = 1.0;
    e
}

/// Modified Gram-Schmidt with one reorthogonalization pass.
/// Returns `None` when the vectors are linearly dependent at relative tolerance `tol`.
pub fn orthonormalize(vectors: &[Vec<f64>], tol: f64) -> Option<Vec<Vec<f64>>> {
    let mut out: Vec<Vec<f64>> = Vec::with_capacity(vectors.len());
    for v in vectors {
        let scale_ref = norm2(v);
        if scale_ref == 0.0 {
            return None;
        }
        let mut w = v.clone();
        for _ in 0..2 {
            for q in &out {
                let c = dot(&w, q);
                axpy(&mut w, -c, q);
            }
        }
        let nw = norm2(&w);
        if nw <= tol * scale_ref {
            return None;
        }
        out.push(scale(&w, 1.0 / nw));
    }
    Some(out)
}

/// Numerical rank via SVD.
pub fn rank(rows: &[Vec<f64>], cols: usize, tol: f64) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let m = DMatrix::from_fn(rows.len(), cols, |i, j| rows[i][j]);
    let sv = m.singular_values();
    let smax = sv.iter().cloned().fold(0.0, f64::max);
    if smax == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > tol * smax).count()
}

/// Smallest singular value of the matrix whose rows are `rows`.
pub fn min_singular_value(rows: &[Vec<f64>], cols: usize) -> f64 {
    let m = DMatrix::from_fn(rows.len(), cols, |i, j| rows[i][j]);
    m.singular_values().iter().cloned().fold(f64::INFINITY, f64::min)
}

/// Matrix with the given vectors as columns.
pub fn from_columns(cols: &[Vec<f64>]) -> DMatrix<f64> {
    let n = cols.first().map_or(0, |c| c.len());
    DMatrix::from_fn(n, cols.len(), |i, j| cols[j][i])
}

/// Solves the square system `a x = b`; `None` when singular.
pub fn solve(a: &DMatrix<f64>, b: &[f64]) -> Option<Vec<f64>> {
    let lu = a.clone().lu();
    let rhs = nalgebra::DVector::from_column_slice(b);
    lu.solve(&rhs).map(|x| x.iter().cloned().collect())
}

pub fn max_abs(a: &[f64]) -> f64 {
    a.iter().fold(0.0, |m, x| m.max(x.abs()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orthonormalize_rejects_dependent_sets() {
        let v = vec![vec![1.0, 2.0, 0.0], vec![2.0, 4.0, 0.0]];
        assert!(orthonormalize(&v, 1e-10).is_none());
        let q = orthonormalize(&[vec![1.0, 1.0, 0.0], vec![1.0, 0.0, 1.0]], 1e-10).unwrap();
        assert!((dot(&q[0], &q[1])).abs() < 1e-14);
        assert!((norm2(&q[1]) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn rank_of_plane_functionals() {
        let f = vec![vec![1.0, 0.0], vec![0.5, 0.5], vec![1.0, 1.0]];
        assert_eq!(rank(&f, 2, 1e-12), 2);
        assert_eq!(rank(&f[..1], 2, 1e-12), 1);
    }
}
