//! The Kalton-Peck quasilinear map `Omega(x)_i = x_i log(|x_i| / |x|_2)`.

use crate::error::{Error, Result};
use crate::linalg::norm2;

/// Evaluates `Omega(x)` with natural logarithm and `0 log 0 = 0`.
///
/// ```
/// let om = bcl::spaces::kalton_peck_omega(&[1.0, 1.0]).unwrap();
/// assert!((om[0] + 2f64.ln() / 2.0).abs() < 1e-15);
/// ```
pub fn kalton_peck_omega(x: &[f64]) -> Result<Vec<f64>> {
    if x.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite);
    }
    let nx = norm2(x);
    if nx == 0.0 {
        return Err(Error::ZeroVector);
    }
    Ok(omega_unchecked(x, nx))
}

pub(crate) fn omega_unchecked(x: &[f64], nx: f64) -> Vec<f64> {
    x.iter()
        .map(|&v| if v == 0.0 { 0.0 } else { v * (v.abs() / nx).ln() })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_vector_maps_to_zero() {
        assert_eq!(kalton_peck_omega(&[0.0, 1.0, 0.0]).unwrap(), vec![0.0; 3]);
    }

    #[test]
    fn zero_vector_is_rejected() {
        assert!(matches!(kalton_peck_omega(&[0.0, 0.0]), Err(Error::ZeroVector)));
    }

    #[test]
    fn homogeneous_of_degree_one() {
        let x = [0.3, -1.2, 0.05, 2.0];
        let a = kalton_peck_omega(&x).unwrap();
        let b = kalton_peck_omega(&x.map(|v| 3.0 * v)).unwrap();
        for (u, v) in a.iter().zip(&b) {
            assert!((3.0 * u - v).abs() < 1e-12);
        }
    }
}
