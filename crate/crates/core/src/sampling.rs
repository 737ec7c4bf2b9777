//! Deterministic randomness and quasi-uniform point sets.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

/// SplitMix64 finalizer, used to derive independent stream seeds.
fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Generator for stream `stream` under master seed `seed`.
pub fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(mix(seed ^ mix(stream.wrapping_add(1))))
}

pub fn gaussian_vec<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.sample::<f64, _>(StandardNormal)).collect()
}

/// Uniform direction on the Euclidean sphere.
pub fn euclidean_direction<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<f64> {
    loop {
        let v = gaussian_vec(rng, n);
        let r = crate::linalg::norm2(&v);
        if r > 1e-12 {
            return v.into_iter().map(|x| x / r).collect();
        }
    }
}

const PRIMES: [u64; 24] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89,
];

fn radical_inverse(mut i: u64, base: u64) -> f64 {
    let inv = 1.0 / base as f64;
    let mut f = inv;
    let mut r = 0.0;
    while i > 0 {
        r += f * (i % base) as f64;
        i /= base;
        f *= inv;
    }
    r
}

/// `i`-th point of the Halton sequence in `[0,1)^dim` (index offset by one to skip the origin).
pub fn halton(i: u64, dim: usize) -> Vec<f64> {
    assert!(dim <= PRIMES.len(), "halton dimension {dim} too large");
    (0..dim).map(|k| radical_inverse(i + 1, PRIMES[k])).collect()
}

/// Quasi-random Gaussian vector: Box-Muller applied to consecutive Halton coordinate pairs.
fn halton_gaussian(i: u64, n: usize) -> Vec<f64> {
    let pairs = n.div_ceil(2);
    let h = halton(i, 2 * pairs);
    let mut out = Vec::with_capacity(2 * pairs);
    for k in 0..pairs {
        let u1 = h[2 * k].max(1e-300);
        let u2 = h[2 * k + 1];
        let r = (-2.0 * u1.ln()).sqrt();
        let a = std::f64::consts::TAU * u2;
        out.push(r * a.cos());
        out.push(r * a.sin());
    }
    out.truncate(n);
    out
}

/// Deterministic quasi-uniform Euclidean directions.
pub fn quasi_directions(count: usize, n: usize) -> Vec<Vec<f64>> {
    let mut out = Vec::with_capacity(count);
    let mut i = 0u64;
    while out.len() < count {
        let v = halton_gaussian(i, n);
        i += 1;
        let r = crate::linalg::norm2(&v);
        if r > 1e-12 {
            out.push(v.into_iter().map(|x| x / r).collect());
        }
    }
    out
}

/// Deterministic quasi-uniform points of the Euclidean unit ball.
pub fn quasi_ball(count: usize, n: usize) -> Vec<Vec<f64>> {
    let mut out = Vec::with_capacity(count);
    let mut i = 0u64;
    while out.len() < count {
        let mut v = halton_gaussian(i, n + 1);
        i += 1;
        let u = halton(i + 7919, 1)[0];
        v.truncate(n);
        let r = crate::linalg::norm2(&v);
        if r > 1e-12 {
            let s = u.powf(1.0 / n as f64) / r;
            out.push(v.into_iter().map(|x| x * s).collect());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let a: f64 = rng_for(42, 0).random();
        let b: f64 = rng_for(42, 0).random();
        let c: f64 = rng_for(42, 1).random();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn halton_base_two_is_van_der_corput() {
        let xs: Vec<f64> = (0..4).map(|i| halton(i, 1)[0]).collect();
        assert_eq!(xs, vec![0.5, 0.25, 0.75, 0.125]);
    }

    #[test]
    fn quasi_points_have_expected_norms() {
        for v in quasi_directions(50, 5) {
            assert!((crate::linalg::norm2(&v) - 1.0).abs() < 1e-12);
        }
        for v in quasi_ball(50, 3) {
            assert!(crate::linalg::norm2(&v) <= 1.0 + 1e-12);
        }
    }
}
