//! Fixtures shared by the criterion benchmarks.

use howelab_core::linalg::sample_rng;
use howelab_core::moment::MatrixPoint;

/// A reproducible Gaussian point of `Mat(n×m; ℂ)`.
pub fn fixture_point(n: usize, m: usize, seed: u64) -> MatrixPoint {
    MatrixPoint::random(&mut sample_rng(seed, 0), n, m).expect("n >= m >= 1")
}
