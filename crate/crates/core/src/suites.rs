//! Per-sample verification kernels shared by the CLI and the test suites.
//!
//! Each kernel takes the run seed and a sample index and draws from its own
//! ChaCha stream, so a batch can be mapped serially or in parallel and
//! aggregated in index order with identical results.

use crate::bracket::{PoissonBracket, SmoothObservable};
use crate::correspondence::{verify_spectral_correspondence, CorrespondencePair};
use crate::error::Result;
use crate::flow::{gradient_flow_norm_sq, FlowSummary};
use crate::linalg::{haar_unitary, max_abs_diff, random_skew_hermitian, sample_rng};
use crate::moment::{moment1_fs, moment1_mat, moment2_mat, MatrixPoint, ProjectivePoint, SkewHermitian};
use crate::report::Check;

/// Stream families; the sample index fills the low 32 bits.
#[derive(Debug, Clone, Copy)]
#[repr(u64)]
pub enum Stream {
    Bracket = 1,
    Invariance = 2,
    Equivariance = 3,
    ProjectiveRange = 4,
    Spectral = 5,
    Flow = 6,
    Cotangent = 7,
    ProjectiveSpectral = 8,
}

pub fn stream_rng(seed: u64, family: Stream, index: u64) -> rand_chacha::ChaCha8Rng {
    sample_rng(seed, ((family as u64) << 32) | (index & 0xffff_ffff))
}

/// `|{Φ₁^ξ, Φ₂^η}(z)|` at a random `(z, ξ, η)`.
pub fn bracket_vanishing_sample(pb: &PoissonBracket, n: usize, m: usize, seed: u64, index: u64) -> Result<f64> {
    let mut rng = stream_rng(seed, Stream::Bracket, index);
    let z = MatrixPoint::random(&mut rng, n, m)?;
    let xi = SkewHermitian::project(&random_skew_hermitian(&mut rng, n));
    let eta = SkewHermitian::project(&random_skew_hermitian(&mut rng, m));
    let f = SmoothObservable::moment1(xi, m);
    let g = SmoothObservable::moment2(eta, n);
    Ok(pb.bracket(&f, &g, &z)?.abs())
}

/// Deviations `(|Φ₁(zV⁻¹) − Φ₁(z)|, |Φ₂(Uz) − Φ₂(z)|)`.
pub fn invariance_sample(n: usize, m: usize, seed: u64, index: u64) -> Result<(f64, f64)> {
    let mut rng = stream_rng(seed, Stream::Invariance, index);
    let z = MatrixPoint::random(&mut rng, n, m)?;
    let u = haar_unitary(&mut rng, n);
    let v = haar_unitary(&mut rng, m);
    let d1 = max_abs_diff(moment1_mat(&z.right_act(&v)?).entries(), moment1_mat(&z).entries());
    let d2 = max_abs_diff(moment2_mat(&z.left_mul(&u)?).entries(), moment2_mat(&z).entries());
    Ok((d1, d2))
}

/// Deviations `(|Φ₁(Uz) − UΦ₁(z)U⁻¹|, |Φ₂(zV⁻¹) − VΦ₂(z)V⁻¹|)`.
pub fn equivariance_sample(n: usize, m: usize, seed: u64, index: u64) -> Result<(f64, f64)> {
    let mut rng = stream_rng(seed, Stream::Equivariance, index);
    let z = MatrixPoint::random(&mut rng, n, m)?;
    let u = haar_unitary(&mut rng, n);
    let v = haar_unitary(&mut rng, m);
    let d1 = max_abs_diff(
        moment1_mat(&z.left_mul(&u)?).entries(),
        moment1_mat(&z).conjugate_by(&u).entries(),
    );
    let d2 = max_abs_diff(
        moment2_mat(&z.right_act(&v)?).entries(),
        moment2_mat(&z).conjugate_by(&v).entries(),
    );
    Ok((d1, d2))
}

/// Distance of the `U(1)` moment value of a random point from `[−k, 0]`.
pub fn projective_range_sample(n: usize, k: u32, seed: u64, index: u64) -> Result<f64> {
    let mut rng = stream_rng(seed, Stream::ProjectiveRange, index);
    let p = ProjectivePoint::random(&mut rng, n, k)?;
    let x = moment1_fs(&p);
    let k = k as f64;
    Ok(x.max(-k - x).max(0.0))
}

/// Spectral correspondence at `U Σ V` for a random `z`; returns the larger
/// of the two deviations.
pub fn spectral_sample(n: usize, m: usize, seed: u64, index: u64) -> Result<f64> {
    let mut rng = stream_rng(seed, Stream::Spectral, index);
    let z = MatrixPoint::random(&mut rng, n, m)?;
    Ok(verify_spectral_correspondence(&z)
        .iter()
        .map(|c| c.measured)
        .fold(0.0, f64::max))
}

/// Flow from a random start; `step_size` and `steps` as in [`gradient_flow_norm_sq`].
pub fn flow_sample(n: usize, m: usize, steps: usize, step_size: f64, seed: u64, index: u64) -> Result<FlowSummary> {
    let mut rng = stream_rng(seed, Stream::Flow, index);
    let z = MatrixPoint::random(&mut rng, n, m)?;
    Ok(gradient_flow_norm_sq(&z, steps, step_size)?.summary)
}

/// Folds per-sample deviations into a single max-deviation check.
pub fn max_deviation_check(id: &str, deviations: impl IntoIterator<Item = f64>, tol: f64) -> Check {
    let mut count = 0usize;
    let max = deviations.into_iter().fold(0.0f64, |acc, d| {
        count += 1;
        // NaN must poison the maximum
        if d.is_nan() || acc.is_nan() {
            f64::NAN
        } else {
            acc.max(d)
        }
    });
    Check::within(id, max, tol).with_detail(format!("max over {count} samples"))
}

/// Exact check that every pair preserves integrality.
pub fn integrality_check(id: &str, pairs: &[CorrespondencePair]) -> Check {
    let bad = pairs
        .iter()
        .filter(|p| !crate::correspondence::integrality_preserved(p))
        .count();
    Check::exact(id, bad == 0, bad as f64).with_detail(format!("{} pairs", pairs.len()))
}
