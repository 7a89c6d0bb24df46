//! Complex matrix helpers and seeded sampling.
//!
//! All random streams come from ChaCha8 seeded with a 64-bit value; sample
//! `i` of a batch draws from stream `i`, so batches give the same values
//! whether they run serially or in parallel.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub use nalgebra::Complex;

pub type C64 = Complex<f64>;
pub type CMatrix = DMatrix<C64>;
pub type CVector = DVector<C64>;

/// The generator used for sample `stream` of a run seeded with `seed`.
pub fn sample_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Matrix with independent standard complex Gaussian entries.
pub fn gaussian_matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        C64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
    })
}

/// Vector with independent standard complex Gaussian entries.
pub fn gaussian_vector<R: Rng + ?Sized>(rng: &mut R, len: usize) -> CVector {
    let m = gaussian_matrix(rng, len, 1);
    m.column(0).into_owned()
}

/// Haar-distributed unitary: QR of a Gaussian matrix, with the phases of
/// `diag(R)` moved into `Q`.
pub fn haar_unitary<R: Rng + ?Sized>(rng: &mut R, n: usize) -> CMatrix {
    let qr = gaussian_matrix(rng, n, n).qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..n {
        let d = r[(j, j)];
        let norm = d.norm();
        let phase = if norm > 0.0 { d / norm } else { C64::new(1.0, 0.0) };
        for i in 0..n {
            q[(i, j)] *= phase;
        }
    }
    q
}

/// Random element of `u(n)` with unit-scale entries.
pub fn random_skew_hermitian<R: Rng + ?Sized>(rng: &mut R, n: usize) -> CMatrix {
    let a = gaussian_matrix(rng, n, n);
    (&a - a.adjoint()) * C64::new(0.5, 0.0)
}

/// Eigenvalues of a hermitian matrix, sorted weakly decreasing.
pub fn hermitian_eigenvalues(h: &CMatrix) -> Vec<f64> {
    let mut ev: Vec<f64> = SymmetricEigen::new(h.clone()).eigenvalues.iter().copied().collect();
    ev.sort_by(|a, b| b.total_cmp(a));
    ev
}

/// Singular values, sorted weakly decreasing.
pub fn singular_values(z: &CMatrix) -> Vec<f64> {
    let mut sv: Vec<f64> = z.clone().svd(false, false).singular_values.iter().copied().collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    sv
}

/// Largest entrywise modulus of `a − b`.
pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// `max |U*U − 1|`.
pub fn unitary_deviation(u: &CMatrix) -> f64 {
    if u.nrows() != u.ncols() {
        return f64::INFINITY;
    }
    max_abs_diff(&(u.adjoint() * u), &CMatrix::identity(u.nrows(), u.nrows()))
}

/// `max |A + A*|`.
pub fn skew_deviation(a: &CMatrix) -> f64 {
    if a.nrows() != a.ncols() {
        return f64::INFINITY;
    }
    a.iter()
        .zip(a.adjoint().iter())
        .map(|(x, y)| (x + y).norm())
        .fold(0.0, f64::max)
}

/// Numerical rank of a real matrix with relative threshold `rel_tol`.
pub fn real_rank(a: &DMatrix<f64>, rel_tol: f64) -> usize {
    if a.is_empty() {
        return 0;
    }
    let sv = a.clone().svd(false, false).singular_values;
    let top = sv.iter().copied().fold(0.0, f64::max);
    if top == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > rel_tol * top).count()
}
