//! Numerical Poisson brackets on the flat space `Mat(n×m; ℂ) ≅ ℝ^{2nm}`.
//!
//! The real basis is `{E_ab, i·E_ab}` in column-major order. Hamiltonian
//! vector fields solve `ω(X_g, ·) = dg` against the constant matrix of
//! `omega_mat` on that basis, and `{f, g} = df(X_g)`. With these conventions
//! the fundamental field of `z ↦ e^{tξ} z` is the Hamiltonian field of
//! `Φ₁^ξ`, so `ξ^M(f) = {f, Φ^ξ}`; [`PoissonBracket::new`] verifies this.

use std::fmt;
use std::sync::Arc;

use nalgebra::{DMatrix, DVector};

use crate::error::{HoweError, Result};
use crate::linalg::{sample_rng, gaussian_matrix, random_skew_hermitian, CMatrix, C64};
use crate::moment::{moment1_component, moment2_component, omega_mat, MatrixPoint, SkewHermitian};

/// Default central-difference step.
pub const DEFAULT_FD_STEP: f64 = 1e-5;

type EvalFn = dyn Fn(&MatrixPoint) -> f64 + Send + Sync;

/// A real function on `Mat(n×m; ℂ)`.
#[derive(Clone)]
pub struct SmoothObservable {
    n: usize,
    m: usize,
    eval: Arc<EvalFn>,
}

impl fmt::Debug for SmoothObservable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SmoothObservable({}x{})", self.n, self.m)
    }
}

impl SmoothObservable {
    pub fn new<F>(n: usize, m: usize, eval: F) -> Self
    where
        F: Fn(&MatrixPoint) -> f64 + Send + Sync + 'static,
    {
        Self {
            n,
            m,
            eval: Arc::new(eval),
        }
    }

    /// The moment component `Φ₁^ξ` for the left `U(n)` action.
    pub fn moment1(xi: SkewHermitian, m: usize) -> Self {
        let n = xi.size();
        Self::new(n, m, move |z| moment1_component(&xi, z))
    }

    /// The moment component `Φ₂^η` for the right `U(m)` action.
    pub fn moment2(eta: SkewHermitian, n: usize) -> Self {
        let m = eta.size();
        Self::new(n, m, move |z| moment2_component(&eta, z))
    }

    /// `z ↦ Re tr(C* z)`.
    pub fn linear(c: CMatrix) -> Self {
        let (n, m) = c.shape();
        Self::new(n, m, move |z| {
            c.iter().zip(z.entries().iter()).map(|(a, b)| (a.conj() * b).re).sum()
        })
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.n, self.m)
    }

    pub fn eval(&self, z: &MatrixPoint) -> f64 {
        (self.eval)(z)
    }
}

/// Flattens a complex matrix into real coordinates on the `{E_ab, i·E_ab}` basis.
pub fn to_real(z: &CMatrix) -> DVector<f64> {
    DVector::from_iterator(2 * z.len(), z.iter().flat_map(|c| [c.re, c.im]))
}

/// Inverse of [`to_real`].
pub fn from_real(x: &DVector<f64>, n: usize, m: usize) -> CMatrix {
    CMatrix::from_iterator(n, m, (0..n * m).map(|k| C64::new(x[2 * k], x[2 * k + 1])))
}

fn basis_element(n: usize, m: usize, p: usize) -> CMatrix {
    let mut e = DVector::zeros(2 * n * m);
    e[p] = 1.0;
    from_real(&e, n, m)
}

/// Matrix of `omega_mat` on the real basis, `Ω_pq = ω(e_p, e_q)`.
pub fn omega_matrix(n: usize, m: usize) -> DMatrix<f64> {
    let dim = 2 * n * m;
    let basis: Vec<CMatrix> = (0..dim).map(|p| basis_element(n, m, p)).collect();
    DMatrix::from_fn(dim, dim, |p, q| {
        omega_mat(&basis[p], &basis[q]).expect("basis shapes agree")
    })
}

/// Central-difference gradient of `f` at `z` in real coordinates.
pub fn fd_gradient(f: &SmoothObservable, z: &MatrixPoint, step: f64) -> Result<DVector<f64>> {
    let (n, m) = (z.n(), z.m());
    if f.shape() != (n, m) {
        return Err(HoweError::ShapeMismatch {
            expected: f.shape(),
            actual: (n, m),
        });
    }
    let base = to_real(z.entries());
    let mut grad = DVector::zeros(base.len());
    for p in 0..base.len() {
        let mut plus = base.clone();
        let mut minus = base.clone();
        plus[p] += step;
        minus[p] -= step;
        let fp = f.eval(&MatrixPoint::new(from_real(&plus, n, m))?);
        let fm = f.eval(&MatrixPoint::new(from_real(&minus, n, m))?);
        let d = (fp - fm) / (2.0 * step);
        if !d.is_finite() {
            return Err(HoweError::NonFinite("finite-difference gradient"));
        }
        grad[p] = d;
    }
    Ok(grad)
}

/// Poisson bracket evaluator for a fixed shape `n×m`.
#[derive(Debug, Clone)]
pub struct PoissonBracket {
    n: usize,
    m: usize,
    fd_step: f64,
    // (Ωᵀ)⁻¹: maps dg to X_g
    field_map: DMatrix<f64>,
}

impl PoissonBracket {
    /// Builds the evaluator and runs the sign-convention self-check.
    pub fn new(n: usize, m: usize, fd_step: f64) -> Result<Self> {
        if m == 0 || n < m {
            return Err(HoweError::BadDimensions { n, m });
        }
        if !(fd_step > 0.0 && fd_step.is_finite()) {
            return Err(HoweError::NonFinite("finite-difference step"));
        }
        let field_map = omega_matrix(n, m)
            .transpose()
            .try_inverse()
            .ok_or(HoweError::NonFinite("degenerate symplectic form"))?;
        let bracket = Self {
            n,
            m,
            fd_step,
            field_map,
        };
        bracket.convention_self_check()?;
        Ok(bracket)
    }

    pub fn fd_step(&self) -> f64 {
        self.fd_step
    }

    /// `X_g(z)` in real coordinates.
    pub fn hamiltonian_field(&self, g: &SmoothObservable, z: &MatrixPoint) -> Result<DVector<f64>> {
        self.check_point(z)?;
        Ok(&self.field_map * fd_gradient(g, z, self.fd_step)?)
    }

    /// `{f, g}(z) = df_z(X_g)`.
    pub fn bracket(&self, f: &SmoothObservable, g: &SmoothObservable, z: &MatrixPoint) -> Result<f64> {
        let xg = self.hamiltonian_field(g, z)?;
        let df = fd_gradient(f, z, self.fd_step)?;
        Ok(df.dot(&xg))
    }

    fn check_point(&self, z: &MatrixPoint) -> Result<()> {
        if (z.n(), z.m()) != (self.n, self.m) {
            return Err(HoweError::ShapeMismatch {
                expected: (self.n, self.m),
                actual: (z.n(), z.m()),
            });
        }
        Ok(())
    }

    /// Compares `ξ^M(f)` with `{f, Φ₁^ξ}` for a linear `f` at a fixed point.
    fn convention_self_check(&self) -> Result<()> {
        let mut rng = sample_rng(0x5eed, 0);
        let (n, m) = (self.n, self.m);
        let c = gaussian_matrix(&mut rng, n, m);
        let xi = SkewHermitian::project(&random_skew_hermitian(&mut rng, n));
        let z = MatrixPoint::new(gaussian_matrix(&mut rng, n, m))?;

        let f = SmoothObservable::linear(c.clone());
        // fundamental field of z ↦ e^{tξ} z is ξz; f is linear so df(v) = Re tr(C* v)
        let v = xi.entries() * z.entries();
        let field: f64 = c.iter().zip(v.iter()).map(|(a, b)| (a.conj() * b).re).sum();
        let bracket = self.bracket(&f, &SmoothObservable::moment1(xi, m), &z)?;
        if (field - bracket).abs() > 1e-6 * (1.0 + field.abs()) {
            return Err(HoweError::SignConvention { field, bracket });
        }
        Ok(())
    }
}

/// One-shot bracket evaluation with a fresh evaluator.
pub fn poisson_bracket_mat(
    f: &SmoothObservable,
    g: &SmoothObservable,
    z: &MatrixPoint,
    fd_step: f64,
) -> Result<f64> {
    PoissonBracket::new(z.n(), z.m(), fd_step)?.bracket(f, g, z)
}

/// Infinitesimal generator of `z ↦ z e^{−tη}`: `−zη`.
pub fn right_action_field(eta: &SkewHermitian, z: &MatrixPoint) -> CMatrix {
    -(z.entries() * eta.entries())
}

/// Infinitesimal generator of `z ↦ e^{tξ} z`: `ξz`.
pub fn left_action_field(xi: &SkewHermitian, z: &MatrixPoint) -> CMatrix {
    xi.entries() * z.entries()
}
