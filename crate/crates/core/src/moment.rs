//! The three symplectic models and their moment maps.
//!
//! Dual Lie algebra elements are stored on the Lie algebra side of the
//! trace-form identification `ζ ↦ tr(· ζ)`, so every moment value is a
//! skew-hermitian matrix.

use std::f64::consts::PI;

use rand::Rng;

use crate::error::{HoweError, Result};
use crate::lie::CoadjointOrbitLabel;
use crate::linalg::{
    gaussian_matrix, gaussian_vector, hermitian_eigenvalues, skew_deviation, unitary_deviation,
    CMatrix, CVector, C64,
};

/// Tolerance for the skew-hermitian and unitary invariants.
pub const STRUCTURE_TOL: f64 = 1e-10;

const I: C64 = C64::new(0.0, 1.0);

/// A point of `Mat(n×m; ℂ)` with `n ≥ m ≥ 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixPoint {
    entries: CMatrix,
}

impl MatrixPoint {
    pub fn new(entries: CMatrix) -> Result<Self> {
        let (n, m) = entries.shape();
        if m == 0 || n < m {
            return Err(HoweError::BadDimensions { n, m });
        }
        if entries.iter().any(|x| !x.re.is_finite() || !x.im.is_finite()) {
            return Err(HoweError::NonFinite("matrix point"));
        }
        Ok(Self { entries })
    }

    pub fn zero(n: usize, m: usize) -> Result<Self> {
        Self::new(CMatrix::zeros(n, m))
    }

    /// The normal form `Σ(σ)`: `σ` on the leading diagonal, zeros elsewhere.
    pub fn normal_form(n: usize, sigma: &[f64]) -> Result<Self> {
        let m = sigma.len();
        let mut z = CMatrix::zeros(n, m);
        if n >= m {
            for (i, &s) in sigma.iter().enumerate() {
                z[(i, i)] = C64::new(s, 0.0);
            }
        }
        Self::new(z)
    }

    /// Standard complex Gaussian point.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, n: usize, m: usize) -> Result<Self> {
        Self::new(gaussian_matrix(rng, n, m))
    }

    pub fn n(&self) -> usize {
        self.entries.nrows()
    }

    pub fn m(&self) -> usize {
        self.entries.ncols()
    }

    pub fn entries(&self) -> &CMatrix {
        &self.entries
    }

    pub fn into_entries(self) -> CMatrix {
        self.entries
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.norm()
    }

    /// `z ↦ U z`.
    pub fn left_mul(&self, u: &CMatrix) -> Result<Self> {
        check_shape(u, (self.n(), self.n()))?;
        Self::new(u * &self.entries)
    }

    /// `z ↦ z V⁻¹` for unitary `V`.
    pub fn right_act(&self, v: &CMatrix) -> Result<Self> {
        check_shape(v, (self.m(), self.m()))?;
        Self::new(&self.entries * v.adjoint())
    }
}

/// An element of `u(N)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SkewHermitian {
    entries: CMatrix,
}

impl SkewHermitian {
    pub fn new(entries: CMatrix) -> Result<Self> {
        let dev = skew_deviation(&entries);
        if dev.is_nan() || dev > STRUCTURE_TOL {
            return Err(HoweError::NotSkewHermitian(dev));
        }
        Ok(Self { entries })
    }

    /// Skew-hermitian part `(A − A*)/2` of a square matrix.
    pub fn project(a: &CMatrix) -> Self {
        Self {
            entries: (a - a.adjoint()) * C64::new(0.5, 0.0),
        }
    }

    pub fn zero(size: usize) -> Self {
        Self {
            entries: CMatrix::zeros(size, size),
        }
    }

    /// The diagonal element `i·diag(λ)`, written `[λ]`.
    pub fn diagonal(lambda: &[f64]) -> Self {
        let d = CVector::from_iterator(lambda.len(), lambda.iter().map(|&x| I * x));
        Self {
            entries: CMatrix::from_diagonal(&d),
        }
    }

    pub fn size(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &CMatrix {
        &self.entries
    }

    /// Eigenvalues of `X / i`, weakly decreasing.
    pub fn spectrum(&self) -> Vec<f64> {
        let h = &self.entries * (-I);
        // symmetrize rounding noise before the hermitian solver sees it
        let h = (&h + h.adjoint()) * C64::new(0.5, 0.0);
        hermitian_eigenvalues(&h)
    }

    /// The coadjoint orbit through this element.
    pub fn orbit_label(&self) -> CoadjointOrbitLabel {
        CoadjointOrbitLabel::from_spectrum(self.spectrum())
            .expect("spectrum of a nonempty matrix")
    }

    /// Lie bracket `[X, Y] = XY − YX`.
    pub fn bracket(&self, other: &Self) -> Result<Self> {
        check_shape(&other.entries, self.entries.shape())?;
        Ok(Self {
            entries: &self.entries * &other.entries - &other.entries * &self.entries,
        })
    }

    /// Trace-form inner product `−tr(XY)`.
    pub fn inner(&self, other: &Self) -> f64 {
        -(&self.entries * &other.entries).trace().re
    }

    /// `Ad(g) X = g X g⁻¹` for unitary `g`.
    pub fn conjugate_by(&self, g: &CMatrix) -> Self {
        Self {
            entries: g * &self.entries * g.adjoint(),
        }
    }
}

/// A point `(g, α)` of `T*U(N)` trivialized by the right action.
#[derive(Debug, Clone, PartialEq)]
pub struct CotangentPoint {
    group_element: CMatrix,
    covector: SkewHermitian,
}

impl CotangentPoint {
    pub fn new(group_element: CMatrix, covector: SkewHermitian) -> Result<Self> {
        let n = covector.size();
        check_shape(&group_element, (n, n))?;
        let dev = unitary_deviation(&group_element);
        if dev.is_nan() || dev > STRUCTURE_TOL {
            return Err(HoweError::NotUnitary(dev));
        }
        Ok(Self {
            group_element,
            covector,
        })
    }

    pub fn group_element(&self) -> &CMatrix {
        &self.group_element
    }

    pub fn covector(&self) -> &SkewHermitian {
        &self.covector
    }
}

/// A point `[z]` of `ℙⁿ(ℂ)` with the Fubini–Study form scaled by `level`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectivePoint {
    homogeneous: CVector,
    level: u32,
}

impl ProjectivePoint {
    pub fn new(homogeneous: CVector, level: u32) -> Result<Self> {
        if level == 0 {
            return Err(HoweError::ZeroLevel);
        }
        if homogeneous.len() < 2 {
            return Err(HoweError::ShapeMismatch {
                expected: (2, 1),
                actual: (homogeneous.len(), 1),
            });
        }
        if homogeneous.iter().any(|x| !x.re.is_finite() || !x.im.is_finite()) {
            return Err(HoweError::NonFinite("homogeneous coordinates"));
        }
        if homogeneous.norm() == 0.0 {
            return Err(HoweError::ZeroVector);
        }
        Ok(Self { homogeneous, level })
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R, n: usize, level: u32) -> Result<Self> {
        Self::new(gaussian_vector(rng, n + 1), level)
    }

    /// The complex dimension `n` of the projective space.
    pub fn n(&self) -> usize {
        self.homogeneous.len() - 1
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn homogeneous(&self) -> &CVector {
        &self.homogeneous
    }

    pub fn rescaled(&self, c: C64) -> Result<Self> {
        Self::new(&self.homogeneous * c, self.level)
    }
}

fn check_shape(a: &CMatrix, expected: (usize, usize)) -> Result<()> {
    if a.shape() != expected {
        return Err(HoweError::ShapeMismatch {
            expected,
            actual: a.shape(),
        });
    }
    Ok(())
}

/// The flat symplectic form `ω(A, B) = Im tr(A* B)`.
pub fn omega_mat(a: &CMatrix, b: &CMatrix) -> Result<f64> {
    check_shape(b, a.shape())?;
    Ok(a.iter().zip(b.iter()).map(|(x, y)| (x.conj() * y).im).sum())
}

/// `Φ̃₁(z) = (i/2) z z*`, the moment map of `z ↦ Uz`.
pub fn moment1_mat(z: &MatrixPoint) -> SkewHermitian {
    let zz = &z.entries * z.entries.adjoint();
    SkewHermitian::project(&(zz * (I * 0.5)))
}

/// `Φ̃₂(z) = −(i/2) z* z`, the moment map of `z ↦ zV⁻¹`.
pub fn moment2_mat(z: &MatrixPoint) -> SkewHermitian {
    let zz = z.entries.adjoint() * &z.entries;
    SkewHermitian::project(&(zz * (I * -0.5)))
}

/// `Φ₁^ξ(z) = −½ Im tr(ξ z z*)`.
pub fn moment1_component(xi: &SkewHermitian, z: &MatrixPoint) -> f64 {
    -0.5 * (&xi.entries * &z.entries * z.entries.adjoint()).trace().im
}

/// `Φ₂^η(z) = ½ Im tr(η z* z)`, equal to `tr(η Φ̃₂(z))`.
pub fn moment2_component(eta: &SkewHermitian, z: &MatrixPoint) -> f64 {
    0.5 * (&eta.entries * z.entries.adjoint() * &z.entries).trace().im
}

/// Pairing `tr(ξ X)` of a Lie algebra element with a trace-form covector.
pub fn trace_pairing(xi: &SkewHermitian, x: &SkewHermitian) -> f64 {
    (&xi.entries * &x.entries).trace().re
}

/// `Φ^ζ([z]) = k (i/2π) ⟨z, ζz⟩ / ⟨z, z⟩` for `ζ ∈ u(n+1)`.
pub fn moment_fs(p: &ProjectivePoint, zeta: &SkewHermitian) -> Result<f64> {
    let z = &p.homogeneous;
    check_shape(&zeta.entries, (z.len(), z.len()))?;
    let num = z.dotc(&(&zeta.entries * z));
    let den = z.norm_squared();
    let val = num * I * (p.level as f64 / (2.0 * PI)) / den;
    Ok(val.re)
}

/// The generator `ξ₀ = diag(2πi, 0, …, 0)` of the embedded `u(1)`.
pub fn u1_generator(n: usize) -> SkewHermitian {
    let mut d = vec![0.0; n + 1];
    d[0] = 2.0 * PI;
    SkewHermitian::diagonal(&d)
}

/// The `U(1)` moment value in the basis `ξ₀*`; lies in `[−k, 0]`.
pub fn moment1_fs(p: &ProjectivePoint) -> f64 {
    moment_fs(p, &u1_generator(p.n())).expect("generator has matching size")
}

/// The `U(n)` moment value `k (i/2π) w w* / ⟨z, z⟩` with `w = (z₁, …, zₙ)`.
pub fn moment2_fs(p: &ProjectivePoint) -> SkewHermitian {
    let z = &p.homogeneous;
    let w = z.rows(1, p.n()).into_owned();
    let scale = I * (p.level as f64 / (2.0 * PI * z.norm_squared()));
    SkewHermitian::project(&(&w * w.adjoint() * scale))
}

/// Coordinate `y` with `Φ₂([z]) ∈ U(n)·(y φ₁₁)`, where `φ₁₁ = (i/2π)E₁₁`.
pub fn fs_slice_coordinate(p: &ProjectivePoint) -> f64 {
    2.0 * PI * moment2_fs(p).spectrum()[0]
}

/// `Φ₁(g, α) = α`.
pub fn moment1_cot(p: &CotangentPoint) -> SkewHermitian {
    p.covector.clone()
}

/// `Φ₂(g, α) = −Ad*(g⁻¹)α = −g⁻¹ α g`.
pub fn moment2_cot(p: &CotangentPoint) -> SkewHermitian {
    let g = &p.group_element;
    SkewHermitian {
        entries: -(g.adjoint() * &p.covector.entries * g),
    }
}
