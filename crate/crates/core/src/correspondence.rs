//! The orbit correspondence `Λ` for the matrix, cotangent and projective
//! models, together with spectral and dimension checks that the moment
//! images pair up as `Λ` predicts.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::bracket::to_real;
use crate::error::{HoweError, Result};
use crate::lie::{is_integral, orbit_dimension, CoadjointOrbitLabel, LABEL_TOL};
use crate::linalg::{real_rank, singular_values, CMatrix, C64};
use crate::moment::{
    fs_slice_coordinate, moment1_cot, moment1_fs, moment1_mat, moment2_cot, moment2_mat,
    CotangentPoint, MatrixPoint, ProjectivePoint,
};
use crate::report::Check;

/// Tolerance for matching computed spectra against `Λ`-paired labels.
pub const SPECTRAL_TOL: f64 = 1e-9;

/// Singular values `σ₁ ≥ … ≥ σ_m ≥ 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SigmaVector {
    values: Vec<f64>,
}

impl SigmaVector {
    /// Sorts weakly decreasing; rejects empty, negative or non-finite input.
    pub fn new(mut values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(HoweError::InvalidSigma("empty".into()));
        }
        if values.iter().any(|x| !x.is_finite() || *x < 0.0) {
            return Err(HoweError::InvalidSigma(format!("{values:?}")));
        }
        values.sort_by(|a, b| b.total_cmp(a));
        Ok(Self { values })
    }

    /// The σ vector with `½σᵢ² = half_squares[i]`.
    pub fn from_half_squares(half_squares: &[f64]) -> Result<Self> {
        if half_squares.iter().any(|&h| h < 0.0) {
            return Err(HoweError::InvalidSigma(format!("{half_squares:?}")));
        }
        Self::new(half_squares.iter().map(|h| (2.0 * h).sqrt()).collect())
    }

    pub fn m(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn half_squares(&self) -> Vec<f64> {
        self.values.iter().map(|s| 0.5 * s * s).collect()
    }

    /// Number of strictly positive values, judged on `½σ²` at [`LABEL_TOL`].
    pub fn rank(&self) -> usize {
        self.half_squares().iter().filter(|&&h| h > LABEL_TOL).count()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Model {
    Matrix,
    Cotangent,
    Projective,
}

/// A source orbit and its image under the model's `Λ`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrespondencePair {
    pub source: CoadjointOrbitLabel,
    pub target: CoadjointOrbitLabel,
    pub model: Model,
}

/// Singular values of `z`, weakly decreasing.
pub fn svd_sigma(z: &MatrixPoint) -> SigmaVector {
    SigmaVector::new(singular_values(z.entries())).expect("singular values are nonnegative")
}

/// `Λ: O^{U(n)}_{[½σ², 0]} ↦ O^{U(m)}_{[−½σ²]}`.
pub fn lambda_matrix(sigma: &SigmaVector, n: usize) -> Result<CorrespondencePair> {
    let m = sigma.m();
    if n < m {
        return Err(HoweError::BadDimensions { n, m });
    }
    let half = sigma.half_squares();
    let mut source = half.clone();
    source.resize(n, 0.0);
    let target = half.iter().map(|h| -h).collect();
    Ok(CorrespondencePair {
        source: CoadjointOrbitLabel::new(n, source)?,
        target: CoadjointOrbitLabel::new(m, target)?,
        model: Model::Matrix,
    })
}

/// `Λ: O_α ↦ O_{−α}` on `T*U(N)`.
pub fn lambda_cotangent(alpha: &CoadjointOrbitLabel) -> CorrespondencePair {
    CorrespondencePair {
        source: alpha.clone(),
        target: alpha.negated(),
        model: Model::Cotangent,
    }
}

/// `Λ: x ↦ U(n)·((x + k)φ₁₁)` for `x ∈ [−k, 0]`; the target spectrum is
/// written in units of `φ₁₁` as `(x + k, 0, …, 0)`.
pub fn lambda_projective(x: f64, k: u32, n: usize) -> Result<CorrespondencePair> {
    if k == 0 {
        return Err(HoweError::ZeroLevel);
    }
    if n == 0 {
        return Err(HoweError::InvalidParameter("n must be positive".into()));
    }
    let kf = k as f64;
    if !x.is_finite() || x < -kf - LABEL_TOL || x > LABEL_TOL {
        return Err(HoweError::OutsideMomentImage { x, k });
    }
    let x = x.clamp(-kf, 0.0);
    let mut target = vec![0.0; n];
    target[0] = x + kf;
    Ok(CorrespondencePair {
        source: CoadjointOrbitLabel::new(1, vec![x])?,
        target: CoadjointOrbitLabel::new(n, target)?,
        model: Model::Projective,
    })
}

/// Checks that the spectra of `Φ̃₁(z)/i` and `Φ̃₂(z)/i` land on the labels
/// `Λ` pairs through `svd_sigma(z)`.
pub fn verify_spectral_correspondence(z: &MatrixPoint) -> Vec<Check> {
    let pair = lambda_matrix(&svd_sigma(z), z.n()).expect("matrix points satisfy n >= m");
    let src = moment1_mat(z).orbit_label();
    let tgt = moment2_mat(z).orbit_label();
    let d1 = src.max_deviation(&pair.source).unwrap_or(f64::INFINITY);
    let d2 = tgt.max_deviation(&pair.target).unwrap_or(f64::INFINITY);
    vec![
        Check::within("spectral.source", d1, SPECTRAL_TOL)
            .with_detail(format!("Φ1 spectrum {src}, expected {}", pair.source)),
        Check::within("spectral.target", d2, SPECTRAL_TOL)
            .with_detail(format!("Φ2 spectrum {tgt}, expected {}", pair.target)),
    ]
}

/// Checks that the `U(m)` moment of `(g, α)` lies on `Λ(O_α)`.
pub fn verify_cotangent_correspondence(p: &CotangentPoint) -> Check {
    let pair = lambda_cotangent(&moment1_cot(p).orbit_label());
    let image = moment2_cot(p).orbit_label();
    let d = image.max_deviation(&pair.target).unwrap_or(f64::INFINITY);
    Check::within("cotangent.spectral", d, SPECTRAL_TOL)
}

/// Checks that the `U(n)` moment of `[z]` lies on `Λ(Φ₁([z]))`.
pub fn verify_projective_correspondence(p: &ProjectivePoint) -> Result<Check> {
    let x = moment1_fs(p);
    let pair = lambda_projective(x, p.level(), p.n())?;
    let mut observed = vec![0.0; p.n()];
    observed[0] = fs_slice_coordinate(p);
    let image = CoadjointOrbitLabel::new(p.n(), observed)?;
    let d = image.max_deviation(&pair.target).unwrap_or(f64::INFINITY);
    Ok(Check::within("projective.spectral", d, SPECTRAL_TOL))
}

/// Stabilizer and orbit dimensions at the normal form `Σ(σ)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ReducedSpaceDimensions {
    /// `dim G₂·z = m² − (m − r)²`.
    pub right_orbit: usize,
    /// `dim G_{1,α₁} = Σ mᵢ² + (n − r)²`.
    pub source_stabilizer: usize,
    /// `dim G_{1,z} = (n − r)²`.
    pub point_stabilizer: usize,
    /// `dim M_{α₁} = dim G₂·z − (dim G_{1,α₁} − dim G_{1,z})`.
    pub reduced: usize,
    /// `dim Λ(O_{α₁})`.
    pub target_orbit: usize,
}

/// Dimension bookkeeping for the reduced space at `O_{α₁}`, where `α₁` is the
/// source label of `Λ` at `σ`. Repeated and zero singular values are allowed.
pub fn reduced_space_dimensions(sigma: &SigmaVector, n: usize) -> Result<ReducedSpaceDimensions> {
    let pair = lambda_matrix(sigma, n)?;
    let m = sigma.m();
    let r = sigma.rank();
    // multiplicities of the positive values; the zero block is (n − r)
    let positive = CoadjointOrbitLabel::from_spectrum(sigma.half_squares()[..r].to_vec());
    let positive_sq: usize = match positive {
        Ok(label) => label.multiplicities().iter().map(|k| k * k).sum(),
        Err(_) => 0,
    };
    let right_orbit = m * m - (m - r) * (m - r);
    let point_stabilizer = (n - r) * (n - r);
    let source_stabilizer = positive_sq + point_stabilizer;
    let reduced = right_orbit + point_stabilizer - source_stabilizer;
    Ok(ReducedSpaceDimensions {
        right_orbit,
        source_stabilizer,
        point_stabilizer,
        reduced,
        target_orbit: orbit_dimension(&pair.target),
    })
}

/// Passes iff `dim M_{α₁} = dim Λ(O_{α₁})`.
pub fn reduced_space_dimension_check(sigma: &SigmaVector, n: usize) -> Result<Check> {
    let d = reduced_space_dimensions(sigma, n)?;
    Ok(Check::exact(
        "reduced_space.dimension",
        d.reduced == d.target_orbit,
        d.reduced as f64 - d.target_orbit as f64,
    )
    .with_detail(format!(
        "σ={:?}, n={n}: dim M={} dim O={}",
        sigma.values(),
        d.reduced,
        d.target_orbit
    )))
}

/// `is_integral(source) == is_integral(target)`.
pub fn integrality_preserved(pair: &CorrespondencePair) -> bool {
    is_integral(&pair.source) == is_integral(&pair.target)
}

/// Whether `Φ⁻¹(O₁ × O₂)` is nonempty in `Mat(n×m; ℂ)`: since `z z*` and
/// `z* z` share their nonzero eigenvalues, this holds exactly when `O₂ = Λ(O₁)`.
/// Returns the multiplicity, 0 or 1.
pub fn point_reduction_multiplicity(
    source: &CoadjointOrbitLabel,
    target: &CoadjointOrbitLabel,
) -> u8 {
    let (n, m) = (source.group_rank(), target.group_rank());
    if n < m {
        return 0;
    }
    let s = source.spectrum();
    if s.iter().any(|&x| x < -LABEL_TOL) || s[m..].iter().any(|x| x.abs() > LABEL_TOL) {
        return 0;
    }
    let half: Vec<f64> = s[..m].iter().map(|x| x.max(0.0)).collect();
    let sigma = match SigmaVector::from_half_squares(&half) {
        Ok(s) => s,
        Err(_) => return 0,
    };
    match lambda_matrix(&sigma, n) {
        Ok(pair) if pair.source == *source && pair.target == *target => 1,
        _ => 0,
    }
}

/// Which group acts in [`orbit_dimension_numeric`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ActingGroup {
    Left,
    Right,
    Both,
}

fn unitary_lie_basis(n: usize) -> Vec<CMatrix> {
    let mut out = Vec::with_capacity(n * n);
    for a in 0..n {
        let mut e = CMatrix::zeros(n, n);
        e[(a, a)] = C64::new(0.0, 1.0);
        out.push(e);
        for b in (a + 1)..n {
            let mut re = CMatrix::zeros(n, n);
            re[(a, b)] = C64::new(1.0, 0.0);
            re[(b, a)] = C64::new(-1.0, 0.0);
            out.push(re);
            let mut im = CMatrix::zeros(n, n);
            im[(a, b)] = C64::new(0.0, 1.0);
            im[(b, a)] = C64::new(0.0, 1.0);
            out.push(im);
        }
    }
    out
}

/// Dimension of the orbit through `z` from the rank of the infinitesimal action.
pub fn orbit_dimension_numeric(z: &MatrixPoint, group: ActingGroup) -> usize {
    let mut columns = Vec::new();
    if matches!(group, ActingGroup::Left | ActingGroup::Both) {
        for xi in unitary_lie_basis(z.n()) {
            columns.push(to_real(&(xi * z.entries())));
        }
    }
    if matches!(group, ActingGroup::Right | ActingGroup::Both) {
        for eta in unitary_lie_basis(z.m()) {
            columns.push(to_real(&-(z.entries() * eta)));
        }
    }
    let a = DMatrix::from_columns(&columns);
    real_rank(&a, 1e-10)
}

/// All σ with `½σᵢ² ∈ {0, ½, 1, …, steps/2}`, every multiplicity pattern included.
pub fn half_square_grid(m: usize, steps: u32) -> Vec<SigmaVector> {
    fn rec(m: usize, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() == m {
            out.push(prefix.clone());
            return;
        }
        for j in (0..=max).rev() {
            prefix.push(j);
            rec(m, j, prefix, out);
            prefix.pop();
        }
    }
    let mut raw = Vec::new();
    rec(m, steps, &mut Vec::new(), &mut raw);
    raw.into_iter()
        .map(|js| {
            let half: Vec<f64> = js.iter().map(|&j| j as f64 / 2.0).collect();
            SigmaVector::from_half_squares(&half).expect("grid values are nonnegative")
        })
        .collect()
}
