//! Computational companion to the symplectic Howe correspondence for unitary
//! group pairs.
//!
//! The crate covers three models:
//!
//! * `U(n) × U(m)` acting on `Mat(n×m; ℂ)` by `z ↦ U z V⁻¹`,
//! * `U(N) × U(N)` acting on `T*U(N)` from the left and right,
//! * `U(1) × U(n)` acting on `(ℙⁿ(ℂ), k·ω_FS)`.
//!
//! For each it evaluates the moment maps, the orbit correspondence `Λ`
//! between the two moment images, and the integrality and dimension
//! bookkeeping of the paired orbits. The [`quantization`] module checks the
//! quantized decompositions as exact dimension identities.

pub mod bracket;
pub mod combinatorics;
pub mod correspondence;
pub mod error;
pub mod flow;
pub mod lie;
pub mod linalg;
pub mod moment;
pub mod quantization;
pub mod report;
pub mod suites;

pub use bracket::{poisson_bracket_mat, PoissonBracket, SmoothObservable, DEFAULT_FD_STEP};
pub use correspondence::{
    integrality_preserved, lambda_cotangent, lambda_matrix, lambda_projective,
    reduced_space_dimension_check, svd_sigma, verify_spectral_correspondence, CorrespondencePair,
    Model, SigmaVector,
};
pub use error::{HoweError, Result};
pub use flow::{gradient_flow_norm_sq, FlowSummary, FlowTrajectory};
pub use lie::{
    dual_weight, is_integral, orbit_dimension, weyl_dimension, CoadjointOrbitLabel,
    DominantWeight, Partition,
};
pub use moment::{
    moment1_cot, moment1_mat, moment2_cot, moment2_mat, moment_fs, omega_mat, CotangentPoint,
    MatrixPoint, ProjectivePoint, SkewHermitian,
};
pub use quantization::{
    gl_duality_check, matrix_quantization_table, multiplicity_query, projective_decomposition_check,
    schur_dimension, DecompositionRow, DecompositionTable,
};
pub use report::{Check, Status, Tolerance, VerificationReport};
