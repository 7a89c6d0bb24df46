//! Command-line driver for the howelab verification suites.
//!
//! Every subcommand builds a [`VerificationReport`]; `main` serializes it and
//! maps the outcome onto the exit codes 0 (pass), 1 (verification failure)
//! and 2 (usage error).

use std::fmt;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::Rng;
use rayon::prelude::*;

use howelab_core::bracket::PoissonBracket;
use howelab_core::correspondence::{
    half_square_grid, lambda_cotangent, lambda_matrix, lambda_projective,
    reduced_space_dimension_check, verify_cotangent_correspondence,
    verify_projective_correspondence, SigmaVector,
};
use howelab_core::linalg::{haar_unitary, random_skew_hermitian};
use howelab_core::moment::{CotangentPoint, MatrixPoint, ProjectivePoint, SkewHermitian};
use howelab_core::quantization::{matrix_quantization_table, projective_decomposition_check, DecompositionTable};
use howelab_core::report::{Check, VerificationReport};
use howelab_core::suites::{self, stream_rng, Stream};
use howelab_core::{gradient_flow_norm_sq, is_integral, verify_spectral_correspondence, CoadjointOrbitLabel};

/// Environment variable naming the directory reports are written to.
pub const REPORT_DIR_ENV: &str = "HOWELAB_REPORT_DIR";

#[derive(Debug, Parser)]
#[command(name = "howelab", version, about = "Verification suites for symplectic Howe pairs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Bracket vanishing, invariance, equivariance and Fubini–Study range checks.
    VerifyMoment(MomentArgs),
    /// Spectral correspondence, reduced-space dimensions and integrality under Λ.
    VerifyCorrespondence(CorrespondenceArgs),
    /// Exact dimension identities of the quantized decompositions.
    VerifyDuality(DualityArgs),
    /// Descent of ‖Φ‖² from random starts.
    Flow(FlowArgs),
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Map samples in parallel; results are aggregated in sample order.
    #[arg(long)]
    pub parallel: bool,
}

#[derive(Debug, Clone, Args)]
pub struct MomentArgs {
    #[arg(long, default_value_t = 3)]
    pub n: usize,
    #[arg(long, default_value_t = 2)]
    pub m: usize,
    #[arg(long, default_value_t = 100)]
    pub samples: u64,
    #[arg(long = "fd-step", default_value_t = 1e-5)]
    pub fd_step: f64,
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
    /// Level of the Fubini–Study form for the range check.
    #[arg(long, default_value_t = 1)]
    pub k: u32,
    #[command(flatten)]
    pub run: RunArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CorrespondenceModel {
    Matrix,
    Cotangent,
    Projective,
}

#[derive(Debug, Clone, Args)]
pub struct CorrespondenceArgs {
    #[arg(long, value_enum, default_value_t = CorrespondenceModel::Matrix)]
    pub model: CorrespondenceModel,
    #[arg(long, default_value_t = 3)]
    pub n: usize,
    #[arg(long, default_value_t = 2)]
    pub m: usize,
    /// `auto`, or σ vectors separated by `;` with comma-separated entries.
    #[arg(long = "sigma-grid", default_value = "auto")]
    pub sigma_grid: String,
    /// Rank of `U(N)` for the cotangent model.
    #[arg(long, default_value_t = 3)]
    pub rank: usize,
    /// Level for the projective model.
    #[arg(long, default_value_t = 2)]
    pub k: u32,
    #[arg(long, default_value_t = 100)]
    pub samples: u64,
    #[command(flatten)]
    pub run: RunArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DualityModel {
    Matrix,
    Projective,
}

#[derive(Debug, Clone, Args)]
pub struct DualityArgs {
    #[arg(long, value_enum, default_value_t = DualityModel::Matrix)]
    pub model: DualityModel,
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    #[arg(long, default_value_t = 2)]
    pub m: usize,
    #[arg(long = "k-max", default_value_t = 8)]
    pub k_max: u32,
    /// Write the decomposition tables as CSV.
    #[arg(long = "emit-table")]
    pub emit_table: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Args)]
pub struct FlowArgs {
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    #[arg(long, default_value_t = 2)]
    pub m: usize,
    #[arg(long, default_value_t = 1000)]
    pub steps: usize,
    #[arg(long = "step-size", default_value_t = 1e-2)]
    pub step_size: f64,
    /// Number of random starting points.
    #[arg(long, default_value_t = 20)]
    pub starts: u64,
    /// Start from z = 0 instead of random points.
    #[arg(long = "zero-start")]
    pub zero_start: bool,
    #[command(flatten)]
    pub run: RunArgs,
}

/// Invalid flag combinations that clap cannot express.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "usage error: {}", self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

fn check_dims(n: usize, m: usize) -> Result<()> {
    if m == 0 || n < m {
        return Err(usage(format!("requires n >= m >= 1, got n={n}, m={m}")));
    }
    Ok(())
}

/// Seconds since the epoch, or `SOURCE_DATE_EPOCH` when set.
pub fn timestamp() -> u64 {
    if let Some(t) = std::env::var("SOURCE_DATE_EPOCH").ok().and_then(|s| s.parse().ok()) {
        return t;
    }
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

fn map_samples<T, F>(parallel: bool, count: u64, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64) -> T + Sync + Send,
{
    if parallel {
        (0..count).into_par_iter().map(f).collect()
    } else {
        (0..count).map(f).collect()
    }
}

/// The outcome of one command.
pub struct Outcome {
    pub report: VerificationReport,
    pub tables: Vec<DecompositionTable>,
}

pub fn run(command: &Command) -> Result<Outcome> {
    match command {
        Command::VerifyMoment(a) => cmd_verify_moment(a).map(|report| Outcome { report, tables: vec![] }),
        Command::VerifyCorrespondence(a) => {
            cmd_verify_correspondence(a).map(|report| Outcome { report, tables: vec![] })
        }
        Command::VerifyDuality(a) => cmd_verify_duality(a),
        Command::Flow(a) => cmd_flow(a).map(|report| Outcome { report, tables: vec![] }),
    }
}

pub fn cmd_verify_moment(a: &MomentArgs) -> Result<VerificationReport> {
    check_dims(a.n, a.m)?;
    if !(a.fd_step > 0.0 && a.tol > 0.0) {
        return Err(usage("--fd-step and --tol must be positive"));
    }
    if a.k == 0 {
        return Err(usage("--k must be positive"));
    }
    let (n, m, seed) = (a.n, a.m, a.run.seed);
    let mut report = VerificationReport::new("verify-moment", seed, timestamp());
    report
        .param("n", n)
        .param("m", m)
        .param("k", a.k)
        .param("samples", a.samples as usize)
        .param("fd_step", a.fd_step)
        .param("tol", a.tol);
    if a.samples == 0 {
        report.warnings.push("--samples 0: every sampled check is vacuous".into());
    }

    let pb = PoissonBracket::new(n, m, a.fd_step)?;
    let brackets = map_samples(a.run.parallel, a.samples, |i| {
        suites::bracket_vanishing_sample(&pb, n, m, seed, i)
    })
    .into_iter()
    .collect::<howelab_core::Result<Vec<_>>>()?;
    report.push(suites::max_deviation_check("moment.bracket_vanishing", brackets, a.tol));

    let inv = map_samples(a.run.parallel, a.samples, |i| suites::invariance_sample(n, m, seed, i))
        .into_iter()
        .collect::<howelab_core::Result<Vec<_>>>()?;
    report.push(suites::max_deviation_check("moment.invariance.phi1_right", inv.iter().map(|d| d.0), 1e-10));
    report.push(suites::max_deviation_check("moment.invariance.phi2_left", inv.iter().map(|d| d.1), 1e-10));

    let eqv = map_samples(a.run.parallel, a.samples, |i| suites::equivariance_sample(n, m, seed, i))
        .into_iter()
        .collect::<howelab_core::Result<Vec<_>>>()?;
    report.push(suites::max_deviation_check("moment.equivariance.phi1", eqv.iter().map(|d| d.0), 1e-10));
    report.push(suites::max_deviation_check("moment.equivariance.phi2", eqv.iter().map(|d| d.1), 1e-10));

    let k = a.k;
    let fs = map_samples(a.run.parallel, a.samples, |i| suites::projective_range_sample(n, k, seed, i))
        .into_iter()
        .collect::<howelab_core::Result<Vec<_>>>()?;
    report.push(suites::max_deviation_check("moment.fs_u1_range", fs, 1e-12));
    Ok(report)
}

fn parse_sigma_grid(spec: &str, m: usize) -> Result<Vec<SigmaVector>> {
    if spec.trim() == "auto" {
        return Ok(half_square_grid(m, 6));
    }
    spec.split(';')
        .filter(|s| !s.trim().is_empty())
        .map(|s| {
            let values = s
                .split(',')
                .map(|x| x.trim().parse::<f64>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| usage(format!("bad sigma entry in {s:?}: {e}")))?;
            if values.len() != m {
                return Err(usage(format!("sigma {s:?} has {} entries, expected m={m}", values.len())));
            }
            SigmaVector::new(values).map_err(|e| usage(e.to_string()))
        })
        .collect()
}

pub fn cmd_verify_correspondence(a: &CorrespondenceArgs) -> Result<VerificationReport> {
    let seed = a.run.seed;
    let mut report = VerificationReport::new("verify-correspondence", seed, timestamp());
    report.param("samples", a.samples as usize);
    if a.samples == 0 {
        report.warnings.push("--samples 0: sampled checks are vacuous".into());
    }
    match a.model {
        CorrespondenceModel::Matrix => matrix_correspondence(a, &mut report)?,
        CorrespondenceModel::Cotangent => cotangent_correspondence(a, &mut report)?,
        CorrespondenceModel::Projective => projective_correspondence(a, &mut report)?,
    }
    report
        .notes
        .push("homeomorphism of the orbit spaces is topological and not checked".into());
    Ok(report)
}

fn matrix_correspondence(a: &CorrespondenceArgs, report: &mut VerificationReport) -> Result<()> {
    let (n, m, seed) = (a.n, a.m, a.run.seed);
    check_dims(n, m)?;
    let grid = parse_sigma_grid(&a.sigma_grid, m)?;
    report
        .param("model", "matrix")
        .param("n", n)
        .param("m", m)
        .param("sigma_grid", a.sigma_grid.as_str())
        .param("grid_size", grid.len());

    let random = map_samples(a.run.parallel, a.samples, |i| suites::spectral_sample(n, m, seed, i))
        .into_iter()
        .collect::<howelab_core::Result<Vec<_>>>()?;
    report.push(suites::max_deviation_check("correspondence.spectral.random", random, 1e-9));

    let mut normal = Vec::new();
    let mut dim_failures = 0;
    let mut pairs = Vec::new();
    for (i, sigma) in grid.iter().enumerate() {
        let z = MatrixPoint::normal_form(n, sigma.values())?;
        // rotate the normal form so the check sees a generic representative
        let mut rng = stream_rng(seed, Stream::Spectral, (1 << 31) | i as u64);
        let u = haar_unitary(&mut rng, n);
        let v = haar_unitary(&mut rng, m);
        let w = MatrixPoint::new(&u * z.entries() * &v)?;
        normal.extend(verify_spectral_correspondence(&w).into_iter().map(|c| c.measured));
        if !reduced_space_dimension_check(sigma, n)?.passed() {
            dim_failures += 1;
        }
        pairs.push(lambda_matrix(sigma, n)?);
    }
    report.push(suites::max_deviation_check("correspondence.spectral.grid", normal, 1e-9));
    report.push(
        Check::exact("correspondence.reduced_dimension", dim_failures == 0, dim_failures as f64)
            .with_detail(format!("{} σ vectors", grid.len())),
    );
    report.push(suites::integrality_check("correspondence.integrality", &pairs));

    let mut collisions = 0;
    for (i, p) in pairs.iter().enumerate() {
        for q in &pairs[i + 1..] {
            if (p.source == q.source) != (p.target == q.target) {
                collisions += 1;
            }
        }
    }
    report.push(Check::exact("correspondence.lambda_injective", collisions == 0, collisions as f64));
    Ok(())
}

fn cotangent_correspondence(a: &CorrespondenceArgs, report: &mut VerificationReport) -> Result<()> {
    let (rank, seed) = (a.rank, a.run.seed);
    if rank == 0 {
        return Err(usage("--rank must be positive"));
    }
    report.param("model", "cotangent").param("rank", rank);
    let samples = map_samples(a.run.parallel, a.samples, |i| -> howelab_core::Result<_> {
        let mut rng = stream_rng(seed, Stream::Cotangent, i);
        let alpha = SkewHermitian::project(&random_skew_hermitian(&mut rng, rank));
        let label = alpha.orbit_label();
        let p = CotangentPoint::new(haar_unitary(&mut rng, rank), alpha)?;
        let spectral = verify_cotangent_correspondence(&p).measured;
        let back = lambda_cotangent(&lambda_cotangent(&label).target).target;
        let involution = back.max_deviation(&label).unwrap_or(f64::INFINITY);
        // integer spectra from the same stream
        let ints: Vec<f64> = (0..rank).map(|_| rng.random_range(-5i32..=5) as f64).collect();
        let int_pair = lambda_cotangent(&CoadjointOrbitLabel::from_spectrum(ints)?);
        let generic_pair = lambda_cotangent(&label);
        Ok((spectral, involution, vec![int_pair, generic_pair]))
    })
    .into_iter()
    .collect::<howelab_core::Result<Vec<_>>>()?;
    report.push(suites::max_deviation_check(
        "correspondence.cotangent.spectral",
        samples.iter().map(|s| s.0),
        1e-9,
    ));
    report.push(suites::max_deviation_check(
        "correspondence.cotangent.involution",
        samples.iter().map(|s| s.1),
        1e-9,
    ));
    let pairs: Vec<_> = samples.into_iter().flat_map(|s| s.2).collect();
    report.push(suites::integrality_check("correspondence.cotangent.integrality", &pairs));
    Ok(())
}

fn projective_correspondence(a: &CorrespondenceArgs, report: &mut VerificationReport) -> Result<()> {
    let (n, k, seed) = (a.n, a.k, a.run.seed);
    if n == 0 || k == 0 {
        return Err(usage("--n and --k must be positive"));
    }
    report.param("model", "projective").param("n", n).param("k", k);

    let low = lambda_projective(-(k as f64), k, n)?;
    let zero = CoadjointOrbitLabel::zero(n)?;
    report.push(Check::exact("correspondence.projective.endpoint_low", low.target == zero, 0.0)
        .with_detail(format!("x=-k maps to {}", low.target)));
    let high = lambda_projective(0.0, k, n)?;
    let mut top = vec![0.0; n];
    top[0] = k as f64;
    let expected = CoadjointOrbitLabel::new(n, top)?;
    report.push(Check::exact("correspondence.projective.endpoint_high", high.target == expected, 0.0)
        .with_detail(format!("x=0 maps to {}", high.target)));

    let pairs = (0..=k)
        .map(|d| lambda_projective(-(d as f64), k, n))
        .collect::<howelab_core::Result<Vec<_>>>()?;
    let all_integral = pairs.iter().all(|p| is_integral(&p.source) && is_integral(&p.target));
    report.push(Check::exact("correspondence.projective.integral_points", all_integral, 0.0));
    report.push(suites::integrality_check("correspondence.projective.integrality", &pairs));

    let spectral = map_samples(a.run.parallel, a.samples, |i| -> howelab_core::Result<f64> {
        let mut rng = stream_rng(seed, Stream::ProjectiveSpectral, i);
        let p = ProjectivePoint::random(&mut rng, n, k)?;
        Ok(verify_projective_correspondence(&p)?.measured)
    })
    .into_iter()
    .collect::<howelab_core::Result<Vec<_>>>()?;
    report.push(suites::max_deviation_check("correspondence.projective.spectral", spectral, 1e-9));
    Ok(())
}

pub fn cmd_verify_duality(a: &DualityArgs) -> Result<Outcome> {
    let mut report = VerificationReport::new("verify-duality", a.seed, timestamp());
    report.param("k_max", a.k_max);
    let tables = match a.model {
        DualityModel::Matrix => {
            check_dims(a.n, a.m)?;
            report.param("model", "matrix").param("n", a.n).param("m", a.m);
            matrix_quantization_table(a.n, a.m, a.k_max)?
        }
        DualityModel::Projective => {
            if a.n == 0 {
                return Err(usage("--n must be positive"));
            }
            report.param("model", "projective").param("n", a.n);
            (0..=a.k_max)
                .map(|k| projective_decomposition_check(a.n, k))
                .collect::<howelab_core::Result<Vec<_>>>()?
        }
    };
    for t in &tables {
        let k = t.degree;
        report.push(
            Check::exact(format!("duality.k{k}.identity"), t.identity_holds(), 0.0).with_detail(format!(
                "lhs={} rhs={} closed_form={}",
                t.lhs_dimension, t.rhs_dimension, t.closed_form_sum
            )),
        );
        report.push(Check::exact(format!("duality.k{k}.multiplicity_free"), t.multiplicity_free(), 0.0));
        report.push(Check::exact(format!("duality.k{k}.pairing_injective"), t.pairing_injective(), 0.0));
        report.push(Check::exact(format!("duality.k{k}.lambda_consistent"), t.lambda_consistent, 0.0));
    }
    if let Some(path) = &a.emit_table {
        write_tables_csv(path, &tables)?;
    }
    Ok(Outcome { report, tables })
}

/// Writes one CSV row per decomposition row.
pub fn write_tables_csv(path: &Path, tables: &[DecompositionTable]) -> Result<()> {
    let mut w = csv::Writer::from_path(path).with_context(|| format!("creating {}", path.display()))?;
    w.write_record([
        "model",
        "degree",
        "source",
        "target",
        "multiplicity",
        "source_dim",
        "target_dim",
    ])?;
    let join = |v: &[i64]| v.iter().map(i64::to_string).collect::<Vec<_>>().join(" ");
    for t in tables {
        let model = serde_json::to_value(t.model)?;
        let model = model.as_str().unwrap_or("unknown").to_owned();
        for r in &t.rows {
            w.write_record([
                model.clone(),
                t.degree.to_string(),
                join(r.source.entries()),
                join(r.target.entries()),
                r.multiplicity.to_string(),
                r.source_dim.to_string(),
                r.target_dim.to_string(),
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn cmd_flow(a: &FlowArgs) -> Result<VerificationReport> {
    check_dims(a.n, a.m)?;
    if a.steps == 0 || !(a.step_size > 0.0 && a.step_size.is_finite()) {
        return Err(usage("--steps and --step-size must be positive"));
    }
    let seed = a.run.seed;
    let mut report = VerificationReport::new("flow", seed, timestamp());
    report
        .param("n", a.n)
        .param("m", a.m)
        .param("steps", a.steps)
        .param("step_size", a.step_size)
        .param("starts", if a.zero_start { 1 } else { a.starts as usize })
        .param("inner_product", "trace form -tr(XY)");

    let summaries = if a.zero_start {
        let z = MatrixPoint::zero(a.n, a.m)?;
        vec![gradient_flow_norm_sq(&z, a.steps, a.step_size)?.summary]
    } else {
        if a.starts == 0 {
            report.warnings.push("--starts 0: flow checks are vacuous".into());
        }
        map_samples(a.run.parallel, a.starts, |i| {
            suites::flow_sample(a.n, a.m, a.steps, a.step_size, seed, i)
        })
        .into_iter()
        .collect::<howelab_core::Result<Vec<_>>>()?
    };

    let non_monotone = summaries.iter().filter(|s| !s.monotone).count();
    let stalled = summaries.iter().filter(|s| s.stalled).count();
    let halvings: usize = summaries.iter().map(|s| s.halvings).sum();
    let bound = summaries.iter().map(|s| s.norm_bound).fold(0.0, f64::max);
    report.push(Check::exact("flow.mu_monotone", non_monotone == 0, non_monotone as f64));
    report.push(Check::exact("flow.not_stalled", stalled == 0, stalled as f64));
    report.push(
        Check::within("flow.norm_bound", bound, 10.0)
            .with_detail("max over starts of max_t ‖z_t‖ / ‖z_0‖".to_owned()),
    );
    if a.zero_start {
        let stationary = summaries[0].max_norm == 0.0;
        report.push(Check::exact("flow.zero_stationary", stationary, summaries[0].max_norm));
    }
    report.param("halvings", halvings);
    report.param("norm_bound_constant", bound);
    Ok(report)
}

/// Serializes `report` and writes it to `$HOWELAB_REPORT_DIR` if set,
/// returning the path written (or `None` when the caller should print it).
pub fn persist_report(report: &VerificationReport) -> Result<(String, Option<PathBuf>)> {
    let json = serde_json::to_string_pretty(report)?;
    match std::env::var_os(REPORT_DIR_ENV) {
        Some(dir) => {
            let dir = PathBuf::from(dir);
            std::fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
            let path = dir.join(format!("{}-seed{}.json", report.suite, report.seed));
            std::fs::write(&path, &json).with_context(|| format!("writing {}", path.display()))?;
            Ok((json, Some(path)))
        }
        None => Ok((json, None)),
    }
}
