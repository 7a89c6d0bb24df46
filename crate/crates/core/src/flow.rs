//! Steepest descent of `μ = ‖Φ₁‖² + ‖Φ₂‖²` on `Mat(n×m; ℂ)`.
//!
//! The norm is the trace form `⟨X, Y⟩ = −tr(XY)` on `u(n) ⊕ u(m)`, which
//! makes `μ(z) = ½ tr((z* z)²)` with real gradient `2 z z* z`.

use serde::Serialize;

use crate::error::{HoweError, Result};
use crate::linalg::{CMatrix, C64};
use crate::moment::{moment1_mat, moment2_mat, MatrixPoint};

/// `μ(z) = ‖Φ̃₁(z)‖² + ‖Φ̃₂(z)‖²` in the trace form.
pub fn norm_sq_moment(z: &MatrixPoint) -> f64 {
    let a = moment1_mat(z);
    let b = moment2_mat(z);
    a.inner(&a) + b.inner(&b)
}

/// Gradient of [`norm_sq_moment`] for the real inner product `Re tr(A* B)`.
pub fn norm_sq_gradient(z: &MatrixPoint) -> CMatrix {
    let e = z.entries();
    (e * e.adjoint() * e) * C64::new(2.0, 0.0)
}

#[derive(Debug, Clone)]
pub struct FlowStep {
    pub point: MatrixPoint,
    pub mu: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct FlowSummary {
    pub accepted_steps: usize,
    pub halvings: usize,
    pub initial_step_size: f64,
    pub final_step_size: f64,
    pub initial_norm: f64,
    pub max_norm: f64,
    /// `max_norm / initial_norm`; 1 for the zero start.
    pub norm_bound: f64,
    pub monotone: bool,
    /// Set when step halving underflowed before all steps were taken.
    pub stalled: bool,
}

/// Discrete descent trajectory, starting with the initial point.
#[derive(Debug, Clone)]
pub struct FlowTrajectory {
    pub steps: Vec<FlowStep>,
    pub summary: FlowSummary,
}

impl FlowTrajectory {
    pub fn mu_values(&self) -> impl Iterator<Item = f64> + '_ {
        self.steps.iter().map(|s| s.mu)
    }
}

/// Explicit Euler on `ż = −∇μ(z)`, halving the step whenever `μ` would increase.
pub fn gradient_flow_norm_sq(z0: &MatrixPoint, steps: usize, step_size: f64) -> Result<FlowTrajectory> {
    if steps == 0 {
        return Err(HoweError::InvalidParameter("flow needs at least one step".into()));
    }
    if !(step_size > 0.0 && step_size.is_finite()) {
        return Err(HoweError::NonFinite("step size"));
    }
    let min_step = step_size * f64::EPSILON;
    let initial_norm = z0.frobenius_norm();
    let mut h = step_size;
    let mut halvings = 0;
    let mut stalled = false;
    let mut monotone = true;
    let mut max_norm = initial_norm;
    let mut current = FlowStep {
        point: z0.clone(),
        mu: norm_sq_moment(z0),
    };
    let mut trajectory = vec![current.clone()];

    'outer: for _ in 0..steps {
        let grad = norm_sq_gradient(&current.point);
        loop {
            let next = current.point.entries() - &grad * C64::new(h, 0.0);
            let candidate = MatrixPoint::new(next).ok();
            let mu = candidate.as_ref().map_or(f64::INFINITY, norm_sq_moment);
            if mu <= current.mu {
                let point = candidate.expect("finite mu implies finite point");
                max_norm = max_norm.max(point.frobenius_norm());
                current = FlowStep { point, mu };
                trajectory.push(current.clone());
                break;
            }
            h *= 0.5;
            halvings += 1;
            if h < min_step {
                stalled = true;
                break 'outer;
            }
        }
    }

    for w in trajectory.windows(2) {
        if w[1].mu > w[0].mu {
            monotone = false;
        }
    }

    let summary = FlowSummary {
        accepted_steps: trajectory.len() - 1,
        halvings,
        initial_step_size: step_size,
        final_step_size: h,
        initial_norm,
        max_norm,
        norm_bound: if initial_norm > 0.0 { max_norm / initial_norm } else { 1.0 },
        monotone,
        stalled,
    };
    Ok(FlowTrajectory {
        steps: trajectory,
        summary,
    })
}
