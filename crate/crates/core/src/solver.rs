//! Convex-combination fixed-point iteration.
//!
//! From the current iterate `z` with an edge between `z` and `T z`, the step
//! finds a reduction index `n` (see [`crate::oracles::find_reduction_index`])
//! and moves to
//!
//! ```text
//! z' = α Tⁿ⁺¹(z) ⊕ β Tⁿ⁺²(z),    α = 1 - β,
//! ```
//!
//! which satisfies `d(z', Tz') <= K d(z, Tz)` with the schedule's factor
//! `K < 1`. The iterates form a G-monotone chain whose residuals decay
//! geometrically; the last iterate is reported as the fixed point together
//! with the per-step evidence.

use serde::Serialize;

use crate::contraction::{GCParams, MappingHandle, Variant};
use crate::error::{Error, Result};
use crate::graph::{Digraph, Direction};
use crate::oracles::{
    default_beta, edge_bound_factor, make_beta_schedule, reduction_index_unchecked,
    start_direction, BetaSchedule,
};
use crate::real;
use crate::report::{SampleOutcome, ViolationReport};
use crate::space::{slack, Point};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    /// Target for the residual `d(z, T z)`.
    pub tolerance: f64,
    pub max_outer_iterations: usize,
    pub beta_override: Option<f64>,
    pub assert_edges: bool,
    /// Run even when the parameters fail the strict contraction bounds.
    /// Hypothesis failures become diagnostics and the certificate is marked
    /// non-certifying.
    pub force_mode: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            tolerance: 1e-9,
            max_outer_iterations: 1000,
            beta_override: None,
            assert_edges: false,
            force_mode: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolverStep {
    pub index: usize,
    pub z: Point,
    #[serde(serialize_with = "real::serialize")]
    pub residual: f64,
    /// `residual / previous residual`.
    #[serde(serialize_with = "real::serialize")]
    pub ratio: f64,
    pub reduction_index: usize,
    /// `[(z_k, z_{k+1}) edge, (z_{k+1}, T z_{k+1}) edge]`, oriented by the
    /// run direction.
    pub edge_attestations: [bool; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Converged,
    MaxIterations,
    HypothesisFailure { reason: String },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Certificate {
    pub status: Status,
    pub certifying: bool,
    pub start: Point,
    pub direction: Direction,
    pub omega: Point,
    #[serde(serialize_with = "real::serialize")]
    pub initial_residual: f64,
    #[serde(serialize_with = "real::serialize")]
    pub final_residual: f64,
    #[serde(serialize_with = "real::serialize")]
    pub tolerance: f64,
    #[serde(serialize_with = "real::serialize")]
    pub a: f64,
    pub schedule: BetaSchedule,
    /// Outer steps sufficient by the geometric bound, when `K < 1`.
    pub a_priori_bound: Option<usize>,
    /// Edge between the start and `omega` in the run direction.
    pub start_omega_edge: bool,
    pub steps: Vec<SolverStep>,
    pub diagnostics: Vec<String>,
}

impl Certificate {
    pub fn converged(&self) -> bool {
        self.status == Status::Converged
    }

    /// One JSON object per step.
    pub fn trace_lines(&self) -> impl Iterator<Item = String> + '_ {
        self.steps
            .iter()
            .map(|s| serde_json::to_string(s).expect("step serializes"))
    }

    pub fn residuals(&self) -> impl Iterator<Item = f64> + '_ {
        self.steps.iter().map(|s| s.residual)
    }
}

/// `ceil(ln(tolerance / d0) / ln K)`, or 0 when `tolerance >= d0`.
pub fn a_priori_iterations(d0: f64, k: f64, tolerance: f64) -> Result<usize> {
    if !(k > 0.0 && k < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "K must lie in (0, 1), got {k}"
        )));
    }
    if !(d0 > 0.0) || !(tolerance > 0.0) {
        return Err(Error::InvalidArgument(
            "d0 and tolerance must be positive".into(),
        ));
    }
    if tolerance >= d0 {
        return Ok(0);
    }
    Ok(((tolerance / d0).ln() / k.ln()).ceil() as usize)
}

fn schedule_for(params: &GCParams, config: &SolverConfig) -> Result<BetaSchedule> {
    if !config.force_mode {
        return make_beta_schedule(params, config.beta_override);
    }
    match make_beta_schedule(params, config.beta_override) {
        Ok(s) => Ok(s),
        Err(_) => {
            let beta = config.beta_override.unwrap_or_else(|| {
                let b = default_beta(params.c);
                if b < 1.0 {
                    b
                } else {
                    0.5
                }
            });
            if !(0.0..=1.0).contains(&beta) {
                return Err(Error::BetaOutOfRange(beta));
            }
            Ok(BetaSchedule::unchecked(params, beta))
        }
    }
}

pub fn solve(
    g: &Digraph,
    t: &MappingHandle,
    params: &GCParams,
    x0: &Point,
    config: &SolverConfig,
) -> Result<Certificate> {
    let space = g.space();
    space.check_point(x0)?;
    if !space.contains(x0) {
        return Err(Error::OutsideDomain {
            point: x0.to_string(),
        });
    }
    if !(config.tolerance > 0.0) || config.max_outer_iterations == 0 {
        return Err(Error::InvalidArgument(
            "tolerance and max_outer_iterations must be positive".into(),
        ));
    }
    if !config.force_mode && !params.satisfies(Variant::GraphGcStrict) {
        return Err(Error::InvalidParams {
            variant: "graph-gc-strict",
            bound: "graph-gc-strict bounds (use force mode to run anyway)",
            a: params.a,
            b: params.b,
            c: params.c,
        });
    }
    if !config.force_mode && !g.transitive_claimed() {
        return Err(Error::NotTransitive);
    }
    let schedule = schedule_for(params, config)?;
    let direction = start_direction(g, t, x0)?;

    let initial_residual = space.dist(x0, &t.apply(x0));
    let a_priori_bound = if initial_residual > 0.0 {
        a_priori_iterations(initial_residual, schedule.k, config.tolerance).ok()
    } else {
        Some(0)
    };
    let mut cert = Certificate {
        status: Status::MaxIterations,
        certifying: !config.force_mode,
        start: x0.clone(),
        direction,
        omega: x0.clone(),
        initial_residual,
        final_residual: initial_residual,
        tolerance: config.tolerance,
        a: params.a,
        schedule,
        a_priori_bound,
        start_omega_edge: true,
        steps: Vec::new(),
        diagnostics: Vec::new(),
    };

    let mut z = x0.clone();
    let mut residual = initial_residual;
    let mut failure: Option<String> = None;
    while residual > config.tolerance && cert.steps.len() < config.max_outer_iterations {
        let k = cert.steps.len();
        let mut complain = |reason: String| {
            if config.force_mode {
                cert.diagnostics.push(format!("step {k}: {reason}"));
                false
            } else {
                failure = Some(format!("step {k}: {reason}"));
                true
            }
        };

        let n = match reduction_index_unchecked(g, t, &z, params.a) {
            Ok((n, _)) => n,
            Err(e @ Error::NoReductionIndex { .. }) => {
                if complain(e.to_string()) {
                    break;
                }
                1
            }
            Err(e) => return Err(e),
        };
        let orbit = t.orbit(&z, n + 2);
        let next = space.comb(&orbit[n + 1], &orbit[n + 2], schedule.alpha);
        if !space.contains(&next) && complain(format!("combination point {next} left the domain")) {
            break;
        }
        let t_next = t.apply(&next);
        let next_residual = space.dist(&next, &t_next);
        let edge_attestations = [
            g.edge_in(direction, &z, &next).unwrap_or(false),
            g.edge_in(direction, &next, &t_next).unwrap_or(false),
        ];
        let step = SolverStep {
            index: k + 1,
            z: next.clone(),
            residual: next_residual,
            ratio: next_residual / residual,
            reduction_index: n,
            edge_attestations,
        };
        cert.steps.push(step);

        let mut stop = false;
        if config.assert_edges && edge_attestations.contains(&false) {
            stop |= complain(format!("edge attestation failed: {edge_attestations:?}"));
        }
        if next_residual > schedule.k * residual + slack(residual) {
            stop |= complain(format!(
                "residual decay violated: {next_residual} > K * {residual}"
            ));
        }
        z = next;
        residual = next_residual;
        if stop {
            break;
        }
    }

    cert.final_residual = residual;
    cert.omega = z;
    cert.start_omega_edge = g.edge_in(direction, x0, &cert.omega).unwrap_or(false);
    cert.status = match failure {
        Some(reason) => Status::HypothesisFailure { reason },
        None if residual <= config.tolerance => Status::Converged,
        None => Status::MaxIterations,
    };
    Ok(cert)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UniquenessReport {
    /// `d(z_k, candidate) <= (2-a)/(1-a) (r_k + r_candidate)` over the start
    /// and every recorded step.
    pub step_bounds: ViolationReport,
    #[serde(serialize_with = "real::serialize")]
    pub candidate_residual: f64,
    #[serde(serialize_with = "real::serialize")]
    pub omega_distance: f64,
    /// `(2-a)/(1-a) * 2 * tolerance`.
    #[serde(serialize_with = "real::serialize")]
    pub omega_bound: f64,
    /// `(2-a)/(1-a) (r_omega + r_candidate)`.
    #[serde(serialize_with = "real::serialize")]
    pub coincidence_radius: f64,
    pub holds: bool,
}

/// Checks that another approximate fixed point on the same side of the
/// start coincides with the certificate's `omega` up to the edge bound.
pub fn verify_uniqueness(
    g: &Digraph,
    t: &MappingHandle,
    params: &GCParams,
    cert: &Certificate,
    candidate: &Point,
) -> Result<UniquenessReport> {
    let space = g.space();
    space.check_point(candidate)?;
    let candidate_residual = space.dist(candidate, &t.apply(candidate));
    if candidate_residual > cert.tolerance {
        return Err(Error::NotFixedPoint {
            residual: candidate_residual,
            tolerance: cert.tolerance,
        });
    }
    if !g.edge_in(cert.direction, &cert.start, candidate)? {
        return Err(Error::NotAnEdge);
    }
    let factor = edge_bound_factor(params.a);
    let mut step_bounds = ViolationReport::empty("uniqueness", 0);
    let chain = std::iter::once((&cert.start, cert.initial_residual))
        .chain(cert.steps.iter().map(|s| (&s.z, s.residual)));
    for (z, r) in chain {
        step_bounds.samples_tested += 1;
        let lhs = space.dist(z, candidate);
        let rhs = factor * (r + candidate_residual);
        step_bounds.push(SampleOutcome::inequality(
            vec![z.clone()],
            None,
            lhs,
            rhs,
            1e-12,
        ));
    }
    let omega_distance = space.dist(&cert.omega, candidate);
    let omega_bound = factor * 2.0 * cert.tolerance;
    let holds = step_bounds.passed() && omega_distance <= omega_bound + slack(omega_bound);
    Ok(UniquenessReport {
        step_bounds,
        candidate_residual,
        omega_distance,
        omega_bound,
        coincidence_radius: factor * (cert.final_residual + candidate_residual),
        holds,
    })
}
