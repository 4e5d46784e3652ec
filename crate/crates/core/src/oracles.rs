//! Executable forms of the four supporting lemmas: the edge-pair distance
//! bound, nonincreasing orbit displacements, the bounded reduction-index
//! search and the step-size schedule with its contraction factor `K`.

use serde::Serialize;

use crate::contraction::{GCParams, MappingHandle, Variant};
use crate::error::{Error, Result};
use crate::exec::{map_indexed, Sampling};
use crate::graph::{Digraph, Direction};
use crate::real;
use crate::report::{SampleOutcome, ViolationReport};
use crate::space::{slack, Point};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EdgeBoundOutcome {
    pub holds: bool,
    #[serde(serialize_with = "real::serialize")]
    pub lhs: f64,
    #[serde(serialize_with = "real::serialize")]
    pub bound: f64,
}

/// `(2 - a) / (1 - a)`.
pub fn edge_bound_factor(a: f64) -> f64 {
    (2.0 - a) / (1.0 - a)
}

fn require_graph_gc(params: &GCParams) -> Result<()> {
    if params.satisfies(Variant::GraphGc) {
        Ok(())
    } else {
        Err(Error::InvalidParams {
            variant: "graph-gc",
            bound: "graph-gc bounds (0 < a < 1, a + b = 1, c <= 1/2)",
            a: params.a,
            b: params.b,
            c: params.c,
        })
    }
}

pub(crate) fn edge_bound_eval(
    g: &Digraph,
    t: &MappingHandle,
    a: f64,
    x: &Point,
    y: &Point,
) -> EdgeBoundOutcome {
    let space = g.space();
    let lhs = space.dist(x, y);
    let bound = edge_bound_factor(a) * (space.dist(x, &t.apply(x)) + space.dist(y, &t.apply(y)));
    EdgeBoundOutcome {
        holds: lhs <= bound + slack(bound),
        lhs,
        bound,
    }
}

/// `d(x, y) <= (2-a)/(1-a) (d(x,Tx) + d(y,Ty))` for a pair joined by an
/// edge in at least one direction.
pub fn edge_bound_check(
    g: &Digraph,
    t: &MappingHandle,
    params: &GCParams,
    x: &Point,
    y: &Point,
) -> Result<EdgeBoundOutcome> {
    require_graph_gc(params)?;
    g.space().check_point(x)?;
    g.space().check_point(y)?;
    if !(g.edge(x, y)? || g.edge(y, x)?) {
        return Err(Error::NotAnEdge);
    }
    Ok(edge_bound_eval(g, t, params.a, x, y))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrbitProfile {
    /// `x, Tx, ..., T^steps x`.
    pub points: Vec<Point>,
    /// `d(T^k x, T^{k+1} x)`.
    #[serde(serialize_with = "real::serialize_slice")]
    pub displacements: Vec<f64>,
    /// Indices `k` with `displacements[k+1] > displacements[k]` beyond slack.
    pub increases: Vec<usize>,
}

impl OrbitProfile {
    pub fn nonincreasing(&self) -> bool {
        self.increases.is_empty()
    }

    /// Largest `displacements[k+1] - displacements[k] - slack`.
    pub fn worst_margin(&self) -> Option<f64> {
        self.displacements
            .windows(2)
            .map(|w| w[1] - w[0] - slack(w[0]))
            .reduce(f64::max)
    }
}

/// Direction of the start edge; increasing wins ties.
pub fn start_direction(g: &Digraph, t: &MappingHandle, x: &Point) -> Result<Direction> {
    let tx = t.apply(x);
    if g.edge(x, &tx)? {
        Ok(Direction::Increasing)
    } else if g.edge(&tx, x)? {
        Ok(Direction::Decreasing)
    } else {
        Err(Error::NoStartEdge)
    }
}

pub fn orbit_profile(
    g: &Digraph,
    t: &MappingHandle,
    x: &Point,
    steps: usize,
) -> Result<OrbitProfile> {
    if steps == 0 {
        return Err(Error::InvalidArgument("steps must be positive".into()));
    }
    let space = g.space();
    space.check_point(x)?;
    start_direction(g, t, x)?;
    let points = t.orbit(x, steps);
    if let Some(step) = points.iter().position(|p| !space.contains(p)) {
        return Err(Error::OrbitEscapes { step });
    }
    let displacements: Vec<f64> = points
        .windows(2)
        .map(|w| space.dist(&w[0], &w[1]))
        .collect();
    let increases = displacements
        .windows(2)
        .enumerate()
        .filter(|(_, w)| w[1] > w[0] + slack(w[0]))
        .map(|(k, _)| k)
        .collect();
    Ok(OrbitProfile {
        points,
        displacements,
        increases,
    })
}

/// Smallest `n` with `2 a^{n-1} + 1 <= 2/(2-a)`, i.e.
/// `ceil(1 + ln(a / (2(2-a))) / ln a)`.
pub fn max_reduction_index(a: f64) -> Result<usize> {
    if !(a > 0.0 && a < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "a must lie in (0, 1), got {a}"
        )));
    }
    let n = 1.0 + (a / (2.0 * (2.0 - a))).ln() / a.ln();
    Ok((n.ceil() as usize).max(1))
}

/// First `n` in `1..=N_max(a)` with
/// `d(T^n x, T^{n+2} x) <= 2/(2-a) d(x, Tx)`, and the value reached.
pub fn find_reduction_index(
    g: &Digraph,
    t: &MappingHandle,
    x: &Point,
    a: f64,
) -> Result<(usize, f64)> {
    if !g.transitive_claimed() {
        return Err(Error::NotTransitive);
    }
    g.space().check_point(x)?;
    start_direction(g, t, x)?;
    reduction_index_unchecked(g, t, x, a)
}

pub(crate) fn reduction_index_unchecked(
    g: &Digraph,
    t: &MappingHandle,
    x: &Point,
    a: f64,
) -> Result<(usize, f64)> {
    let n_max = max_reduction_index(a)?;
    let space = g.space();
    let orbit = t.orbit(x, n_max + 2);
    let bound = 2.0 / (2.0 - a) * space.dist(x, &orbit[1]);
    let mut best = f64::INFINITY;
    for n in 1..=n_max {
        let value = space.dist(&orbit[n], &orbit[n + 2]);
        if value <= bound + slack(bound) {
            return Ok((n, value));
        }
        best = best.min(value);
    }
    Err(Error::NoReductionIndex { n_max, best, bound })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BetaSchedule {
    #[serde(serialize_with = "real::serialize")]
    pub beta: f64,
    #[serde(serialize_with = "real::serialize")]
    pub alpha: f64,
    #[serde(rename = "K", serialize_with = "real::serialize")]
    pub k: f64,
}

/// `K = α a max{α + 2β/(2-a), c [2 + 2β/(2-a)]} + β² a + b` with `α = 1 - β`.
pub fn contraction_factor(a: f64, b: f64, c: f64, beta: f64) -> f64 {
    let alpha = 1.0 - beta;
    let r = 2.0 * beta / (2.0 - a);
    alpha * a * (alpha + r).max(c * (2.0 + r)) + beta * beta * a + b
}

/// Midpoint of the admissible interval `(2c, 1)`.
pub fn default_beta(c: f64) -> f64 {
    (2.0 * c + 1.0) / 2.0
}

impl BetaSchedule {
    /// The schedule without any admissibility check.
    pub fn unchecked(params: &GCParams, beta: f64) -> Self {
        BetaSchedule {
            beta,
            alpha: 1.0 - beta,
            k: contraction_factor(params.a, params.b, params.c, beta),
        }
    }
}

pub fn make_beta_schedule(params: &GCParams, beta: Option<f64>) -> Result<BetaSchedule> {
    if !params.satisfies(Variant::GraphGcStrict) {
        return Err(Error::InvalidParams {
            variant: "graph-gc-strict",
            bound: "graph-gc-strict bounds (0 < a < 1, a + b = 1, 0 <= c < 1/2)",
            a: params.a,
            b: params.b,
            c: params.c,
        });
    }
    let beta = beta.unwrap_or_else(|| default_beta(params.c));
    if !(2.0 * params.c < beta && beta < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "beta = {beta} outside (2c, 1) = ({}, 1)",
            2.0 * params.c
        )));
    }
    let schedule = BetaSchedule::unchecked(params, beta);
    assert!(
        schedule.k < 1.0,
        "K = {} >= 1 for admissible parameters",
        schedule.k
    );
    Ok(schedule)
}

/// Grid check of `K < 1`: `a = 0.05..=0.95`, `c = 0..=0.45` (step 0.05), `b = 1 - a`,
/// and nine interior `β = 2c + t (1 - 2c)/10`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KGridReport {
    pub points: usize,
    /// `(a, c, beta, K)` with `K >= 1`.
    pub failures: Vec<[f64; 4]>,
    #[serde(serialize_with = "real::serialize")]
    pub max_k: f64,
    /// Adjacent `c` steps (fixed `a`, `β`) where `K` decreased.
    pub c_monotonicity_breaks: usize,
}

pub fn k_grid() -> KGridReport {
    let mut failures = Vec::new();
    let mut points = 0;
    let mut max_k = f64::NEG_INFINITY;
    let mut breaks = 0;
    for ai in 1..=19 {
        let a = ai as f64 * 0.05;
        let b = 1.0 - a;
        for ci in 0..=9 {
            let c = ci as f64 * 0.05;
            for t in 1..=9 {
                let beta = 2.0 * c + t as f64 * (1.0 - 2.0 * c) / 10.0;
                let k = contraction_factor(a, b, c, beta);
                points += 1;
                max_k = max_k.max(k);
                if !(k < 1.0) {
                    failures.push([a, c, beta, k]);
                }
                if ci > 0 {
                    let prev = (ci - 1) as f64 * 0.05;
                    if 2.0 * c < beta && contraction_factor(a, b, prev, beta) > k {
                        breaks += 1;
                    }
                }
            }
        }
    }
    KGridReport {
        points,
        failures,
        max_k,
        c_monotonicity_breaks: breaks,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SuiteStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteResult {
    pub lemma: &'static str,
    pub status: SuiteStatus,
    /// Whether the scenario parameters meet the lemma's hypotheses; when not,
    /// the result records observed behaviour only.
    pub hypotheses_met: bool,
    pub report: ViolationReport,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LemmaTable {
    pub suites: Vec<SuiteResult>,
    pub grid: KGridReport,
    pub schedule: Option<BetaSchedule>,
    pub n_max: Option<usize>,
}

impl LemmaTable {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(|s| s.status != SuiteStatus::Fail)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteConfig {
    pub edge_samples: usize,
    pub starts: usize,
    pub steps: usize,
    pub seed: u64,
}

impl SuiteConfig {
    pub fn new(edge_samples: usize, seed: u64) -> Self {
        SuiteConfig {
            edge_samples,
            starts: 100,
            steps: 200,
            seed,
        }
    }
}

/// Edge-pair suite for the distance bound.
pub fn edge_bound_suite(
    g: &Digraph,
    t: &MappingHandle,
    a: f64,
    sampling: &Sampling,
) -> Result<ViolationReport> {
    crate::contraction::over_edges(g, sampling, "edge-bound", |x, y| {
        let o = edge_bound_eval(g, t, a, x, y);
        Ok(SampleOutcome::inequality(
            vec![x.clone(), y.clone()],
            None,
            o.lhs,
            o.bound,
            1e-12,
        ))
    })
}

/// Up to `starts` admissible start points (edge between `x` and `Tx`),
/// drawn deterministically from `seed`.
pub fn admissible_starts(
    g: &Digraph,
    t: &MappingHandle,
    starts: usize,
    seed: u64,
    execution: crate::exec::Execution,
) -> Vec<Point> {
    let budget = starts.saturating_mul(100).max(1000);
    let sampling = Sampling {
        count: budget,
        seed,
        execution,
    };
    sampling
        .map(|i| {
            let x = g.sample_vertex(&mut sampling.rng(i));
            start_direction(g, t, &x).ok().map(|_| x)
        })
        .into_iter()
        .flatten()
        .take(starts)
        .collect()
}

/// Orbit suites: nonincreasing displacements along each orbit, and a
/// reduction index `n <= N_max(a)` from each start.
pub fn orbit_suites(
    g: &Digraph,
    t: &MappingHandle,
    a: f64,
    starts: &[Point],
    steps: usize,
    sampling: &Sampling,
) -> Result<(ViolationReport, ViolationReport)> {
    let n_max = max_reduction_index(a)?;
    let per_start = map_indexed(
        sampling.execution,
        starts.len(),
        |i| -> Result<(SampleOutcome, SampleOutcome)> {
            let x = &starts[i];
            let profile = orbit_profile(g, t, x, steps)?;
            let margin = profile.worst_margin().unwrap_or(f64::NEG_INFINITY);
            let l2 = SampleOutcome::Checked {
                margin,
                violation: (!profile.nonincreasing()).then(|| crate::report::Violation {
                    witness: vec![x.clone()],
                    beta: None,
                    lhs: profile.displacements[profile.increases[0] + 1],
                    rhs: profile.displacements[profile.increases[0]],
                    margin,
                }),
            };
            let l3 = match reduction_index_unchecked(g, t, x, a) {
                Ok((n, _)) => SampleOutcome::predicate(vec![x.clone()], n <= n_max),
                Err(Error::NoReductionIndex { .. }) => {
                    SampleOutcome::predicate(vec![x.clone()], false)
                }
                Err(e) => return Err(e),
            };
            Ok((l2, l3))
        },
    );
    let mut l2 = ViolationReport::empty("orbit-decay", sampling.seed);
    let mut l3 = ViolationReport::empty("reduction-index", sampling.seed);
    for r in per_start {
        let (o2, o3) = r?;
        l2.samples_tested += 1;
        l3.samples_tested += 1;
        l2.push(o2);
        l3.push(o3);
    }
    Ok((l2, l3))
}

fn status(report: &ViolationReport) -> SuiteStatus {
    if report.checked == 0 {
        SuiteStatus::Skipped
    } else if report.passed() {
        SuiteStatus::Pass
    } else {
        SuiteStatus::Fail
    }
}

/// Runs all four lemma suites against one map.
pub fn run_lemma_suites(
    g: &Digraph,
    t: &MappingHandle,
    params: &GCParams,
    config: &SuiteConfig,
    execution: crate::exec::Execution,
) -> Result<LemmaTable> {
    let sampling = Sampling {
        count: config.edge_samples,
        seed: config.seed,
        execution,
    };
    let a = params.a;
    let gc = params.satisfies(Variant::GraphGc);
    let a_ok = a > 0.0 && a < 1.0;
    let observed = |met: bool| {
        if met {
            String::new()
        } else {
            "hypotheses not met; observed behaviour".to_string()
        }
    };

    let mut suites = Vec::new();
    if a_ok {
        let l1 = edge_bound_suite(g, t, a, &sampling)?;
        suites.push(SuiteResult {
            lemma: "edge-bound",
            status: status(&l1),
            hypotheses_met: gc,
            report: l1,
            note: observed(gc),
        });
        let starts = admissible_starts(g, t, config.starts, config.seed, execution);
        let (l2, l3) = orbit_suites(g, t, a, &starts, config.steps, &sampling)?;
        suites.push(SuiteResult {
            lemma: "orbit-decay",
            status: status(&l2),
            hypotheses_met: gc,
            report: l2,
            note: observed(gc),
        });
        let transitive = gc && g.transitive_claimed();
        suites.push(SuiteResult {
            lemma: "reduction-index",
            status: status(&l3),
            hypotheses_met: transitive,
            report: l3,
            note: observed(transitive),
        });
    } else {
        for lemma in ["edge-bound", "orbit-decay", "reduction-index"] {
            suites.push(SuiteResult {
                lemma,
                status: SuiteStatus::Skipped,
                hypotheses_met: false,
                report: ViolationReport::empty("skipped", config.seed),
                note: "a outside (0, 1)".into(),
            });
        }
    }

    let grid = k_grid();
    let schedule = make_beta_schedule(params, None).ok();
    let mut l4 = ViolationReport::empty("step-schedule", config.seed);
    l4.samples_tested = grid.points;
    l4.checked = grid.points;
    l4.worst_margin = Some(grid.max_k - 1.0);
    for f in &grid.failures {
        l4.violations.push(crate::report::Violation {
            witness: vec![],
            beta: Some(f[2]),
            lhs: f[3],
            rhs: 1.0,
            margin: f[3] - 1.0,
        });
    }
    let note = match &schedule {
        Some(s) => format!("scenario K = {} at beta = {}", s.k, s.beta),
        None => "scenario parameters admit no schedule (c >= 1/2 or bounds fail); grid only".into(),
    };
    suites.push(SuiteResult {
        lemma: "step-schedule",
        status: status(&l4),
        hypotheses_met: schedule.is_some(),
        report: l4,
        note,
    });

    Ok(LemmaTable {
        suites,
        grid,
        schedule,
        n_max: if a_ok {
            max_reduction_index(a).ok()
        } else {
            None
        },
    })
}
