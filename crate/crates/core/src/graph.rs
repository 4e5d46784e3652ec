//! Reflexive digraphs over a convex space.
//!
//! Continuous relations are predicates evaluated lazily; only the finite
//! table kind materializes its edge set. Edge weights are never stored: the
//! weight of an edge is the distance between its endpoints.

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Sampling;
use crate::real;
use crate::report::{SampleOutcome, ViolationReport};
use crate::space::{slack, Bound, BoxDomain, ConvexSpace, Metric, Point, DEFAULT_SAMPLE_RADIUS};

/// Proposals per sampled edge before the draw is skipped.
const EDGE_ATTEMPTS: usize = 32;

/// Rejection budget per interval draw.
pub const MAX_REJECTIONS: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq)]
pub enum EdgeRelation {
    /// `u -> v` iff `u_i <= v_i` for every `i`.
    ComponentwiseOrder,
    /// `u -> v` iff `u_1 = v_1` and `u_2 <= v_2` (dimension 2).
    FixedFirstCoordinate,
    FiniteTable {
        vertices: Vec<Point>,
        adjacency: Vec<Vec<bool>>,
    },
    /// `u -> v` iff `M (v - u) >= 0` componentwise, `M` entrywise nonnegative.
    AffineOrder { matrix: Vec<Vec<f64>> },
}

impl EdgeRelation {
    pub fn name(&self) -> &'static str {
        match self {
            EdgeRelation::ComponentwiseOrder => "componentwise-order",
            EdgeRelation::FixedFirstCoordinate => "fixed-first-coordinate-order",
            EdgeRelation::FiniteTable { .. } => "finite-table",
            EdgeRelation::AffineOrder { .. } => "custom-affine-order",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Direction {
    /// `(x_n, x_{n+1})` edges.
    Increasing,
    /// `(x_{n+1}, x_n)` edges.
    Decreasing,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Digraph {
    space: ConvexSpace,
    relation: EdgeRelation,
    transitive_claimed: bool,
}

impl Digraph {
    pub fn new(
        space: ConvexSpace,
        relation: EdgeRelation,
        transitive_claimed: bool,
    ) -> Result<Self> {
        let n = space.dimension();
        match &relation {
            EdgeRelation::ComponentwiseOrder => {}
            EdgeRelation::FixedFirstCoordinate => {
                if n != 2 {
                    return Err(Error::InvalidGraph(
                        "fixed-first-coordinate-order needs dimension 2".into(),
                    ));
                }
            }
            EdgeRelation::FiniteTable {
                vertices,
                adjacency,
            } => {
                if vertices.is_empty() {
                    return Err(Error::InvalidGraph("finite table has no vertices".into()));
                }
                for v in vertices {
                    space.check_point(v)?;
                    if !space.contains(v) {
                        return Err(Error::OutsideDomain {
                            point: v.to_string(),
                        });
                    }
                }
                if adjacency.len() != vertices.len()
                    || adjacency.iter().any(|row| row.len() != vertices.len())
                {
                    return Err(Error::InvalidGraph(
                        "adjacency matrix must be square with one row per vertex".into(),
                    ));
                }
                if let Some(i) = (0..vertices.len()).find(|&i| !adjacency[i][i]) {
                    return Err(Error::InvalidGraph(format!(
                        "adjacency diagonal must be true (vertex {i})"
                    )));
                }
            }
            EdgeRelation::AffineOrder { matrix } => {
                if matrix.is_empty() || matrix.iter().any(|row| row.len() != n) {
                    return Err(Error::InvalidGraph(format!(
                        "order matrix needs rows of length {n}"
                    )));
                }
                if matrix
                    .iter()
                    .flatten()
                    .any(|&m| !(m >= 0.0 && m.is_finite()))
                {
                    return Err(Error::InvalidGraph(
                        "order matrix entries must be nonnegative".into(),
                    ));
                }
            }
        }
        let g = Digraph {
            space,
            relation,
            transitive_claimed,
        };
        if transitive_claimed && matches!(g.relation, EdgeRelation::FiniteTable { .. }) {
            let report = g.check_graph_axioms(&Sampling::new(0, 0));
            if let Some(v) = report.violations.first() {
                return Err(Error::InvalidGraph(format!(
                    "claimed transitive but violated at {:?}",
                    v.witness
                )));
            }
        }
        Ok(g)
    }

    pub fn space(&self) -> &ConvexSpace {
        &self.space
    }

    pub fn relation(&self) -> &EdgeRelation {
        &self.relation
    }

    pub fn transitive_claimed(&self) -> bool {
        self.transitive_claimed
    }

    pub fn is_finite(&self) -> bool {
        matches!(self.relation, EdgeRelation::FiniteTable { .. })
    }

    fn vertex_index(&self, p: &Point) -> Result<usize> {
        match &self.relation {
            EdgeRelation::FiniteTable { vertices, .. } => vertices
                .iter()
                .position(|v| v == p)
                .ok_or_else(|| Error::UnknownVertex {
                    point: p.to_string(),
                }),
            _ => unreachable!("vertex_index on a predicate relation"),
        }
    }

    pub fn has_edge(&self, p: &Point, q: &Point) -> Result<bool> {
        self.space.check_point(p)?;
        self.space.check_point(q)?;
        self.edge(p, q)
    }

    pub(crate) fn edge(&self, p: &Point, q: &Point) -> Result<bool> {
        let (u, v) = (p.coords(), q.coords());
        Ok(match &self.relation {
            EdgeRelation::ComponentwiseOrder => u.iter().zip(v).all(|(a, b)| a <= b),
            EdgeRelation::FixedFirstCoordinate => u[0] == v[0] && u[1] <= v[1],
            EdgeRelation::FiniteTable { adjacency, .. } => {
                adjacency[self.vertex_index(p)?][self.vertex_index(q)?]
            }
            EdgeRelation::AffineOrder { matrix } => {
                p == q
                    || matrix.iter().all(|row| {
                        row.iter()
                            .zip(u.iter().zip(v))
                            .map(|(m, (a, b))| m * (b - a))
                            .sum::<f64>()
                            >= 0.0
                    })
            }
        })
    }

    pub(crate) fn edge_in(&self, direction: Direction, p: &Point, q: &Point) -> Result<bool> {
        match direction {
            Direction::Increasing => self.edge(p, q),
            Direction::Decreasing => self.edge(q, p),
        }
    }

    /// Weight of the edge `p -> q`, or `None` when it is not an edge.
    pub fn edge_weight(&self, p: &Point, q: &Point) -> Result<Option<f64>> {
        Ok(self.has_edge(p, q)?.then(|| self.space.dist(p, q)))
    }

    /// Every edge of a finite table, as index pairs.
    pub fn table_edges(&self) -> Option<Vec<(usize, usize)>> {
        match &self.relation {
            EdgeRelation::FiniteTable { adjacency, .. } => Some(
                adjacency
                    .iter()
                    .enumerate()
                    .flat_map(|(i, row)| {
                        row.iter()
                            .enumerate()
                            .filter(|(_, &e)| e)
                            .map(move |(j, _)| (i, j))
                    })
                    .collect(),
            ),
            _ => None,
        }
    }

    pub fn vertices(&self) -> Option<&[Point]> {
        match &self.relation {
            EdgeRelation::FiniteTable { vertices, .. } => Some(vertices),
            _ => None,
        }
    }

    pub(crate) fn sample_vertex<R: Rng + ?Sized>(&self, rng: &mut R) -> Point {
        match &self.relation {
            EdgeRelation::FiniteTable { vertices, .. } => {
                vertices[rng.random_range(0..vertices.len())].clone()
            }
            _ => self.space.sample_point(rng),
        }
    }

    /// A point likely to be related to `from` (in either direction). Used as
    /// a proposal: callers still test the edge predicate.
    pub(crate) fn sample_related<R: Rng + ?Sized>(&self, from: &Point, rng: &mut R) -> Point {
        match &self.relation {
            EdgeRelation::FixedFirstCoordinate => {
                let mut c = self.space.sample_point(rng).into_coords();
                c[0] = from.coords()[0];
                Point::from_raw(c)
            }
            _ => self.sample_vertex(rng),
        }
    }

    /// Draws an edge pair `(x, y)`; a non-edge draw is flipped when the
    /// reverse is an edge, and `None` when neither direction is.
    pub(crate) fn sample_edge<R: Rng + ?Sized>(
        &self,
        rng: &mut R,
    ) -> Result<Option<(Point, Point)>> {
        for _ in 0..EDGE_ATTEMPTS {
            let x = self.sample_vertex(rng);
            let forward = rng.random_bool(0.5);
            let y = self.propose_interval(&x, forward, rng);
            if self.edge(&x, &y)? {
                return Ok(Some((x, y)));
            } else if self.edge(&y, &x)? {
                return Ok(Some((y, x)));
            }
        }
        Ok(None)
    }

    fn propose_interval<R: Rng + ?Sized>(&self, x: &Point, forward: bool, rng: &mut R) -> Point {
        let sub_box = matches!(
            self.relation,
            EdgeRelation::ComponentwiseOrder | EdgeRelation::AffineOrder { .. }
        ) && rng.random_bool(0.5);
        if !sub_box {
            return self.sample_related(x, rng);
        }
        let dom = self.space.domain();
        let coords = x
            .coords()
            .iter()
            .enumerate()
            .map(|(i, &xi)| {
                let (lo, hi) = dom.sample_window(i);
                let (a, b) = if forward { (xi, hi) } else { (lo, xi) };
                if a < b {
                    rng.random_range(a..=b)
                } else {
                    xi
                }
            })
            .collect();
        Point::from_raw(coords)
    }

    /// Rejection draw from `[x, ->)` (forward) or `(<-, x]`.
    fn sample_interval<R: Rng + ?Sized>(
        &self,
        x: &Point,
        forward: bool,
        rng: &mut R,
    ) -> Result<Point> {
        for _ in 0..MAX_REJECTIONS {
            let y = self.propose_interval(x, forward, rng);
            if !self.space.contains(&y) {
                continue;
            }
            let related = if forward {
                self.edge(x, &y)?
            } else {
                self.edge(&y, x)?
            };
            if related {
                return Ok(y);
            }
        }
        Err(Error::IntervalTooThin {
            rejections: MAX_REJECTIONS,
        })
    }

    /// Reflexivity and transitivity. Finite tables are checked exhaustively
    /// (the sample budget is ignored); predicate kinds on sampled triples.
    pub fn check_graph_axioms(&self, sampling: &Sampling) -> ViolationReport {
        if let EdgeRelation::FiniteTable {
            vertices,
            adjacency,
        } = &self.relation
        {
            let mut report = ViolationReport::empty("graph-axioms", sampling.seed);
            let n = vertices.len();
            for i in 0..n {
                report.samples_tested += 1;
                report.push(SampleOutcome::predicate(
                    vec![vertices[i].clone()],
                    adjacency[i][i],
                ));
            }
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        report.samples_tested += 1;
                        if adjacency[i][j] && adjacency[j][k] {
                            report.push(SampleOutcome::predicate(
                                vec![
                                    vertices[i].clone(),
                                    vertices[j].clone(),
                                    vertices[k].clone(),
                                ],
                                adjacency[i][k],
                            ));
                        }
                    }
                }
            }
            return report;
        }

        let outcomes = sampling.map(|i| {
            let mut rng = sampling.rng(i);
            let x = self.sample_vertex(&mut rng);
            let y = self.sample_related(&x, &mut rng);
            let z = self.sample_related(&y, &mut rng);
            let reflexive = self.edge(&x, &x).unwrap_or(false);
            if !reflexive {
                return SampleOutcome::predicate(vec![x], false);
            }
            // Orient the triple into a chain when possible.
            let chain = [(&x, &y, &z), (&z, &y, &x)].into_iter().find(|(a, b, c)| {
                self.edge(a, b).unwrap_or(false) && self.edge(b, c).unwrap_or(false)
            });
            match chain {
                Some((a, b, c)) => SampleOutcome::predicate(
                    vec![a.clone(), b.clone(), c.clone()],
                    self.edge(a, c).unwrap_or(false),
                ),
                None => SampleOutcome::Checked {
                    margin: 0.0,
                    violation: None,
                },
            }
        });
        ViolationReport::from_outcomes("graph-axioms", sampling, outcomes)
    }

    /// Samples `(x, y1, y2, beta)` with `y1, y2` in a G-interval of `x` and
    /// checks that `combine(y1, y2, beta)` stays in it. Each sample checks
    /// both the forward and the backward interval.
    pub fn check_interval_convexity(&self, sampling: &Sampling) -> Result<ViolationReport> {
        if self.is_finite() {
            return Err(Error::Unsupported(
                "convexity undefined for finite tables".into(),
            ));
        }
        let outcomes = sampling.map(|i| -> Result<[SampleOutcome; 2]> {
            let mut rng = sampling.rng(i);
            let x = self.space.sample_point(&mut rng);
            let beta: f64 = rng.random_range(0.0..=1.0);
            let mut out = [SampleOutcome::Skipped, SampleOutcome::Skipped];
            for (slot, forward) in out.iter_mut().zip([true, false]) {
                let y1 = self.sample_interval(&x, forward, &mut rng)?;
                let y2 = self.sample_interval(&x, forward, &mut rng)?;
                let w = self.space.comb(&y1, &y2, beta);
                let inside = if forward {
                    self.edge(&x, &w)?
                } else {
                    self.edge(&w, &x)?
                };
                *slot = SampleOutcome::predicate(vec![x.clone(), y1, y2], inside);
            }
            Ok(out)
        });
        let mut report = ViolationReport::empty("interval-convexity", sampling.seed);
        for o in outcomes {
            let [fwd, bwd] = o?;
            report.samples_tested += 1;
            report.push(fwd);
            report.push(bwd);
        }
        Ok(report)
    }

    /// Direction of a G-monotone sequence; increasing wins ties.
    pub fn monotone_direction(&self, seq: &[Point]) -> Result<Direction> {
        let mut inc_break = None;
        for (k, w) in seq.windows(2).enumerate() {
            if !self.edge(&w[0], &w[1])? {
                inc_break = Some(k);
                break;
            }
        }
        if inc_break.is_none() {
            return Ok(Direction::Increasing);
        }
        for (k, w) in seq.windows(2).enumerate() {
            if !self.edge(&w[1], &w[0])? {
                return Err(Error::NotMonotone {
                    index: inc_break.unwrap().max(k),
                });
            }
        }
        Ok(Direction::Decreasing)
    }

    /// Property (*) evidence on a concrete monotone sequence approaching
    /// `limit`: the indices `n` with `(x_n, limit)` (increasing) or
    /// `(limit, x_n)` (decreasing) edges.
    pub fn check_property_star(
        &self,
        seq: &[Point],
        limit: &Point,
        tolerance: f64,
    ) -> Result<PropertyStarReport> {
        if seq.is_empty() {
            return Err(Error::InvalidArgument("empty sequence".into()));
        }
        self.space.check_point(limit)?;
        for p in seq {
            self.space.check_point(p)?;
        }
        let direction = self.monotone_direction(seq)?;
        let last = self.space.dist(seq.last().unwrap(), limit);
        if last > tolerance {
            return Err(Error::NotConvergent {
                distance: last,
                tolerance,
            });
        }
        let mut indices = Vec::new();
        for (k, p) in seq.iter().enumerate() {
            if self.edge_in(direction, p, limit)? {
                indices.push(k);
            }
        }
        Ok(PropertyStarReport {
            direction,
            terms: seq.len(),
            holds_at_every_index: indices.len() == seq.len(),
            holds_at_last_index: indices.last() == Some(&(seq.len() - 1)),
            indices,
            last_distance: last,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PropertyStarReport {
    pub direction: Direction,
    pub terms: usize,
    pub holds_at_every_index: bool,
    pub holds_at_last_index: bool,
    /// Indices whose term has an edge to (or from) the limit.
    pub indices: Vec<usize>,
    #[serde(serialize_with = "real::serialize")]
    pub last_distance: f64,
}

/// `X = {(x, y) : 0 <= x < 1, 0 <= y <= 1}` with the Euclidean metric.
pub fn strip_space() -> ConvexSpace {
    ConvexSpace::new(
        2,
        Metric::Euclidean,
        BoxDomain {
            lower: vec![Bound::closed(0.0), Bound::closed(0.0)],
            upper: vec![Bound::open(1.0), Bound::closed(1.0)],
            sample_radius: DEFAULT_SAMPLE_RADIUS,
        },
    )
    .expect("strip is a valid box")
}

/// The strip with `(x, y) -> (a, b)` iff `x = a` and `y <= b`.
pub fn strip_graph() -> Digraph {
    Digraph::new(strip_space(), EdgeRelation::FixedFirstCoordinate, true)
        .expect("strip relation is valid")
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SequenceCertificate {
    pub first_terms: Vec<Point>,
    pub terms: usize,
    pub g_monotone: Option<Direction>,
    /// `max d(x_j, x_k)` over the second half of the terms.
    #[serde(serialize_with = "real::serialize")]
    pub tail_diameter: f64,
    /// Analytic Cauchy modulus `1/m` at the tail start `m`.
    #[serde(serialize_with = "real::serialize")]
    pub cauchy_bound: f64,
    pub cauchy: bool,
    pub limit: Point,
    #[serde(serialize_with = "real::serialize")]
    pub last_distance_to_limit: f64,
    pub limit_in_space: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GCompleteDemoReport {
    pub monotone: SequenceCertificate,
    pub escaping: SequenceCertificate,
    pub property_star: PropertyStarReport,
    /// Monotone limit inside X, escaping Cauchy limit outside X.
    pub certified: bool,
}

fn certify_sequence(g: &Digraph, terms: Vec<Point>, limit: Point) -> SequenceCertificate {
    let space = g.space();
    let n = terms.len();
    let m = n / 2;
    let tail = &terms[m..];
    let mut diameter = 0.0f64;
    for (j, p) in tail.iter().enumerate() {
        for q in &tail[j + 1..] {
            diameter = diameter.max(space.dist(p, q));
        }
    }
    // Term index k (1-based) is stored at position k - 1.
    let cauchy_bound = 1.0 / (m + 1) as f64;
    SequenceCertificate {
        first_terms: terms.iter().take(3).cloned().collect(),
        terms: n,
        g_monotone: g.monotone_direction(&terms).ok(),
        tail_diameter: diameter,
        cauchy_bound,
        cauchy: diameter <= cauchy_bound + slack(cauchy_bound),
        last_distance_to_limit: space.dist(terms.last().unwrap(), &limit),
        limit_in_space: space.contains(&limit),
        limit,
    }
}

/// The strip is not complete, yet every G-monotone Cauchy sequence in it
/// converges in it. Builds `(0.5, 1 - 1/k)` and `(1 - 1/k, 0)` for
/// `k = 1..=n_terms` and certifies both behaviours.
pub fn demo_g_complete_strip(n_terms: usize) -> Result<GCompleteDemoReport> {
    if n_terms < 2 {
        return Err(Error::InvalidArgument("n_terms must be at least 2".into()));
    }
    let g = strip_graph();
    let seq = |f: &dyn Fn(f64) -> [f64; 2]| -> Vec<Point> {
        (1..=n_terms)
            .map(|k| Point::from_raw(f(k as f64).to_vec()))
            .collect()
    };
    let rising = seq(&|k| [0.5, 1.0 - 1.0 / k]);
    let escaping = seq(&|k| [1.0 - 1.0 / k, 0.0]);
    let rising_limit = Point::from_raw(vec![0.5, 1.0]);
    let escape_limit = Point::from_raw(vec![1.0, 0.0]);

    let property_star = g.check_property_star(&rising, &rising_limit, 1.0)?;
    let monotone = certify_sequence(&g, rising, rising_limit);
    let escaping = certify_sequence(&g, escaping, escape_limit);
    let certified = monotone.g_monotone.is_some()
        && monotone.cauchy
        && monotone.limit_in_space
        && property_star.holds_at_every_index
        && escaping.cauchy
        && !escaping.limit_in_space;
    Ok(GCompleteDemoReport {
        monotone,
        escaping,
        property_star,
        certified,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(c: &[f64]) -> Point {
        Point::new(c.to_vec()).unwrap()
    }

    fn square() -> ConvexSpace {
        ConvexSpace::new(
            2,
            Metric::Euclidean,
            BoxDomain::closed(&[0.0, 0.0], &[2.0, 2.0]),
        )
        .unwrap()
    }

    fn order() -> Digraph {
        Digraph::new(square(), EdgeRelation::ComponentwiseOrder, true).unwrap()
    }

    fn table(edges: &[(usize, usize)], claimed: bool) -> Result<Digraph> {
        let line = ConvexSpace::whole(1, Metric::Euclidean).unwrap();
        let vertices = vec![Point::scalar(0.0), Point::scalar(1.0), Point::scalar(2.0)];
        let mut adjacency = vec![vec![false; 3]; 3];
        for i in 0..3 {
            adjacency[i][i] = true;
        }
        for &(i, j) in edges {
            adjacency[i][j] = true;
        }
        Digraph::new(
            line,
            EdgeRelation::FiniteTable {
                vertices,
                adjacency,
            },
            claimed,
        )
    }

    #[test]
    fn edge_examples() {
        let g = order();
        assert!(g.has_edge(&pt(&[0.0, 0.0]), &pt(&[1.0, 2.0])).unwrap());
        assert!(!g.has_edge(&pt(&[1.0, 0.0]), &pt(&[0.0, 2.0])).unwrap());
        let s = strip_graph();
        assert!(!s.has_edge(&pt(&[0.5, 0.2]), &pt(&[0.6, 0.9])).unwrap());
        assert!(s.has_edge(&pt(&[0.5, 0.2]), &pt(&[0.5, 0.9])).unwrap());
        let affine = Digraph::new(
            square(),
            EdgeRelation::AffineOrder {
                matrix: vec![vec![1.0, 1.0]],
            },
            true,
        )
        .unwrap();
        assert!(affine.has_edge(&pt(&[1.0, 0.0]), &pt(&[0.0, 1.5])).unwrap());
        for g in [&g, &s, &affine] {
            let p = pt(&[0.25, 0.75]);
            assert!(g.has_edge(&p, &p).unwrap());
        }
        assert_eq!(
            g.edge_weight(&pt(&[0.0, 0.0]), &pt(&[0.0, 1.0])).unwrap(),
            Some(1.0)
        );
    }

    #[test]
    fn table_validation_and_lookup() {
        let g = table(&[(0, 1)], false).unwrap();
        assert!(g
            .has_edge(&Point::scalar(0.0), &Point::scalar(1.0))
            .unwrap());
        assert_eq!(
            g.has_edge(&Point::scalar(5.0), &Point::scalar(1.0)),
            Err(Error::UnknownVertex {
                point: "(5)".into()
            })
        );
        assert!(table(&[(0, 1), (1, 2)], true).is_err());
        let line = ConvexSpace::whole(1, Metric::Euclidean).unwrap();
        let bad_diag = EdgeRelation::FiniteTable {
            vertices: vec![Point::scalar(0.0)],
            adjacency: vec![vec![false]],
        };
        assert!(Digraph::new(line, bad_diag, false).is_err());
    }

    #[test]
    fn table_axioms() {
        let g = table(&[(0, 1), (1, 2)], false).unwrap();
        let r = g.check_graph_axioms(&Sampling::new(0, 0));
        assert_eq!(r.violations.len(), 1);
        assert_eq!(
            r.violations[0].witness,
            vec![Point::scalar(0.0), Point::scalar(1.0), Point::scalar(2.0)]
        );
        let full: Vec<_> = (0..3).flat_map(|i| (0..3).map(move |j| (i, j))).collect();
        assert!(table(&full, true)
            .unwrap()
            .check_graph_axioms(&Sampling::new(0, 0))
            .passed());
    }

    #[test]
    fn sampled_axioms_and_convexity() {
        let s = Sampling::new(10_000, 5);
        for g in [order(), strip_graph()] {
            let r = g.check_graph_axioms(&s);
            assert!(r.passed());
            assert!(r.checked == 10_000);
            let c = g.check_interval_convexity(&s).unwrap();
            assert!(c.passed(), "{:?}", c.violations.first());
        }
        let t = table(&[], false).unwrap();
        assert_eq!(
            t.check_interval_convexity(&s),
            Err(Error::Unsupported(
                "convexity undefined for finite tables".into()
            ))
        );
    }

    #[test]
    fn property_star_examples() {
        let g = Digraph::new(
            ConvexSpace::whole(2, Metric::Euclidean).unwrap(),
            EdgeRelation::ComponentwiseOrder,
            true,
        )
        .unwrap();
        let seq: Vec<Point> = (1..=100)
            .map(|n| pt(&[1.0 - 1.0 / n as f64, 0.0]))
            .collect();
        let r = g.check_property_star(&seq, &pt(&[1.0, 0.0]), 0.02).unwrap();
        assert_eq!(r.direction, Direction::Increasing);
        assert!(r.holds_at_every_index);
        assert_eq!(r.indices.len(), 100);

        let p = pt(&[0.3, 0.3]);
        let r = g.check_property_star(&vec![p.clone(); 5], &p, 0.0).unwrap();
        assert!(r.holds_at_every_index);

        let s = strip_graph();
        let seq: Vec<Point> = (1..=50).map(|n| pt(&[0.5, 1.0 - 1.0 / n as f64])).collect();
        assert!(
            s.check_property_star(&seq, &pt(&[0.5, 1.0]), 0.05)
                .unwrap()
                .holds_at_every_index
        );

        let zigzag = vec![pt(&[0.0, 0.0]), pt(&[1.0, 0.0]), pt(&[0.5, 0.0])];
        assert!(matches!(
            g.check_property_star(&zigzag, &pt(&[0.5, 0.0]), 1.0),
            Err(Error::NotMonotone { .. })
        ));
        assert!(matches!(
            g.check_property_star(&seq[..3], &pt(&[0.5, 1.0]), 0.01),
            Err(Error::NotConvergent { .. })
        ));
    }

    #[test]
    fn decreasing_sequence() {
        let g = order();
        let seq: Vec<Point> = (1..=20).map(|n| pt(&[1.0 / n as f64, 0.0])).collect();
        let r = g.check_property_star(&seq, &pt(&[0.0, 0.0]), 0.1).unwrap();
        assert_eq!(r.direction, Direction::Decreasing);
        assert!(r.holds_at_every_index);
    }

    #[test]
    fn strip_demo() {
        for n in [2, 100] {
            let d = demo_g_complete_strip(n).unwrap();
            assert!(d.certified, "n = {n}");
            assert_eq!(d.monotone.limit, pt(&[0.5, 1.0]));
            assert!(d.monotone.limit_in_space);
            assert!(!d.escaping.limit_in_space);
            assert_eq!(d.escaping.g_monotone, None);
        }
        assert!(!strip_space().contains(&pt(&[1.0, 0.0])));
        assert!(demo_g_complete_strip(1).is_err());
    }
}
