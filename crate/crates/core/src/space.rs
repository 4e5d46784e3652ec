//! Normed boxes in ℝⁿ viewed as convex metric spaces.
//!
//! The combination point `combine(p, q, beta)` is the point on the linear
//! segment `[p, q]` with `d(p, z) = (1 - beta) d(p, q)` and
//! `d(z, q) = beta d(p, q)`, i.e. `beta` weights the first argument.

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exec::Sampling;
use crate::report::{SampleOutcome, ViolationReport};

/// Absolute slack scaled by magnitude: `1e-12 * (1 + |scale|)`.
pub fn slack(scale: f64) -> f64 {
    1e-12 * (1.0 + scale.abs())
}

/// Half-width of the sampling window on unbounded sides.
pub const DEFAULT_SAMPLE_RADIUS: f64 = 50.0;

#[derive(Clone, PartialEq)]
pub struct Point(Vec<f64>);

impl Point {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::InvalidArgument(
                "point needs at least one coordinate".into(),
            ));
        }
        if let Some(index) = coords.iter().position(|c| !c.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        Ok(Point(coords))
    }

    pub fn scalar(x: f64) -> Self {
        Point::new(vec![x]).expect("finite scalar")
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn into_coords(self) -> Vec<f64> {
        self.0
    }

    pub(crate) fn from_raw(coords: Vec<f64>) -> Self {
        Point(coords)
    }

    pub(crate) fn is_finite(&self) -> bool {
        self.0.iter().all(|c| c.is_finite())
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for Point {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        crate::real::serialize_slice(&self.0, s)
    }
}

impl<'de> Deserialize<'de> for Point {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let coords = Vec::<f64>::deserialize(d)?;
        Point::new(coords).map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Metric {
    Euclidean,
    MaxNorm,
    WeightedEuclidean(Vec<f64>),
}

impl Metric {
    pub fn name(&self) -> &'static str {
        match self {
            Metric::Euclidean => "euclidean",
            Metric::MaxNorm => "max-norm",
            Metric::WeightedEuclidean(_) => "weighted-euclidean",
        }
    }
}

/// One side of a coordinate interval. `value` may be infinite (unbounded).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bound {
    pub value: f64,
    pub open: bool,
}

impl Bound {
    pub fn closed(value: f64) -> Self {
        Bound { value, open: false }
    }

    pub fn open(value: f64) -> Self {
        Bound { value, open: true }
    }

    pub fn unbounded_below() -> Self {
        Bound::open(f64::NEG_INFINITY)
    }

    pub fn unbounded_above() -> Self {
        Bound::open(f64::INFINITY)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoxDomain {
    pub lower: Vec<Bound>,
    pub upper: Vec<Bound>,
    pub sample_radius: f64,
}

impl BoxDomain {
    pub fn closed(lower: &[f64], upper: &[f64]) -> Self {
        BoxDomain {
            lower: lower.iter().copied().map(Bound::closed).collect(),
            upper: upper.iter().copied().map(Bound::closed).collect(),
            sample_radius: DEFAULT_SAMPLE_RADIUS,
        }
    }

    pub fn unbounded(dimension: usize) -> Self {
        BoxDomain {
            lower: vec![Bound::unbounded_below(); dimension],
            upper: vec![Bound::unbounded_above(); dimension],
            sample_radius: DEFAULT_SAMPLE_RADIUS,
        }
    }

    pub fn with_sample_radius(mut self, radius: f64) -> Self {
        self.sample_radius = radius;
        self
    }

    fn contains_coord(&self, i: usize, x: f64) -> bool {
        let (lo, hi) = (self.lower[i], self.upper[i]);
        let above = if lo.open { x > lo.value } else { x >= lo.value };
        let below = if hi.open { x < hi.value } else { x <= hi.value };
        above && below
    }

    /// Finite window used for uniform sampling on coordinate `i`.
    pub fn sample_window(&self, i: usize) -> (f64, f64) {
        let lo = self.lower[i].value;
        let hi = self.upper[i].value;
        let r = self.sample_radius;
        match (lo.is_finite(), hi.is_finite()) {
            (true, true) => (lo, hi),
            (true, false) => (lo, lo + 2.0 * r),
            (false, true) => (hi - 2.0 * r, hi),
            (false, false) => (-r, r),
        }
    }

    pub fn is_bounded(&self) -> bool {
        self.lower
            .iter()
            .chain(&self.upper)
            .all(|b| b.value.is_finite())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvexSpace {
    dimension: usize,
    metric: Metric,
    domain: BoxDomain,
}

impl ConvexSpace {
    pub fn new(dimension: usize, metric: Metric, domain: BoxDomain) -> Result<Self> {
        if dimension == 0 {
            return Err(Error::InvalidSpace("dimension must be at least 1".into()));
        }
        if domain.lower.len() != dimension || domain.upper.len() != dimension {
            return Err(Error::InvalidSpace(format!(
                "box bounds must have {dimension} entries"
            )));
        }
        if let Metric::WeightedEuclidean(w) = &metric {
            if w.len() != dimension {
                return Err(Error::InvalidSpace(format!(
                    "weighted-euclidean needs {dimension} weights, got {}",
                    w.len()
                )));
            }
            if w.iter().any(|&wi| !(wi > 0.0 && wi.is_finite())) {
                return Err(Error::InvalidSpace(
                    "weights must be strictly positive".into(),
                ));
            }
        }
        if !(domain.sample_radius > 0.0 && domain.sample_radius.is_finite()) {
            return Err(Error::InvalidSpace("sample radius must be positive".into()));
        }
        for i in 0..dimension {
            let (lo, hi) = (domain.lower[i], domain.upper[i]);
            if lo.value.is_nan() || hi.value.is_nan() {
                return Err(Error::InvalidSpace(format!("NaN bound on coordinate {i}")));
            }
            let empty = lo.value > hi.value || (lo.value == hi.value && (lo.open || hi.open));
            if empty || lo.value == f64::INFINITY || hi.value == f64::NEG_INFINITY {
                return Err(Error::InvalidSpace(format!(
                    "empty interval on coordinate {i}"
                )));
            }
        }
        Ok(ConvexSpace {
            dimension,
            metric,
            domain,
        })
    }

    /// ℝⁿ with no bounds.
    pub fn whole(dimension: usize, metric: Metric) -> Result<Self> {
        ConvexSpace::new(dimension, metric, BoxDomain::unbounded(dimension))
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn metric(&self) -> &Metric {
        &self.metric
    }

    pub fn domain(&self) -> &BoxDomain {
        &self.domain
    }

    pub fn check_point(&self, p: &Point) -> Result<()> {
        if p.dim() != self.dimension {
            return Err(Error::DimensionMismatch {
                expected: self.dimension,
                got: p.dim(),
            });
        }
        if let Some(index) = p.coords().iter().position(|c| !c.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        Ok(())
    }

    pub fn contains(&self, p: &Point) -> bool {
        p.dim() == self.dimension
            && p.is_finite()
            && p.coords()
                .iter()
                .enumerate()
                .all(|(i, &x)| self.domain.contains_coord(i, x))
    }

    pub fn distance(&self, p: &Point, q: &Point) -> Result<f64> {
        self.check_point(p)?;
        self.check_point(q)?;
        Ok(self.dist(p, q))
    }

    /// Distance without validation; callers guarantee matching dimensions.
    pub(crate) fn dist(&self, p: &Point, q: &Point) -> f64 {
        let diffs = p.coords().iter().zip(q.coords()).map(|(a, b)| a - b);
        match &self.metric {
            Metric::Euclidean => diffs.map(|d| d * d).sum::<f64>().sqrt(),
            Metric::MaxNorm => diffs.map(f64::abs).fold(0.0, f64::max),
            Metric::WeightedEuclidean(w) => {
                diffs.zip(w).map(|(d, wi)| wi * d * d).sum::<f64>().sqrt()
            }
        }
    }

    pub fn combine(&self, p: &Point, q: &Point, beta: f64) -> Result<Point> {
        self.check_point(p)?;
        self.check_point(q)?;
        if !(0.0..=1.0).contains(&beta) {
            return Err(Error::BetaOutOfRange(beta));
        }
        Ok(self.comb(p, q, beta))
    }

    pub(crate) fn comb(&self, p: &Point, q: &Point, beta: f64) -> Point {
        let alpha = 1.0 - beta;
        Point::from_raw(
            p.coords()
                .iter()
                .zip(q.coords())
                .map(|(a, b)| beta * a + alpha * b)
                .collect(),
        )
    }

    /// Uniform draw from the sampling window, retried until it lands in the
    /// domain (only open sides can reject).
    pub fn sample_point<R: Rng + ?Sized>(&self, rng: &mut R) -> Point {
        loop {
            let coords = (0..self.dimension)
                .map(|i| {
                    let (lo, hi) = self.domain.sample_window(i);
                    if lo == hi {
                        lo
                    } else {
                        rng.random_range(lo..=hi)
                    }
                })
                .collect();
            let p = Point::from_raw(coords);
            if self.contains(&p) {
                return p;
            }
        }
    }
}

fn draw_segment_sample(space: &ConvexSpace, s: &Sampling, i: usize) -> (Point, Point, Point, f64) {
    let mut rng = s.rng(i);
    let x = space.sample_point(&mut rng);
    let y = space.sample_point(&mut rng);
    let z = space.sample_point(&mut rng);
    let beta: f64 = rng.random_range(0.0..=1.0);
    (x, y, z, beta)
}

/// Samples `(x, y, z, beta)` and checks
/// `d(beta x ⊕ (1-beta) y, z) <= beta d(x,z) + (1-beta) d(y,z)`.
pub fn check_takahashi(space: &ConvexSpace, sampling: &Sampling) -> ViolationReport {
    let outcomes = sampling.map(|i| {
        let (x, y, z, beta) = draw_segment_sample(space, sampling, i);
        let w = space.comb(&x, &y, beta);
        let lhs = space.dist(&w, &z);
        let rhs = beta * space.dist(&x, &z) + (1.0 - beta) * space.dist(&y, &z);
        SampleOutcome::inequality(vec![x, y, z], Some(beta), lhs, rhs, 1e-12)
    });
    ViolationReport::from_outcomes("takahashi", sampling, outcomes)
}

/// Samples `(p, q, beta)` and checks both segment identities
/// `d(p,z) = (1-beta) d(p,q)` and `d(z,q) = beta d(p,q)` with
/// tolerance `1e-12 (1 + d(p,q))`.
pub fn check_segment_identities(space: &ConvexSpace, sampling: &Sampling) -> ViolationReport {
    let outcomes = sampling.map(|i| {
        let (p, q, _, beta) = draw_segment_sample(space, sampling, i);
        let z = space.comb(&p, &q, beta);
        let dpq = space.dist(&p, &q);
        let err_left = (space.dist(&p, &z) - (1.0 - beta) * dpq).abs();
        let err_right = (space.dist(&z, &q) - beta * dpq).abs();
        let err = err_left.max(err_right);
        SampleOutcome::inequality(vec![p, q], Some(beta), err, 0.0, 1e-12 * (1.0 + dpq))
    });
    ViolationReport::from_outcomes("segment-identity", sampling, outcomes)
}
