//! The Gregus / Ćirić family of contractive conditions.
//!
//! Right-hand sides are evaluated with the space metric; verification is
//! restricted to edge pairs of the digraph.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Sampling;
use crate::graph::Digraph;
use crate::report::{SampleOutcome, ViolationReport};
use crate::space::{ConvexSpace, Point};

/// Minimum number of edge pairs a sampled verification must reach.
pub const MIN_EDGE_PAIRS: usize = 10;

const SUM_TOL: f64 = 1e-12;
const REL_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    /// `0 < a < 1`, `p >= 0`, `a + 2p = 1`; `b` holds `p`.
    Gregus,
    /// `0 < a < 1`, `a + b = 1`, `0 <= c <= (4-a)/(8-a)`.
    CiricCg,
    /// `0 < a < 1`, `a + b = 1`, `0 <= c < 1/2`.
    Drm,
    /// `0 < a < 1`, `a + b = 1`, `0 <= c <= 1/2`.
    GraphGc,
    /// `GraphGc` with `c < 1/2`.
    GraphGcStrict,
    /// Any nonnegative `(a, b, c)`; evaluation only, no contraction claim.
    Raw,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::Gregus => "gregus",
            Variant::CiricCg => "ciric-cg",
            Variant::Drm => "drm",
            Variant::GraphGc => "graph-gc",
            Variant::GraphGcStrict => "graph-gc-strict",
            Variant::Raw => "raw",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GCParams {
    pub a: f64,
    /// `b`, or Gregus's `p`.
    pub b: f64,
    /// Zero for the Gregus variant.
    pub c: f64,
    pub variant: Variant,
}

/// Validates `(a, b_or_p, c)` against the bounds of `variant`. Gregus takes
/// no `c`; every other variant requires one.
pub fn validate_params(variant: Variant, a: f64, b_or_p: f64, c: Option<f64>) -> Result<GCParams> {
    let fail = |bound: &'static str| Error::InvalidParams {
        variant: variant.name(),
        bound,
        a,
        b: b_or_p,
        c: c.unwrap_or(f64::NAN),
    };
    if !a.is_finite() || !b_or_p.is_finite() || c.is_some_and(|c| !c.is_finite()) {
        return Err(fail("finite parameters"));
    }
    let c = match (variant, c) {
        (Variant::Gregus, Some(_)) => return Err(fail("c absent")),
        (Variant::Gregus, None) => 0.0,
        (_, None) => return Err(fail("c present")),
        (_, Some(c)) => c,
    };
    if variant == Variant::Raw {
        if a < 0.0 {
            return Err(fail("a >= 0"));
        }
        if b_or_p < 0.0 {
            return Err(fail("b >= 0"));
        }
        if c < 0.0 {
            return Err(fail("c >= 0"));
        }
        return Ok(GCParams {
            a,
            b: b_or_p,
            c,
            variant,
        });
    }
    if !(a > 0.0 && a < 1.0) {
        return Err(fail("0 < a < 1"));
    }
    if variant == Variant::Gregus {
        if b_or_p < 0.0 {
            return Err(fail("p >= 0"));
        }
        if (a + 2.0 * b_or_p - 1.0).abs() > SUM_TOL {
            return Err(fail("a + 2p = 1"));
        }
        return Ok(GCParams {
            a,
            b: b_or_p,
            c,
            variant,
        });
    }
    if b_or_p < 0.0 {
        return Err(fail("b >= 0"));
    }
    if (a + b_or_p - 1.0).abs() > SUM_TOL {
        return Err(fail("a + b = 1"));
    }
    if c < 0.0 {
        return Err(fail("c >= 0"));
    }
    match variant {
        Variant::CiricCg if c > (4.0 - a) / (8.0 - a) => return Err(fail("c <= (4-a)/(8-a)")),
        Variant::Drm | Variant::GraphGcStrict if c >= 0.5 => return Err(fail("c < 1/2")),
        Variant::GraphGc if c > 0.5 => return Err(fail("c <= 1/2")),
        _ => {}
    }
    Ok(GCParams {
        a,
        b: b_or_p,
        c,
        variant,
    })
}

impl GCParams {
    pub fn new(variant: Variant, a: f64, b: f64, c: f64) -> Result<Self> {
        let c = (variant != Variant::Gregus).then_some(c);
        validate_params(variant, a, b, c)
    }

    /// Whether the same numbers also pass `variant`'s bounds.
    pub fn satisfies(&self, variant: Variant) -> bool {
        if (self.variant == Variant::Gregus) != (variant == Variant::Gregus) {
            return false;
        }
        GCParams::new(variant, self.a, self.b, self.c).is_ok()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NamedMap {
    /// `(x, y) -> (y, x)`.
    Swap,
    /// `x -> sin(x) / 2` coordinatewise.
    HalfSine,
}

#[derive(Debug, Clone, PartialEq)]
pub enum MapKind {
    /// `T(x) = A x + v`.
    Affine {
        matrix: Vec<Vec<f64>>,
        vector: Vec<f64>,
    },
    /// `T(x) = x + v`.
    Shift {
        vector: Vec<f64>,
    },
    /// `T(x) = anchor + (x - anchor) / 2`.
    HalvingToAnchor {
        anchor: Vec<f64>,
    },
    Named(NamedMap),
}

impl MapKind {
    pub fn name(&self) -> &'static str {
        match self {
            MapKind::Affine { .. } => "affine",
            MapKind::Shift { .. } => "shift",
            MapKind::HalvingToAnchor { .. } => "halving-to-anchor",
            MapKind::Named(_) => "named-builtin",
        }
    }
}

/// An evaluatable self-map.
#[derive(Debug, Clone, PartialEq)]
pub struct MappingHandle {
    kind: MapKind,
    dimension: usize,
}

/// Points drawn when checking that a map sends its domain into itself.
pub const SELF_MAP_SAMPLES: usize = 2_000;

impl MappingHandle {
    /// Builds the map without checking that it preserves any domain.
    pub fn from_kind(kind: MapKind, dimension: usize) -> Result<Self> {
        let bad = |m: String| Err(Error::InvalidMapping(m));
        match &kind {
            MapKind::Affine { matrix, vector } => {
                if matrix.len() != dimension || matrix.iter().any(|r| r.len() != dimension) {
                    return bad(format!("affine matrix must be {dimension}x{dimension}"));
                }
                if vector.len() != dimension {
                    return bad(format!("affine vector must have {dimension} entries"));
                }
                if matrix
                    .iter()
                    .flatten()
                    .chain(vector)
                    .any(|x| !x.is_finite())
                {
                    return bad("affine entries must be finite".into());
                }
            }
            MapKind::Shift { vector: v } | MapKind::HalvingToAnchor { anchor: v } => {
                if v.len() != dimension || v.iter().any(|x| !x.is_finite()) {
                    return bad(format!("vector must have {dimension} finite entries"));
                }
            }
            MapKind::Named(NamedMap::Swap) if dimension != 2 => {
                return bad("swap needs dimension 2".into());
            }
            MapKind::Named(_) => {}
        }
        Ok(MappingHandle { kind, dimension })
    }

    /// Builds the map and verifies it sends the graph's vertex set into
    /// itself: exhaustively on finite tables, by sampling otherwise.
    pub fn new(kind: MapKind, g: &Digraph) -> Result<Self> {
        let t = MappingHandle::from_kind(kind, g.space().dimension())?;
        t.check_self_map(g, &Sampling::new(SELF_MAP_SAMPLES, 0))?;
        Ok(t)
    }

    pub fn check_self_map(&self, g: &Digraph, sampling: &Sampling) -> Result<()> {
        let space = g.space();
        let escapes = |x: &Point| -> Option<Error> {
            let image = self.apply(x);
            let inside = match g.vertices() {
                Some(vs) => vs.contains(&image),
                None => space.contains(&image),
            };
            (!inside).then(|| Error::NotSelfMap {
                x: x.to_string(),
                image: image.to_string(),
            })
        };
        if let Some(vs) = g.vertices() {
            return vs.iter().find_map(escapes).map_or(Ok(()), Err);
        }
        let found = sampling.map(|i| {
            let x = space.sample_point(&mut sampling.rng(i));
            escapes(&x)
        });
        found.into_iter().flatten().next().map_or(Ok(()), Err)
    }

    pub fn kind(&self) -> &MapKind {
        &self.kind
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn eval(&self, x: &Point) -> Result<Point> {
        if x.dim() != self.dimension {
            return Err(Error::DimensionMismatch {
                expected: self.dimension,
                got: x.dim(),
            });
        }
        Ok(self.apply(x))
    }

    pub(crate) fn apply(&self, x: &Point) -> Point {
        let c = x.coords();
        let out = match &self.kind {
            MapKind::Affine { matrix, vector } => matrix
                .iter()
                .zip(vector)
                .map(|(row, v)| row.iter().zip(c).map(|(a, x)| a * x).sum::<f64>() + v)
                .collect(),
            MapKind::Shift { vector } => c.iter().zip(vector).map(|(x, v)| x + v).collect(),
            MapKind::HalvingToAnchor { anchor } => c
                .iter()
                .zip(anchor)
                .map(|(x, p)| p + (x - p) / 2.0)
                .collect(),
            MapKind::Named(NamedMap::Swap) => vec![c[1], c[0]],
            MapKind::Named(NamedMap::HalfSine) => c.iter().map(|x| x.sin() / 2.0).collect(),
        };
        Point::from_raw(out)
    }

    /// `T^k(x)` for `k = 0..=steps`.
    pub fn orbit(&self, x: &Point, steps: usize) -> Vec<Point> {
        let mut out = Vec::with_capacity(steps + 1);
        out.push(x.clone());
        for k in 0..steps {
            let next = self.apply(&out[k]);
            out.push(next);
        }
        out
    }

    /// Entrywise nonnegative affine maps preserve the componentwise order.
    pub fn is_order_preserving_affine(&self) -> bool {
        match &self.kind {
            MapKind::Affine { matrix, .. } => matrix.iter().flatten().all(|&a| a >= 0.0),
            MapKind::Shift { .. } | MapKind::HalvingToAnchor { .. } => true,
            MapKind::Named(_) => false,
        }
    }
}

fn check_pair(space: &ConvexSpace, t: &MappingHandle, x: &Point, y: &Point) -> Result<()> {
    space.check_point(x)?;
    space.check_point(y)?;
    if t.dimension != space.dimension() {
        return Err(Error::DimensionMismatch {
            expected: space.dimension(),
            got: t.dimension,
        });
    }
    Ok(())
}

/// The distances a condition consumes, computed once per pair.
struct PairDistances {
    xy: f64,
    x_ty: f64,
    y_tx: f64,
    x_tx: f64,
    y_ty: f64,
    tx_ty: f64,
}

impl PairDistances {
    fn new(space: &ConvexSpace, t: &MappingHandle, x: &Point, y: &Point) -> Self {
        let tx = t.apply(x);
        let ty = t.apply(y);
        PairDistances {
            xy: space.dist(x, y),
            x_ty: space.dist(x, &ty),
            y_tx: space.dist(y, &tx),
            x_tx: space.dist(x, &tx),
            y_ty: space.dist(y, &ty),
            tx_ty: space.dist(&tx, &ty),
        }
    }

    fn gc(&self, a: f64, b: f64, c: f64) -> f64 {
        a * self.xy.max(c * (self.x_ty + self.y_tx)) + b * self.x_tx.max(self.y_ty)
    }

    fn quasi(&self, k: f64) -> f64 {
        k * self
            .xy
            .max(self.x_ty)
            .max(self.y_tx)
            .max(self.x_tx)
            .max(self.y_ty)
    }

    fn gregus(&self, a: f64, p: f64) -> f64 {
        a * self.xy + p * self.x_tx + p * self.y_ty
    }

    fn rhs(&self, params: &GCParams) -> f64 {
        match params.variant {
            Variant::Gregus => self.gregus(params.a, params.b),
            _ => self.gc(params.a, params.b, params.c),
        }
    }
}

/// `a max{d(x,y), c [d(x,Ty) + d(y,Tx)]} + b max{d(x,Tx), d(y,Ty)}` with
/// no constraint on `(a, b, c)`.
pub fn rhs_gc_raw(
    space: &ConvexSpace,
    t: &MappingHandle,
    x: &Point,
    y: &Point,
    a: f64,
    b: f64,
    c: f64,
) -> Result<f64> {
    check_pair(space, t, x, y)?;
    Ok(PairDistances::new(space, t, x, y).gc(a, b, c))
}

pub fn rhs_gc(
    space: &ConvexSpace,
    t: &MappingHandle,
    x: &Point,
    y: &Point,
    params: &GCParams,
) -> Result<f64> {
    if params.variant == Variant::Gregus {
        return Err(Error::Unsupported(
            "rhs_gc needs a ciric-type variant, got gregus".into(),
        ));
    }
    rhs_gc_raw(space, t, x, y, params.a, params.b, params.c)
}

/// `k max{d(x,y), d(x,Ty), d(y,Tx), d(x,Tx), d(y,Ty)}`.
pub fn rhs_quasi(
    space: &ConvexSpace,
    t: &MappingHandle,
    x: &Point,
    y: &Point,
    k: f64,
) -> Result<f64> {
    if !(k >= 0.0) {
        return Err(Error::InvalidArgument(format!(
            "k must be nonnegative, got {k}"
        )));
    }
    check_pair(space, t, x, y)?;
    Ok(PairDistances::new(space, t, x, y).quasi(k))
}

/// `a d(x,y) + p d(Tx,x) + p d(Ty,y)` under the Gregus bounds.
pub fn rhs_gregus(
    space: &ConvexSpace,
    t: &MappingHandle,
    x: &Point,
    y: &Point,
    a: f64,
    p: f64,
) -> Result<f64> {
    validate_params(Variant::Gregus, a, p, None)?;
    check_pair(space, t, x, y)?;
    Ok(PairDistances::new(space, t, x, y).gregus(a, p))
}

/// Runs `f` on every edge pair: all table edges, or the sampled ones.
pub(crate) fn over_edges<F>(
    g: &Digraph,
    sampling: &Sampling,
    label: &str,
    f: F,
) -> Result<ViolationReport>
where
    F: Fn(&Point, &Point) -> Result<SampleOutcome> + Sync + Send,
{
    if let (Some(vs), Some(edges)) = (g.vertices(), g.table_edges()) {
        let mut report = ViolationReport::empty(label, sampling.seed);
        report.samples_tested = edges.len();
        for (i, j) in edges {
            report.push(f(&vs[i], &vs[j])?);
        }
        return Ok(report);
    }
    let outcomes = sampling.map(|i| -> Result<SampleOutcome> {
        let mut rng = sampling.rng(i);
        match g.sample_edge(&mut rng)? {
            Some((x, y)) => f(&x, &y),
            None => Ok(SampleOutcome::Skipped),
        }
    });
    let outcomes = outcomes.into_iter().collect::<Result<Vec<_>>>()?;
    let report = ViolationReport::from_outcomes(label, sampling, outcomes);
    if report.checked < MIN_EDGE_PAIRS {
        return Err(Error::TooSparse {
            found: report.checked,
            budget: sampling.count,
            required: MIN_EDGE_PAIRS,
        });
    }
    Ok(report)
}

/// Checks `d(Tx, Ty) <= rhs(x, y)` on edge pairs `(x, y)`.
pub fn verify_condition(
    g: &Digraph,
    t: &MappingHandle,
    params: &GCParams,
    sampling: &Sampling,
) -> Result<ViolationReport> {
    let space = g.space();
    over_edges(g, sampling, "condition", |x, y| {
        let d = PairDistances::new(space, t, x, y);
        Ok(SampleOutcome::inequality(
            vec![x.clone(), y.clone()],
            None,
            d.tx_ty,
            d.rhs(params),
            REL_SLACK,
        ))
    })
}

/// Checks that edges map to edges.
pub fn verify_monotone(
    g: &Digraph,
    t: &MappingHandle,
    sampling: &Sampling,
) -> Result<ViolationReport> {
    over_edges(g, sampling, "monotone", |x, y| {
        let holds = g.edge(&t.apply(x), &t.apply(y))?;
        Ok(SampleOutcome::predicate(vec![x.clone(), y.clone()], holds))
    })
}

/// With `a + b < 1` and `c <= 1/2`, the Ćirić right-hand side is dominated
/// pointwise by the quasi-contraction right-hand side with `k = a + b`.
/// Pairs are drawn from the whole domain, not only edges.
pub fn check_quasi_dominance(
    space: &ConvexSpace,
    t: &MappingHandle,
    params: &GCParams,
    sampling: &Sampling,
) -> Result<ViolationReport> {
    let fail = |bound: &'static str| Error::InvalidParams {
        variant: "quasi-dominance",
        bound,
        a: params.a,
        b: params.b,
        c: params.c,
    };
    if params.variant == Variant::Gregus {
        return Err(fail("ciric-type parameters"));
    }
    if !(params.a + params.b < 1.0) {
        return Err(fail("a + b < 1"));
    }
    if !(params.c <= 0.5) {
        return Err(fail("c <= 1/2"));
    }
    if t.dimension != space.dimension() {
        return Err(Error::DimensionMismatch {
            expected: space.dimension(),
            got: t.dimension,
        });
    }
    let k = params.a + params.b;
    let outcomes = sampling.map(|i| {
        let mut rng = sampling.rng(i);
        let x = space.sample_point(&mut rng);
        let y = space.sample_point(&mut rng);
        let d = PairDistances::new(space, t, &x, &y);
        SampleOutcome::inequality(
            vec![x, y],
            None,
            d.gc(params.a, params.b, params.c),
            d.quasi(k),
            REL_SLACK,
        )
    });
    Ok(ViolationReport::from_outcomes(
        "quasi-dominance",
        sampling,
        outcomes,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::EdgeRelation;
    use crate::space::{BoxDomain, Metric};

    fn unit() -> ConvexSpace {
        ConvexSpace::new(1, Metric::Euclidean, BoxDomain::closed(&[0.0], &[1.0])).unwrap()
    }

    fn line() -> ConvexSpace {
        ConvexSpace::whole(1, Metric::Euclidean).unwrap()
    }

    fn ordered(space: ConvexSpace) -> Digraph {
        Digraph::new(space, EdgeRelation::ComponentwiseOrder, true).unwrap()
    }

    fn halving() -> MappingHandle {
        MappingHandle::from_kind(MapKind::HalvingToAnchor { anchor: vec![0.0] }, 1).unwrap()
    }

    fn shift() -> MappingHandle {
        MappingHandle::from_kind(MapKind::Shift { vector: vec![1.0] }, 1).unwrap()
    }

    fn s(x: f64) -> Point {
        Point::scalar(x)
    }

    #[test]
    fn validation_examples() {
        let p = GCParams::new(Variant::GraphGcStrict, 0.5, 0.5, 0.2).unwrap();
        assert_eq!((p.a, p.b, p.c), (0.5, 0.5, 0.2));

        let e = GCParams::new(Variant::GraphGcStrict, 0.9, 0.1, 5.0 / 9.0).unwrap_err();
        assert!(e.to_string().contains("c < 1/2 required"), "{e}");

        // (4 - 0.5) / (8 - 0.5) = 7/15 < 0.47
        let e = GCParams::new(Variant::CiricCg, 0.5, 0.5, 0.47).unwrap_err();
        assert!(e.to_string().contains("c <= (4-a)/(8-a) required"), "{e}");
        assert!(GCParams::new(Variant::CiricCg, 0.5, 0.5, 7.0 / 15.0).is_ok());

        assert!(GCParams::new(Variant::GraphGc, 0.5, 0.5, 0.5).is_ok());
        assert!(GCParams::new(Variant::GraphGcStrict, 0.5, 0.5, 0.5).is_err());
        assert!(GCParams::new(Variant::Drm, 0.5, 0.5, 0.5).is_err());
        assert!(GCParams::new(Variant::GraphGc, 1.2, -0.2, 0.1).is_err());
        assert!(GCParams::new(Variant::GraphGc, 0.5, 0.4, 0.1).is_err());
        assert!(GCParams::new(Variant::Raw, 0.9, 0.1, 5.0 / 9.0).is_ok());
    }

    #[test]
    fn distinct_bound_messages() {
        let cases = [
            (Variant::GraphGc, 0.0, 1.0, Some(0.1), "0 < a < 1"),
            (Variant::GraphGc, 0.5, 0.6, Some(0.1), "a + b = 1"),
            (Variant::GraphGc, 0.5, 0.5, Some(-0.1), "c >= 0"),
            (Variant::GraphGc, 0.5, 0.5, Some(0.6), "c <= 1/2"),
            (Variant::Gregus, 0.5, 0.25, Some(0.1), "c absent"),
            (Variant::Gregus, 0.5, 0.3, None, "a + 2p = 1"),
            (Variant::Drm, 0.5, 0.5, None, "c present"),
        ];
        for (variant, a, b, c, bound) in cases {
            match validate_params(variant, a, b, c) {
                Err(Error::InvalidParams {
                    bound: got,
                    variant: v,
                    ..
                }) => {
                    assert_eq!(got, bound);
                    assert_eq!(v, variant.name());
                }
                other => panic!("{variant}: {other:?}"),
            }
        }
    }

    #[test]
    fn gregus_p_zero_rejected() {
        // a + 2p = 1 with p = 0 forces a = 1.
        assert!(validate_params(Variant::Gregus, 1.0, 0.0, None).is_err());
        assert!(rhs_gregus(&line(), &halving(), &s(0.0), &s(1.0), 1.0, 0.0).is_err());
    }

    #[test]
    fn rhs_examples() {
        let sp = line();
        let t = halving();
        let p = GCParams::new(Variant::GraphGc, 0.5, 0.5, 0.2).unwrap();
        // max{1, 0.2 * 1.5} = 1; 0.5 * max{0, 0.5} = 0.25
        assert_eq!(rhs_gc(&sp, &t, &s(0.0), &s(1.0), &p).unwrap(), 0.75);
        assert_eq!(rhs_gc(&sp, &t, &s(0.0), &s(0.0), &p).unwrap(), 0.0);

        let sh = shift();
        let r = rhs_gc_raw(&sp, &sh, &s(0.0), &s(0.5), 0.9, 0.1, 5.0 / 9.0).unwrap();
        assert!((r - 1.1).abs() < 1e-12);

        assert_eq!(rhs_quasi(&sp, &t, &s(0.0), &s(1.0), 1.0).unwrap(), 1.0);
        assert_eq!(rhs_quasi(&sp, &t, &s(0.0), &s(0.0), 1.0).unwrap(), 0.0);
        assert_eq!(rhs_quasi(&sp, &t, &s(0.3), &s(-7.0), 0.0).unwrap(), 0.0);

        assert_eq!(
            rhs_gregus(&sp, &t, &s(0.0), &s(1.0), 0.5, 0.25).unwrap(),
            0.625
        );

        let g = GCParams::new(Variant::Gregus, 0.5, 0.25, 0.0).unwrap();
        assert!(rhs_gc(&sp, &t, &s(0.0), &s(1.0), &g).is_err());
    }

    #[test]
    fn verify_examples() {
        let p = GCParams::new(Variant::GraphGc, 0.5, 0.5, 0.2).unwrap();
        let r =
            verify_condition(&ordered(unit()), &halving(), &p, &Sampling::new(100_000, 1)).unwrap();
        assert!(r.passed());
        assert!(r.checked > 50_000);

        let raw = GCParams::new(Variant::Raw, 0.9, 0.1, 5.0 / 9.0).unwrap();
        let r =
            verify_condition(&ordered(line()), &shift(), &raw, &Sampling::new(100_000, 2)).unwrap();
        assert!(r.passed(), "{:?}", r.violations.first());

        let double = MappingHandle::from_kind(
            MapKind::Affine {
                matrix: vec![vec![2.0]],
                vector: vec![0.0],
            },
            1,
        )
        .unwrap();
        assert_eq!(rhs_gc(&unit(), &double, &s(0.0), &s(1.0), &p).unwrap(), 1.0);
        let r = verify_condition(&ordered(unit()), &double, &p, &Sampling::new(10_000, 3)).unwrap();
        assert!(!r.passed());
        assert!(r.violations.iter().all(|v| v.lhs > v.rhs));
    }

    #[test]
    fn sparse_relation_diagnostic() {
        let p = GCParams::new(Variant::GraphGc, 0.5, 0.5, 0.2).unwrap();
        assert!(matches!(
            verify_condition(&ordered(unit()), &halving(), &p, &Sampling::new(5, 1)),
            Err(Error::TooSparse { .. })
        ));
    }

    #[test]
    fn monotone_examples() {
        let plane = ConvexSpace::new(
            2,
            Metric::Euclidean,
            BoxDomain::closed(&[0.0, 0.0], &[1.0, 1.0]),
        )
        .unwrap();
        let g = ordered(plane);
        let affine = MappingHandle::new(
            MapKind::Affine {
                matrix: vec![vec![0.3, 0.1], vec![0.0, 0.4]],
                vector: vec![0.5, 0.3],
            },
            &g,
        )
        .unwrap();
        assert!(affine.is_order_preserving_affine());
        assert!(verify_monotone(&g, &affine, &Sampling::new(10_000, 4))
            .unwrap()
            .passed());

        let sh = MappingHandle::from_kind(MapKind::Shift { vector: vec![1.0] }, 1).unwrap();
        assert!(
            verify_monotone(&ordered(line()), &sh, &Sampling::new(10_000, 4))
                .unwrap()
                .passed()
        );

        // Swapping coordinates permutes the order cone, so it stays monotone.
        let swap = MappingHandle::new(MapKind::Named(NamedMap::Swap), &g).unwrap();
        assert!(verify_monotone(&g, &swap, &Sampling::new(10_000, 4))
            .unwrap()
            .passed());

        // (x, y) -> (1 - y, x) reverses the second coordinate.
        let rotate = MappingHandle::new(
            MapKind::Affine {
                matrix: vec![vec![0.0, -1.0], vec![1.0, 0.0]],
                vector: vec![1.0, 0.0],
            },
            &g,
        )
        .unwrap();
        assert!(!rotate.is_order_preserving_affine());
        let (o, e) = (
            Point::new(vec![0.0, 0.0]).unwrap(),
            Point::new(vec![0.0, 1.0]).unwrap(),
        );
        assert!(g.has_edge(&o, &e).unwrap());
        assert!(!g.has_edge(&rotate.apply(&o), &rotate.apply(&e)).unwrap());
        let r = verify_monotone(&g, &rotate, &Sampling::new(10_000, 4)).unwrap();
        assert!(!r.passed());
        let w = &r.violations[0].witness;
        assert!(g.has_edge(&w[0], &w[1]).unwrap());
        assert!(!g
            .has_edge(&rotate.apply(&w[0]), &rotate.apply(&w[1]))
            .unwrap());
    }

    #[test]
    fn self_map_check() {
        let g = ordered(unit());
        let double = MapKind::Affine {
            matrix: vec![vec![2.0]],
            vector: vec![0.0],
        };
        assert!(matches!(
            MappingHandle::new(double, &g),
            Err(Error::NotSelfMap { .. })
        ));
        assert!(MappingHandle::new(MapKind::HalvingToAnchor { anchor: vec![0.0] }, &g).is_ok());
        assert!(MappingHandle::from_kind(MapKind::Named(NamedMap::Swap), 1).is_err());
    }

    #[test]
    fn finite_table_is_exhaustive() {
        let sp = line();
        let vertices: Vec<Point> = [0.0, 1.0, 2.0].map(Point::scalar).to_vec();
        let mut adjacency = vec![vec![false; 3]; 3];
        for i in 0..3 {
            for j in i..3 {
                adjacency[i][j] = true;
            }
        }
        let g = Digraph::new(
            sp,
            EdgeRelation::FiniteTable {
                vertices,
                adjacency,
            },
            true,
        )
        .unwrap();
        // 0 -> 0, 1 -> 0, 2 -> 1
        let t = MappingHandle::from_kind(
            MapKind::Affine {
                matrix: vec![vec![1.0]],
                vector: vec![-1.0],
            },
            1,
        )
        .unwrap();
        assert!(t.check_self_map(&g, &Sampling::new(0, 0)).is_err());
        let halve_floor =
            MappingHandle::from_kind(MapKind::HalvingToAnchor { anchor: vec![0.0] }, 1).unwrap();
        assert!(halve_floor
            .check_self_map(&g, &Sampling::new(0, 0))
            .is_err());
        let collapse = MappingHandle::from_kind(
            MapKind::Affine {
                matrix: vec![vec![0.0]],
                vector: vec![0.0],
            },
            1,
        )
        .unwrap();
        collapse.check_self_map(&g, &Sampling::new(0, 0)).unwrap();
        let p = GCParams::new(Variant::GraphGc, 0.5, 0.5, 0.2).unwrap();
        let r = verify_condition(&g, &collapse, &p, &Sampling::new(0, 0)).unwrap();
        assert_eq!(r.samples_tested, 6);
        assert!(r.passed());
        // The identity moves nothing, so only the `a d(x, y)` term remains.
        let id = MappingHandle::from_kind(
            MapKind::Affine {
                matrix: vec![vec![1.0]],
                vector: vec![0.0],
            },
            1,
        )
        .unwrap();
        let r = verify_condition(&g, &id, &p, &Sampling::new(0, 0)).unwrap();
        assert_eq!(r.violations.len(), 3);
    }

    #[test]
    fn dominance() {
        let p = GCParams::new(Variant::Raw, 0.4, 0.4, 0.5).unwrap();
        let r = check_quasi_dominance(&unit(), &halving(), &p, &Sampling::new(10_000, 8)).unwrap();
        assert!(r.passed());
        assert_eq!(r.checked, 10_000);
        let bad = GCParams::new(Variant::GraphGc, 0.5, 0.5, 0.5).unwrap();
        let e =
            check_quasi_dominance(&unit(), &halving(), &bad, &Sampling::new(10, 8)).unwrap_err();
        assert!(e.to_string().contains("a + b < 1"));
    }
}
