//! Named experiment setups and the JSON scenario format.
//!
//! A scenario document has the top-level keys `space`, `graph`, `map`,
//! `params`, `start`, `expected`, and optionally `name`, `solver`, `verify`
//! and `demo`:
//!
//! ```json
//! {
//!   "name": "halving",
//!   "space": { "dimension": 1, "metric": "euclidean",
//!              "box": { "lower": [0.0], "upper": [1.0], "open_sides": [[false, false]] } },
//!   "graph": { "kind": "componentwise-order" },
//!   "map": { "kind": "halving-to-anchor", "anchor": [0.0] },
//!   "params": { "variant": "graph-gc-strict", "a": 0.5, "b": 0.5, "c": 0.2 },
//!   "start": [1.0],
//!   "expected": { "kind": "fixed-point", "point": [0.0], "tolerance": 1e-8 },
//!   "solver": { "tolerance": 1e-9, "beta": 0.5, "assert_edges": true }
//! }
//! ```
//!
//! Unbounded box sides are written as `null`.

use serde::{Deserialize, Serialize};

use crate::contraction::{validate_params, GCParams, MapKind, MappingHandle, NamedMap, Variant};
use crate::error::{Error, Result};
use crate::exec::Sampling;
use crate::graph::{strip_space, Digraph, EdgeRelation};
use crate::solver::{Certificate, SolverConfig, Status};
use crate::space::{Bound, BoxDomain, ConvexSpace, Metric, Point, DEFAULT_SAMPLE_RADIUS};

pub const BUILTIN_NAMES: [&str; 4] = [
    "halving",
    "shift-counterexample",
    "strip-space",
    "affine-monotone",
];

#[derive(Debug, Clone, PartialEq)]
pub enum Expected {
    FixedPoint { point: Point, tolerance: f64 },
    NoFixedPoint,
    HypothesisFailure,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifySettings {
    pub samples: usize,
    pub seed: u64,
}

impl Default for VerifySettings {
    fn default() -> Self {
        VerifySettings {
            samples: 10_000,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub name: String,
    pub graph: Digraph,
    pub map: MappingHandle,
    pub params: GCParams,
    pub start: Point,
    pub expected: Expected,
    pub solver: SolverConfig,
    pub verify: VerifySettings,
    /// The G-completeness demonstration belongs to this scenario.
    pub strip_demo: bool,
}

impl Scenario {
    pub fn space(&self) -> &ConvexSpace {
        self.graph.space()
    }

    /// Whether a solver certificate matches the expected outcome.
    pub fn matches(&self, cert: &Certificate) -> bool {
        match &self.expected {
            Expected::FixedPoint { point, tolerance } => {
                cert.converged() && self.space().dist(&cert.omega, point) <= *tolerance
            }
            Expected::NoFixedPoint => !cert.converged(),
            Expected::HypothesisFailure => matches!(cert.status, Status::HypothesisFailure { .. }),
        }
    }

    pub fn to_config(&self) -> ScenarioConfig {
        let space = self.space();
        let dom = space.domain();
        let side = |b: &Bound| b.value.is_finite().then_some(b.value);
        let (metric, weights) = match space.metric() {
            Metric::WeightedEuclidean(w) => ("weighted-euclidean", Some(w.clone())),
            m => (m.name(), None),
        };
        let (kind, matrix, vertices, order_matrix) = match self.graph.relation() {
            EdgeRelation::FiniteTable {
                vertices,
                adjacency,
            } => (
                "finite-table",
                Some(adjacency.clone()),
                Some(vertices.iter().map(|v| v.coords().to_vec()).collect()),
                None,
            ),
            EdgeRelation::AffineOrder { matrix } => {
                ("custom-affine-order", None, None, Some(matrix.clone()))
            }
            r => (r.name(), None, None, None),
        };
        let mut map = MapConfig {
            kind: self.map.kind().name().to_string(),
            ..Default::default()
        };
        match self.map.kind() {
            MapKind::Affine { matrix, vector } => {
                map.matrix = Some(matrix.clone());
                map.vector = Some(vector.clone());
            }
            MapKind::Shift { vector } => map.vector = Some(vector.clone()),
            MapKind::HalvingToAnchor { anchor } => map.anchor = Some(anchor.clone()),
            MapKind::Named(n) => map.name = Some(*n),
        }
        ScenarioConfig {
            name: Some(self.name.clone()),
            space: SpaceConfig {
                dimension: space.dimension(),
                metric: metric.to_string(),
                weights,
                bounds: Some(BoxConfig {
                    lower: dom.lower.iter().map(side).collect(),
                    upper: dom.upper.iter().map(side).collect(),
                    open_sides: Some(
                        dom.lower
                            .iter()
                            .zip(&dom.upper)
                            .map(|(l, u)| [l.open, u.open])
                            .collect(),
                    ),
                    sample_radius: (dom.sample_radius != DEFAULT_SAMPLE_RADIUS)
                        .then_some(dom.sample_radius),
                }),
            },
            graph: GraphConfig {
                kind: kind.to_string(),
                matrix,
                vertices,
                order_matrix,
                transitive: Some(self.graph.transitive_claimed()),
            },
            map,
            params: ParamsConfig {
                variant: self.params.variant,
                a: self.params.a,
                b: self.params.b,
                c: (self.params.variant != Variant::Gregus).then_some(self.params.c),
            },
            start: self.start.coords().to_vec(),
            expected: match &self.expected {
                Expected::FixedPoint { point, tolerance } => ExpectedConfig::FixedPoint {
                    point: point.coords().to_vec(),
                    tolerance: *tolerance,
                },
                Expected::NoFixedPoint => ExpectedConfig::NoFixedPoint,
                Expected::HypothesisFailure => ExpectedConfig::HypothesisFailure,
            },
            solver: Some(SolverSection {
                tolerance: Some(self.solver.tolerance),
                max_outer_iterations: Some(self.solver.max_outer_iterations),
                beta: self.solver.beta_override,
                assert_edges: Some(self.solver.assert_edges),
                force: Some(self.solver.force_mode),
            }),
            verify: Some(VerifySection {
                samples: Some(self.verify.samples),
                seed: Some(self.verify.seed),
            }),
            demo: self.strip_demo.then(|| "g-complete-strip".to_string()),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_config()).expect("config serializes")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub space: SpaceConfig,
    pub graph: GraphConfig,
    pub map: MapConfig,
    pub params: ParamsConfig,
    pub start: Vec<f64>,
    pub expected: ExpectedConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub solver: Option<SolverSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verify: Option<VerifySection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub demo: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceConfig {
    pub dimension: usize,
    pub metric: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<f64>>,
    /// Missing means all of ℝⁿ.
    #[serde(rename = "box", default, skip_serializing_if = "Option::is_none")]
    pub bounds: Option<BoxConfig>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoxConfig {
    pub lower: Vec<Option<f64>>,
    pub upper: Vec<Option<f64>>,
    /// `[lower_open, upper_open]` per coordinate; all closed when missing.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub open_sides: Option<Vec<[bool; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sample_radius: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphConfig {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<bool>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertices: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order_matrix: Option<Vec<Vec<f64>>>,
    /// Defaults to true for order kinds and false for finite tables.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub transitive: Option<bool>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapConfig {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vector: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub anchor: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<NamedMap>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsConfig {
    pub variant: Variant,
    pub a: f64,
    pub b: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ExpectedConfig {
    FixedPoint { point: Vec<f64>, tolerance: f64 },
    NoFixedPoint,
    HypothesisFailure,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolverSection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_outer_iterations: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub assert_edges: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub force: Option<bool>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifySection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

fn config_err(key: &str, e: impl std::fmt::Display) -> Error {
    Error::Config {
        key: key.to_string(),
        message: e.to_string(),
    }
}

fn require<T: Clone>(value: &Option<T>, key: &str) -> Result<T> {
    value.clone().ok_or_else(|| config_err(key, "missing"))
}

fn point(coords: &[f64], key: &str) -> Result<Point> {
    Point::new(coords.to_vec()).map_err(|e| config_err(key, e))
}

fn build_space(c: &SpaceConfig) -> Result<ConvexSpace> {
    let metric = match c.metric.as_str() {
        "euclidean" => Metric::Euclidean,
        "max-norm" => Metric::MaxNorm,
        "weighted-euclidean" => Metric::WeightedEuclidean(require(&c.weights, "space.weights")?),
        other => {
            return Err(config_err(
                "space.metric",
                format!("unknown metric `{other}`"),
            ))
        }
    };
    let n = c.dimension;
    let domain = match &c.bounds {
        None => BoxDomain::unbounded(n),
        Some(b) => {
            let open = b
                .open_sides
                .clone()
                .unwrap_or_else(|| vec![[false, false]; b.lower.len()]);
            if b.lower.len() != n || b.upper.len() != n || open.len() != n {
                return Err(config_err("space.box", format!("bounds need {n} entries")));
            }
            let side = |v: Option<f64>, is_open: bool, infinite: f64| match v {
                Some(x) => Bound {
                    value: x,
                    open: is_open,
                },
                None => Bound::open(infinite),
            };
            BoxDomain {
                lower: b
                    .lower
                    .iter()
                    .zip(&open)
                    .map(|(v, o)| side(*v, o[0], f64::NEG_INFINITY))
                    .collect(),
                upper: b
                    .upper
                    .iter()
                    .zip(&open)
                    .map(|(v, o)| side(*v, o[1], f64::INFINITY))
                    .collect(),
                sample_radius: b.sample_radius.unwrap_or(DEFAULT_SAMPLE_RADIUS),
            }
        }
    };
    ConvexSpace::new(n, metric, domain).map_err(|e| config_err("space", e))
}

fn build_graph(c: &GraphConfig, space: ConvexSpace) -> Result<Digraph> {
    let (relation, default_transitive) = match c.kind.as_str() {
        "componentwise-order" => (EdgeRelation::ComponentwiseOrder, true),
        "fixed-first-coordinate-order" => (EdgeRelation::FixedFirstCoordinate, true),
        "custom-affine-order" => (
            EdgeRelation::AffineOrder {
                matrix: require(&c.order_matrix, "graph.order_matrix")?,
            },
            true,
        ),
        "finite-table" => {
            let vertices = require(&c.vertices, "graph.vertices")?
                .iter()
                .map(|v| point(v, "graph.vertices"))
                .collect::<Result<Vec<_>>>()?;
            (
                EdgeRelation::FiniteTable {
                    vertices,
                    adjacency: require(&c.matrix, "graph.matrix")?,
                },
                false,
            )
        }
        other => {
            return Err(config_err(
                "graph.kind",
                format!("unknown graph kind `{other}`"),
            ))
        }
    };
    Digraph::new(space, relation, c.transitive.unwrap_or(default_transitive))
        .map_err(|e| config_err("graph", e))
}

fn build_map(c: &MapConfig, g: &Digraph) -> Result<MappingHandle> {
    let kind = match c.kind.as_str() {
        "affine" => MapKind::Affine {
            matrix: require(&c.matrix, "map.matrix")?,
            vector: require(&c.vector, "map.vector")?,
        },
        "shift" => MapKind::Shift {
            vector: require(&c.vector, "map.vector")?,
        },
        "halving-to-anchor" => MapKind::HalvingToAnchor {
            anchor: require(&c.anchor, "map.anchor")?,
        },
        "named-builtin" => MapKind::Named(require(&c.name, "map.name")?),
        other => {
            return Err(config_err(
                "map.kind",
                format!("unknown map kind `{other}`"),
            ))
        }
    };
    MappingHandle::new(kind, g).map_err(|e| config_err("map", e))
}

/// Builds a scenario from its config, running every construction check:
/// space and graph validity, the self-map check, parameter bounds, and
/// domain membership of the start and expected points.
pub fn from_config(c: &ScenarioConfig) -> Result<Scenario> {
    let space = build_space(&c.space)?;
    let graph = build_graph(&c.graph, space)?;
    let axioms = graph.check_graph_axioms(&Sampling::new(1_000, 0));
    if let Some(v) = axioms.violations.first() {
        if v.witness.len() == 1 || graph.transitive_claimed() {
            return Err(config_err(
                "graph",
                format!("axiom violated at {:?}", v.witness),
            ));
        }
    }
    let map = build_map(&c.map, &graph)?;
    let params = validate_params(c.params.variant, c.params.a, c.params.b, c.params.c)
        .map_err(|e| config_err("params", e))?;
    let start = point(&c.start, "start")?;
    if !graph.space().contains(&start) {
        return Err(config_err(
            "start",
            format!("{start} is outside the domain"),
        ));
    }
    let expected = match &c.expected {
        ExpectedConfig::FixedPoint {
            point: p,
            tolerance,
        } => {
            let p = point(p, "expected.point")?;
            if !graph.space().contains(&p) {
                return Err(config_err(
                    "expected.point",
                    format!("{p} is outside the domain"),
                ));
            }
            if !(*tolerance > 0.0) {
                return Err(config_err("expected.tolerance", "must be positive"));
            }
            Expected::FixedPoint {
                point: p,
                tolerance: *tolerance,
            }
        }
        ExpectedConfig::NoFixedPoint => Expected::NoFixedPoint,
        ExpectedConfig::HypothesisFailure => Expected::HypothesisFailure,
    };
    let s = c.solver.clone().unwrap_or_default();
    let defaults = SolverConfig::default();
    let solver = SolverConfig {
        tolerance: s.tolerance.unwrap_or(defaults.tolerance),
        max_outer_iterations: s
            .max_outer_iterations
            .unwrap_or(defaults.max_outer_iterations),
        beta_override: s.beta,
        assert_edges: s.assert_edges.unwrap_or(defaults.assert_edges),
        force_mode: s.force.unwrap_or(defaults.force_mode),
    };
    let v = c.verify.clone().unwrap_or_default();
    let verify = VerifySettings {
        samples: v.samples.unwrap_or(VerifySettings::default().samples),
        seed: v.seed.unwrap_or(0),
    };
    let strip_demo = match c.demo.as_deref() {
        None => false,
        Some("g-complete-strip") => true,
        Some(other) => return Err(config_err("demo", format!("unknown demo `{other}`"))),
    };
    Ok(Scenario {
        name: c.name.clone().unwrap_or_else(|| "unnamed".into()),
        graph,
        map,
        params,
        start,
        expected,
        solver,
        verify,
        strip_demo,
    })
}

/// Parses a JSON scenario document and builds it.
pub fn load_scenario(config_text: &str) -> Result<Scenario> {
    let c: ScenarioConfig = serde_json::from_str(config_text).map_err(|e| Error::Config {
        key: format!("line {} column {}", e.line(), e.column()),
        message: e.to_string(),
    })?;
    from_config(&c)
}

fn closed_box(lower: &[f64], upper: &[f64]) -> Option<BoxConfig> {
    Some(BoxConfig {
        lower: lower.iter().copied().map(Some).collect(),
        upper: upper.iter().copied().map(Some).collect(),
        open_sides: Some(vec![[false, false]; lower.len()]),
        sample_radius: None,
    })
}

fn solver(tolerance: f64, max: usize, beta: Option<f64>) -> Option<SolverSection> {
    Some(SolverSection {
        tolerance: Some(tolerance),
        max_outer_iterations: Some(max),
        beta,
        assert_edges: Some(true),
        force: Some(false),
    })
}

fn builtin_config(name: &str) -> Option<ScenarioConfig> {
    let order = GraphConfig {
        kind: "componentwise-order".into(),
        matrix: None,
        vertices: None,
        order_matrix: None,
        transitive: Some(true),
    };
    let verify = Some(VerifySection {
        samples: Some(10_000),
        seed: Some(0),
    });
    Some(match name {
        "halving" => ScenarioConfig {
            name: Some(name.into()),
            space: SpaceConfig {
                dimension: 1,
                metric: "euclidean".into(),
                weights: None,
                bounds: closed_box(&[0.0], &[1.0]),
            },
            graph: order,
            map: MapConfig {
                kind: "halving-to-anchor".into(),
                anchor: Some(vec![0.0]),
                ..Default::default()
            },
            params: ParamsConfig {
                variant: Variant::GraphGcStrict,
                a: 0.5,
                b: 0.5,
                c: Some(0.2),
            },
            start: vec![1.0],
            expected: ExpectedConfig::FixedPoint {
                point: vec![0.0],
                tolerance: 1e-8,
            },
            solver: solver(1e-9, 1000, Some(0.5)),
            verify,
            demo: None,
        },
        "shift-counterexample" => ScenarioConfig {
            name: Some(name.into()),
            space: SpaceConfig {
                dimension: 1,
                metric: "euclidean".into(),
                weights: None,
                bounds: Some(BoxConfig {
                    lower: vec![None],
                    upper: vec![None],
                    open_sides: Some(vec![[true, true]]),
                    sample_radius: None,
                }),
            },
            graph: order,
            map: MapConfig {
                kind: "shift".into(),
                vector: Some(vec![1.0]),
                ..Default::default()
            },
            params: ParamsConfig {
                variant: Variant::Raw,
                a: 0.9,
                b: 0.1,
                c: Some(5.0 / 9.0),
            },
            start: vec![0.0],
            expected: ExpectedConfig::NoFixedPoint,
            solver: solver(1e-9, 100, None),
            verify: Some(VerifySection {
                samples: Some(100_000),
                seed: Some(0),
            }),
            demo: None,
        },
        "strip-space" => {
            let strip = strip_space();
            let dom = strip.domain();
            ScenarioConfig {
                name: Some(name.into()),
                space: SpaceConfig {
                    dimension: 2,
                    metric: "euclidean".into(),
                    weights: None,
                    bounds: Some(BoxConfig {
                        lower: dom.lower.iter().map(|b| Some(b.value)).collect(),
                        upper: dom.upper.iter().map(|b| Some(b.value)).collect(),
                        open_sides: Some(
                            dom.lower
                                .iter()
                                .zip(&dom.upper)
                                .map(|(l, u)| [l.open, u.open])
                                .collect(),
                        ),
                        sample_radius: None,
                    }),
                },
                graph: GraphConfig {
                    kind: "fixed-first-coordinate-order".into(),
                    ..order
                },
                // (x, y) -> (x, (y + 1) / 2)
                map: MapConfig {
                    kind: "affine".into(),
                    matrix: Some(vec![vec![1.0, 0.0], vec![0.0, 0.5]]),
                    vector: Some(vec![0.0, 0.5]),
                    ..Default::default()
                },
                params: ParamsConfig {
                    variant: Variant::GraphGcStrict,
                    a: 0.5,
                    b: 0.5,
                    c: Some(0.2),
                },
                start: vec![0.5, 0.0],
                expected: ExpectedConfig::FixedPoint {
                    point: vec![0.5, 1.0],
                    tolerance: 1e-8,
                },
                solver: solver(1e-9, 1000, None),
                verify,
                demo: Some("g-complete-strip".into()),
            }
        }
        "affine-monotone" => ScenarioConfig {
            name: Some(name.into()),
            space: SpaceConfig {
                dimension: 2,
                metric: "euclidean".into(),
                weights: None,
                bounds: closed_box(&[0.0, 0.0], &[1.0, 1.0]),
            },
            graph: order,
            map: MapConfig {
                kind: "affine".into(),
                matrix: Some(vec![vec![0.3, 0.1], vec![0.0, 0.4]]),
                vector: Some(vec![0.5, 0.3]),
                ..Default::default()
            },
            params: ParamsConfig {
                variant: Variant::GraphGcStrict,
                a: 0.6,
                b: 0.4,
                c: Some(0.1),
            },
            start: vec![0.0, 0.0],
            // (I - A)^{-1} v
            expected: ExpectedConfig::FixedPoint {
                point: vec![0.55 / 0.7, 0.5],
                tolerance: 1e-8,
            },
            solver: solver(1e-9, 1000, None),
            verify,
            demo: None,
        },
        _ => return None,
    })
}

pub fn builtin(name: &str) -> Result<Scenario> {
    let config = builtin_config(name).ok_or_else(|| Error::UnknownScenario(name.to_string()))?;
    from_config(&config)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::contraction::verify_condition;
    use crate::solver::solve;

    #[test]
    fn builtins_construct_and_round_trip() {
        for name in BUILTIN_NAMES {
            let s = builtin(name).unwrap();
            assert_eq!(s.name, name);
            let text = s.to_json();
            let back = load_scenario(&text).unwrap();
            assert_eq!(back, s, "{name}");
        }
        assert_eq!(builtin("nope"), Err(Error::UnknownScenario("nope".into())));
    }

    #[test]
    fn halving_config_equals_builtin() {
        let text = r#"{
            "name": "halving",
            "space": { "dimension": 1, "metric": "euclidean",
                       "box": { "lower": [0.0], "upper": [1.0] } },
            "graph": { "kind": "componentwise-order" },
            "map": { "kind": "halving-to-anchor", "anchor": [0.0] },
            "params": { "variant": "graph-gc-strict", "a": 0.5, "b": 0.5, "c": 0.2 },
            "start": [1.0],
            "expected": { "kind": "fixed-point", "point": [0.0], "tolerance": 1e-8 },
            "solver": { "tolerance": 1e-9, "max_outer_iterations": 1000, "beta": 0.5, "assert_edges": true },
            "verify": { "samples": 10000, "seed": 0 }
        }"#;
        assert_eq!(load_scenario(text).unwrap(), builtin("halving").unwrap());
    }

    #[test]
    fn load_errors() {
        let base = builtin("halving").unwrap().to_config();

        let mut c = base.clone();
        c.params.a = 1.2;
        match from_config(&c) {
            Err(Error::Config { key, message }) => {
                assert_eq!(key, "params");
                assert!(message.contains("0 < a < 1"), "{message}");
            }
            other => panic!("{other:?}"),
        }

        let mut c = base.clone();
        c.map = MapConfig {
            kind: "affine".into(),
            matrix: Some(vec![vec![2.0]]),
            vector: Some(vec![0.0]),
            ..Default::default()
        };
        match from_config(&c) {
            Err(Error::Config { key, message }) => {
                assert_eq!(key, "map");
                assert!(message.contains("leaves the domain"), "{message}");
            }
            other => panic!("{other:?}"),
        }

        let mut c = base.clone();
        c.start = vec![3.0];
        assert!(matches!(from_config(&c), Err(Error::Config { key, .. }) if key == "start"));

        match load_scenario("{ \"space\": 3 }") {
            Err(Error::Config { key, .. }) => assert!(key.starts_with("line 1")),
            other => panic!("{other:?}"),
        }
        assert!(load_scenario(&base_json_with_unknown_key()).is_err());
    }

    fn base_json_with_unknown_key() -> String {
        let mut v: serde_json::Value =
            serde_json::from_str(&builtin("halving").unwrap().to_json()).unwrap();
        v["params"]["d"] = serde_json::json!(1.0);
        v.to_string()
    }

    #[test]
    fn scenario_outcomes() {
        let h = builtin("halving").unwrap();
        let c = solve(&h.graph, &h.map, &h.params, &h.start, &h.solver).unwrap();
        assert!(h.matches(&c));

        // Oracle: solve the 2x2 system (I - A) x = v by Cramer's rule.
        let (a11, a12, a21, a22) = (1.0 - 0.3, -0.1, 0.0, 1.0 - 0.4);
        let (v1, v2) = (0.5, 0.3);
        let det = a11 * a22 - a12 * a21;
        let fixed = [(v1 * a22 - a12 * v2) / det, (a11 * v2 - a21 * v1) / det];
        let am = builtin("affine-monotone").unwrap();
        match &am.expected {
            Expected::FixedPoint { point, .. } => {
                assert!((point.coords()[0] - fixed[0]).abs() < 1e-15);
                assert!((point.coords()[1] - fixed[1]).abs() < 1e-15);
            }
            e => panic!("{e:?}"),
        }
        let c = solve(&am.graph, &am.map, &am.params, &am.start, &am.solver).unwrap();
        assert!(am.matches(&c), "{:?}", c.status);
        assert!(c.steps.iter().all(|s| s.edge_attestations == [true, true]));

        let strip = builtin("strip-space").unwrap();
        assert!(strip.strip_demo);
        let c = solve(
            &strip.graph,
            &strip.map,
            &strip.params,
            &strip.start,
            &strip.solver,
        )
        .unwrap();
        assert!(strip.matches(&c), "{:?}", c.status);

        let sh = builtin("shift-counterexample").unwrap();
        let v =
            verify_condition(&sh.graph, &sh.map, &sh.params, &Sampling::new(10_000, 0)).unwrap();
        assert!(v.passed());
        let force = SolverConfig {
            force_mode: true,
            ..sh.solver
        };
        let c = solve(&sh.graph, &sh.map, &sh.params, &sh.start, &force).unwrap();
        assert!(sh.matches(&c));
    }
}
