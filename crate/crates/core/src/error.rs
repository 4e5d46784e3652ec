use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("point has non-finite coordinate at index {index}")]
    NonFinite { index: usize },

    #[error("point {point} lies outside the space domain")]
    OutsideDomain { point: String },

    #[error("invalid space: {0}")]
    InvalidSpace(String),

    #[error("beta must lie in [0, 1], got {0}")]
    BetaOutOfRange(f64),

    #[error("vertex {point} is not in the finite table")]
    UnknownVertex { point: String },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("{0}")]
    Unsupported(String),

    #[error("{variant}: {bound} required (a = {a}, b = {b}, c = {c})")]
    InvalidParams {
        variant: &'static str,
        bound: &'static str,
        a: f64,
        b: f64,
        c: f64,
    },

    #[error("invalid mapping: {0}")]
    InvalidMapping(String),

    #[error("map leaves the domain: T({x}) = {image}")]
    NotSelfMap { x: String, image: String },

    #[error("relation too sparse: only {found} edge pairs found in {budget} samples (need at least {required})")]
    TooSparse {
        found: usize,
        budget: usize,
        required: usize,
    },

    #[error("interval too thin to sample: {rejections} rejections")]
    IntervalTooThin { rejections: usize },

    #[error("pair is not an edge in either direction")]
    NotAnEdge,

    #[error("sequence is not G-monotone (break at index {index})")]
    NotMonotone { index: usize },

    #[error("sequence does not approach the limit: last distance {distance} exceeds tolerance {tolerance}")]
    NotConvergent { distance: f64, tolerance: f64 },

    #[error("orbit escapes the domain at step {step}")]
    OrbitEscapes { step: usize },

    #[error("lemma hypothesis violated: no reduction index n <= {n_max} (best value {best}, bound {bound})")]
    NoReductionIndex { n_max: usize, best: f64, bound: f64 },

    #[error("start point has no edge to or from its image")]
    NoStartEdge,

    #[error("graph is not claimed transitive")]
    NotTransitive,

    #[error(
        "candidate is not an approximate fixed point: residual {residual} > tolerance {tolerance}"
    )]
    NotFixedPoint { residual: f64, tolerance: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("config error at `{key}`: {message}")]
    Config { key: String, message: String },

    #[error("unknown scenario `{0}`")]
    UnknownScenario(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
