//! Fixed points of monotone Gregus-Ćirić contractions on reflexive digraphs
//! over convex metric spaces.
//!
//! * [`space`]: normed boxes in ℝⁿ with linear geodesics.
//! * [`graph`]: edge relations, axiom checks and Property (*) evidence.
//! * [`contraction`]: parameter validation, right-hand sides, sampled
//!   verification of the contractive and monotonicity conditions.
//! * [`oracles`]: executable forms of the four supporting lemmas.
//! * [`solver`]: the convex-combination fixed-point iteration with
//!   certificates.
//! * [`scenarios`]: builtin experiment setups and the JSON config loader.
//!
//! Sampled checks run on the rayon pool when the `parallel` feature is on
//! (the default) and give identical results either way.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod contraction;
pub mod error;
pub mod exec;
pub mod graph;
pub mod oracles;
pub mod real;
pub mod report;
pub mod scenarios;
pub mod solver;
pub mod space;

pub use error::{Error, Result};
pub use exec::{Execution, Sampling};
pub use report::{Violation, ViolationReport};
pub use space::{ConvexSpace, Point};
