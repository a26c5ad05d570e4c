//! A verification laboratory for iterated function systems driven by
//! arbitrary shift spaces.
//!
//! The crate has four layers:
//!
//! * [`shift`] — declarative shift-space specs compiled to exact language
//!   oracles, plus structural probes and driving-sequence generators.
//! * [`space`] — the exactly computable state spaces the example systems
//!   live on: indexed line and harmonic spaces, rational piecewise-linear
//!   interval maps, and one- and two-sided cylinder algebra.
//! * [`engine`] — word-indexed composition: orbits, trajectories along a
//!   driving sequence, preimages, and factor checks.
//! * [`lab`] — bounded-horizon verdicts for the transitivity / mixing /
//!   exactness hierarchy and the density of transitive driving sequences.
//!
//! [`fixtures`] ships the worked example systems with expected-verdict
//! manifests, and [`report`] defines the machine-readable output schema.

pub mod config;
pub mod engine;
pub mod fixtures;
pub mod lab;
pub mod rational;
pub mod report;
pub mod shift;
pub mod space;
pub mod verdict;

pub use verdict::{Status, Verdict, Witness};
