//! Bounded-horizon verdicts for the transitivity / mixing / exactness
//! hierarchy, along-orbit variants, density-of-S estimation and the
//! hierarchy audit.

pub mod along;
pub mod audit;
pub mod checks;
pub mod cover;

use thiserror::Error;

use crate::engine::EngineError;
use crate::rational::{q, Q};
use crate::space::SetValue;

pub use along::{
    check_along, estimate_s_density, omega_limit_estimate, s_membership, AlongProperty,
    DensityEstimate,
};
pub use audit::{hierarchy_audit, AuditInput};
pub use checks::{
    check_exact, check_mixing, check_point_transitive, check_preimage_hypothesis,
    check_topological_transitive, interior_probe, mixing_table, MixOutcome, MixResult,
    ProbeFinding, ProbeReport,
};
pub use cover::{build_cover, Cell};

#[derive(Debug, Error)]
pub enum LabError {
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error("this space needs an explicit cover in the check config")]
    CoverRequired,
    #[error("bad check config: {0}")]
    BadConfig(String),
}

impl From<crate::shift::ShiftError> for LabError {
    fn from(e: crate::shift::ShiftError) -> Self {
        LabError::Engine(EngineError::Shift(e))
    }
}

impl From<crate::space::SpaceError> for LabError {
    fn from(e: crate::space::SpaceError) -> Self {
        LabError::Engine(EngineError::Space(e))
    }
}

/// Every quantifier bound a checker uses, pinned explicitly.
#[derive(Clone, Debug)]
pub struct CheckConfig {
    /// Density radius for covers on metric spaces.
    pub epsilon: Q,
    /// Word-length horizon L for searches over the language.
    pub word_horizon: usize,
    /// Trajectory horizon H for runs along a driving sequence.
    pub run_horizon: usize,
    /// Cylinder cover depth.
    pub depth: usize,
    /// Mixing window [lo, hi]: lengths probed for per-pair bounds.
    pub mixing_lo: usize,
    pub mixing_hi: usize,
    pub seed: u64,
    /// Override cover cells (required for two-sided spaces).
    pub explicit_cover: Option<Vec<SetValue>>,
    /// Witness hints tried first by point-transitivity searches.
    pub candidates: Vec<SetValue>,
}

impl CheckConfig {
    pub fn validate(&self) -> Result<(), LabError> {
        if self.epsilon <= q(0, 1) {
            return Err(LabError::BadConfig("epsilon must be positive".into()));
        }
        if self.word_horizon == 0 || self.run_horizon == 0 {
            return Err(LabError::BadConfig("horizons must be >= 1".into()));
        }
        if self.mixing_lo > self.mixing_hi {
            return Err(LabError::BadConfig("mixing window is inverted".into()));
        }
        if let Some(cells) = &self.explicit_cover {
            if cells.is_empty() {
                return Err(LabError::BadConfig("explicit cover is empty".into()));
            }
        }
        Ok(())
    }
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            epsilon: q(1, 64),
            word_horizon: 14,
            run_horizon: 5000,
            depth: 6,
            mixing_lo: 0,
            mixing_hi: 8,
            seed: 7,
            explicit_cover: None,
            candidates: Vec::new(),
        }
    }
}
