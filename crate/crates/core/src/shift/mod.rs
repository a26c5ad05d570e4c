//! Shift spaces: declarative specs, exact language oracles, structural
//! probes and driving-sequence generators.

pub mod analysis;
pub mod dfa;
pub mod graph;
pub mod recode;
pub mod sample;
pub mod spec;
pub mod stream;
pub mod word;

use thiserror::Error;

pub use dfa::LanguageAutomaton;
pub use graph::Presentation;
pub use spec::{golden_shift, LabeledGraph, ShiftSpec};
pub use word::{Alphabet, Word};

#[derive(Debug, Error)]
pub enum ShiftError {
    #[error("malformed spec: {0}")]
    MalformedSpec(String),
    #[error("symbol {symbol} out of range for alphabet of size {alphabet}")]
    SymbolOutOfRange { symbol: u8, alphabet: u8 },
    #[error("endpoint word is not admissible")]
    InadmissibleEndpoint,
    #[error("language is empty at the requested length")]
    EmptyLanguage,
    #[error("spec is not irreducible (or not verified irreducible)")]
    NotIrreducible,
    #[error("generator words must have equal length")]
    LengthMismatch,
    #[error("spec is not presentable as a finite irreducible graph")]
    NotGraphPresentable,
    #[error("sampler reached a non-extendable state")]
    DeadEnd,
    #[error("input shorter than the block-code window")]
    InputTooShort,
    #[error("window not admissible in the source shift")]
    WindowInadmissible,
}

/// A spec together with its compiled presentation and language oracle.
/// Immutable after construction; shared freely.
#[derive(Clone, Debug)]
pub struct CompiledShift {
    pub spec: ShiftSpec,
    pub presentation: Presentation,
    pub oracle: LanguageAutomaton,
}

impl CompiledShift {
    pub fn alphabet(&self) -> Alphabet {
        self.oracle.alphabet
    }

    pub fn is_admissible(&self, w: &Word) -> Result<bool, ShiftError> {
        self.oracle.is_admissible(w)
    }
}

/// Compile a spec into its language oracle. The accepted language is
/// factor-closed and matches the variant semantics exactly: for full,
/// forbidden-block and graph specs it is the language of the subshift;
/// for coded specs it is the factor set of finite generator concatenations.
pub fn compile_oracle(spec: &ShiftSpec) -> Result<CompiledShift, ShiftError> {
    let presentation = graph::build_presentation(spec)?;
    let mut oracle = dfa::determinize(&presentation);
    oracle.provenance = spec.variant_name();
    Ok(CompiledShift {
        spec: spec.clone(),
        presentation,
        oracle,
    })
}
