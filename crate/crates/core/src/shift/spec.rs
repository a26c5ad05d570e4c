//! Declarative shift-space descriptions.

use serde::{Deserialize, Serialize};

use super::word::{Alphabet, Word};
use super::ShiftError;

/// A labeled directed multigraph presenting a sofic shift: bi-infinite
/// walks, read off by their edge labels, are exactly the points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledGraph {
    pub vertices: usize,
    /// (source, target, label)
    pub edges: Vec<(usize, usize, u8)>,
}

/// Shift-space description, compiled by [`compile_oracle`](super::compile_oracle).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ShiftSpec {
    /// Unconstrained sequences over `k` symbols.
    Full { k: u8 },
    /// Finite-type shift: sequences avoiding every block in `forbidden`.
    ForbiddenSft { k: u8, forbidden: Vec<Word> },
    /// Free concatenations of the generator words; the oracle language is
    /// the factor set of finite concatenations.
    CodedByWords { k: u8, generators: Vec<Word> },
    /// Explicit labeled-graph presentation.
    SoficGraph { k: u8, graph: LabeledGraph },
}

impl ShiftSpec {
    pub fn full(k: u8) -> Self {
        ShiftSpec::Full { k }
    }

    pub fn sft(k: u8, forbidden: &[&str]) -> Self {
        ShiftSpec::ForbiddenSft {
            k,
            forbidden: forbidden.iter().map(|s| Word::parse(s).unwrap()).collect(),
        }
    }

    pub fn coded(k: u8, generators: &[&str]) -> Self {
        ShiftSpec::CodedByWords {
            k,
            generators: generators.iter().map(|s| Word::parse(s).unwrap()).collect(),
        }
    }

    pub fn alphabet(&self) -> Result<Alphabet, ShiftError> {
        let k = match self {
            ShiftSpec::Full { k }
            | ShiftSpec::ForbiddenSft { k, .. }
            | ShiftSpec::CodedByWords { k, .. }
            | ShiftSpec::SoficGraph { k, .. } => *k,
        };
        Alphabet::new(k)
    }

    /// Variant invariants from the data model; compilation assumes these.
    pub fn validate(&self) -> Result<(), ShiftError> {
        let alphabet = self.alphabet()?;
        match self {
            ShiftSpec::Full { .. } => Ok(()),
            ShiftSpec::ForbiddenSft { forbidden, .. } => {
                for f in forbidden {
                    if f.is_empty() {
                        return Err(ShiftError::MalformedSpec(
                            "forbidden block must be non-empty".into(),
                        ));
                    }
                    alphabet.check_word(f)?;
                }
                Ok(())
            }
            ShiftSpec::CodedByWords { generators, .. } => {
                if generators.is_empty() {
                    return Err(ShiftError::MalformedSpec("generator list is empty".into()));
                }
                for g in generators {
                    if g.is_empty() {
                        return Err(ShiftError::MalformedSpec(
                            "generator word must be non-empty".into(),
                        ));
                    }
                    alphabet.check_word(g)?;
                }
                Ok(())
            }
            ShiftSpec::SoficGraph { graph, .. } => {
                if graph.vertices == 0 {
                    return Err(ShiftError::MalformedSpec("graph has no vertices".into()));
                }
                let mut out = vec![false; graph.vertices];
                let mut inc = vec![false; graph.vertices];
                for &(s, t, label) in &graph.edges {
                    if s >= graph.vertices || t >= graph.vertices {
                        return Err(ShiftError::MalformedSpec(format!(
                            "edge ({s},{t}) out of range"
                        )));
                    }
                    if !alphabet.contains(label) {
                        return Err(ShiftError::SymbolOutOfRange {
                            symbol: label,
                            alphabet: alphabet.size(),
                        });
                    }
                    out[s] = true;
                    inc[t] = true;
                }
                if let Some(v) = (0..graph.vertices).find(|&v| !out[v] || !inc[v]) {
                    return Err(ShiftError::MalformedSpec(format!(
                        "stranded vertex {v}: every vertex needs an incoming and an outgoing edge"
                    )));
                }
                Ok(())
            }
        }
    }

    pub fn variant_name(&self) -> &'static str {
        match self {
            ShiftSpec::Full { .. } => "full",
            ShiftSpec::ForbiddenSft { .. } => "sft",
            ShiftSpec::CodedByWords { .. } => "coded",
            ShiftSpec::SoficGraph { .. } => "graph",
        }
    }

    /// The presentation graph compiled for this variant is language-exact
    /// (bi-infinite walks are exactly the subshift) for full shifts, SFTs
    /// and explicit graphs. For coded specs the oracle language is the
    /// factor-of-concatenations language by definition.
    pub fn graph_exact(&self) -> bool {
        !matches!(self, ShiftSpec::CodedByWords { .. })
    }
}

/// The golden subshift: binary, forbidding the block `11`.
pub fn golden_shift() -> ShiftSpec {
    ShiftSpec::sft(2, &["11"])
}
