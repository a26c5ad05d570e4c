//! Driving sequences: lazily materialized infinite (or truncated) symbol
//! streams with named constructors and seeded samplers.
//!
//! Prefixes are consistent: the prefix of length L is a prefix of every
//! longer materialization, and samplers are bit-for-bit reproducible from
//! their seed.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::analysis::is_irreducible;
use super::dfa::DEAD;
use super::sample::{ParrySampler, WalkSampler};
use super::word::Word;
use super::{CompiledShift, ShiftError};

/// Serializable descriptor; a stream is reconstructed from this plus the
/// owning shift, which is what makes runs reproducible.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StreamSpec {
    /// `word` repeated forever.
    Periodic { word: Word },
    /// Length-by-length enumeration of the language with connectors:
    /// every admissible word occurs infinitely often.
    TransitiveEnum,
    /// `w0 w1^2 w0^3 w1^4 ...` with equal-length blocks.
    Sigma0 { w0: Word, w1: Word },
    /// For m = 1, 2, ...: all orderings of the binary m-words, in
    /// lexicographic permutation order. Truncated after `m_max` rounds.
    Permutation { m_max: usize },
    /// `1^{|w_1|} w_1 1^{|w_2|} w_2 ...` with `w_i` the concatenation of
    /// all binary i-words.
    LeftDrift,
    /// Escalating balanced blocks `w0^k w1^k w1^k w0^k` for k = 1, 2, ...,
    /// truncated after `k_max`.
    BlockCycle { w0: Word, w1: Word, k_max: usize },
    /// Uniform successor choice on the oracle.
    Walk { seed: u64 },
    /// Parry chain on the presentation graph.
    Markov { seed: u64 },
}

enum Gen {
    Periodic {
        word: Word,
    },
    Transitive {
        state: usize,
        len: usize,
        index: usize,
    },
    Sigma0 {
        w0: Word,
        w1: Word,
        block: usize,
    },
    Permutation {
        m: usize,
        m_max: usize,
        words: Vec<Word>,
        perm: Vec<usize>,
        exhausted_round: bool,
        done: bool,
    },
    LeftDrift {
        i: usize,
    },
    BlockCycle {
        w0: Word,
        w1: Word,
        k: usize,
        k_max: usize,
    },
    Walk(WalkSampler),
    Markov(ParrySampler),
}

pub struct SigmaStream {
    pub spec: StreamSpec,
    shift: Arc<CompiledShift>,
    buf: Vec<u8>,
    gen: Gen,
    /// Shortest period when the stream is eventually periodic by
    /// construction.
    pub period: Option<usize>,
}

impl SigmaStream {
    pub fn new(spec: StreamSpec, shift: Arc<CompiledShift>) -> Result<Self, ShiftError> {
        let gen = match &spec {
            StreamSpec::Periodic { word } => {
                if word.is_empty() {
                    return Err(ShiftError::MalformedSpec("periodic word is empty".into()));
                }
                Gen::Periodic { word: word.clone() }
            }
            StreamSpec::TransitiveEnum => {
                if !is_irreducible(&shift, 8).is_verified() {
                    return Err(ShiftError::NotIrreducible);
                }
                Gen::Transitive {
                    state: shift.oracle.start,
                    len: 1,
                    index: 0,
                }
            }
            StreamSpec::Sigma0 { w0, w1 } => {
                if w0.len() != w1.len() {
                    return Err(ShiftError::LengthMismatch);
                }
                if w0.is_empty() {
                    return Err(ShiftError::MalformedSpec("sigma0 blocks are empty".into()));
                }
                Gen::Sigma0 {
                    w0: w0.clone(),
                    w1: w1.clone(),
                    block: 1,
                }
            }
            StreamSpec::Permutation { m_max } => {
                if *m_max == 0 {
                    return Err(ShiftError::MalformedSpec("m_max must be >= 1".into()));
                }
                Gen::Permutation {
                    m: 0,
                    m_max: *m_max,
                    words: Vec::new(),
                    perm: Vec::new(),
                    exhausted_round: true,
                    done: false,
                }
            }
            StreamSpec::LeftDrift => Gen::LeftDrift { i: 1 },
            StreamSpec::BlockCycle { w0, w1, k_max } => {
                if w0.is_empty() || w1.is_empty() || *k_max == 0 {
                    return Err(ShiftError::MalformedSpec("bad block cycle".into()));
                }
                Gen::BlockCycle {
                    w0: w0.clone(),
                    w1: w1.clone(),
                    k: 1,
                    k_max: *k_max,
                }
            }
            StreamSpec::Walk { seed } => Gen::Walk(WalkSampler::new(*seed, &shift)),
            StreamSpec::Markov { seed } => Gen::Markov(ParrySampler::new(*seed, &shift)?),
        };
        let period = match &spec {
            StreamSpec::Periodic { word } => Some(word.len()),
            _ => None,
        };
        Ok(SigmaStream {
            spec,
            shift,
            buf: Vec::new(),
            gen,
            period,
        })
    }

    pub fn shift(&self) -> &CompiledShift {
        &self.shift
    }

    /// Materialize at least `len` symbols when the stream allows; returns
    /// the available prefix (shorter only for truncated streams).
    pub fn prefix(&mut self, len: usize) -> Result<&[u8], ShiftError> {
        while self.buf.len() < len {
            if !self.extend_once()? {
                break; // truncated stream exhausted
            }
        }
        Ok(&self.buf[..self.buf.len().min(len)])
    }

    /// Append the next chunk; false once a truncated stream is exhausted.
    fn extend_once(&mut self) -> Result<bool, ShiftError> {
        match &mut self.gen {
            Gen::Periodic { word } => {
                self.buf.extend_from_slice(word.symbols());
            }
            Gen::Transitive { state, len, index } => {
                let words = self.shift.oracle.enumerate_words(*len);
                if *index >= words.len() {
                    *len += 1;
                    *index = 0;
                    return Ok(true);
                }
                let target = &words[*index];
                *index += 1;
                // Shortest (lex-least) connector from the current state to
                // somewhere the target word survives.
                let dfa = &self.shift.oracle;
                let targets = dfa.survivors(target);
                let dist = dfa.distance_to(&targets);
                let mut d = dist[*state].ok_or(ShiftError::DeadEnd)?;
                let mut q = *state;
                while d > 0 {
                    let mut stepped = false;
                    for a in dfa.alphabet.symbols() {
                        let t = dfa.trans[q][a as usize];
                        if t != DEAD && dist[t] == Some(d - 1) {
                            self.buf.push(a);
                            q = t;
                            d -= 1;
                            stepped = true;
                            break;
                        }
                    }
                    if !stepped {
                        return Err(ShiftError::DeadEnd);
                    }
                }
                self.buf.extend_from_slice(target.symbols());
                *state = dfa.walk(q, target);
            }
            Gen::Sigma0 { w0, w1, block } => {
                let word = if *block % 2 == 1 { &*w0 } else { &*w1 };
                for _ in 0..*block {
                    self.buf.extend_from_slice(word.symbols());
                }
                *block += 1;
            }
            Gen::Permutation {
                m,
                m_max,
                words,
                perm,
                exhausted_round,
                done,
            } => {
                if *done {
                    return Ok(false);
                }
                if *exhausted_round {
                    *m += 1;
                    if *m > *m_max {
                        *done = true;
                        return Ok(false);
                    }
                    *words = all_binary_words(*m);
                    *perm = (0..words.len()).collect();
                    *exhausted_round = false;
                }
                for &i in perm.iter() {
                    self.buf.extend_from_slice(words[i].symbols());
                }
                if !next_permutation(perm) {
                    *exhausted_round = true;
                }
            }
            Gen::LeftDrift { i } => {
                let w: Vec<u8> = all_binary_words(*i)
                    .iter()
                    .flat_map(|w| w.symbols().to_vec())
                    .collect();
                self.buf.extend(std::iter::repeat_n(1u8, w.len()));
                self.buf.extend_from_slice(&w);
                *i += 1;
            }
            Gen::BlockCycle { w0, w1, k, k_max } => {
                if *k > *k_max {
                    return Ok(false);
                }
                for word in [&*w0, &*w1, &*w1, &*w0] {
                    for _ in 0..*k {
                        self.buf.extend_from_slice(word.symbols());
                    }
                }
                *k += 1;
            }
            Gen::Walk(w) => {
                let s = w.next_symbol(&self.shift)?;
                self.buf.push(s);
            }
            Gen::Markov(p) => {
                let s = p.next_symbol();
                self.buf.push(s);
            }
        }
        Ok(true)
    }
}

fn all_binary_words(len: usize) -> Vec<Word> {
    let mut out = Vec::with_capacity(1 << len);
    for x in 0..(1u64 << len) {
        let mut v = Vec::with_capacity(len);
        for b in (0..len).rev() {
            v.push(((x >> b) & 1) as u8);
        }
        out.push(Word::new(v));
    }
    out
}

/// In-place lexicographic successor; false when `perm` was the last one.
fn next_permutation(perm: &mut [usize]) -> bool {
    if perm.len() < 2 {
        return false;
    }
    let mut i = perm.len() - 1;
    while i > 0 && perm[i - 1] >= perm[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = perm.len() - 1;
    while perm[j] <= perm[i - 1] {
        j -= 1;
    }
    perm.swap(i - 1, j);
    perm[i..].reverse();
    true
}

/// Convenience constructors matching the named generators.
pub fn gen_transitive_stream(shift: Arc<CompiledShift>) -> Result<SigmaStream, ShiftError> {
    SigmaStream::new(StreamSpec::TransitiveEnum, shift)
}

pub fn gen_sigma0(
    shift: Arc<CompiledShift>,
    w0: Word,
    w1: Word,
) -> Result<SigmaStream, ShiftError> {
    SigmaStream::new(StreamSpec::Sigma0 { w0, w1 }, shift)
}

pub fn gen_permutation_stream(
    shift: Arc<CompiledShift>,
    m_max: usize,
) -> Result<SigmaStream, ShiftError> {
    SigmaStream::new(StreamSpec::Permutation { m_max }, shift)
}

pub fn gen_leftdrift_stream(shift: Arc<CompiledShift>) -> Result<SigmaStream, ShiftError> {
    SigmaStream::new(StreamSpec::LeftDrift, shift)
}

pub fn sample_walk(shift: Arc<CompiledShift>, seed: u64) -> Result<SigmaStream, ShiftError> {
    SigmaStream::new(StreamSpec::Walk { seed }, shift)
}

pub fn sample_markov(shift: Arc<CompiledShift>, seed: u64) -> Result<SigmaStream, ShiftError> {
    SigmaStream::new(StreamSpec::Markov { seed }, shift)
}

/// Scan helper: does `word` occur in `prefix`?
pub fn occurs_in(prefix: &[u8], word: &Word) -> bool {
    let w = word.symbols();
    if w.is_empty() {
        return true;
    }
    prefix.windows(w.len()).any(|win| win == w)
}
