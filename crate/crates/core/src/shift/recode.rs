//! Sliding block codes and higher-block recoding.

use std::collections::BTreeMap;

use super::spec::{LabeledGraph, ShiftSpec};
use super::word::Word;
use super::{compile_oracle, CompiledShift, ShiftError};

/// A block map `Psi` from (m+n+1)-windows of a source shift to symbols of
/// a target alphabet, applied with memory `m` and anticipation `n`.
/// One-sided inputs use `m = 0`.
#[derive(Clone, Debug)]
pub struct SlidingBlockCode {
    pub memory: usize,
    pub anticipation: usize,
    table: BTreeMap<Word, u8>,
}

impl SlidingBlockCode {
    /// The table must be total over the admissible windows of `source`.
    pub fn new(
        source: &CompiledShift,
        memory: usize,
        anticipation: usize,
        table: BTreeMap<Word, u8>,
    ) -> Result<Self, ShiftError> {
        let width = memory + anticipation + 1;
        for w in source.oracle.enumerate_words(width) {
            if !table.contains_key(&w) {
                return Err(ShiftError::MalformedSpec(format!(
                    "block map not total: window {w} has no image"
                )));
            }
        }
        Ok(SlidingBlockCode {
            memory,
            anticipation,
            table,
        })
    }

    /// 1-block identity code over `k` symbols.
    pub fn identity(k: u8) -> Self {
        let table = (0..k).map(|a| (Word::new(vec![a]), a)).collect();
        SlidingBlockCode {
            memory: 0,
            anticipation: 0,
            table,
        }
    }

    /// 1-block code from a symbol table.
    pub fn one_block(map: &[u8]) -> Self {
        let table = map
            .iter()
            .enumerate()
            .map(|(a, &b)| (Word::new(vec![a as u8]), b))
            .collect();
        SlidingBlockCode {
            memory: 0,
            anticipation: 0,
            table,
        }
    }

    pub fn width(&self) -> usize {
        self.memory + self.anticipation + 1
    }

    pub fn symbol(&self, window: &Word) -> Option<u8> {
        self.table.get(window).copied()
    }

    /// Apply across a finite input. Output length is input length minus
    /// memory minus anticipation; every window must be admissible in the
    /// source shift.
    pub fn apply(&self, source: &CompiledShift, input: &Word) -> Result<Word, ShiftError> {
        let width = self.width();
        if input.len() < width {
            return Err(ShiftError::InputTooShort);
        }
        let syms = input.symbols();
        let mut out = Vec::with_capacity(input.len() - width + 1);
        for i in 0..=input.len() - width {
            let window = Word::new(syms[i..i + width].to_vec());
            if !source.oracle.is_admissible(&window)? {
                return Err(ShiftError::WindowInadmissible);
            }
            let b = self
                .table
                .get(&window)
                .ok_or(ShiftError::WindowInadmissible)?;
            out.push(*b);
        }
        Ok(Word::new(out))
    }
}

/// The `n`-th higher block recoding: a graph presentation over the
/// alphabet `L_n` (indexed lexicographically). Vertices are length-(n-1)
/// edge paths of the source presentation, edges are length-n paths,
/// labeled by the block they spell.
///
/// Returns the recoded spec together with the block table mapping the new
/// symbols back to source n-words.
pub fn higher_block(shift: &CompiledShift, n: usize) -> Result<(ShiftSpec, Vec<Word>), ShiftError> {
    if n == 0 {
        return Err(ShiftError::MalformedSpec(
            "block length must be >= 1".into(),
        ));
    }
    let blocks = shift.oracle.enumerate_words(n);
    if blocks.is_empty() {
        return Err(ShiftError::EmptyLanguage);
    }
    let block_index: BTreeMap<&Word, u8> = blocks
        .iter()
        .enumerate()
        .map(|(i, w)| (w, i as u8))
        .collect();
    if blocks.len() > u8::MAX as usize {
        return Err(ShiftError::MalformedSpec(format!(
            "higher-block alphabet of size {} exceeds the symbol range",
            blocks.len()
        )));
    }
    let p = &shift.presentation;
    // Enumerate edge paths of length n-1 as vertices.
    #[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
    struct Path {
        edges: Vec<(usize, usize, u8)>,
        end: usize,
    }
    let mut vertices: Vec<Path> = Vec::new();
    let mut vertex_index: BTreeMap<Vec<(usize, usize, u8)>, usize> = BTreeMap::new();
    let mut stack: Vec<Path> = (0..p.vertices)
        .map(|v| Path {
            edges: Vec::new(),
            end: v,
        })
        .collect();
    while let Some(path) = stack.pop() {
        if path.edges.len() == n - 1 {
            if !vertex_index.contains_key(&path.edges) {
                vertex_index.insert(path.edges.clone(), vertices.len());
                vertices.push(path);
            }
            continue;
        }
        for &(label, t) in &p.out[path.end] {
            let mut next = path.clone();
            next.edges.push((path.end, t, label));
            next.end = t;
            stack.push(next);
        }
    }
    // Note: for n = 1 each source vertex appears once with an empty path;
    // dedupe by (edges, end) instead of edges alone in that case.
    if n == 1 {
        vertices.clear();
        vertex_index.clear();
        for v in 0..p.vertices {
            vertices.push(Path {
                edges: Vec::new(),
                end: v,
            });
        }
    }
    let find_vertex = |edges: &[(usize, usize, u8)], end: usize| -> usize {
        if n == 1 {
            end
        } else {
            vertex_index[&edges.to_vec()]
        }
    };
    let mut edges: Vec<(usize, usize, u8)> = Vec::new();
    for (vid, path) in vertices.iter().enumerate() {
        for &(label, t) in &p.out[path.end] {
            let mut full = path.edges.clone();
            full.push((path.end, t, label));
            let spelled = Word::new(full.iter().map(|&(_, _, l)| l).collect());
            let sym = block_index[&spelled];
            let target = find_vertex(&full[1..], t);
            edges.push((vid, target, sym));
        }
    }
    let spec = ShiftSpec::SoficGraph {
        k: blocks.len() as u8,
        graph: LabeledGraph {
            vertices: vertices.len(),
            edges,
        },
    };
    Ok((spec, blocks))
}

/// Project a higher-block word back through the overlap map: first letters
/// of each block, then the tail of the final block.
pub fn project_block_word(block_word: &Word, table: &[Word]) -> Word {
    let mut out = Vec::new();
    let syms = block_word.symbols();
    for (i, &b) in syms.iter().enumerate() {
        let block = &table[b as usize];
        if i + 1 == syms.len() {
            out.extend_from_slice(block.symbols());
        } else {
            out.push(block.symbols()[0]);
        }
    }
    Word::new(out)
}

/// Language of the recoded shift projected back, compared against the
/// source language: the standard round-trip check used by tests.
pub fn higher_block_round_trip(
    shift: &CompiledShift,
    n: usize,
    max_len: usize,
) -> Result<bool, ShiftError> {
    let (spec, table) = higher_block(shift, n)?;
    let recoded = compile_oracle(&spec)?;
    for len in 1..=max_len {
        let mut projected: Vec<Word> = recoded
            .oracle
            .enumerate_words(len)
            .iter()
            .map(|bw| project_block_word(bw, &table))
            .collect();
        projected.sort();
        projected.dedup();
        let direct = shift.oracle.enumerate_words(len + n - 1);
        if projected != direct {
            return Ok(false);
        }
    }
    Ok(true)
}
