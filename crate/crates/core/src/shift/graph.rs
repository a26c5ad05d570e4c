//! Presentation graphs behind compiled shift specs.
//!
//! Every variant is lowered to an edge-labeled multigraph in which each
//! vertex has at least one incoming and one outgoing edge, so every finite
//! path extends to a bi-infinite walk.

use std::collections::BTreeMap;

use super::spec::{LabeledGraph, ShiftSpec};
use super::word::Word;
use super::ShiftError;

/// A trimmed presentation with adjacency indexes.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub k: u8,
    pub vertices: usize,
    /// `out[v]` = (label, target) sorted by label then target.
    pub out: Vec<Vec<(u8, usize)>>,
    /// `inc[v]` = (label, source)
    pub inc: Vec<Vec<(u8, usize)>>,
}

impl Presentation {
    fn from_edges(k: u8, vertices: usize, edges: &[(usize, usize, u8)]) -> Self {
        let mut out = vec![Vec::new(); vertices];
        let mut inc = vec![Vec::new(); vertices];
        for &(s, t, label) in edges {
            out[s].push((label, t));
            inc[t].push((label, s));
        }
        for v in 0..vertices {
            out[v].sort_unstable();
            out[v].dedup();
            inc[v].sort_unstable();
            inc[v].dedup();
        }
        Presentation {
            k,
            vertices,
            out,
            inc,
        }
    }

    /// Drop vertices without bi-infinite extensions until stable.
    fn trim(&self) -> Result<Self, ShiftError> {
        let mut alive = vec![true; self.vertices];
        loop {
            let mut changed = false;
            for v in 0..self.vertices {
                if !alive[v] {
                    continue;
                }
                let has_out = self.out[v].iter().any(|&(_, t)| alive[t]);
                let has_in = self.inc[v].iter().any(|&(_, s)| alive[s]);
                if !has_out || !has_in {
                    alive[v] = false;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        let remap: Vec<Option<usize>> = {
            let mut next = 0usize;
            alive
                .iter()
                .map(|&a| {
                    if a {
                        let id = next;
                        next += 1;
                        Some(id)
                    } else {
                        None
                    }
                })
                .collect()
        };
        let count = remap.iter().flatten().count();
        if count == 0 {
            return Err(ShiftError::MalformedSpec(
                "spec presents the empty subshift".into(),
            ));
        }
        let mut edges = Vec::new();
        for v in 0..self.vertices {
            if let Some(nv) = remap[v] {
                for &(label, t) in &self.out[v] {
                    if let Some(nt) = remap[t] {
                        edges.push((nv, nt, label));
                    }
                }
            }
        }
        Ok(Presentation::from_edges(self.k, count, &edges))
    }

    pub fn edge_count(&self) -> usize {
        self.out.iter().map(|e| e.len()).sum()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, u8)> + '_ {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(s, es)| es.iter().map(move |&(label, t)| (s, t, label)))
    }

    pub fn is_strongly_connected(&self) -> bool {
        if self.vertices == 0 {
            return false;
        }
        let reach = |adj: &Vec<Vec<(u8, usize)>>| -> usize {
            let mut seen = vec![false; self.vertices];
            let mut stack = vec![0usize];
            seen[0] = true;
            let mut n = 1;
            while let Some(v) = stack.pop() {
                for &(_, t) in &adj[v] {
                    if !seen[t] {
                        seen[t] = true;
                        n += 1;
                        stack.push(t);
                    }
                }
            }
            n
        };
        reach(&self.out) == self.vertices && reach(&self.inc) == self.vertices
    }

    /// Extremal total displacement over all paths, where each symbol
    /// carries an integer weight. Returns `None` when unbounded in that
    /// direction (a reachable cycle of the corresponding sign exists).
    ///
    /// Used by line-space certificates: the reachable index offsets of a
    /// driven point are exactly the path weights of admissible words.
    pub fn displacement_bounds(&self, weights: &[i64]) -> (Option<i64>, Option<i64>) {
        (self.extremal(weights, false), self.extremal(weights, true))
    }

    fn extremal(&self, weights: &[i64], maximize: bool) -> Option<i64> {
        // Bellman-Ford from all vertices (any vertex can start a word).
        let mut best = vec![0i64; self.vertices];
        for round in 0..=self.vertices {
            let mut changed = false;
            let mut next = best.clone();
            for (v, edges) in self.out.iter().enumerate() {
                for &(label, t) in edges {
                    let w = weights[label as usize];
                    let cand = best[v] + w;
                    let better = if maximize {
                        cand > next[t]
                    } else {
                        cand < next[t]
                    };
                    if better {
                        next[t] = cand;
                        changed = true;
                    }
                }
            }
            // Relaxation still changing after |V| rounds means a cycle of
            // the matching sign: unbounded.
            if changed && round == self.vertices {
                return None;
            }
            best = next;
            if !changed {
                break;
            }
        }
        Some(if maximize {
            *best.iter().max().unwrap()
        } else {
            *best.iter().min().unwrap()
        })
    }

    /// Vertex adjacency counts (multigraph: parallel edges counted).
    pub fn adjacency_counts(&self) -> Vec<Vec<u64>> {
        let mut a = vec![vec![0u64; self.vertices]; self.vertices];
        for (s, t, _) in self.edges() {
            a[s][t] += 1;
        }
        a
    }
}

/// Lower a validated spec to its trimmed presentation.
pub fn build_presentation(spec: &ShiftSpec) -> Result<Presentation, ShiftError> {
    spec.validate()?;
    let raw = match spec {
        ShiftSpec::Full { k } => {
            let edges: Vec<_> = (0..*k).map(|a| (0usize, 0usize, a)).collect();
            Presentation::from_edges(*k, 1, &edges)
        }
        ShiftSpec::ForbiddenSft { k, forbidden } => window_graph(*k, forbidden),
        ShiftSpec::CodedByWords { k, generators } => flower_graph(*k, generators),
        ShiftSpec::SoficGraph { k, graph } => {
            Presentation::from_edges(*k, graph.vertices, &graph.edges)
        }
    };
    raw.trim()
}

/// De-Bruijn-style window construction: vertices are the admissible words
/// of length `m-1` where `m` is the longest forbidden block.
fn window_graph(k: u8, forbidden: &[Word]) -> Presentation {
    let m = forbidden.iter().map(|f| f.len()).max().unwrap_or(1);
    let contains_forbidden = |w: &[u8]| -> bool {
        forbidden.iter().any(|f| {
            let fl = f.len();
            fl <= w.len() && w.windows(fl).any(|win| win == f.symbols())
        })
    };
    // Enumerate admissible (m-1)-windows.
    let width = m - 1;
    let mut states: Vec<Vec<u8>> = Vec::new();
    let mut index: BTreeMap<Vec<u8>, usize> = BTreeMap::new();
    let mut stack: Vec<Vec<u8>> = vec![Vec::new()];
    while let Some(w) = stack.pop() {
        if w.len() == width {
            if !index.contains_key(&w) {
                index.insert(w.clone(), states.len());
                states.push(w);
            }
            continue;
        }
        for a in 0..k {
            let mut next = w.clone();
            next.push(a);
            if !contains_forbidden(&next) {
                stack.push(next);
            }
        }
    }
    let mut edges = Vec::new();
    for (w, &s) in &index {
        for a in 0..k {
            let mut ext = w.clone();
            ext.push(a);
            if contains_forbidden(&ext) {
                continue;
            }
            let tail = ext[ext.len() - width..].to_vec();
            if let Some(&t) = index.get(&tail) {
                edges.push((s, t, a));
            }
        }
    }
    Presentation::from_edges(k, states.len(), &edges)
}

/// Flower construction for coded systems: one hub plus a petal per
/// generator word; walks are exactly free concatenations.
fn flower_graph(k: u8, generators: &[Word]) -> Presentation {
    let mut gens: Vec<&Word> = generators.iter().collect();
    gens.sort();
    gens.dedup();
    let mut vertices = 1usize; // hub = 0
    let mut edges = Vec::new();
    for g in gens {
        let syms = g.symbols();
        if syms.len() == 1 {
            edges.push((0, 0, syms[0]));
            continue;
        }
        let mut prev = 0usize;
        for (i, &a) in syms.iter().enumerate() {
            let next = if i + 1 == syms.len() {
                0
            } else {
                let v = vertices;
                vertices += 1;
                v
            };
            edges.push((prev, next, a));
            prev = next;
        }
    }
    Presentation::from_edges(k, vertices, &edges)
}

/// Convert a presentation back into an explicit graph spec.
pub fn presentation_to_spec(p: &Presentation) -> ShiftSpec {
    ShiftSpec::SoficGraph {
        k: p.k,
        graph: LabeledGraph {
            vertices: p.vertices,
            edges: p.edges().collect(),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shift::spec::golden_shift;

    #[test]
    fn golden_window_graph_is_two_vertices() {
        let p = build_presentation(&golden_shift()).unwrap();
        assert_eq!(p.vertices, 2);
        assert!(p.is_strongly_connected());
    }

    #[test]
    fn dead_sft_is_rejected() {
        // Forbidding both 1-blocks over a unary alphabet leaves nothing.
        let spec = ShiftSpec::sft(1, &["0"]);
        assert!(build_presentation(&spec).is_err());
    }

    #[test]
    fn trim_removes_non_extendable_windows() {
        // Over {0,1} forbidding 00 and 01: after a 0 nothing can follow,
        // so only 1^inf survives.
        let spec = ShiftSpec::sft(2, &["00", "01"]);
        let p = build_presentation(&spec).unwrap();
        assert_eq!(p.vertices, 1);
        assert_eq!(p.edge_count(), 1);
    }

    #[test]
    fn golden_displacement_bounds() {
        // Weights +1 for 0 and -1 for 1: no 11 means paths never drop
        // more than one below their start, while 0-runs are unbounded.
        let p = build_presentation(&golden_shift()).unwrap();
        let (min, max) = p.displacement_bounds(&[1, -1]);
        assert_eq!(min, Some(-1));
        assert_eq!(max, None);
    }

    #[test]
    fn balanced_coded_blocks_have_bounded_displacement() {
        let spec = ShiftSpec::coded(2, &["01", "10"]);
        let p = build_presentation(&spec).unwrap();
        let (min, max) = p.displacement_bounds(&[1, -1]);
        assert_eq!(min, Some(-2));
        assert_eq!(max, Some(2));
    }
}
