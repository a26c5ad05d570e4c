//! The language oracle: a minimized DFA for the factor language of a
//! presentation graph.
//!
//! A word is admissible iff some path in the presentation spells it, so the
//! subset construction starts from the set of all vertices. Every reachable
//! non-empty subset accepts; the empty subset is the (implicit) dead state.
//! The resulting language is factor-closed by construction.

use std::collections::{BTreeMap, VecDeque};

use super::graph::Presentation;
use super::word::{Alphabet, Word};
use super::ShiftError;

pub const DEAD: usize = usize::MAX;

/// Deterministic acceptor for a factor-closed language. All states are
/// accepting; a missing transition leads to the dead sink.
#[derive(Clone, Debug)]
pub struct LanguageAutomaton {
    pub alphabet: Alphabet,
    /// `trans[state][symbol]` = successor or DEAD.
    pub trans: Vec<Vec<usize>>,
    pub start: usize,
    /// Variant tag of the shift description this oracle was compiled from.
    pub provenance: &'static str,
}

impl LanguageAutomaton {
    pub fn states(&self) -> usize {
        self.trans.len()
    }

    pub fn step(&self, state: usize, sym: u8) -> usize {
        if state == DEAD {
            DEAD
        } else {
            self.trans[state][sym as usize]
        }
    }

    pub fn walk(&self, mut state: usize, word: &Word) -> usize {
        for &s in word.symbols() {
            state = self.step(state, s);
            if state == DEAD {
                return DEAD;
            }
        }
        state
    }

    /// Membership in the factor language. The empty word is always
    /// admissible (the start state is live).
    pub fn is_admissible(&self, word: &Word) -> Result<bool, ShiftError> {
        self.alphabet.check_word(word)?;
        Ok(self.walk(self.start, word) != DEAD)
    }

    /// `|L_n|` for n = 0..=max_n.
    pub fn count_words(&self, max_n: usize) -> Vec<u128> {
        let mut counts = Vec::with_capacity(max_n + 1);
        let mut layer = vec![0u128; self.states()];
        layer[self.start] = 1;
        counts.push(1);
        for _ in 1..=max_n {
            let mut next = vec![0u128; self.states()];
            for (q, &c) in layer.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                for a in self.alphabet.symbols() {
                    let t = self.trans[q][a as usize];
                    if t != DEAD {
                        next[t] += c;
                    }
                }
            }
            counts.push(next.iter().sum());
            layer = next;
        }
        counts
    }

    /// All admissible n-words in lexicographic order.
    pub fn enumerate_words(&self, n: usize) -> Vec<Word> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(n);
        self.enumerate_rec(self.start, n, &mut cur, &mut out);
        out
    }

    fn enumerate_rec(&self, state: usize, n: usize, cur: &mut Vec<u8>, out: &mut Vec<Word>) {
        if n == 0 {
            out.push(Word::new(cur.clone()));
            return;
        }
        for a in self.alphabet.symbols() {
            let t = self.trans[state][a as usize];
            if t != DEAD {
                cur.push(a);
                self.enumerate_rec(t, n - 1, cur, out);
                cur.pop();
            }
        }
    }

    /// All admissible words of length <= n, lexicographic within each length.
    pub fn enumerate_up_to(&self, n: usize) -> Vec<Word> {
        (0..=n).flat_map(|i| self.enumerate_words(i)).collect()
    }

    /// States from which `word` survives.
    pub fn survivors(&self, word: &Word) -> Vec<bool> {
        let mut t = vec![false; self.states()];
        for (q, slot) in t.iter_mut().enumerate() {
            if self.walk(q, word) != DEAD {
                *slot = true;
            }
        }
        t
    }

    /// Live states reachable from the start (all of them, post-minimization,
    /// but computed rather than assumed).
    pub fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.states()];
        let mut queue = VecDeque::from([self.start]);
        seen[self.start] = true;
        while let Some(q) = queue.pop_front() {
            for a in self.alphabet.symbols() {
                let t = self.trans[q][a as usize];
                if t != DEAD && !seen[t] {
                    seen[t] = true;
                    queue.push_back(t);
                }
            }
        }
        seen
    }

    /// Shortest connector `w` (lexicographically least among shortest) with
    /// `u w v` admissible and `|w| <= m_max`.
    pub fn connect_words(
        &self,
        u: &Word,
        v: &Word,
        m_max: usize,
    ) -> Result<Option<Word>, ShiftError> {
        if !self.is_admissible(u)? || !self.is_admissible(v)? {
            return Err(ShiftError::InadmissibleEndpoint);
        }
        let from = self.walk(self.start, u);
        let targets = self.survivors(v);
        Ok(self.shortest_path_to(from, &targets, m_max))
    }

    /// Greedy reconstruction over a backward BFS distance field gives the
    /// lexicographically least among shortest connectors.
    fn shortest_path_to(&self, from: usize, targets: &[bool], m_max: usize) -> Option<Word> {
        let dist = self.distance_to(targets);
        let mut d = dist[from]?;
        if d > m_max {
            return None;
        }
        let mut w = Word::empty();
        let mut q = from;
        while d > 0 {
            let mut advanced = false;
            for a in self.alphabet.symbols() {
                let t = self.trans[q][a as usize];
                if t != DEAD && dist[t] == Some(d - 1) {
                    w.push(a);
                    q = t;
                    d -= 1;
                    advanced = true;
                    break;
                }
            }
            debug_assert!(advanced, "distance field must admit a descent");
            if !advanced {
                return None;
            }
        }
        Some(w)
    }

    /// `dist[q]` = length of the shortest word leading q into the target set.
    pub fn distance_to(&self, targets: &[bool]) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.states()];
        let mut queue = VecDeque::new();
        for q in 0..self.states() {
            if targets[q] {
                dist[q] = Some(0);
                queue.push_back(q);
            }
        }
        // Backward BFS needs reverse adjacency.
        let mut rev: Vec<Vec<usize>> = vec![Vec::new(); self.states()];
        for q in 0..self.states() {
            for a in self.alphabet.symbols() {
                let t = self.trans[q][a as usize];
                if t != DEAD {
                    rev[t].push(q);
                }
            }
        }
        while let Some(q) = queue.pop_front() {
            let d = dist[q].unwrap();
            for &p in &rev[q] {
                if dist[p].is_none() {
                    dist[p] = Some(d + 1);
                    queue.push_back(p);
                }
            }
        }
        dist
    }
}

/// Subset construction from the set of all presentation vertices, then
/// Moore minimization.
pub fn determinize(p: &Presentation) -> LanguageAutomaton {
    let alphabet = Alphabet::new(p.k).expect("presentation alphabet");
    let full: Vec<usize> = (0..p.vertices).collect();
    let mut index: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    let mut subsets: Vec<Vec<usize>> = Vec::new();
    let mut trans: Vec<Vec<usize>> = Vec::new();
    index.insert(full.clone(), 0);
    subsets.push(full);
    let mut queue = VecDeque::from([0usize]);
    while let Some(id) = queue.pop_front() {
        let subset = subsets[id].clone();
        let mut row = vec![DEAD; p.k as usize];
        for a in 0..p.k {
            let mut next: Vec<usize> = subset
                .iter()
                .flat_map(|&v| {
                    p.out[v]
                        .iter()
                        .filter(move |&&(label, _)| label == a)
                        .map(|&(_, t)| t)
                })
                .collect();
            next.sort_unstable();
            next.dedup();
            if next.is_empty() {
                continue;
            }
            let tid = *index.entry(next.clone()).or_insert_with(|| {
                subsets.push(next);
                trans.push(Vec::new());
                queue.push_back(subsets.len() - 1);
                subsets.len() - 1
            });
            row[a as usize] = tid;
        }
        if trans.len() <= id {
            trans.resize(id + 1, Vec::new());
        }
        trans[id] = row;
    }
    // Rows created by or_insert_with before being popped may be empty
    // placeholders; normalize.
    for row in trans.iter_mut() {
        if row.is_empty() {
            *row = vec![DEAD; p.k as usize];
        }
    }
    minimize(LanguageAutomaton {
        alphabet,
        trans,
        start: 0,
        provenance: "",
    })
}

/// Moore partition refinement. All live states accept, so the initial
/// partition has a single live class plus the implicit dead class.
fn minimize(dfa: LanguageAutomaton) -> LanguageAutomaton {
    let n = dfa.states();
    let k = dfa.alphabet.size() as usize;
    let mut class = vec![0usize; n];
    let mut class_count = 1usize;
    loop {
        let signature = |q: usize| -> Vec<usize> {
            (0..k)
                .map(|a| {
                    let t = dfa.trans[q][a];
                    if t == DEAD {
                        usize::MAX
                    } else {
                        class[t]
                    }
                })
                .collect()
        };
        let mut next_index: BTreeMap<(usize, Vec<usize>), usize> = BTreeMap::new();
        let mut next_class = vec![0usize; n];
        for q in 0..n {
            let key = (class[q], signature(q));
            let len = next_index.len();
            let id = *next_index.entry(key).or_insert(len);
            next_class[q] = id;
        }
        let next_count = next_index.len();
        if next_count == class_count {
            class = next_class;
            break;
        }
        class = next_class;
        class_count = next_count;
    }
    let m = class.iter().max().map(|&c| c + 1).unwrap_or(0);
    let mut trans = vec![vec![DEAD; k]; m];
    for (q, &cq) in class.iter().enumerate().take(n) {
        for (a, slot) in trans[cq].iter_mut().enumerate() {
            let t = dfa.trans[q][a];
            *slot = if t == DEAD { DEAD } else { class[t] };
        }
    }
    LanguageAutomaton {
        alphabet: dfa.alphabet,
        trans,
        start: class[dfa.start],
        provenance: dfa.provenance,
    }
}
