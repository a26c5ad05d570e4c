//! Seeded samplers over compiled shifts: uniform successor walks on the
//! oracle and the Parry (maximal-entropy) Markov chain on the presentation.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::dfa::DEAD;
use super::{CompiledShift, ShiftError};

/// Uniform-successor walk state over the oracle DFA. Reproducible: one
/// `gen_range` call per emitted symbol.
pub struct WalkSampler {
    rng: ChaCha8Rng,
    state: usize,
}

impl WalkSampler {
    pub fn new(seed: u64, shift: &CompiledShift) -> Self {
        WalkSampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            state: shift.oracle.start,
        }
    }

    pub fn next_symbol(&mut self, shift: &CompiledShift) -> Result<u8, ShiftError> {
        let dfa = &shift.oracle;
        let live: Vec<u8> = dfa
            .alphabet
            .symbols()
            .filter(|&a| dfa.trans[self.state][a as usize] != DEAD)
            .collect();
        if live.is_empty() {
            return Err(ShiftError::DeadEnd);
        }
        let a = live[self.rng.gen_range(0..live.len())];
        self.state = dfa.trans[self.state][a as usize];
        Ok(a)
    }
}

/// Parry chain on a strongly connected presentation: edge `u -> v` is taken
/// with probability `r_v / (lambda r_u)` where `r` is the right Perron
/// vector of the vertex adjacency matrix. This is the maximal-entropy
/// Markov measure on the graph shift.
pub struct ParrySampler {
    rng: ChaCha8Rng,
    vertex: usize,
    /// Per vertex: (cumulative probability, label, target).
    choices: Vec<Vec<(f64, u8, usize)>>,
}

impl ParrySampler {
    pub fn new(seed: u64, shift: &CompiledShift) -> Result<Self, ShiftError> {
        let p = &shift.presentation;
        if !p.is_strongly_connected() {
            return Err(ShiftError::NotGraphPresentable);
        }
        let a = p.adjacency_counts();
        let n = p.vertices;
        // Power iteration for the Perron root and right vector.
        let mut r = vec![1.0f64; n];
        let mut lambda = 1.0f64;
        for _ in 0..10_000 {
            let mut next = vec![0.0f64; n];
            for i in 0..n {
                for j in 0..n {
                    next[i] += a[i][j] as f64 * r[j];
                }
            }
            let norm: f64 = next.iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm == 0.0 {
                return Err(ShiftError::NotGraphPresentable);
            }
            for x in next.iter_mut() {
                *x /= norm;
            }
            let new_lambda: f64 = (0..n)
                .map(|i| {
                    let num: f64 = (0..n).map(|j| a[i][j] as f64 * next[j]).sum();
                    if next[i] > 1e-12 {
                        num / next[i]
                    } else {
                        0.0
                    }
                })
                .fold(0.0, f64::max);
            let done = r
                .iter()
                .zip(next.iter())
                .all(|(x, y)| (x - y).abs() < 1e-14);
            r = next;
            lambda = new_lambda;
            if done {
                break;
            }
        }
        let mut choices = Vec::with_capacity(n);
        for v in 0..n {
            let mut cum = 0.0f64;
            let mut row = Vec::new();
            for &(label, t) in &p.out[v] {
                cum += r[t] / (lambda * r[v]);
                row.push((cum, label, t));
            }
            // Normalize numeric drift so the last bucket is a catch-all.
            if let Some(last) = row.last_mut() {
                last.0 = f64::INFINITY;
            }
            choices.push(row);
        }
        Ok(ParrySampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            vertex: 0,
            choices,
        })
    }

    pub fn next_symbol(&mut self) -> u8 {
        let x: f64 = self.rng.gen();
        let row = &self.choices[self.vertex];
        for &(cum, label, t) in row {
            if x < cum {
                self.vertex = t;
                return label;
            }
        }
        unreachable!("catch-all bucket")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shift::{compile_oracle, golden_shift, ShiftSpec};

    #[test]
    fn walk_is_deterministic_and_admissible() {
        let s = compile_oracle(&golden_shift()).unwrap();
        let sample = |seed| -> Vec<u8> {
            let mut w = WalkSampler::new(seed, &s);
            (0..200).map(|_| w.next_symbol(&s).unwrap()).collect()
        };
        let a = sample(7);
        assert_eq!(a, sample(7));
        assert_ne!(a, sample(8));
        assert!(
            !a.windows(2).any(|w| w == [1, 1]),
            "no 11 in golden samples"
        );
    }

    #[test]
    fn parry_on_full_shift_is_fair() {
        let s = compile_oracle(&ShiftSpec::full(2)).unwrap();
        let mut p = ParrySampler::new(3, &s).unwrap();
        let n = 20_000;
        let zeros = (0..n).filter(|_| p.next_symbol() == 0).count();
        let freq = zeros as f64 / n as f64;
        assert!((freq - 0.5).abs() < 0.02, "freq = {freq}");
    }

    #[test]
    fn parry_block_shift_zero_frequency() {
        let s = compile_oracle(&ShiftSpec::coded(2, &["100", "011", "000"])).unwrap();
        let mut p = ParrySampler::new(11, &s).unwrap();
        let n = 30_000;
        let zeros = (0..n).filter(|_| p.next_symbol() == 0).count();
        let freq = zeros as f64 / n as f64;
        assert!((freq - 2.0 / 3.0).abs() < 0.02, "freq = {freq}");
    }
}
