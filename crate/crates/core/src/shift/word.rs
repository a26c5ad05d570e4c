//! Alphabets and finite words.

use serde::{Deserialize, Serialize};
use std::fmt;

use super::ShiftError;

/// Symbol set `{0, …, k-1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Alphabet {
    size: u8,
}

impl Alphabet {
    pub fn new(size: u8) -> Result<Self, ShiftError> {
        if size == 0 {
            return Err(ShiftError::MalformedSpec(
                "alphabet must be non-empty".into(),
            ));
        }
        Ok(Alphabet { size })
    }

    pub fn size(&self) -> u8 {
        self.size
    }

    pub fn symbols(&self) -> impl Iterator<Item = u8> {
        0..self.size
    }

    pub fn contains(&self, sym: u8) -> bool {
        sym < self.size
    }

    pub fn check_word(&self, w: &Word) -> Result<(), ShiftError> {
        match w.symbols().iter().find(|&&s| !self.contains(s)) {
            Some(&s) => Err(ShiftError::SymbolOutOfRange {
                symbol: s,
                alphabet: self.size,
            }),
            None => Ok(()),
        }
    }
}

/// A finite block of symbols.
///
/// `Word` is ordered lexicographically via the derived `Ord` on its symbol
/// vector; all tie-breaking in the crate relies on that order.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn new(symbols: Vec<u8>) -> Self {
        Word(symbols)
    }

    /// Parse from digit characters, e.g. `"0110"`. Supports alphabets up to 10.
    pub fn parse(s: &str) -> Result<Self, ShiftError> {
        let mut v = Vec::with_capacity(s.len());
        for c in s.chars() {
            let d = c
                .to_digit(10)
                .ok_or_else(|| ShiftError::MalformedSpec(format!("bad symbol character {c:?}")))?;
            v.push(d as u8);
        }
        Ok(Word(v))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> &[u8] {
        &self.0
    }

    pub fn push(&mut self, sym: u8) {
        self.0.push(sym);
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// `u^{-1}`: the same symbols in reverse order.
    pub fn reversal(&self) -> Word {
        let mut v = self.0.clone();
        v.reverse();
        Word(v)
    }

    pub fn repeat(&self, times: usize) -> Word {
        let mut v = Vec::with_capacity(self.0.len() * times);
        for _ in 0..times {
            v.extend_from_slice(&self.0);
        }
        Word(v)
    }

    /// Number of occurrences of `sym`.
    pub fn count(&self, sym: u8) -> usize {
        self.0.iter().filter(|&&s| s == sym).count()
    }

    pub fn is_prefix_of(&self, other: &Word) -> bool {
        other.0.starts_with(&self.0)
    }

    /// True when one word is a prefix of the other (cylinders intersect).
    pub fn prefix_compatible(&self, other: &Word) -> bool {
        self.is_prefix_of(other) || other.is_prefix_of(self)
    }

    pub fn factor(&self, start: usize, end: usize) -> Word {
        Word(self.0[start..end].to_vec())
    }

    /// All factors (contiguous subwords), empty word included once.
    pub fn factors(&self) -> Vec<Word> {
        let mut out = vec![Word::empty()];
        for i in 0..self.0.len() {
            for j in i + 1..=self.0.len() {
                out.push(self.factor(i, j));
            }
        }
        out.sort();
        out.dedup();
        out
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "ε");
        }
        for s in &self.0 {
            write!(f, "{}", s)?;
        }
        Ok(())
    }
}

impl From<&[u8]> for Word {
    fn from(s: &[u8]) -> Self {
        Word(s.to_vec())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reversal_reverses_concatenation() {
        let u = Word::parse("011").unwrap();
        let v = Word::parse("10").unwrap();
        assert_eq!(u.concat(&v).reversal(), v.reversal().concat(&u.reversal()));
        assert_eq!(u.reversal().reversal(), u);
    }

    #[test]
    fn lexicographic_order_is_by_symbols() {
        let words: Vec<Word> = ["", "0", "00", "01", "1"]
            .iter()
            .map(|s| Word::parse(s).unwrap())
            .collect();
        let mut sorted = words.clone();
        sorted.sort();
        assert_eq!(sorted, words);
    }

    #[test]
    fn alphabet_rejects_out_of_range() {
        let a = Alphabet::new(2).unwrap();
        assert!(a.check_word(&Word::parse("012").unwrap()).is_err());
        assert!(a.check_word(&Word::parse("0110").unwrap()).is_ok());
    }
}
