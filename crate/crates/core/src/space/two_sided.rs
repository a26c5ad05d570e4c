//! Indexed cylinders in the two-sided binary full shift, acted on by the
//! shift map and its inverse. Shifting only re-indexes the window;
//! intersection is decided by symbol agreement on overlapping indices.

use std::fmt;

use crate::shift::Word;

/// `_a[u]_{a+|u|-1}`: all bi-infinite sequences carrying `u` at index `a`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TwoSidedCylinder {
    pub start: i64,
    pub word: Word,
}

impl TwoSidedCylinder {
    pub fn new(start: i64, word: Word) -> Self {
        assert!(!word.is_empty(), "indexed cylinder needs a non-empty word");
        TwoSidedCylinder { start, word }
    }

    pub fn end(&self) -> i64 {
        self.start + self.word.len() as i64 - 1
    }

    /// `tau^d` moves the window left by `d` (the shift map itself is d = 1).
    pub fn shifted(&self, d: i64) -> TwoSidedCylinder {
        TwoSidedCylinder {
            start: self.start - d,
            word: self.word.clone(),
        }
    }

    /// Nonempty intersection in the ambient full shift: symbols must agree
    /// wherever the index windows overlap.
    pub fn intersects(&self, other: &TwoSidedCylinder) -> bool {
        let lo = self.start.max(other.start);
        let hi = self.end().min(other.end());
        for i in lo..=hi {
            let a = self.word.symbols()[(i - self.start) as usize];
            let b = other.word.symbols()[(i - other.start) as usize];
            if a != b {
                return false;
            }
        }
        true
    }
}

impl fmt::Display for TwoSidedCylinder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "_{}[{}]_{}", self.start, self.word, self.end())
    }
}

/// Finite unions, canonical by sort/dedup. Sufficient for the checks the
/// indexed fixtures run; no complementation is ever needed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexedSet {
    cylinders: Vec<TwoSidedCylinder>,
}

impl IndexedSet {
    pub fn empty() -> Self {
        IndexedSet {
            cylinders: Vec::new(),
        }
    }

    pub fn one(c: TwoSidedCylinder) -> Self {
        IndexedSet { cylinders: vec![c] }
    }

    pub fn from_vec(mut v: Vec<TwoSidedCylinder>) -> Self {
        v.sort();
        v.dedup();
        IndexedSet { cylinders: v }
    }

    pub fn cylinders(&self) -> &[TwoSidedCylinder] {
        &self.cylinders
    }

    pub fn is_empty(&self) -> bool {
        self.cylinders.is_empty()
    }

    pub fn shifted(&self, d: i64) -> IndexedSet {
        IndexedSet::from_vec(self.cylinders.iter().map(|c| c.shifted(d)).collect())
    }

    pub fn intersects(&self, other: &IndexedSet) -> bool {
        self.cylinders
            .iter()
            .any(|a| other.cylinders.iter().any(|b| a.intersects(b)))
    }
}

impl fmt::Display for IndexedSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.cylinders.is_empty() {
            return write!(f, "EMPTY");
        }
        for (i, c) in self.cylinders.iter().enumerate() {
            if i > 0 {
                write!(f, " ∪ ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(start: i64, s: &str) -> TwoSidedCylinder {
        TwoSidedCylinder::new(start, Word::parse(s).unwrap())
    }

    #[test]
    fn shift_re_indexes() {
        assert_eq!(c(-1, "000").shifted(1), c(-2, "000"));
    }

    #[test]
    fn central_opposite_cylinders_never_meet() {
        let w = c(-1, "000");
        let v = c(-1, "111");
        assert!(!w.intersects(&v));
        // Overlap of two indices, symbols still differ.
        assert!(!c(-2, "000").intersects(&c(-1, "111")));
    }

    #[test]
    fn disjoint_windows_always_meet() {
        assert!(c(-4, "000").intersects(&c(-1, "111")));
        assert!(c(2, "000").intersects(&c(-1, "111")));
    }

    #[test]
    fn agreeing_overlap_meets() {
        assert!(c(0, "010").intersects(&c(2, "011")));
    }
}
