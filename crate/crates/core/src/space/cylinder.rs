//! One-sided cylinder algebra on {0,1}^N and the two symbolic map
//! families acting on it: prepend maps and first-bit maps.
//!
//! A set is a finite antichain of binary prefixes (no prefix extends
//! another), canonically minimized by merging sibling cylinders.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::rational::{q_zero, Q};
use crate::shift::Word;

use super::SpaceError;

/// Union of cylinders `[u]`, kept as a canonical prefix antichain.
/// `FULL` is the singleton empty prefix; `EMPTY` is the empty set.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CylinderSet {
    prefixes: Vec<Word>,
}

impl CylinderSet {
    pub fn empty() -> Self {
        CylinderSet {
            prefixes: Vec::new(),
        }
    }

    pub fn full() -> Self {
        CylinderSet {
            prefixes: vec![Word::empty()],
        }
    }

    pub fn cylinder(prefix: Word) -> Self {
        CylinderSet {
            prefixes: vec![prefix],
        }
    }

    pub fn from_prefixes(prefixes: Vec<Word>) -> Self {
        let mut s = CylinderSet { prefixes };
        s.canonicalize();
        s
    }

    pub fn prefixes(&self) -> &[Word] {
        &self.prefixes
    }

    pub fn is_empty(&self) -> bool {
        self.prefixes.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.prefixes.len() == 1 && self.prefixes[0].is_empty()
    }

    pub fn max_depth(&self) -> usize {
        self.prefixes.iter().map(|p| p.len()).max().unwrap_or(0)
    }

    /// Antichain reduction followed by sibling merging ([u0] ∪ [u1] = [u]).
    fn canonicalize(&mut self) {
        self.prefixes.sort();
        self.prefixes.dedup();
        // Drop prefixes covered by a shorter one.
        let mut kept: Vec<Word> = Vec::with_capacity(self.prefixes.len());
        for p in self.prefixes.drain(..) {
            if !kept.iter().any(|k| k.is_prefix_of(&p)) {
                kept.push(p);
            }
        }
        // Merge siblings to fixpoint.
        loop {
            let mut merged = false;
            let mut out: Vec<Word> = Vec::with_capacity(kept.len());
            let mut i = 0;
            while i < kept.len() {
                if i + 1 < kept.len() {
                    let a = &kept[i];
                    let b = &kept[i + 1];
                    if !a.is_empty()
                        && a.len() == b.len()
                        && a.symbols()[..a.len() - 1] == b.symbols()[..b.len() - 1]
                        && a.symbols()[a.len() - 1] == 0
                        && b.symbols()[b.len() - 1] == 1
                    {
                        out.push(a.factor(0, a.len() - 1));
                        merged = true;
                        i += 2;
                        continue;
                    }
                }
                out.push(kept[i].clone());
                i += 1;
            }
            out.sort();
            kept = out;
            if !merged {
                break;
            }
        }
        self.prefixes = kept;
    }

    pub fn union(&self, other: &CylinderSet) -> CylinderSet {
        let mut p = self.prefixes.clone();
        p.extend(other.prefixes.iter().cloned());
        CylinderSet::from_prefixes(p)
    }

    /// Exact intersection: cylinders meet iff one prefix extends the other,
    /// and then the longer prefix is the intersection.
    pub fn intersection(&self, other: &CylinderSet) -> CylinderSet {
        let mut out = Vec::new();
        for a in &self.prefixes {
            for b in &other.prefixes {
                if a.is_prefix_of(b) {
                    out.push(b.clone());
                } else if b.is_prefix_of(a) {
                    out.push(a.clone());
                }
            }
        }
        CylinderSet::from_prefixes(out)
    }

    pub fn intersects(&self, other: &CylinderSet) -> bool {
        self.prefixes
            .iter()
            .any(|a| other.prefixes.iter().any(|b| a.prefix_compatible(b)))
    }

    pub fn contains_set(&self, other: &CylinderSet) -> bool {
        other
            .prefixes
            .iter()
            .all(|b| self.prefixes.iter().any(|a| a.is_prefix_of(b)))
    }

    /// Product measure: sum of 2^{-|prefix|} over the antichain.
    pub fn measure(&self) -> Q {
        self.prefixes.iter().fold(q_zero(), |acc, p| {
            acc + BigRational::new(BigInt::from(1), BigInt::from(1) << p.len())
        })
    }
}

impl fmt::Display for CylinderSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.prefixes.is_empty() {
            return write!(f, "EMPTY");
        }
        if self.is_full() {
            return write!(f, "FULL");
        }
        for (i, p) in self.prefixes.iter().enumerate() {
            if i > 0 {
                write!(f, " ∪ ")?;
            }
            write!(f, "[{p}]")?;
        }
        Ok(())
    }
}

/// The two symbolic families on {0,1}^N.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CylinderFamily {
    /// `f_i(xi) = i xi`.
    Prepend,
    /// `f_i(xi) = i xi` when `xi_1 = i`, else the shift of `xi`.
    FirstBit,
}

/// Exact image of a cylinder set under one symbol map. First-bit maps
/// refine undecided prefixes (too short to see the leading symbol) by one
/// symbol before the case split; `max_depth` bounds that growth.
pub fn cyl_image(
    family: CylinderFamily,
    sym: u8,
    s: &CylinderSet,
    max_depth: usize,
) -> Result<CylinderSet, SpaceError> {
    let mut out = Vec::new();
    for p in s.prefixes() {
        match family {
            CylinderFamily::Prepend => {
                let mut v = vec![sym];
                v.extend_from_slice(p.symbols());
                out.push(Word::new(v));
            }
            CylinderFamily::FirstBit => {
                if p.is_empty() {
                    // Refine FULL into [0] and [1], then act.
                    for lead in [0u8, 1u8] {
                        if lead == sym {
                            out.push(Word::new(vec![sym, lead]));
                        } else {
                            out.push(Word::empty());
                        }
                    }
                } else if p.symbols()[0] == sym {
                    let mut v = vec![sym];
                    v.extend_from_slice(p.symbols());
                    out.push(Word::new(v));
                } else {
                    out.push(p.factor(1, p.len()));
                }
            }
        }
    }
    let result = CylinderSet::from_prefixes(out);
    if result.max_depth() > max_depth {
        return Err(SpaceError::DepthOverflow {
            depth: result.max_depth(),
            max: max_depth,
        });
    }
    Ok(result)
}

/// Exact preimage under one symbol map.
pub fn cyl_preimage(family: CylinderFamily, sym: u8, s: &CylinderSet) -> CylinderSet {
    let mut out = Vec::new();
    for p in s.prefixes() {
        match family {
            CylinderFamily::Prepend => {
                // i xi in [p]: either p = eps (everything) or p starts
                // with i and xi continues the tail.
                if p.is_empty() {
                    out.push(Word::empty());
                } else if p.symbols()[0] == sym {
                    out.push(p.factor(1, p.len()));
                }
            }
            CylinderFamily::FirstBit => {
                // Case xi_1 = sym: image is sym xi, so sym xi in [p].
                if p.is_empty() {
                    out.push(Word::new(vec![sym]));
                } else if p.symbols()[0] == sym {
                    let tail = p.factor(1, p.len());
                    if tail.is_empty() || tail.symbols()[0] == sym {
                        out.push(if tail.is_empty() {
                            Word::new(vec![sym])
                        } else {
                            tail
                        });
                    }
                }
                // Case xi_1 = sym*: image is the shift, so xi = sym* p'.
                let mut v = vec![1 - sym];
                v.extend_from_slice(p.symbols());
                out.push(Word::new(v));
            }
        }
    }
    CylinderSet::from_prefixes(out)
}

/// All cylinders of the given depth, lexicographically.
pub fn depth_cells(depth: usize) -> Vec<CylinderSet> {
    let mut out = Vec::with_capacity(1 << depth);
    for x in 0..(1u64 << depth) {
        let mut v = Vec::with_capacity(depth);
        for b in (0..depth).rev() {
            v.push(((x >> b) & 1) as u8);
        }
        out.push(CylinderSet::cylinder(Word::new(v)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    #[test]
    fn sibling_merge_gives_full() {
        let s = CylinderSet::from_prefixes(vec![w("0"), w("1")]);
        assert!(s.is_full());
    }

    #[test]
    fn nested_prefixes_collapse() {
        let s = CylinderSet::from_prefixes(vec![w("01"), w("0")]);
        assert_eq!(s.prefixes(), &[w("0")]);
    }

    #[test]
    fn disjoint_cylinders_do_not_meet() {
        let a = CylinderSet::cylinder(w("0"));
        let b = CylinderSet::cylinder(w("1"));
        assert!(a.intersection(&b).is_empty());
        assert_eq!(
            CylinderSet::cylinder(w("01")).intersection(&CylinderSet::cylinder(w("0"))),
            CylinderSet::cylinder(w("01"))
        );
    }

    #[test]
    fn measure_is_dyadic() {
        let s = CylinderSet::from_prefixes(vec![w("00"), w("01"), w("11")]);
        assert_eq!(s.measure(), q(3, 4));
        assert_eq!(CylinderSet::full().measure(), q(1, 1));
        assert_eq!(CylinderSet::empty().measure(), q(0, 1));
    }

    #[test]
    fn prepend_word_image_of_full() {
        // f_{01} = f_1 after f_0: image of FULL is [10] (the reversal).
        let mut s = CylinderSet::full();
        for sym in [0u8, 1u8] {
            s = cyl_image(CylinderFamily::Prepend, sym, &s, 16).unwrap();
        }
        assert_eq!(s, CylinderSet::cylinder(w("10")));
        assert_eq!(s.measure(), q(1, 4));
    }

    #[test]
    fn firstbit_mismatch_shifts_to_full() {
        let s = cyl_image(
            CylinderFamily::FirstBit,
            1,
            &CylinderSet::cylinder(w("0")),
            16,
        )
        .unwrap();
        assert!(s.is_full());
    }

    #[test]
    fn firstbit_is_surjective_on_full() {
        for sym in [0u8, 1u8] {
            let s = cyl_image(CylinderFamily::FirstBit, sym, &CylinderSet::full(), 16).unwrap();
            assert!(s.is_full());
        }
    }

    #[test]
    fn prepend_empty_word_is_identity() {
        let s = CylinderSet::from_prefixes(vec![w("010"), w("10")]);
        assert_eq!(s.clone(), s);
    }

    #[test]
    fn depth_overflow_is_reported() {
        let deep = CylinderSet::cylinder(w("0101"));
        let r = cyl_image(CylinderFamily::Prepend, 0, &deep, 4);
        assert!(matches!(r, Err(SpaceError::DepthOverflow { .. })));
    }

    #[test]
    fn prepend_preimage_inverts_image() {
        let s = CylinderSet::cylinder(w("011"));
        let img = cyl_image(CylinderFamily::Prepend, 1, &s, 16).unwrap();
        assert_eq!(cyl_preimage(CylinderFamily::Prepend, 1, &img), s);
    }
}
