//! The harmonic space {1/n : 1 <= n <= N} ∪ {0} with the three tabled
//! maps of the point-transitive-but-not-topologically-transitive system.
//!
//! f0 climbs toward 1 and is not injective there (both 1 and 1/2 map to 1).
//! f1 swaps the pairs (1/2n, 1/2n+1); f2 cycles (1/2, 1/3, 1/4) and swaps
//! the deeper even/odd pairs. Both endpoints 0 and 1 are fixed by all
//! three maps. Images past the truncation are BOUNDARY.

use std::fmt;

use crate::rational::{q, q_zero, Q};

/// A point: `Zero` or `Inv(n)` meaning 1/n.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum HarmonicPoint {
    Zero,
    Inv(u32),
}

impl HarmonicPoint {
    pub fn value(&self) -> Q {
        match self {
            HarmonicPoint::Zero => q_zero(),
            HarmonicPoint::Inv(n) => q(1, *n as i64),
        }
    }
}

impl fmt::Display for HarmonicPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HarmonicPoint::Zero => write!(f, "0"),
            HarmonicPoint::Inv(1) => write!(f, "1"),
            HarmonicPoint::Inv(n) => write!(f, "1/{n}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HarmonicOutcome {
    Point(HarmonicPoint),
    Boundary,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HarmonicSpace {
    /// Even truncation so the parity formulas close over the range.
    pub n_max: u32,
}

impl HarmonicSpace {
    pub fn new(n_max: u32) -> Self {
        assert!(
            n_max >= 4 && n_max.is_multiple_of(2),
            "truncation must be even and >= 4"
        );
        HarmonicSpace { n_max }
    }

    pub fn points(&self) -> Vec<HarmonicPoint> {
        let mut v = vec![HarmonicPoint::Zero];
        v.extend((1..=self.n_max).rev().map(HarmonicPoint::Inv));
        v
    }

    pub fn map_count(&self) -> usize {
        3
    }

    pub fn apply(&self, sym: u8, p: HarmonicPoint) -> HarmonicOutcome {
        use HarmonicOutcome::*;
        use HarmonicPoint::*;
        let out = match (sym, p) {
            (_, Zero) => Point(Zero),
            (_, Inv(1)) => Point(Inv(1)),
            // f0(1/(n+1)) = 1/n
            (0, Inv(n)) => Point(Inv(n - 1)),
            // f1 swaps 2n <-> 2n+1
            (1, Inv(n)) if n % 2 == 0 => self.bounded(n + 1),
            (1, Inv(n)) => Point(Inv(n - 1)),
            // f2: cycle 2 -> 3 -> 4 -> 2, then swaps 2n+1 <-> 2n+2 (n >= 1
            // upward, n >= 2 downward)
            (2, Inv(2)) => Point(Inv(3)),
            (2, Inv(4)) => Point(Inv(2)),
            (2, Inv(n)) if n % 2 == 1 => self.bounded(n + 1),
            (2, Inv(n)) => Point(Inv(n - 1)),
            _ => unreachable!("harmonic space has three maps"),
        };
        out
    }

    fn bounded(&self, n: u32) -> HarmonicOutcome {
        if n > self.n_max {
            HarmonicOutcome::Boundary
        } else {
            HarmonicOutcome::Point(HarmonicPoint::Inv(n))
        }
    }

    /// Word application in first-symbol-first order.
    pub fn apply_word(&self, u: &crate::shift::Word, x: HarmonicPoint) -> HarmonicOutcome {
        let mut p = x;
        for &s in u.symbols() {
            match self.apply(s, p) {
                HarmonicOutcome::Point(np) => p = np,
                HarmonicOutcome::Boundary => return HarmonicOutcome::Boundary,
            }
        }
        HarmonicOutcome::Point(p)
    }

    /// Preimage of a point under one symbol map (f0 is 2-to-1 at the top).
    pub fn preimage(&self, sym: u8, p: HarmonicPoint) -> Vec<HarmonicPoint> {
        let mut out: Vec<HarmonicPoint> = Vec::new();
        for q in self.points() {
            if self.apply(sym, q) == HarmonicOutcome::Point(p) {
                out.push(q);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use HarmonicOutcome::Point;
    use HarmonicPoint::*;

    #[test]
    fn tabled_values_from_the_example() {
        let sp = HarmonicSpace::new(24);
        assert_eq!(sp.apply(0, Inv(2)), Point(Inv(1))); // f0(1/2) = 1
        assert_eq!(sp.apply(2, Inv(4)), Point(Inv(2))); // f2(1/4) = 1/2
        assert_eq!(sp.apply(1, Inv(2)), Point(Inv(3))); // f1(1/2) = 1/3
        assert_eq!(sp.apply(2, Inv(2)), Point(Inv(3))); // f2(1/2) = 1/3
        assert_eq!(sp.apply(2, Inv(3)), Point(Inv(4))); // f2(1/3) = 1/4
        assert_eq!(sp.apply(1, Inv(5)), Point(Inv(4))); // f1(1/5) = 1/4
        assert_eq!(sp.apply(1, Inv(4)), Point(Inv(5)));
        assert_eq!(sp.apply(2, Inv(6)), Point(Inv(5)));
    }

    #[test]
    fn one_is_fixed_by_all_and_f0_is_not_injective() {
        let sp = HarmonicSpace::new(24);
        for sym in 0..3 {
            assert_eq!(sp.apply(sym, Inv(1)), Point(Inv(1)));
            assert_eq!(sp.apply(sym, Zero), Point(Zero));
        }
        // f0(1/2) = f0(1) = 1
        assert_eq!(sp.preimage(0, Inv(1)), vec![Inv(2), Inv(1)]);
    }

    #[test]
    fn f1_f2_are_bijective_on_the_interior_range() {
        let sp = HarmonicSpace::new(12);
        for sym in [1u8, 2u8] {
            let mut images: Vec<HarmonicPoint> = Vec::new();
            let mut boundary = 0;
            for p in sp.points() {
                match sp.apply(sym, p) {
                    HarmonicOutcome::Point(q) => images.push(q),
                    HarmonicOutcome::Boundary => boundary += 1,
                }
            }
            images.sort();
            images.dedup();
            // At most the deepest even index leaves the range under f1.
            assert!(boundary <= 1, "sym {sym} boundary {boundary}");
            assert_eq!(images.len() + boundary, sp.points().len());
        }
    }

    #[test]
    fn deep_end_boundary_under_f1() {
        let sp = HarmonicSpace::new(12);
        assert_eq!(sp.apply(1, Inv(12)), HarmonicOutcome::Boundary);
    }
}
