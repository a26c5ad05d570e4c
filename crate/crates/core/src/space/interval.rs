//! Exact interval sets and rational piecewise-linear self-maps of [0, 1].
//!
//! All endpoint comparisons are decided exactly; no tolerance parameters
//! appear anywhere in this module. Open sets are handled through their
//! closures for image computation; emptiness of intersections is decided
//! on interiors where the checkers ask for it.

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::rational::{q_display, q_one, q_zero, Q};

use super::SpaceError;

/// A canonical finite union of closed intervals with rational endpoints:
/// sorted, pairwise disjoint (touching intervals merged), possibly
/// degenerate singletons.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntervalSet {
    intervals: Vec<(Q, Q)>,
}

impl IntervalSet {
    pub fn empty() -> Self {
        IntervalSet {
            intervals: Vec::new(),
        }
    }

    pub fn unit() -> Self {
        IntervalSet {
            intervals: vec![(q_zero(), q_one())],
        }
    }

    pub fn singleton(x: Q) -> Self {
        IntervalSet {
            intervals: vec![(x.clone(), x)],
        }
    }

    pub fn interval(lo: Q, hi: Q) -> Self {
        IntervalSet::from_raw(vec![(lo, hi)])
    }

    pub fn from_raw(mut raw: Vec<(Q, Q)>) -> Self {
        raw.retain(|(l, r)| l <= r);
        raw.sort();
        let mut merged: Vec<(Q, Q)> = Vec::with_capacity(raw.len());
        for (l, r) in raw {
            match merged.last_mut() {
                Some((_, pr)) if l <= *pr => {
                    if r > *pr {
                        *pr = r;
                    }
                }
                _ => merged.push((l, r)),
            }
        }
        IntervalSet { intervals: merged }
    }

    pub fn intervals(&self) -> &[(Q, Q)] {
        &self.intervals
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    /// Total length, exactly.
    pub fn measure(&self) -> Q {
        self.intervals
            .iter()
            .fold(q_zero(), |acc, (l, r)| acc + (r.clone() - l.clone()))
    }

    pub fn contains(&self, x: &Q) -> bool {
        self.intervals.iter().any(|(l, r)| l <= x && x <= r)
    }

    pub fn union(&self, other: &IntervalSet) -> IntervalSet {
        let mut raw = self.intervals.clone();
        raw.extend(other.intervals.iter().cloned());
        IntervalSet::from_raw(raw)
    }

    pub fn intersection(&self, other: &IntervalSet) -> IntervalSet {
        let mut raw = Vec::new();
        for (al, ar) in &self.intervals {
            for (bl, br) in &other.intervals {
                let l = al.max(bl).clone();
                let r = ar.min(br).clone();
                if l <= r {
                    raw.push((l, r));
                }
            }
        }
        IntervalSet::from_raw(raw)
    }

    /// Closed-set intersection nonempty? Allocation-free.
    pub fn intersects(&self, other: &IntervalSet) -> bool {
        self.intervals.iter().any(|(al, ar)| {
            other
                .intervals
                .iter()
                .any(|(bl, br)| al.max(bl) <= ar.min(br))
        })
    }

    /// Do the interiors intersect? Degenerate components have empty
    /// interior and never witness this.
    pub fn interiors_intersect(&self, other: &IntervalSet) -> bool {
        for (al, ar) in &self.intervals {
            for (bl, br) in &other.intervals {
                let l = al.max(bl);
                let r = ar.min(br);
                if l < r {
                    return true;
                }
            }
        }
        false
    }

    /// Exactly `[0, 1]`?
    pub fn is_unit(&self) -> bool {
        self.intervals.len() == 1 && self.intervals[0].0.is_zero() && self.intervals[0].1 == q_one()
    }

    pub fn contains_set(&self, other: &IntervalSet) -> bool {
        other
            .intervals
            .iter()
            .all(|(l, r)| self.intervals.iter().any(|(al, ar)| al <= l && r <= ar))
    }
}

impl fmt::Display for IntervalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.intervals.is_empty() {
            return write!(f, "∅");
        }
        for (i, (l, r)) in self.intervals.iter().enumerate() {
            if i > 0 {
                write!(f, " ∪ ")?;
            }
            if l == r {
                write!(f, "{{{}}}", q_display(l))?;
            } else {
                write!(f, "[{}, {}]", q_display(l), q_display(r))?;
            }
        }
        Ok(())
    }
}

/// One affine piece `x -> a x + b` on `[lo, hi]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Piece {
    pub lo: Q,
    pub hi: Q,
    pub a: Q,
    pub b: Q,
}

impl Piece {
    pub fn eval(&self, x: &Q) -> Q {
        self.a.clone() * x.clone() + self.b.clone()
    }
}

/// A piecewise-affine self-map of [0, 1] with exact rational data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalPiecewiseMap {
    pieces: Vec<Piece>,
    pub continuous: bool,
}

impl RationalPiecewiseMap {
    /// Pieces must cover [0, 1] contiguously with range inside [0, 1];
    /// adjacent pieces must agree at shared breakpoints when the
    /// continuity flag is requested.
    pub fn new(pieces: Vec<Piece>, continuous: bool) -> Result<Self, SpaceError> {
        if pieces.is_empty() {
            return Err(SpaceError::BadMap("no pieces".into()));
        }
        let mut sorted = pieces;
        sorted.sort_by(|p, q| p.lo.cmp(&q.lo));
        if !sorted[0].lo.is_zero() || sorted.last().unwrap().hi != q_one() {
            return Err(SpaceError::BadMap("pieces must cover [0, 1]".into()));
        }
        for w in sorted.windows(2) {
            if w[0].hi != w[1].lo {
                return Err(SpaceError::BadMap(format!(
                    "pieces must be contiguous at {}",
                    q_display(&w[0].hi)
                )));
            }
            if continuous && w[0].eval(&w[0].hi) != w[1].eval(&w[1].lo) {
                return Err(SpaceError::BadMap(format!(
                    "discontinuity at {}",
                    q_display(&w[0].hi)
                )));
            }
        }
        for p in &sorted {
            if p.lo > p.hi {
                return Err(SpaceError::BadMap("empty piece".into()));
            }
            for v in [p.eval(&p.lo), p.eval(&p.hi)] {
                if v < q_zero() || v > q_one() {
                    return Err(SpaceError::BadMap(format!(
                        "range leaves [0, 1]: value {}",
                        q_display(&v)
                    )));
                }
            }
        }
        Ok(RationalPiecewiseMap {
            pieces: sorted,
            continuous,
        })
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    /// Value at a point. At interior breakpoints of a continuous map both
    /// pieces agree; for discontinuous maps the left piece wins.
    pub fn eval(&self, x: &Q) -> Q {
        for p in &self.pieces {
            if x >= &p.lo && x <= &p.hi {
                return p.eval(x);
            }
        }
        unreachable!("pieces cover [0, 1]")
    }

    /// Exact image of a canonical interval set.
    pub fn image(&self, s: &IntervalSet) -> IntervalSet {
        let mut raw = Vec::new();
        for (l, r) in s.intervals() {
            for p in &self.pieces {
                let lo = l.max(&p.lo).clone();
                let hi = r.min(&p.hi).clone();
                if lo > hi {
                    continue;
                }
                let (mut a, mut b) = (p.eval(&lo), p.eval(&hi));
                if a > b {
                    std::mem::swap(&mut a, &mut b);
                }
                raw.push((a, b));
            }
        }
        IntervalSet::from_raw(raw)
    }

    /// Exact preimage of a canonical interval set.
    pub fn preimage(&self, s: &IntervalSet) -> IntervalSet {
        let mut raw = Vec::new();
        for (c, d) in s.intervals() {
            for p in &self.pieces {
                if p.a.is_zero() {
                    if &p.b >= c && &p.b <= d {
                        raw.push((p.lo.clone(), p.hi.clone()));
                    }
                    continue;
                }
                let mut x0 = (c.clone() - p.b.clone()) / p.a.clone();
                let mut x1 = (d.clone() - p.b.clone()) / p.a.clone();
                if x0 > x1 {
                    std::mem::swap(&mut x0, &mut x1);
                }
                let lo = x0.max(p.lo.clone());
                let hi = x1.min(p.hi.clone());
                if lo <= hi {
                    raw.push((lo, hi));
                }
            }
        }
        IntervalSet::from_raw(raw)
    }

    /// Is the map onto [0, 1]? Exact: the image of [0, 1] must be [0, 1].
    pub fn is_surjective(&self) -> bool {
        self.image(&IntervalSet::unit()).is_unit()
    }
}

/// `2x mod 1` as a piecewise map (with the convention f(1) = 1 on the
/// final breakpoint so the map is a self-map of the closed interval).
pub fn doubling_map() -> RationalPiecewiseMap {
    use crate::rational::q;
    RationalPiecewiseMap::new(
        vec![
            Piece {
                lo: q(0, 1),
                hi: q(1, 2),
                a: q(2, 1),
                b: q(0, 1),
            },
            Piece {
                lo: q(1, 2),
                hi: q(1, 1),
                a: q(2, 1),
                b: q(-1, 1),
            },
        ],
        false,
    )
    .unwrap()
}

/// `3x mod 1`, same convention at the top endpoint.
pub fn tripling_map() -> RationalPiecewiseMap {
    use crate::rational::q;
    RationalPiecewiseMap::new(
        vec![
            Piece {
                lo: q(0, 1),
                hi: q(1, 3),
                a: q(3, 1),
                b: q(0, 1),
            },
            Piece {
                lo: q(1, 3),
                hi: q(2, 3),
                a: q(3, 1),
                b: q(-1, 1),
            },
            Piece {
                lo: q(2, 3),
                hi: q(1, 1),
                a: q(3, 1),
                b: q(-2, 1),
            },
        ],
        false,
    )
    .unwrap()
}

/// The flat-shoulder pair: f0 doubles then saturates at 1, f1 saturates
/// at 0 then doubles. Their case-split union is the doubling map.
pub fn shoulder_pair() -> (RationalPiecewiseMap, RationalPiecewiseMap) {
    use crate::rational::q;
    let f0 = RationalPiecewiseMap::new(
        vec![
            Piece {
                lo: q(0, 1),
                hi: q(1, 2),
                a: q(2, 1),
                b: q(0, 1),
            },
            Piece {
                lo: q(1, 2),
                hi: q(1, 1),
                a: q(0, 1),
                b: q(1, 1),
            },
        ],
        true,
    )
    .unwrap();
    let f1 = RationalPiecewiseMap::new(
        vec![
            Piece {
                lo: q(0, 1),
                hi: q(1, 2),
                a: q(0, 1),
                b: q(0, 1),
            },
            Piece {
                lo: q(1, 2),
                hi: q(1, 1),
                a: q(2, 1),
                b: q(-1, 1),
            },
        ],
        true,
    )
    .unwrap();
    (f0, f1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn canonical_form_merges_and_sorts() {
        let s = IntervalSet::from_raw(vec![
            (q(1, 2), q(3, 4)),
            (q(0, 1), q(1, 2)),
            (q(7, 8), q(7, 8)),
        ]);
        assert_eq!(s.intervals().len(), 2);
        assert_eq!(s.measure(), q(3, 4));
    }

    #[test]
    fn shoulder_f0_collapses_upper_half_to_one() {
        let (f0, _) = shoulder_pair();
        let u = IntervalSet::interval(q(1, 2), q(1, 1));
        let img = f0.image(&u);
        assert_eq!(img, IntervalSet::singleton(q(1, 1)));
    }

    #[test]
    fn shoulder_f1_preimage_of_zero_is_lower_half() {
        let (_, f1) = shoulder_pair();
        let img = f1.preimage(&IntervalSet::singleton(q(0, 1)));
        assert_eq!(img, IntervalSet::interval(q(0, 1), q(1, 2)));
    }

    #[test]
    fn doubling_image_of_lower_half_is_unit() {
        let f = doubling_map();
        assert!(f.image(&IntervalSet::interval(q(0, 1), q(1, 2))).is_unit());
    }

    #[test]
    fn doubling_preimage_splits() {
        let f = doubling_map();
        let pre = f.preimage(&IntervalSet::interval(q(0, 1), q(1, 4)));
        let expected = IntervalSet::from_raw(vec![(q(0, 1), q(1, 8)), (q(1, 2), q(5, 8))]);
        assert_eq!(pre, expected);
        // Spot-check by forward mapping rational endpoints.
        for x in [q(1, 16), q(9, 16), q(5, 8)] {
            assert!(f.eval(&x) <= q(1, 4));
        }
    }

    #[test]
    fn identity_image_is_identity() {
        let id = RationalPiecewiseMap::new(
            vec![Piece {
                lo: q(0, 1),
                hi: q(1, 1),
                a: q(1, 1),
                b: q(0, 1),
            }],
            true,
        )
        .unwrap();
        let s = IntervalSet::from_raw(vec![(q(1, 8), q(1, 4)), (q(1, 2), q(3, 4))]);
        assert_eq!(id.image(&s), s);
        assert_eq!(id.preimage(&s), s);
    }

    #[test]
    fn interiors_vs_closures() {
        let a = IntervalSet::interval(q(0, 1), q(1, 2));
        let b = IntervalSet::interval(q(1, 2), q(1, 1));
        assert!(a.intersects(&b));
        assert!(!a.interiors_intersect(&b));
        let c = IntervalSet::singleton(q(1, 1));
        assert!(!c.interiors_intersect(&b));
    }

    #[test]
    fn range_violations_are_rejected() {
        let bad = RationalPiecewiseMap::new(
            vec![Piece {
                lo: q(0, 1),
                hi: q(1, 1),
                a: q(2, 1),
                b: q(0, 1),
            }],
            true,
        );
        assert!(bad.is_err());
    }
}
