//! The indexed line space: a bi-monotone sequence x_n (n in [-N, N])
//! inside (0, 1) together with both endpoints, with per-symbol index
//! translations. Truncation never clamps: an index stepping outside
//! [-N, N] is a BOUNDARY outcome, reported as contamination upstream.

use std::collections::BTreeSet;
use std::fmt;

use crate::rational::{line_embedding, q_display, Q};
use crate::shift::Word;

/// A point of the line space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LinePoint {
    Bot,
    Idx(i64),
    Top,
}

impl LinePoint {
    pub fn embedding(&self) -> Q {
        match self {
            LinePoint::Bot => crate::rational::q_zero(),
            LinePoint::Idx(n) => line_embedding(*n),
            LinePoint::Top => crate::rational::q_one(),
        }
    }
}

impl fmt::Display for LinePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinePoint::Bot => write!(f, "0"),
            LinePoint::Idx(n) => write!(f, "x_{n}"),
            LinePoint::Top => write!(f, "1"),
        }
    }
}

/// Outcome of a single map application.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LineOutcome {
    Point(LinePoint),
    Boundary,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineSpace {
    pub n_max: i64,
    /// Per-symbol index displacement; endpoints are fixed by every map.
    pub displacements: Vec<i64>,
}

impl LineSpace {
    pub fn new(n_max: i64, displacements: Vec<i64>) -> Self {
        assert!(n_max >= 1);
        LineSpace {
            n_max,
            displacements,
        }
    }

    /// The standard right/left stepping pair: f0 raises the index, f1
    /// lowers it.
    pub fn step_pair(n_max: i64) -> Self {
        LineSpace::new(n_max, vec![1, -1])
    }

    pub fn points(&self) -> Vec<LinePoint> {
        let mut v = vec![LinePoint::Bot];
        v.extend((-self.n_max..=self.n_max).map(LinePoint::Idx));
        v.push(LinePoint::Top);
        v
    }

    pub fn apply(&self, sym: u8, p: LinePoint) -> LineOutcome {
        match p {
            LinePoint::Bot => LineOutcome::Point(LinePoint::Bot),
            LinePoint::Top => LineOutcome::Point(LinePoint::Top),
            LinePoint::Idx(n) => {
                let m = n + self.displacements[sym as usize];
                if m.abs() > self.n_max {
                    LineOutcome::Boundary
                } else {
                    LineOutcome::Point(LinePoint::Idx(m))
                }
            }
        }
    }

    /// Preimage of a point under one symbol map.
    pub fn preimage(&self, sym: u8, p: LinePoint) -> Vec<LinePoint> {
        match p {
            LinePoint::Bot => vec![LinePoint::Bot],
            LinePoint::Top => vec![LinePoint::Top],
            LinePoint::Idx(n) => {
                let m = n - self.displacements[sym as usize];
                if m.abs() > self.n_max {
                    vec![]
                } else {
                    vec![LinePoint::Idx(m)]
                }
            }
        }
    }

    /// Word application in first-symbol-first order; BOUNDARY as soon as
    /// any intermediate index leaves the truncation.
    pub fn apply_word(&self, u: &Word, x: LinePoint) -> LineOutcome {
        let mut p = x;
        for &s in u.symbols() {
            match self.apply(s, p) {
                LineOutcome::Point(np) => p = np,
                LineOutcome::Boundary => return LineOutcome::Boundary,
            }
        }
        LineOutcome::Point(p)
    }
}

/// Set values on finite point spaces are plain sorted point sets.
pub type LineSet = BTreeSet<LinePoint>;

pub fn display_line_set(s: &LineSet) -> String {
    let items: Vec<String> = s.iter().map(|p| p.to_string()).collect();
    format!("{{{}}}", items.join(", "))
}

pub fn display_embedding(p: &LinePoint) -> String {
    q_display(&p.embedding())
}
