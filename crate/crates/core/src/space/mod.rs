//! The exactly computable state spaces, with one unified set-value type
//! the engine and the checkers operate on.

pub mod cylinder;
pub mod finite;
pub mod harmonic;
pub mod interval;
pub mod line;
pub mod pl_pair;
pub mod two_sided;

use std::collections::BTreeSet;

use thiserror::Error;

pub use cylinder::{cyl_image, cyl_preimage, CylinderFamily, CylinderSet};
pub use finite::FiniteTableSpace;
pub use harmonic::{HarmonicOutcome, HarmonicPoint, HarmonicSpace};
pub use interval::{IntervalSet, Piece, RationalPiecewiseMap};
pub use line::{LineOutcome, LinePoint, LineSpace};
pub use pl_pair::{verify_pl_constraints, PlPairParams, PlReport};
pub use two_sided::{IndexedSet, TwoSidedCylinder};

use crate::rational::{q_display, Q};

#[derive(Debug, Error)]
pub enum SpaceError {
    #[error("bad map data: {0}")]
    BadMap(String),
    #[error("symbol {0} has no map in this space")]
    BadSymbol(u8),
    #[error("value kind does not belong to this space")]
    ValueKind,
    #[error("cylinder refinement depth {depth} exceeds the configured maximum {max}")]
    DepthOverflow { depth: usize, max: usize },
    #[error("operation unsupported on this space")]
    Unsupported,
}

/// Interval space: [0, 1] with one piecewise-affine map per symbol.
#[derive(Clone, Debug)]
pub struct IntervalSpace {
    pub maps: Vec<RationalPiecewiseMap>,
}

/// A state space together with its indexed map family.
#[derive(Clone, Debug)]
pub enum StateSpace {
    Line(LineSpace),
    Harmonic(HarmonicSpace),
    FiniteTable(FiniteTableSpace),
    Interval(IntervalSpace),
    Cylinder {
        family: CylinderFamily,
        max_depth: usize,
    },
    /// Two-sided binary full shift under tau (symbol 0) and its inverse
    /// (symbol 1); values are indexed-cylinder unions.
    TwoSidedShift,
}

/// A subset of the space, in the space's exact set algebra.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SetValue {
    LinePoints(BTreeSet<LinePoint>),
    HarmonicPoints(BTreeSet<HarmonicPoint>),
    FinitePoints(BTreeSet<usize>),
    Intervals(IntervalSet),
    Cylinders(CylinderSet),
    Indexed(IndexedSet),
}

/// Result of applying one symbol map to a set: truncation losses are
/// flagged, never silently clamped.
#[derive(Clone, Debug)]
pub struct ApplyOutcome {
    pub value: SetValue,
    pub boundary: bool,
}

impl StateSpace {
    pub fn map_count(&self) -> usize {
        match self {
            StateSpace::Line(sp) => sp.displacements.len(),
            StateSpace::Harmonic(sp) => sp.map_count(),
            StateSpace::FiniteTable(sp) => sp.maps.len(),
            StateSpace::Interval(sp) => sp.maps.len(),
            StateSpace::Cylinder { .. } => 2,
            StateSpace::TwoSidedShift => 2,
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            StateSpace::Line(_) => "line",
            StateSpace::Harmonic(_) => "harmonic",
            StateSpace::FiniteTable(_) => "finite",
            StateSpace::Interval(_) => "interval",
            StateSpace::Cylinder { .. } => "cylinder",
            StateSpace::TwoSidedShift => "two_sided",
        }
    }

    fn check_symbol(&self, sym: u8) -> Result<(), SpaceError> {
        if (sym as usize) < self.map_count() {
            Ok(())
        } else {
            Err(SpaceError::BadSymbol(sym))
        }
    }

    /// The whole space as a set value (for two-sided shifts there is no
    /// finite representation; the unconstrained value is unsupported).
    pub fn full_set(&self) -> Result<SetValue, SpaceError> {
        Ok(match self {
            StateSpace::Line(sp) => SetValue::LinePoints(sp.points().into_iter().collect()),
            StateSpace::Harmonic(sp) => SetValue::HarmonicPoints(sp.points().into_iter().collect()),
            StateSpace::FiniteTable(sp) => SetValue::FinitePoints((0..sp.size).collect()),
            StateSpace::Interval(_) => SetValue::Intervals(IntervalSet::unit()),
            StateSpace::Cylinder { .. } => SetValue::Cylinders(CylinderSet::full()),
            StateSpace::TwoSidedShift => return Err(SpaceError::Unsupported),
        })
    }

    pub fn apply_symbol(&self, sym: u8, v: &SetValue) -> Result<ApplyOutcome, SpaceError> {
        self.check_symbol(sym)?;
        match (self, v) {
            (StateSpace::Line(sp), SetValue::LinePoints(pts)) => {
                let mut out = BTreeSet::new();
                let mut boundary = false;
                for &p in pts {
                    match sp.apply(sym, p) {
                        LineOutcome::Point(np) => {
                            out.insert(np);
                        }
                        LineOutcome::Boundary => boundary = true,
                    }
                }
                Ok(ApplyOutcome {
                    value: SetValue::LinePoints(out),
                    boundary,
                })
            }
            (StateSpace::Harmonic(sp), SetValue::HarmonicPoints(pts)) => {
                let mut out = BTreeSet::new();
                let mut boundary = false;
                for &p in pts {
                    match sp.apply(sym, p) {
                        HarmonicOutcome::Point(np) => {
                            out.insert(np);
                        }
                        HarmonicOutcome::Boundary => boundary = true,
                    }
                }
                Ok(ApplyOutcome {
                    value: SetValue::HarmonicPoints(out),
                    boundary,
                })
            }
            (StateSpace::FiniteTable(sp), SetValue::FinitePoints(pts)) => {
                let out = pts.iter().map(|&p| sp.apply(sym, p)).collect();
                Ok(ApplyOutcome {
                    value: SetValue::FinitePoints(out),
                    boundary: false,
                })
            }
            (StateSpace::Interval(sp), SetValue::Intervals(s)) => Ok(ApplyOutcome {
                value: SetValue::Intervals(sp.maps[sym as usize].image(s)),
                boundary: false,
            }),
            (StateSpace::Cylinder { family, max_depth }, SetValue::Cylinders(s)) => {
                let img = cyl_image(*family, sym, s, *max_depth)?;
                Ok(ApplyOutcome {
                    value: SetValue::Cylinders(img),
                    boundary: false,
                })
            }
            (StateSpace::TwoSidedShift, SetValue::Indexed(s)) => {
                let d = if sym == 0 { 1 } else { -1 };
                Ok(ApplyOutcome {
                    value: SetValue::Indexed(s.shifted(d)),
                    boundary: false,
                })
            }
            _ => Err(SpaceError::ValueKind),
        }
    }

    pub fn preimage_symbol(&self, sym: u8, v: &SetValue) -> Result<SetValue, SpaceError> {
        self.check_symbol(sym)?;
        match (self, v) {
            (StateSpace::Line(sp), SetValue::LinePoints(pts)) => {
                let mut out = BTreeSet::new();
                for &p in pts {
                    out.extend(sp.preimage(sym, p));
                }
                Ok(SetValue::LinePoints(out))
            }
            (StateSpace::Harmonic(sp), SetValue::HarmonicPoints(pts)) => {
                let mut out = BTreeSet::new();
                for &p in pts {
                    out.extend(sp.preimage(sym, p));
                }
                Ok(SetValue::HarmonicPoints(out))
            }
            (StateSpace::FiniteTable(sp), SetValue::FinitePoints(pts)) => {
                let mut out = BTreeSet::new();
                for &p in pts {
                    out.extend(sp.preimage(sym, p));
                }
                Ok(SetValue::FinitePoints(out))
            }
            (StateSpace::Interval(sp), SetValue::Intervals(s)) => {
                Ok(SetValue::Intervals(sp.maps[sym as usize].preimage(s)))
            }
            (StateSpace::Cylinder { family, .. }, SetValue::Cylinders(s)) => {
                Ok(SetValue::Cylinders(cyl_preimage(*family, sym, s)))
            }
            (StateSpace::TwoSidedShift, SetValue::Indexed(s)) => {
                let d = if sym == 0 { 1 } else { -1 };
                Ok(SetValue::Indexed(s.shifted(-d)))
            }
            _ => Err(SpaceError::ValueKind),
        }
    }

    /// Intersection test used by the transitivity checkers: exact on
    /// discrete spaces, decided on interiors for interval sets.
    pub fn intersects(&self, a: &SetValue, b: &SetValue) -> bool {
        match (a, b) {
            (SetValue::LinePoints(x), SetValue::LinePoints(y)) => {
                x.intersection(y).next().is_some()
            }
            (SetValue::HarmonicPoints(x), SetValue::HarmonicPoints(y)) => {
                x.intersection(y).next().is_some()
            }
            (SetValue::FinitePoints(x), SetValue::FinitePoints(y)) => {
                x.intersection(y).next().is_some()
            }
            (SetValue::Intervals(x), SetValue::Intervals(y)) => x.interiors_intersect(y),
            (SetValue::Cylinders(x), SetValue::Cylinders(y)) => x.intersects(y),
            (SetValue::Indexed(x), SetValue::Indexed(y)) => x.intersects(y),
            _ => false,
        }
    }

    /// Does `a` contain `b`?
    pub fn contains(&self, a: &SetValue, b: &SetValue) -> bool {
        match (a, b) {
            (SetValue::LinePoints(x), SetValue::LinePoints(y)) => y.is_subset(x),
            (SetValue::HarmonicPoints(x), SetValue::HarmonicPoints(y)) => y.is_subset(x),
            (SetValue::FinitePoints(x), SetValue::FinitePoints(y)) => y.is_subset(x),
            (SetValue::Intervals(x), SetValue::Intervals(y)) => x.contains_set(y),
            (SetValue::Cylinders(x), SetValue::Cylinders(y)) => x.contains_set(y),
            _ => false,
        }
    }

    pub fn is_empty_value(&self, v: &SetValue) -> bool {
        match v {
            SetValue::LinePoints(x) => x.is_empty(),
            SetValue::HarmonicPoints(x) => x.is_empty(),
            SetValue::FinitePoints(x) => x.is_empty(),
            SetValue::Intervals(x) => x.is_empty(),
            SetValue::Cylinders(x) => x.is_empty(),
            SetValue::Indexed(x) => x.is_empty(),
        }
    }

    /// Is `v` the whole space, exactly?
    pub fn is_full(&self, v: &SetValue) -> bool {
        match (self, v) {
            (StateSpace::Line(sp), SetValue::LinePoints(x)) => x.len() == sp.points().len(),
            (StateSpace::Harmonic(sp), SetValue::HarmonicPoints(x)) => x.len() == sp.points().len(),
            (StateSpace::FiniteTable(sp), SetValue::FinitePoints(x)) => x.len() == sp.size,
            (StateSpace::Interval(_), SetValue::Intervals(x)) => x.is_unit(),
            (StateSpace::Cylinder { .. }, SetValue::Cylinders(x)) => x.is_full(),
            (StateSpace::TwoSidedShift, SetValue::Indexed(x)) => indexed_is_full(x),
            _ => false,
        }
    }

    /// Exact surjectivity check per symbol map: f(X) = X. Used as the
    /// stay-full certificate by the exactness checkers.
    pub fn all_maps_surjective(&self) -> bool {
        match self {
            StateSpace::TwoSidedShift => true, // shifts are bijections
            _ => {
                let Ok(full) = self.full_set() else {
                    return false;
                };
                (0..self.map_count() as u8).all(|sym| match self.apply_symbol(sym, &full) {
                    Ok(out) => !out.boundary && self.is_full(&out.value),
                    Err(_) => false,
                })
            }
        }
    }

    pub fn display_value(&self, v: &SetValue) -> String {
        match v {
            SetValue::LinePoints(x) => {
                let items: Vec<String> = x.iter().map(|p| p.to_string()).collect();
                format!("{{{}}}", items.join(", "))
            }
            SetValue::HarmonicPoints(x) => {
                let items: Vec<String> = x.iter().map(|p| p.to_string()).collect();
                format!("{{{}}}", items.join(", "))
            }
            SetValue::FinitePoints(x) => {
                let items: Vec<String> = x.iter().map(|p| p.to_string()).collect();
                format!("{{{}}}", items.join(", "))
            }
            SetValue::Intervals(x) => x.to_string(),
            SetValue::Cylinders(x) => x.to_string(),
            SetValue::Indexed(x) => x.to_string(),
        }
    }

    /// Exact measure of a value where the space has one (diagnostics).
    pub fn measure(&self, v: &SetValue) -> Option<Q> {
        match v {
            SetValue::Intervals(x) => Some(x.measure()),
            SetValue::Cylinders(x) => Some(x.measure()),
            _ => None,
        }
    }
}

/// Finite unions of indexed cylinders cover the full two-sided shift iff
/// every assignment of the spanned window is covered; exact up to a
/// window-width cap, conservative (false) beyond it.
fn indexed_is_full(s: &IndexedSet) -> bool {
    if s.is_empty() {
        return false;
    }
    let lo = s.cylinders().iter().map(|c| c.start).min().unwrap();
    let hi = s.cylinders().iter().map(|c| c.end()).max().unwrap();
    let width = (hi - lo + 1) as usize;
    if width > 20 {
        return false;
    }
    for assign in 0..(1u64 << width) {
        let sym_at = |i: i64| -> u8 { ((assign >> (i - lo)) & 1) as u8 };
        let covered = s.cylinders().iter().any(|c| {
            (c.start..=c.end()).all(|i| c.word.symbols()[(i - c.start) as usize] == sym_at(i))
        });
        if !covered {
            return false;
        }
    }
    true
}

/// Pretty-print a rational for evidence lines.
pub fn display_q(x: &Q) -> String {
    q_display(x)
}
