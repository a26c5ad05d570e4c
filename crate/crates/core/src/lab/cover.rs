//! Finite open covers standing in for "arbitrary open sets".
//!
//! Interval spaces get a dyadic mesh at resolution epsilon; discrete
//! embedded spaces get singleton cells for isolated points plus endpoint
//! tail cells (singletons at accumulation points are not open, so the
//! tails absorb them); cylinder spaces get all depth-d cylinders.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::rational::{line_embedding, q_one};
use crate::space::{cylinder, HarmonicPoint, IntervalSet, LinePoint, SetValue, StateSpace};

use super::{CheckConfig, LabError};

#[derive(Clone, Debug)]
pub struct Cell {
    pub value: SetValue,
    pub label: String,
}

/// Build the default cover for a space at the config's resolution, or use
/// the explicit cover when one is given.
pub fn build_cover(space: &StateSpace, cfg: &CheckConfig) -> Result<Vec<Cell>, LabError> {
    if let Some(cells) = &cfg.explicit_cover {
        return Ok(cells
            .iter()
            .enumerate()
            .map(|(i, v)| Cell {
                value: v.clone(),
                label: format!("cell{i}:{}", space.display_value(v)),
            })
            .collect());
    }
    match space {
        StateSpace::Line(sp) => {
            // Indices whose embedding is within epsilon of an endpoint go
            // to the tail cells.
            let mut n_eps: i64 = 1;
            while line_embedding(-n_eps) > cfg.epsilon && n_eps < sp.n_max {
                n_eps += 1;
            }
            let n_eps = n_eps.min(sp.n_max - 1);
            let mut cells = Vec::new();
            let mut left: Vec<LinePoint> = vec![LinePoint::Bot];
            left.extend((-sp.n_max..=-n_eps).map(LinePoint::Idx));
            cells.push(Cell {
                value: SetValue::LinePoints(left.into_iter().collect()),
                label: format!("[0, eps) as indices <= -{n_eps}"),
            });
            for n in (-n_eps + 1)..=(n_eps - 1) {
                cells.push(Cell {
                    value: SetValue::LinePoints([LinePoint::Idx(n)].into()),
                    label: format!("{{x_{n}}}"),
                });
            }
            let mut right: Vec<LinePoint> = (n_eps..=sp.n_max).map(LinePoint::Idx).collect();
            right.push(LinePoint::Top);
            cells.push(Cell {
                value: SetValue::LinePoints(right.into_iter().collect()),
                label: format!("(1-eps, 1] as indices >= {n_eps}"),
            });
            Ok(cells)
        }
        StateSpace::Harmonic(sp) => {
            // Tail cell {x < eps} = {0} u {1/n : n > m}, singletons above.
            let one = q_one();
            let m = if cfg.epsilon >= one {
                1
            } else {
                // smallest m with 1/m < eps, minus 1
                let inv = (one.clone() / cfg.epsilon.clone()).ceil();
                let m = inv.to_integer();
                let m: u32 = m.try_into().unwrap_or(u32::MAX);
                m.min(sp.n_max - 2)
            };
            let mut cells = Vec::new();
            for n in 1..=m {
                cells.push(Cell {
                    value: SetValue::HarmonicPoints([HarmonicPoint::Inv(n)].into()),
                    label: format!("{{{}}}", HarmonicPoint::Inv(n)),
                });
            }
            let tail: Vec<HarmonicPoint> = std::iter::once(HarmonicPoint::Zero)
                .chain((m + 1..=sp.n_max).map(HarmonicPoint::Inv))
                .collect();
            cells.push(Cell {
                value: SetValue::HarmonicPoints(tail.into_iter().collect()),
                label: format!("[0, eps) as 1/n with n > {m}"),
            });
            Ok(cells)
        }
        StateSpace::FiniteTable(sp) => Ok((0..sp.size)
            .map(|p| Cell {
                value: SetValue::FinitePoints([p].into()),
                label: format!("{{{p}}}"),
            })
            .collect()),
        StateSpace::Interval(_) => {
            // Dyadic mesh at least as fine as epsilon.
            let mut k = 0u32;
            let mut w = q_one();
            while w > cfg.epsilon && k < 24 {
                w /= BigRational::from(BigInt::from(2));
                k += 1;
            }
            let denom = 1u64 << k;
            let cells = (0..denom)
                .map(|j| {
                    let lo = BigRational::new(BigInt::from(j), BigInt::from(denom));
                    let hi = BigRational::new(BigInt::from(j + 1), BigInt::from(denom));
                    Cell {
                        value: SetValue::Intervals(IntervalSet::interval(lo, hi)),
                        label: format!("[{j}/{denom}, {}/{denom}]", j + 1),
                    }
                })
                .collect();
            Ok(cells)
        }
        StateSpace::Cylinder { .. } => Ok(cylinder::depth_cells(cfg.depth)
            .into_iter()
            .map(|c| {
                let label = format!("{c}");
                Cell {
                    value: SetValue::Cylinders(c),
                    label,
                }
            })
            .collect()),
        StateSpace::TwoSidedShift => Err(LabError::CoverRequired),
    }
}

/// Index span requirements derived from a line cover: the smallest and
/// largest indices a trajectory must reach to meet every cell.
pub fn line_cover_span(cells: &[Cell]) -> Option<(i64, i64)> {
    let mut need_lo = i64::MAX;
    let mut need_hi = i64::MIN;
    for c in cells {
        if let SetValue::LinePoints(pts) = &c.value {
            // A cell is met by reaching its easiest (closest to 0) index.
            let easiest = pts
                .iter()
                .filter_map(|p| match p {
                    LinePoint::Idx(n) => Some(*n),
                    _ => None,
                })
                .min_by_key(|n| n.abs())?;
            need_lo = need_lo.min(easiest);
            need_hi = need_hi.max(easiest);
        }
    }
    (need_lo <= need_hi).then_some((need_lo, need_hi))
}

pub fn describe_cover(cells: &[Cell]) -> String {
    format!("{} cells", cells.len())
}
