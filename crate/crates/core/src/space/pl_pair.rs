//! The contracting-window pair: two continuous surjective piecewise-linear
//! maps, each exact on its own, that shuttle a small interval back and
//! forth while contracting it. The constraint system is what matters;
//! the concrete breakpoints here satisfy it with exact rationals.

use crate::rational::{q, q_abs, q_display, Q};

use super::interval::{IntervalSet, Piece, RationalPiecewiseMap};

/// Parameters the pair must satisfy.
#[derive(Clone, Debug)]
pub struct PlPairParams {
    pub x0: Q,
    pub x1: Q,
    pub i0: (Q, Q),
    pub i1: (Q, Q),
    /// Contraction rate floor, in (1/2, 1).
    pub c0: Q,
    /// Expansion rate floor elsewhere, > 2.
    pub e0: Q,
}

#[derive(Clone, Debug)]
pub struct PlConstraint {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct PlReport {
    pub constraints: Vec<PlConstraint>,
}

impl PlReport {
    pub fn all_pass(&self) -> bool {
        self.constraints.iter().all(|c| c.pass)
    }

    pub fn lines(&self) -> Vec<String> {
        self.constraints
            .iter()
            .map(|c| {
                format!(
                    "{} {}: {}",
                    if c.pass { "pass" } else { "FAIL" },
                    c.name,
                    c.detail
                )
            })
            .collect()
    }
}

fn check(out: &mut Vec<PlConstraint>, name: &str, pass: bool, detail: String) {
    out.push(PlConstraint {
        name: name.to_string(),
        pass,
        detail,
    });
}

/// Slope audit: pieces whose interior meets `window` must contract with
/// rate in [c0, 1); all other pieces must expand with rate >= e0.
fn slope_audit(
    out: &mut Vec<PlConstraint>,
    tag: &str,
    f: &RationalPiecewiseMap,
    window: &(Q, Q),
    c0: &Q,
    e0: &Q,
) {
    for p in f.pieces() {
        let inside = p.lo < window.1 && window.0 < p.hi;
        let slope = q_abs(&p.a);
        let name = format!(
            "{tag} slope on [{}, {}]",
            q_display(&p.lo),
            q_display(&p.hi)
        );
        if inside {
            check(
                out,
                &name,
                slope < q(1, 1) && &slope >= c0,
                format!("contracting piece |a| = {}", q_display(&slope)),
            );
        } else {
            check(
                out,
                &name,
                &slope >= e0,
                format!("expanding piece |a| = {}", q_display(&slope)),
            );
        }
    }
}

/// Check the full constraint system; the report carries every constraint
/// with its exact slope or image so failures are self-explaining.
pub fn verify_pl_constraints(
    f0: &RationalPiecewiseMap,
    f1: &RationalPiecewiseMap,
    params: &PlPairParams,
) -> PlReport {
    let mut out = Vec::new();
    let i0 = IntervalSet::interval(params.i0.0.clone(), params.i0.1.clone());
    let i1 = IntervalSet::interval(params.i1.0.clone(), params.i1.1.clone());

    check(
        &mut out,
        "c0 in (1/2, 1)",
        params.c0 > q(1, 2) && params.c0 < q(1, 1),
        format!("c0 = {}", q_display(&params.c0)),
    );
    check(
        &mut out,
        "e0 > 2",
        params.e0 > q(2, 1),
        format!("e0 = {}", q_display(&params.e0)),
    );
    check(
        &mut out,
        "x0 in I0, x1 in I1, cross-exclusion",
        i0.contains(&params.x0)
            && i1.contains(&params.x1)
            && !i0.contains(&params.x1)
            && !i1.contains(&params.x0),
        format!(
            "x0 = {}, x1 = {}",
            q_display(&params.x0),
            q_display(&params.x1)
        ),
    );

    let f0_i0 = f0.image(&i0);
    check(
        &mut out,
        "f0(I0) inside I1",
        i1.contains_set(&f0_i0),
        format!("f0(I0) = {f0_i0}"),
    );
    let f1_i1 = f1.image(&i1);
    check(
        &mut out,
        "f1(I1) inside I0",
        i0.contains_set(&f1_i1),
        format!("f1(I1) = {f1_i1}"),
    );

    slope_audit(&mut out, "f0", f0, &params.i0, &params.c0, &params.e0);
    slope_audit(&mut out, "f1", f1, &params.i1, &params.c0, &params.e0);

    check(&mut out, "f0 continuous", f0.continuous, String::new());
    check(&mut out, "f1 continuous", f1.continuous, String::new());
    check(
        &mut out,
        "f0 onto [0, 1]",
        f0.is_surjective(),
        String::new(),
    );
    check(
        &mut out,
        "f1 onto [0, 1]",
        f1.is_surjective(),
        String::new(),
    );

    PlReport { constraints: out }
}

/// The shipped reference instance.
pub fn reference_params() -> PlPairParams {
    PlPairParams {
        x0: q(1, 8),
        x1: q(3, 16),
        i0: (q(7, 64), q(9, 64)),
        i1: (q(11, 64), q(13, 64)),
        c0: q(3, 4),
        e0: q(3, 1),
    }
}

/// f0: steep descent from 1, contracting window over I0 landing in I1,
/// descent to 0, then two full folds back up to 1 through (1/2, 1).
pub fn reference_f0() -> RationalPiecewiseMap {
    RationalPiecewiseMap::new(
        vec![
            Piece {
                lo: q(0, 1),
                hi: q(7, 64),
                a: q(-211, 28),
                b: q(1, 1),
            },
            Piece {
                lo: q(7, 64),
                hi: q(9, 64),
                a: q(3, 4),
                b: q(3, 32),
            },
            Piece {
                lo: q(9, 64),
                hi: q(53, 256),
                a: q(-3, 1),
                b: q(159, 256),
            },
            Piece {
                lo: q(53, 256),
                hi: q(1, 2),
                a: q(256, 75),
                b: q(-53, 75),
            },
            Piece {
                lo: q(1, 2),
                hi: q(3, 4),
                a: q(-4, 1),
                b: q(3, 1),
            },
            Piece {
                lo: q(3, 4),
                hi: q(1, 1),
                a: q(4, 1),
                b: q(-3, 1),
            },
        ],
        true,
    )
    .expect("reference f0 is well-formed")
}

/// f1: same shape with the contracting window over I1 landing in I0.
pub fn reference_f1() -> RationalPiecewiseMap {
    RationalPiecewiseMap::new(
        vec![
            Piece {
                lo: q(0, 1),
                hi: q(11, 64),
                a: q(-227, 44),
                b: q(1, 1),
            },
            Piece {
                lo: q(11, 64),
                hi: q(13, 64),
                a: q(3, 4),
                b: q(-1, 64),
            },
            Piece {
                lo: q(13, 64),
                hi: q(191, 768),
                a: q(-3, 1),
                b: q(191, 256),
            },
            Piece {
                lo: q(191, 768),
                hi: q(1, 2),
                a: q(768, 193),
                b: q(-191, 193),
            },
            Piece {
                lo: q(1, 2),
                hi: q(3, 4),
                a: q(-4, 1),
                b: q(3, 1),
            },
            Piece {
                lo: q(3, 4),
                hi: q(1, 1),
                a: q(4, 1),
                b: q(-3, 1),
            },
        ],
        true,
    )
    .expect("reference f1 is well-formed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::interval::{doubling_map, Piece, RationalPiecewiseMap};

    #[test]
    fn reference_instance_passes_everything() {
        let report = verify_pl_constraints(&reference_f0(), &reference_f1(), &reference_params());
        assert!(report.all_pass(), "{:#?}", report.lines());
    }

    #[test]
    fn identity_fails_the_expansion_constraint() {
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
        let report = verify_pl_constraints(&id, &reference_f1(), &reference_params());
        assert!(!report.all_pass());
        assert!(report
            .constraints
            .iter()
            .any(|c| !c.pass && c.name.starts_with("f0 slope")));
    }

    #[test]
    fn doubling_fails_the_contraction_constraint() {
        let report = verify_pl_constraints(&doubling_map(), &reference_f1(), &reference_params());
        let failing: Vec<_> = report.constraints.iter().filter(|c| !c.pass).collect();
        assert!(!failing.is_empty());
        // The piece over I0 has slope 2: not a contraction.
        assert!(failing.iter().any(|c| c.detail.contains("|a| = 2")));
    }
}
