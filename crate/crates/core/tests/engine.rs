//! Engine-level contracts: composition order, admissibility gating,
//! orbit monotonicity, adjunction, witness validity and factor checks.

use std::sync::Arc;

use ifs_lab::engine::{check_factor, forward_orbit, run_along, EngineError, Ifs};
use ifs_lab::rational::q;
use ifs_lab::shift::recode::SlidingBlockCode;
use ifs_lab::shift::{compile_oracle, golden_shift, ShiftSpec, Word};
use ifs_lab::space::{
    interval, FiniteTableSpace, IntervalSet, IntervalSpace, LinePoint, LineSpace, SetValue,
    StateSpace,
};

fn line_ifs(spec: &ShiftSpec, n_max: i64) -> Ifs {
    let shift = Arc::new(compile_oracle(spec).unwrap());
    Ifs::new(StateSpace::Line(LineSpace::step_pair(n_max)), shift).unwrap()
}

fn pt(n: i64) -> SetValue {
    SetValue::LinePoints([LinePoint::Idx(n)].into())
}

#[test]
fn alphabet_mismatch_is_rejected() {
    let shift = Arc::new(compile_oracle(&ShiftSpec::full(3)).unwrap());
    let r = Ifs::new(StateSpace::Line(LineSpace::step_pair(4)), shift);
    assert!(matches!(r, Err(EngineError::AlphabetMismatch { .. })));
}

#[test]
fn inadmissible_words_are_rejected() {
    let ifs = line_ifs(&golden_shift(), 8);
    let r = ifs.apply_word(&Word::parse("11").unwrap(), &pt(0));
    assert!(matches!(r, Err(EngineError::InadmissibleWord(_))));
}

#[test]
fn empty_word_is_identity() {
    let ifs = line_ifs(&ShiftSpec::full(2), 8);
    let (v, b) = ifs.apply_word(&Word::empty(), &pt(3)).unwrap();
    assert_eq!(v, pt(3));
    assert!(!b);
}

#[test]
fn composition_law_first_symbol_first() {
    let ifs = line_ifs(&ShiftSpec::full(2), 32);
    let u = Word::parse("0010").unwrap();
    let v = Word::parse("110").unwrap();
    let (via_uv, _) = ifs.apply_word(&u.concat(&v), &pt(0)).unwrap();
    let (mid, _) = ifs.apply_word(&u, &pt(0)).unwrap();
    let (via_steps, _) = ifs.apply_word(&v, &mid).unwrap();
    assert_eq!(via_uv, via_steps);
}

#[test]
fn balanced_generators_act_as_identity() {
    let ifs = line_ifs(&ShiftSpec::coded(2, &["01", "0011", "000111"]), 32);
    for n in 1..=3usize {
        let u = Word::new([vec![0u8; n], vec![1u8; n]].concat());
        let (v, b) = ifs.apply_word(&u, &pt(2)).unwrap();
        assert_eq!(v, pt(2));
        assert!(!b);
    }
}

#[test]
fn preimage_image_adjunction_on_finite_space() {
    let shift = Arc::new(compile_oracle(&ShiftSpec::full(2)).unwrap());
    let sp = FiniteTableSpace::new(4, vec![vec![1, 2, 3, 0], vec![0, 0, 2, 2]]).unwrap();
    let ifs = Ifs::new(StateSpace::FiniteTable(sp), shift).unwrap();
    let u = Word::parse("0110").unwrap();
    for x in 0..4usize {
        let (img, _) = ifs
            .apply_word(&u, &SetValue::FinitePoints([x].into()))
            .unwrap();
        for y in 0..4usize {
            let pre = ifs
                .preimage_word(&u, &SetValue::FinitePoints([y].into()))
                .unwrap();
            let y_in_img = matches!(&img, SetValue::FinitePoints(s) if s.contains(&y));
            let x_in_pre = matches!(&pre, SetValue::FinitePoints(s) if s.contains(&x));
            assert_eq!(y_in_img, x_in_pre, "adjunction at x={x} y={y}");
        }
    }
}

#[test]
fn preimage_composes_in_reverse_order() {
    let maps = vec![interval::doubling_map(), interval::tripling_map()];
    let shift = Arc::new(compile_oracle(&ShiftSpec::full(2)).unwrap());
    let ifs = Ifs::new(StateSpace::Interval(IntervalSpace { maps }), shift).unwrap();
    let u = Word::parse("01").unwrap();
    let v = Word::parse("10").unwrap();
    let a = SetValue::Intervals(IntervalSet::interval(q(1, 3), q(1, 2)));
    let whole = ifs.preimage_word(&u.concat(&v), &a).unwrap();
    let inner = ifs.preimage_word(&v, &a).unwrap();
    let outer = ifs.preimage_word(&u, &inner).unwrap();
    assert_eq!(whole, outer);
}

#[test]
fn doubling_preimage_of_quarter_under_symbol_zero() {
    let maps = vec![interval::doubling_map(), interval::tripling_map()];
    let shift = Arc::new(compile_oracle(&ShiftSpec::full(2)).unwrap());
    let ifs = Ifs::new(StateSpace::Interval(IntervalSpace { maps }), shift).unwrap();
    let s = SetValue::Intervals(IntervalSet::interval(q(0, 1), q(1, 4)));
    let pre = ifs.preimage_word(&Word::parse("0").unwrap(), &s).unwrap();
    let expected = SetValue::Intervals(IntervalSet::from_raw(vec![
        (q(0, 1), q(1, 8)),
        (q(1, 2), q(5, 8)),
    ]));
    assert_eq!(pre, expected);
}

#[test]
fn forward_orbit_witnesses_replay() {
    let ifs = line_ifs(&golden_shift(), 8);
    let orbit = forward_orbit(&ifs, &pt(0), 6).unwrap();
    assert!(!orbit.entries.is_empty());
    for e in &orbit.entries {
        let (v, _) = ifs.apply_word(&e.witness, &pt(0)).unwrap();
        assert_eq!(v, e.value);
    }
}

#[test]
fn forward_orbit_monotone_in_horizon() {
    use std::collections::BTreeSet;
    let ifs = line_ifs(&golden_shift(), 8);
    let small: BTreeSet<SetValue> = forward_orbit(&ifs, &pt(0), 4)
        .unwrap()
        .values()
        .cloned()
        .collect();
    let large: BTreeSet<SetValue> = forward_orbit(&ifs, &pt(0), 5)
        .unwrap()
        .values()
        .cloned()
        .collect();
    assert!(small.is_subset(&large));
}

#[test]
fn golden_orbit_never_drops_two_below_start() {
    let ifs = line_ifs(&golden_shift(), 16);
    let orbit = forward_orbit(&ifs, &pt(0), 8).unwrap();
    for v in orbit.values() {
        if let SetValue::LinePoints(pts) = v {
            for p in pts {
                if let LinePoint::Idx(n) = p {
                    assert!(*n >= -1);
                }
            }
        }
    }
}

#[test]
fn run_along_agrees_with_apply_word() {
    let shift = Arc::new(compile_oracle(&ShiftSpec::full(2)).unwrap());
    let ifs = Ifs::new(StateSpace::Line(LineSpace::step_pair(64)), shift.clone()).unwrap();
    let mut stream = ifs_lab::shift::stream::gen_sigma0(
        shift,
        Word::parse("0").unwrap(),
        Word::parse("1").unwrap(),
    )
    .unwrap();
    let run = run_along(&ifs, &mut stream, &pt(0), 40).unwrap();
    assert_eq!(run.trajectory.len(), 41);
    for t in [0usize, 7, 23, 40] {
        let u = Word::new(run.prefix[..t].to_vec());
        let (v, _) = ifs.apply_word(&u, &pt(0)).unwrap();
        assert_eq!(v, run.trajectory[t], "at step {t}");
    }
}

#[test]
fn run_along_zero_steps_is_the_start() {
    let ifs = line_ifs(&ShiftSpec::full(2), 8);
    let mut stream = ifs_lab::shift::stream::gen_leftdrift_stream(ifs.shift.clone()).unwrap();
    let run = run_along(&ifs, &mut stream, &pt(3), 0).unwrap();
    assert_eq!(run.trajectory, vec![pt(3)]);
}

#[test]
fn prepend_run_along_reverses_the_prefix() {
    let shift = Arc::new(compile_oracle(&ShiftSpec::full(2)).unwrap());
    let ifs = Ifs::new(
        StateSpace::Cylinder {
            family: ifs_lab::space::CylinderFamily::Prepend,
            max_depth: 24,
        },
        shift.clone(),
    )
    .unwrap();
    let mut stream = ifs_lab::shift::stream::SigmaStream::new(
        ifs_lab::shift::stream::StreamSpec::Periodic {
            word: Word::parse("011").unwrap(),
        },
        shift,
    )
    .unwrap();
    let start = SetValue::Cylinders(ifs_lab::space::CylinderSet::full());
    let run = run_along(&ifs, &mut stream, &start, 6).unwrap();
    let expect = Word::new(run.prefix.iter().rev().copied().collect());
    assert_eq!(
        run.trajectory.last().unwrap(),
        &SetValue::Cylinders(ifs_lab::space::CylinderSet::cylinder(expect))
    );
}

#[test]
fn identity_factor_verifies_and_corruption_refutes() {
    let shift = Arc::new(compile_oracle(&ShiftSpec::full(2)).unwrap());
    let sp = FiniteTableSpace::new(3, vec![vec![1, 2, 0], vec![0, 0, 1]]).unwrap();
    let x = Ifs::new(StateSpace::FiniteTable(sp.clone()), shift.clone()).unwrap();
    let y = Ifs::new(StateSpace::FiniteTable(sp), shift.clone()).unwrap();
    let code = SlidingBlockCode::identity(2);
    let v = check_factor(&x, &y, &[0, 1, 2], &code, 4, 16, 7).unwrap();
    assert!(v.is_verified());
    let v = check_factor(&x, &y, &[0, 2, 1], &code, 4, 16, 7).unwrap();
    assert!(v.is_refuted());
    assert!(v.witness.is_some());
}

#[test]
fn symbol_collapse_factor_to_one_symbol() {
    let shift2 = Arc::new(compile_oracle(&ShiftSpec::full(2)).unwrap());
    let shift1 = Arc::new(compile_oracle(&ShiftSpec::full(1)).unwrap());
    let id3 = FiniteTableSpace::new(3, vec![vec![0, 1, 2], vec![0, 1, 2]]).unwrap();
    let id3y = FiniteTableSpace::new(3, vec![vec![0, 1, 2]]).unwrap();
    let x = Ifs::new(StateSpace::FiniteTable(id3), shift2).unwrap();
    let y = Ifs::new(StateSpace::FiniteTable(id3y), shift1).unwrap();
    let code = SlidingBlockCode::one_block(&[0, 0]);
    let v = check_factor(&x, &y, &[0, 1, 2], &code, 4, 16, 3).unwrap();
    assert!(v.is_verified());
}

#[test]
fn phi_surjectivity_is_enforced() {
    let shift = Arc::new(compile_oracle(&ShiftSpec::full(2)).unwrap());
    let sp = FiniteTableSpace::new(2, vec![vec![0, 1], vec![1, 0]]).unwrap();
    let x = Ifs::new(StateSpace::FiniteTable(sp.clone()), shift.clone()).unwrap();
    let y = Ifs::new(StateSpace::FiniteTable(sp), shift).unwrap();
    let code = SlidingBlockCode::identity(2);
    let r = check_factor(&x, &y, &[0, 0], &code, 2, 8, 1);
    assert!(matches!(r, Err(EngineError::PhiNotSurjective)));
}

#[test]
fn block_codes_must_land_in_the_target_language() {
    // Collapsing every symbol to 1 maps golden words onto 1-runs, which
    // the golden shift forbids.
    let golden = Arc::new(compile_oracle(&golden_shift()).unwrap());
    let sp = FiniteTableSpace::new(2, vec![vec![0, 1], vec![1, 0]]).unwrap();
    let x = Ifs::new(StateSpace::FiniteTable(sp.clone()), golden.clone()).unwrap();
    let y = Ifs::new(StateSpace::FiniteTable(sp), golden).unwrap();
    let code = SlidingBlockCode::one_block(&[1, 1]);
    let r = check_factor(&x, &y, &[0, 1], &code, 2, 8, 1);
    assert!(matches!(r, Err(EngineError::CodeRangeError(_))));
}

#[test]
fn full_orbit_is_forward_union_backward() {
    // The full orbit is exposed as the union of the two computed sets.
    let ifs = line_ifs(&ShiftSpec::full(2), 16);
    let fwd = forward_orbit(&ifs, &pt(0), 3).unwrap();
    let mut union: std::collections::BTreeSet<LinePoint> = std::collections::BTreeSet::new();
    for v in fwd.values() {
        if let SetValue::LinePoints(p) = v {
            union.extend(p.iter().copied());
        }
    }
    for w in ifs.shift.oracle.enumerate_up_to(3) {
        if let SetValue::LinePoints(p) = ifs.preimage_word(&w, &pt(0)).unwrap() {
            union.extend(p.iter().copied());
        }
    }
    assert!(union.contains(&LinePoint::Idx(3)));
    assert!(union.contains(&LinePoint::Idx(-3)));
}

#[test]
fn harmonic_orbit_reaches_every_interior_point() {
    use ifs_lab::space::{HarmonicPoint, HarmonicSpace};
    let shift = Arc::new(compile_oracle(&ShiftSpec::full(3)).unwrap());
    let ifs = Ifs::new(StateSpace::Harmonic(HarmonicSpace::new(12)), shift).unwrap();
    let from = SetValue::HarmonicPoints([HarmonicPoint::Inv(3)].into());
    let orbit = forward_orbit(&ifs, &from, 12).unwrap();
    let mut reached = std::collections::BTreeSet::new();
    for v in orbit.values() {
        if let SetValue::HarmonicPoints(pts) = v {
            reached.extend(pts.iter().copied());
        }
    }
    for n in 1..=12u32 {
        assert!(reached.contains(&HarmonicPoint::Inv(n)), "missing 1/{n}");
    }
    assert!(
        !reached.contains(&HarmonicPoint::Zero),
        "zero is unreachable"
    );
    // The top point only ever reaches itself.
    let top = SetValue::HarmonicPoints([HarmonicPoint::Inv(1)].into());
    let top_orbit = forward_orbit(&ifs, &top, 12).unwrap();
    assert!(top_orbit.saturated);
    assert_eq!(top_orbit.entries.len(), 1);
}

#[test]
fn balanced_block_orbit_never_goes_below_its_start() {
    // Factors of the power blocks can climb arbitrarily within the
    // horizon but admissible prefixes from the language start never carry
    // a point below its starting index minus the largest half-block.
    let spec = ShiftSpec::coded(2, &["01", "0011", "000111", "00001111"]);
    let ifs = line_ifs(&spec, 32);
    let orbit = forward_orbit(&ifs, &pt(0), 8).unwrap();
    let mut min_idx = i64::MAX;
    let mut max_idx = i64::MIN;
    for v in orbit.values() {
        if let SetValue::LinePoints(pts) = v {
            for p in pts {
                if let LinePoint::Idx(n) = p {
                    min_idx = min_idx.min(*n);
                    max_idx = max_idx.max(*n);
                }
            }
        }
    }
    // Factors may start mid-block with trailing 1s, so the drop is
    // bounded by the largest run of 1s (4); climbs are bounded by the
    // largest run of 0s, which is also 4 here.
    assert!(min_idx >= -4, "min {min_idx}");
    assert_eq!(max_idx, 4);
}

#[test]
fn coded_walk_samples_decompose_into_generator_blocks() {
    let spec = ShiftSpec::coded(2, &["100", "011", "000"]);
    let shift = Arc::new(compile_oracle(&spec).unwrap());
    let mut stream = ifs_lab::shift::stream::sample_walk(shift.clone(), 23).unwrap();
    let symbols = stream.prefix(300).unwrap().to_vec();
    let blocks: [&[u8]; 3] = [&[1, 0, 0], &[0, 1, 1], &[0, 0, 0]];
    // A factor stream may start mid-block; some alignment within the
    // block length must parse as a clean concatenation.
    let parses = (0..3usize).any(|offset| {
        symbols[offset..]
            .chunks(3)
            .filter(|c| c.len() == 3)
            .all(|c| blocks.contains(&c))
    });
    assert!(
        parses,
        "no alignment parses the sample into generator blocks"
    );
}
