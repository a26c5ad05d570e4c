//! State-space contracts: the tabled example values, exact image and
//! preimage algebra, and the measure/displacement invariants.

use proptest::prelude::*;

use ifs_lab::rational::{q, q_zero};
use ifs_lab::shift::Word;
use ifs_lab::space::{
    cyl_image, cyl_preimage, interval, CylinderFamily, CylinderSet, HarmonicOutcome, HarmonicPoint,
    HarmonicSpace, IntervalSet, LineOutcome, LinePoint, LineSpace,
};

fn w(s: &str) -> Word {
    Word::parse(s).unwrap()
}

#[test]
fn line_identity_words_and_stepping() {
    let sp = LineSpace::step_pair(16);
    for n in 1..=6usize {
        let u = Word::new([vec![0u8; n], vec![1u8; n]].concat());
        assert_eq!(
            sp.apply_word(&u, LinePoint::Idx(3)),
            LineOutcome::Point(LinePoint::Idx(3))
        );
    }
    assert_eq!(
        sp.apply_word(&w("0"), LinePoint::Idx(0)),
        LineOutcome::Point(LinePoint::Idx(1))
    );
    assert_eq!(
        sp.apply_word(&w("0110"), LinePoint::Bot),
        LineOutcome::Point(LinePoint::Bot)
    );
}

#[test]
fn harmonic_tabled_values() {
    let sp = HarmonicSpace::new(24);
    use HarmonicOutcome::Point;
    use HarmonicPoint::Inv;
    assert_eq!(sp.apply(0, Inv(2)), Point(Inv(1))); // 1/2 -> 1
    assert_eq!(sp.apply(2, Inv(4)), Point(Inv(2))); // 1/4 -> 1/2
    assert_eq!(sp.apply(1, Inv(2)), Point(Inv(3))); // 1/2 -> 1/3
}

#[test]
fn shoulder_images_from_the_worked_example() {
    let (f0, f1) = interval::shoulder_pair();
    // Upper half collapses to {1} under f0.
    assert_eq!(
        f0.image(&IntervalSet::interval(q(1, 2), q(1, 1))),
        IntervalSet::singleton(q(1, 1))
    );
    // Preimage of {0} under f1 is the lower half.
    assert_eq!(
        f1.preimage(&IntervalSet::singleton(q(0, 1))),
        IntervalSet::interval(q(0, 1), q(1, 2))
    );
}

#[test]
fn doubling_image_and_preimage() {
    let f = interval::doubling_map();
    assert!(f.image(&IntervalSet::interval(q(0, 1), q(1, 2))).is_unit());
    let pre = f.preimage(&IntervalSet::interval(q(0, 1), q(1, 4)));
    assert_eq!(
        pre,
        IntervalSet::from_raw(vec![(q(0, 1), q(1, 8)), (q(1, 2), q(5, 8))])
    );
}

#[test]
fn prepend_word_image_and_full_target() {
    // f_w(FULL) over w = 01 is the reversed-prefix cylinder [10].
    let mut s = CylinderSet::full();
    for sym in [0u8, 1u8] {
        s = cyl_image(CylinderFamily::Prepend, sym, &s, 16).unwrap();
    }
    assert_eq!(s, CylinderSet::cylinder(w("10")));
    // First-bit map with mismatched leading symbol shifts [0] onto FULL.
    let t = cyl_image(
        CylinderFamily::FirstBit,
        1,
        &CylinderSet::cylinder(w("0")),
        16,
    )
    .unwrap();
    assert!(t.is_full());
    // Empty word is the identity on cylinder sets.
    let set = CylinderSet::from_prefixes(vec![w("010"), w("10")]);
    assert_eq!(set.clone(), set);
}

#[test]
fn cylinder_set_algebra() {
    assert!(CylinderSet::cylinder(w("0"))
        .intersection(&CylinderSet::cylinder(w("1")))
        .is_empty());
    assert!(CylinderSet::from_prefixes(vec![w("0"), w("1")]).is_full());
    assert_eq!(
        CylinderSet::cylinder(w("01")).intersection(&CylinderSet::cylinder(w("0"))),
        CylinderSet::cylinder(w("01"))
    );
}

#[test]
fn line_displacement_additivity() {
    let sp = LineSpace::step_pair(64);
    let u = w("001001101");
    let d = u.count(0) as i64 - u.count(1) as i64;
    assert_eq!(
        sp.apply_word(&u, LinePoint::Idx(-2)),
        LineOutcome::Point(LinePoint::Idx(-2 + d))
    );
}

proptest! {
    /// Preimage of image contains the source; image of preimage is inside
    /// the target (Galois-style sanity for the exact interval algebra).
    #[test]
    fn interval_image_preimage_adjunction(
        lo_n in 0i64..32, width_n in 1i64..16,
        which in 0usize..3,
    ) {
        let maps = [interval::doubling_map(), interval::tripling_map(), interval::shoulder_pair().0];
        let f = &maps[which];
        let lo = q(lo_n, 48);
        let hi = q((lo_n + width_n).min(48), 48);
        let s = IntervalSet::interval(lo, hi);
        let img = f.image(&s);
        let pre_of_img = f.preimage(&img);
        prop_assert!(pre_of_img.contains_set(&s));
        // Closure semantics makes discontinuous maps two-valued at their
        // breakpoints, so the forward image of a preimage may pick up
        // finitely many extra points there and nothing more.
        let pre = f.preimage(&s);
        let img_of_pre = f.image(&pre);
        for (l, r) in img_of_pre.intervals() {
            let inside = s.intervals().iter().any(|(sl, sr)| sl <= l && r <= sr);
            prop_assert!(inside || l == r, "non-degenerate escape [{l}, {r}]");
        }
    }

    /// Measure of a prepend image is exactly half the source measure.
    #[test]
    fn prepend_halves_measure(prefixes in proptest::collection::vec(
        proptest::collection::vec(0u8..2, 0..6), 0..5), sym in 0u8..2) {
        let s = CylinderSet::from_prefixes(prefixes.into_iter().map(Word::new).collect());
        let img = cyl_image(CylinderFamily::Prepend, sym, &s, 20).unwrap();
        prop_assert_eq!(img.measure() * q(2, 1), s.measure());
    }

    /// First-bit preimages invert images: x in f^{-1}(f(S)) for the
    /// cylinder algebra (set containment, since the maps merge points).
    #[test]
    fn firstbit_preimage_contains_source(prefixes in proptest::collection::vec(
        proptest::collection::vec(0u8..2, 1..6), 1..4), sym in 0u8..2) {
        let s = CylinderSet::from_prefixes(prefixes.into_iter().map(Word::new).collect());
        let img = cyl_image(CylinderFamily::FirstBit, sym, &s, 24).unwrap();
        let pre = cyl_preimage(CylinderFamily::FirstBit, sym, &img);
        prop_assert!(pre.contains_set(&s));
    }

    /// Canonicalization is idempotent and order-insensitive.
    #[test]
    fn cylinder_canonical_form(mut prefixes in proptest::collection::vec(
        proptest::collection::vec(0u8..2, 0..5), 0..6)) {
        let a = CylinderSet::from_prefixes(prefixes.iter().cloned().map(Word::new).collect());
        prefixes.reverse();
        let b = CylinderSet::from_prefixes(prefixes.into_iter().map(Word::new).collect());
        prop_assert_eq!(&a, &b);
        let c = CylinderSet::from_prefixes(a.prefixes().to_vec());
        prop_assert_eq!(&a, &c);
    }
}

#[test]
fn interval_exactness_no_tolerances() {
    // Exact rational comparisons decide everything: the boundary point of
    // two pieces lands identically through either piece of a continuous
    // map, and interval measures compose additively.
    let (f0, _) = interval::shoulder_pair();
    assert_eq!(f0.eval(&q(1, 2)), q(1, 1));
    let s = IntervalSet::from_raw(vec![(q(0, 1), q(1, 4)), (q(1, 4), q(1, 3))]);
    assert_eq!(s.measure(), q(1, 3));
    assert_eq!(s.intervals().len(), 1);
    assert_eq!(q_zero(), IntervalSet::empty().measure());
}

proptest! {
    /// Word preimages compose in reverse: pulling back along uv equals
    /// pulling back along v and then along u, on random interval sets.
    #[test]
    fn preimage_reversal_identity(
        u_syms in proptest::collection::vec(0u8..2, 0..5),
        v_syms in proptest::collection::vec(0u8..2, 0..5),
        lo_n in 0i64..40, width_n in 1i64..24,
    ) {
        use ifs_lab::engine::Ifs;
        use ifs_lab::shift::{compile_oracle, ShiftSpec};
        use ifs_lab::space::{IntervalSpace, SetValue, StateSpace};
        use std::sync::Arc;
        let maps = vec![interval::doubling_map(), interval::tripling_map()];
        let shift = Arc::new(compile_oracle(&ShiftSpec::full(2)).unwrap());
        let ifs = Ifs::new(StateSpace::Interval(IntervalSpace { maps }), shift).unwrap();
        let u = Word::new(u_syms);
        let v = Word::new(v_syms);
        let s = SetValue::Intervals(IntervalSet::interval(
            q(lo_n, 64),
            q((lo_n + width_n).min(64), 64),
        ));
        let whole = ifs.preimage_word(&u.concat(&v), &s).unwrap();
        let inner = ifs.preimage_word(&v, &s).unwrap();
        let outer = ifs.preimage_word(&u, &inner).unwrap();
        prop_assert_eq!(whole, outer);
    }
}
