//! Global (all admissible words) property checkers.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::engine::{forward_orbit, Ifs};
use crate::rational::q_display;
use crate::shift::dfa::DEAD;
use crate::shift::Word;
use crate::space::{CylinderFamily, LinePoint, SetValue, StateSpace};
use crate::verdict::{Verdict, Witness};

use super::cover::{build_cover, line_cover_span, Cell};
use super::{CheckConfig, LabError};

/// Index extent of a line value: (min, max) over interior indices, plus
/// endpoint membership flags (bot, top).
type LineProfile = (Option<(i64, i64)>, bool, bool);

fn line_profile(v: &SetValue) -> Option<LineProfile> {
    if let SetValue::LinePoints(pts) = v {
        let mut lo = None;
        let mut hi = None;
        let mut bot = false;
        let mut top = false;
        for p in pts {
            match p {
                LinePoint::Bot => bot = true,
                LinePoint::Top => top = true,
                LinePoint::Idx(n) => {
                    lo = Some(lo.map_or(*n, |l: i64| l.min(*n)));
                    hi = Some(hi.map_or(*n, |h: i64| h.max(*n)));
                }
            }
        }
        Some((lo.zip(hi), bot, top))
    } else {
        None
    }
}

/// Exact impossibility certificate for a line-space pair: reachable word
/// displacements lie in [dmin, dmax] (from the presentation graph), and
/// endpoints are fixed, so the pair connects only if some displacement
/// lands an interior index of U inside V or the pair shares an endpoint.
fn line_pair_impossible(ifs: &Ifs, u: &SetValue, v: &SetValue) -> Option<String> {
    let StateSpace::Line(sp) = &ifs.space else {
        return None;
    };
    let (u_idx, u_bot, u_top) = line_profile(u)?;
    let (v_idx, v_bot, v_top) = line_profile(v)?;
    if (u_bot && v_bot) || (u_top && v_top) {
        return None; // shared fixed endpoint always connects
    }
    let (dmin, dmax) = ifs
        .shift
        .presentation
        .displacement_bounds(&sp.displacements);
    let (Some((ulo, uhi)), Some((vlo, vhi))) = (u_idx, v_idx) else {
        // One side has no interior indices and endpoints do not match:
        // endpoint-only sets map to themselves, never into the other.
        if u_idx.is_none() {
            return Some("source cell has only fixed endpoints".into());
        }
        return None;
    };
    // Displacements that could land some index of U in V.
    let need_lo = vlo - uhi;
    let need_hi = vhi - ulo;
    let lo_ok = dmax.is_none_or(|m| m >= need_lo);
    let hi_ok = dmin.is_none_or(|m| m <= need_hi);
    if lo_ok && hi_ok {
        return None;
    }
    Some(format!(
        "needed displacement in [{need_lo}, {need_hi}] but admissible words realize [{}, {}]",
        dmin.map_or("-inf".into(), |d| d.to_string()),
        dmax.map_or("+inf".into(), |d| d.to_string()),
    ))
}

/// Outcome of the pairwise reachability search.
enum PairOutcome {
    Hit { word: Word },
    RefutedClosed,
    RefutedCertificate(String),
    Unknown,
}

fn search_pair(
    ifs: &Ifs,
    u: &SetValue,
    v: &SetValue,
    horizon: usize,
) -> Result<(PairOutcome, bool), LabError> {
    if let Some(cert) = line_pair_impossible(ifs, u, v) {
        return Ok((PairOutcome::RefutedCertificate(cert), false));
    }
    let orbit = forward_orbit(ifs, u, horizon)?;
    for e in &orbit.entries {
        if ifs.space.intersects(&e.value, v) {
            return Ok((
                PairOutcome::Hit {
                    word: e.witness.clone(),
                },
                e.boundary_on_path,
            ));
        }
    }
    if orbit.saturated && !orbit.boundary {
        return Ok((PairOutcome::RefutedClosed, false));
    }
    Ok((PairOutcome::Unknown, orbit.boundary))
}

/// Topological transitivity: every ordered cover pair (U, V) admits an
/// admissible word with f_u(U) meeting V (interiors on interval spaces).
pub fn check_topological_transitive(ifs: &Ifs, cfg: &CheckConfig) -> Result<Verdict, LabError> {
    cfg.validate()?;
    let cells = build_cover(&ifs.space, cfg)?;
    let mut boundary = false;
    let mut max_len = 0usize;
    let mut unknown_pair = None;
    for (i, cu) in cells.iter().enumerate() {
        for (j, cv) in cells.iter().enumerate() {
            let (outcome, bdry) = search_pair(ifs, &cu.value, &cv.value, cfg.word_horizon)?;
            boundary |= bdry;
            match outcome {
                PairOutcome::Hit { word } => max_len = max_len.max(word.len()),
                PairOutcome::RefutedClosed => {
                    return Ok(Verdict::refuted(Witness::pair(i, j))
                        .with_evidence(format!(
                            "pair ({}, {}) exhausted: reachable images closed with no intersection",
                            cu.label, cv.label
                        ))
                        .with_boundary(boundary));
                }
                PairOutcome::RefutedCertificate(cert) => {
                    return Ok(Verdict::refuted(Witness::pair(i, j))
                        .with_evidence(format!("pair ({}, {}): {}", cu.label, cv.label, cert))
                        .with_boundary(boundary));
                }
                PairOutcome::Unknown => {
                    unknown_pair.get_or_insert((i, j));
                }
            }
        }
    }
    if let Some((i, j)) = unknown_pair {
        return Ok(Verdict::unknown()
            .with_evidence(format!(
                "pair ({i}, {j}) not connected within word horizon {}",
                cfg.word_horizon
            ))
            .with_boundary(boundary));
    }
    Ok(Verdict::verified(cfg.word_horizon as u64)
        .with_evidence(format!(
            "all {n} x {n} cover pairs connected; longest witness {max_len}",
            n = cells.len()
        ))
        .with_boundary(boundary))
}

/// Point transitivity: some start whose word orbit meets every cover cell.
pub fn check_point_transitive(ifs: &Ifs, cfg: &CheckConfig) -> Result<Verdict, LabError> {
    cfg.validate()?;
    let cells = build_cover(&ifs.space, cfg)?;
    let candidates = pt_candidates(ifs, cfg, &cells)?;
    // Point candidates witness a cell by meeting it; whole-set candidates
    // (cylinder spaces) must land INSIDE the cell, so that every point of
    // the candidate works for every cell simultaneously.
    let set_candidates = matches!(ifs.space, StateSpace::Cylinder { .. });
    let mut all_saturated_clean = !candidates.is_empty();
    for cand in &candidates {
        let orbit = forward_orbit(ifs, cand, cfg.word_horizon)?;
        if !(orbit.saturated && !orbit.boundary) {
            all_saturated_clean = false;
        }
        let mut met = vec![false; cells.len()];
        for e in &orbit.entries {
            for (ci, c) in cells.iter().enumerate() {
                let hit = if set_candidates {
                    ifs.space.contains(&c.value, &e.value)
                } else {
                    ifs.space.intersects(&e.value, &c.value)
                };
                if !met[ci] && hit {
                    met[ci] = true;
                }
            }
        }
        if met.iter().all(|&m| m) {
            let how = if set_candidates {
                "every point of the witness set visits all cells"
            } else {
                "orbit meets all cells"
            };
            return Ok(Verdict::verified(cfg.word_horizon as u64)
                .with_witness(Witness::point(ifs.space.display_value(cand)))
                .with_evidence(format!("{how} ({} cells)", cells.len())));
        }
    }
    // Interval spaces have no point candidates: fall back to a dense
    // trajectory along the enumerating driving sequence, whose prefix
    // words all belong to the global search space (along-orbit implies
    // global).
    if matches!(ifs.space, StateSpace::Interval(_)) {
        if let Ok(v) =
            super::along::s_membership(ifs, &crate::shift::stream::StreamSpec::TransitiveEnum, cfg)
        {
            if v.is_verified() {
                return Ok(v.with_evidence(
                    "dense along an enumerating driving sequence; the global word orbit contains that trajectory"
                        .to_string(),
                ));
            }
        }
    }
    // No candidate works. A sound refutation needs either clean exhaustion
    // from every start or a displacement certificate on line spaces.
    if let StateSpace::Line(sp) = &ifs.space {
        let (dmin, dmax) = ifs
            .shift
            .presentation
            .displacement_bounds(&sp.displacements);
        if let (Some(dmin), Some(dmax), Some((need_lo, need_hi))) =
            (dmin, dmax, line_cover_span(&cells))
        {
            let span_needed = need_hi - need_lo;
            if dmax - dmin < span_needed {
                return Ok(Verdict::refuted(Witness::detail(format!(
                    "every orbit spans at most {} indices but the cover needs {}",
                    dmax - dmin,
                    span_needed
                )))
                .with_evidence(format!(
                    "displacement certificate: admissible words realize [{dmin}, {dmax}]"
                )));
            }
        }
    }
    if all_saturated_clean {
        return Ok(Verdict::refuted(Witness::detail(
            "every start exhausts its reachable set without meeting all cells".to_string(),
        ))
        .with_evidence(format!("{} starts, all closed", candidates.len())));
    }
    Ok(Verdict::unknown().with_evidence("no witness within the word horizon".to_string()))
}

fn pt_candidates(ifs: &Ifs, cfg: &CheckConfig, cells: &[Cell]) -> Result<Vec<SetValue>, LabError> {
    let mut out = cfg.candidates.clone();
    match &ifs.space {
        StateSpace::Line(sp) => {
            out.extend(
                sp.points()
                    .into_iter()
                    .map(|p| SetValue::LinePoints([p].into())),
            );
        }
        StateSpace::Harmonic(sp) => {
            out.extend(
                sp.points()
                    .into_iter()
                    .map(|p| SetValue::HarmonicPoints([p].into())),
            );
        }
        StateSpace::FiniteTable(sp) => {
            out.extend((0..sp.size).map(|p| SetValue::FinitePoints([p].into())));
        }
        StateSpace::Cylinder { .. } => {
            // Containment semantics: a whole cylinder of starts; any point
            // of a covering cylinder witnesses density.
            out.extend(cells.iter().map(|c| c.value.clone()));
        }
        StateSpace::Interval(_) | StateSpace::TwoSidedShift => {}
    }
    Ok(out)
}

/// Mixing: each pair (U, V) connects at every length n in [M, hi] for some
/// M <= hi. Works over per-state unions of images by length, with cycle
/// detection to extrapolate beyond the window when the layer map recurs.
pub fn check_mixing(ifs: &Ifs, cfg: &CheckConfig) -> Result<Verdict, LabError> {
    cfg.validate()?;
    let cells = build_cover(&ifs.space, cfg)?;
    let mut boundary = false;
    let mut table = Vec::new();
    let mut unknown = None;
    for (i, j, mix) in mixing_table(ifs, cfg)? {
        boundary |= mix.boundary;
        match mix.outcome {
            MixOutcome::Bound(m) => table.push((i, j, m)),
            MixOutcome::RefutedForever(detail) => {
                return Ok(Verdict::refuted(Witness::pair(i, j))
                    .with_evidence(format!(
                        "pair ({}, {}): {}",
                        cells[i].label, cells[j].label, detail
                    ))
                    .with_boundary(boundary));
            }
            MixOutcome::Unknown => {
                unknown.get_or_insert((i, j));
            }
        }
    }
    if let Some((i, j)) = unknown {
        return Ok(Verdict::unknown()
            .with_evidence(format!("pair ({i}, {j}) misses lengths inside the window"))
            .with_boundary(boundary));
    }
    let mut v = Verdict::verified(cfg.mixing_hi as u64).with_boundary(boundary);
    let worst = table.iter().map(|&(_, _, m)| m).max().unwrap_or(0);
    v = v.with_evidence(format!("per-pair bounds M <= {worst}; table below"));
    for (i, j, m) in table.iter().take(12) {
        v = v.with_evidence(format!("M({i}, {j}) = {m}"));
    }
    Ok(v)
}

/// Per-pair mixing outcomes over the cover, in pair order.
pub fn mixing_table(
    ifs: &Ifs,
    cfg: &CheckConfig,
) -> Result<Vec<(usize, usize, MixResult)>, LabError> {
    cfg.validate()?;
    let cells = build_cover(&ifs.space, cfg)?;
    let mut out = Vec::with_capacity(cells.len() * cells.len());
    for (i, cu) in cells.iter().enumerate() {
        for (j, cv) in cells.iter().enumerate() {
            out.push((i, j, pair_mixing(ifs, &cu.value, &cv.value, cfg)?));
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub enum MixOutcome {
    /// Least M with hits at every probed length in [M, hi].
    Bound(usize),
    RefutedForever(String),
    Unknown,
}

#[derive(Clone, Debug)]
pub struct MixResult {
    pub outcome: MixOutcome,
    pub boundary: bool,
}

/// Length-parity and displacement certificates for line-space pairs.
/// Endpoint-sharing pairs connect at every length (endpoints are fixed);
/// pairs whose required displacement is unrealizable never connect; and
/// when every symbol steps by an odd amount, a pair pinned to a single
/// displacement misses every other length.
fn line_mixing_certificate(ifs: &Ifs, u: &SetValue, v: &SetValue) -> Option<MixResult> {
    let StateSpace::Line(sp) = &ifs.space else {
        return None;
    };
    let (u_idx, u_bot, u_top) = line_profile(u)?;
    let (v_idx, v_bot, v_top) = line_profile(v)?;
    if (u_bot && v_bot) || (u_top && v_top) {
        return Some(MixResult {
            outcome: MixOutcome::Bound(0),
            boundary: false,
        });
    }
    let (Some((ulo, uhi)), Some((vlo, vhi))) = (u_idx, v_idx) else {
        if u_idx.is_none() {
            return Some(MixResult {
                outcome: MixOutcome::RefutedForever(
                    "source cell has only fixed endpoints, which never enter the target".into(),
                ),
                boundary: false,
            });
        }
        return None;
    };
    let (dmin, dmax) = ifs
        .shift
        .presentation
        .displacement_bounds(&sp.displacements);
    let need_lo = vlo - uhi;
    let need_hi = vhi - ulo;
    if dmax.is_some_and(|m| m < need_lo) || dmin.is_some_and(|m| m > need_hi) {
        return Some(MixResult {
            outcome: MixOutcome::RefutedForever(format!(
                "needed displacement in [{need_lo}, {need_hi}] is unrealizable"
            )),
            boundary: false,
        });
    }
    if need_lo == need_hi && sp.displacements.iter().all(|d| d.abs() % 2 == 1) {
        // Every word of length n displaces by n mod 2; one parity of
        // lengths can never realize the single needed displacement.
        let parity = need_lo.rem_euclid(2);
        return Some(MixResult {
            outcome: MixOutcome::RefutedForever(format!(
                "parity certificate: displacement {need_lo} needs word lengths of parity {parity}, so every other length misses"
            )),
            boundary: false,
        });
    }
    None
}

/// Per-pair length-by-length hit analysis.
fn pair_mixing(
    ifs: &Ifs,
    u: &SetValue,
    v: &SetValue,
    cfg: &CheckConfig,
) -> Result<MixResult, LabError> {
    if let Some(res) = line_mixing_certificate(ifs, u, v) {
        return Ok(res);
    }
    // Fast path: prepend maps over the full shift have a closed-form hit
    // condition (the reversed word must align with the target prefix).
    if let (
        StateSpace::Cylinder {
            family: CylinderFamily::Prepend,
            ..
        },
        true,
    ) = (
        &ifs.space,
        matches!(ifs.shift.spec, crate::shift::ShiftSpec::Full { .. }),
    ) {
        return Ok(prepend_full_mixing(u, v, cfg));
    }
    let dfa = &ifs.shift.oracle;
    // layer: state -> union of images of U over words of the current length.
    let mut layer: BTreeMap<usize, SetValue> = BTreeMap::new();
    layer.insert(dfa.start, u.clone());
    let mut hits: Vec<bool> = Vec::new();
    let mut seen: BTreeMap<Vec<(usize, SetValue)>, usize> = BTreeMap::new();
    let mut boundary = false;
    let mut cycle: Option<(usize, usize)> = None;
    for n in 0..=cfg.mixing_hi {
        let key: Vec<(usize, SetValue)> = layer.iter().map(|(k, x)| (*k, x.clone())).collect();
        if let Some(&m) = seen.get(&key) {
            cycle = Some((m, n));
            break;
        }
        seen.insert(key, n);
        let hit = layer.values().any(|x| ifs.space.intersects(x, v));
        hits.push(hit);
        // Advance one length.
        let mut next: BTreeMap<usize, SetValue> = BTreeMap::new();
        for (&q, x) in &layer {
            for a in dfa.alphabet.symbols() {
                let t = dfa.step(q, a);
                if t == DEAD {
                    continue;
                }
                let out = ifs.space.apply_symbol(a, x)?;
                boundary |= out.boundary;
                if ifs.space.is_empty_value(&out.value) {
                    continue;
                }
                next.entry(t)
                    .and_modify(|acc| *acc = union_values(acc, &out.value))
                    .or_insert(out.value);
            }
        }
        layer = next;
        if layer.is_empty() {
            // All branches died at boundaries: nothing to extrapolate.
            break;
        }
    }
    if let Some((m, n)) = cycle {
        // Lengths >= m repeat with period n - m: decide exactly.
        let period = n - m;
        let tail_all_hit = (m..n).all(|i| hits[i]);
        if tail_all_hit {
            let mut first = m;
            while first > 0 && hits[first - 1] {
                first -= 1;
            }
            return Ok(MixResult {
                outcome: MixOutcome::Bound(first),
                boundary,
            });
        }
        if boundary {
            return Ok(MixResult {
                outcome: MixOutcome::Unknown,
                boundary,
            });
        }
        let misses: Vec<usize> = (m..n).filter(|&i| !hits[i]).collect();
        return Ok(MixResult {
            outcome: MixOutcome::RefutedForever(format!(
                "image layers recur with period {period}; lengths {misses:?} (mod {period}) never connect"
            )),
            boundary,
        });
    }
    // No cycle within the window: bounded statement only. The pair gets a
    // bound M when every probed length from M through the window top hits.
    if hits.len() == cfg.mixing_hi + 1 && *hits.last().unwrap() {
        let mut first = cfg.mixing_hi;
        while first > 0 && hits[first - 1] {
            first -= 1;
        }
        return Ok(MixResult {
            outcome: MixOutcome::Bound(first),
            boundary,
        });
    }
    Ok(MixResult {
        outcome: MixOutcome::Unknown,
        boundary,
    })
}

/// Closed-form mixing for prepend maps over the full shift: the image of
/// [u] under a word w is [rev(w) u], which meets [v] iff the cylinder
/// words are prefix-compatible. For n >= |v| any w ending in rev(v)
/// works; below that the forced alignment must match.
fn prepend_full_mixing(u: &SetValue, v: &SetValue, cfg: &CheckConfig) -> MixResult {
    let (SetValue::Cylinders(cu), SetValue::Cylinders(cv)) = (u, v) else {
        return MixResult {
            outcome: MixOutcome::Unknown,
            boundary: false,
        };
    };
    let hit_at = |n: usize| -> bool {
        cu.prefixes().iter().any(|pu| {
            cv.prefixes().iter().any(|pv| {
                if n >= pv.len() {
                    true
                } else {
                    // rev(w) is the first n symbols of pv; pu must align
                    // with the remainder.
                    let rest = pv.factor(n, pv.len());
                    rest.prefix_compatible(pu)
                }
            })
        })
    };
    // Once n >= |pv| every length hits, so scanning down from the window
    // top for the last miss gives the exact least M.
    if !hit_at(cfg.mixing_hi) {
        return MixResult {
            outcome: MixOutcome::Unknown,
            boundary: false,
        };
    }
    let mut m = 0usize;
    for n in (0..=cfg.mixing_hi).rev() {
        if !hit_at(n) {
            m = n + 1;
            break;
        }
    }
    MixResult {
        outcome: MixOutcome::Bound(m),
        boundary: false,
    }
}

fn union_values(a: &SetValue, b: &SetValue) -> SetValue {
    match (a, b) {
        (SetValue::LinePoints(x), SetValue::LinePoints(y)) => {
            SetValue::LinePoints(x.union(y).copied().collect())
        }
        (SetValue::HarmonicPoints(x), SetValue::HarmonicPoints(y)) => {
            SetValue::HarmonicPoints(x.union(y).copied().collect())
        }
        (SetValue::FinitePoints(x), SetValue::FinitePoints(y)) => {
            SetValue::FinitePoints(x.union(y).copied().collect())
        }
        (SetValue::Intervals(x), SetValue::Intervals(y)) => SetValue::Intervals(x.union(y)),
        (SetValue::Cylinders(x), SetValue::Cylinders(y)) => SetValue::Cylinders(x.union(y)),
        (SetValue::Indexed(x), SetValue::Indexed(y)) => {
            let mut all = x.cylinders().to_vec();
            all.extend(y.cylinders().iter().cloned());
            SetValue::Indexed(crate::space::IndexedSet::from_vec(all))
        }
        _ => a.clone(),
    }
}

/// Exactness: for each cover cell U, some admissible u maps U onto the
/// whole space and keeps doing so under every admissible extension.
pub fn check_exact(ifs: &Ifs, cfg: &CheckConfig) -> Result<Verdict, LabError> {
    cfg.validate()?;
    let cells = build_cover(&ifs.space, cfg)?;
    let stay_full = ifs.space.all_maps_surjective();
    // Prepend maps strictly halve measure: no word ever restores full
    // measure, so exactness fails for every cell.
    if let StateSpace::Cylinder {
        family: CylinderFamily::Prepend,
        ..
    } = &ifs.space
    {
        return Ok(Verdict::refuted(Witness::detail(
            "every symbol map halves the measure of any set".to_string(),
        ))
        .with_evidence(
            "measure certificate: |f_w(U)| = 2^-|w| |U| < 1 for every non-empty word".to_string(),
        ));
    }
    let mut boundary = false;
    let mut witnesses = Vec::new();
    let mut unknown = None;
    for (i, cu) in cells.iter().enumerate() {
        let orbit = forward_orbit(ifs, &cu.value, cfg.word_horizon)?;
        boundary |= orbit.boundary;
        let full_entry = orbit.entries.iter().find(|e| ifs.space.is_full(&e.value));
        match full_entry {
            Some(e) if stay_full => {
                witnesses.push((i, e.witness.clone()));
            }
            Some(e) => {
                // No surjectivity certificate: check extensions boundedly.
                let ext = forward_orbit_from_word(ifs, &cu.value, &e.witness, cfg.mixing_hi)?;
                if ext.iter().all(|v| ifs.space.is_full(v)) {
                    witnesses.push((i, e.witness.clone()));
                } else {
                    unknown.get_or_insert(i);
                }
            }
            None => {
                if orbit.saturated && !orbit.boundary {
                    return Ok(Verdict::refuted(Witness {
                        cell_from: Some(i),
                        detail: Some(format!(
                            "no admissible word maps cell {} onto the space (reachable images closed)",
                            cells[i].label
                        )),
                        ..Default::default()
                    })
                    .with_boundary(boundary));
                }
                unknown.get_or_insert(i);
            }
        }
    }
    if let Some(i) = unknown {
        return Ok(Verdict::unknown()
            .with_evidence(format!(
                "cell {i} admits no covering word within the horizon"
            ))
            .with_boundary(boundary));
    }
    let mut v = Verdict::verified(cfg.word_horizon as u64).with_boundary(boundary);
    if stay_full {
        v = v.with_evidence(
            "all maps verified surjective: covering words stay covering".to_string(),
        );
    } else {
        v = v.with_evidence(format!("extensions checked to depth {}", cfg.mixing_hi));
    }
    for (i, w) in witnesses.iter().take(8) {
        v = v.with_evidence(format!("cell {i} covered by word {w}"));
    }
    Ok(v)
}

/// Images of `from` under admissible extensions `u u'` with `|u'| <= depth`.
fn forward_orbit_from_word(
    ifs: &Ifs,
    from: &SetValue,
    u: &Word,
    depth: usize,
) -> Result<Vec<SetValue>, LabError> {
    let (base, _) = ifs.apply_word(u, from)?;
    let dfa = &ifs.shift.oracle;
    let start = dfa.walk(dfa.start, u);
    let mut out = Vec::new();
    let mut queue = VecDeque::from([(start, base.clone(), 0usize)]);
    let mut seen: BTreeSet<(usize, SetValue)> = BTreeSet::from([(start, base)]);
    while let Some((q, v, d)) = queue.pop_front() {
        out.push(v.clone());
        if d == depth {
            continue;
        }
        for a in dfa.alphabet.symbols() {
            let t = dfa.step(q, a);
            if t == DEAD {
                continue;
            }
            let img = ifs.space.apply_symbol(a, &v)?;
            if ifs.space.is_empty_value(&img.value) {
                continue;
            }
            if seen.insert((t, img.value.clone())) {
                queue.push_back((t, img.value, d + 1));
            }
        }
    }
    Ok(out)
}

/// Hypothesis of the preimage-transitivity proposition: every ordered
/// cover pair (U, V) has a word whose preimage of U meets V.
pub fn check_preimage_hypothesis(ifs: &Ifs, cfg: &CheckConfig) -> Result<Verdict, LabError> {
    cfg.validate()?;
    let cells = build_cover(&ifs.space, cfg)?;
    let words = ifs.shift.oracle.enumerate_up_to(cfg.word_horizon.min(8));
    for (i, cu) in cells.iter().enumerate() {
        for (j, cv) in cells.iter().enumerate() {
            let mut found = false;
            for w in &words {
                let pre = ifs.preimage_word(w, &cu.value)?;
                if ifs.space.intersects(&pre, &cv.value) {
                    found = true;
                    break;
                }
            }
            if !found {
                return Ok(Verdict::unknown().with_evidence(format!(
                    "pair ({i}, {j}) has no preimage witness within the horizon"
                )));
            }
        }
    }
    Ok(Verdict::verified(cfg.word_horizon.min(8) as u64)
        .with_evidence("preimage hypothesis holds on all cover pairs".to_string()))
}

/// One observational finding of the interior probe.
#[derive(Clone, Debug)]
pub struct ProbeFinding {
    pub word: Word,
    pub intersection: String,
    pub interior_measure: String,
    pub measure_zero: bool,
}

#[derive(Clone, Debug)]
pub struct ProbeReport {
    pub findings: Vec<ProbeFinding>,
    pub zero_measure_witnesses: usize,
}

/// Exploratory: for witnesses u with f_u(U) meeting V (closed sets),
/// report the exact measure of the intersection and flag measure-zero
/// contacts. Interval spaces only.
pub fn interior_probe(
    ifs: &Ifs,
    u_set: &SetValue,
    v_set: &SetValue,
    cfg: &CheckConfig,
) -> Result<ProbeReport, LabError> {
    let StateSpace::Interval(_) = &ifs.space else {
        return Err(LabError::Engine(
            crate::engine::EngineError::UnsupportedSpace,
        ));
    };
    let (SetValue::Intervals(vi),) = (v_set,) else {
        return Err(LabError::BadConfig("probe needs interval sets".into()));
    };
    let orbit = forward_orbit(ifs, u_set, cfg.word_horizon.min(8))?;
    let mut findings = Vec::new();
    for e in &orbit.entries {
        let SetValue::Intervals(img) = &e.value else {
            continue;
        };
        let inter = img.intersection(vi);
        if !inter.is_empty() {
            let measure = inter.measure();
            findings.push(ProbeFinding {
                word: e.witness.clone(),
                intersection: inter.to_string(),
                measure_zero: measure == crate::rational::q_zero(),
                interior_measure: q_display(&measure),
            });
        }
    }
    let zero = findings.iter().filter(|f| f.measure_zero).count();
    Ok(ProbeReport {
        findings,
        zero_measure_witnesses: zero,
    })
}
