//! Along-orbit checks: the non-autonomous system x -> f_{sigma_1..sigma_n}(x)
//! for a fixed driving sequence, plus membership in the set S of driving
//! sequences admitting a dense orbit, and its sampled density.
//!
//! Refutations are certificate-based: drift bounds on line spaces,
//! absorption at all-map fixed points, measure decay under prepend maps,
//! alignment obstructions for mixing, and subset-nesting along periodic
//! drivers. Plain non-visiting at the horizon is never reported as
//! REFUTED.

use std::collections::BTreeSet;

use crate::engine::{run_along, Ifs, OrbitRun};
use crate::shift::stream::{SigmaStream, StreamSpec};
use crate::shift::ShiftSpec;
use crate::space::{CylinderFamily, LinePoint, SetValue, StateSpace};
use crate::verdict::{Verdict, Witness};

use super::cover::{build_cover, Cell};
use super::{CheckConfig, LabError};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlongProperty {
    PointTransitive,
    TopTransitive,
    Mixing,
    Exact,
}

impl AlongProperty {
    pub fn name(&self) -> &'static str {
        match self {
            AlongProperty::PointTransitive => "point_transitive_along",
            AlongProperty::TopTransitive => "top_transitive_along",
            AlongProperty::Mixing => "mixing_along",
            AlongProperty::Exact => "exact_along",
        }
    }
}

/// Closed-set visit test (density cares about closeness, not interiors).
fn visits(space: &StateSpace, a: &SetValue, b: &SetValue) -> bool {
    match (a, b) {
        (SetValue::Intervals(x), SetValue::Intervals(y)) => x.intersects(y),
        _ => space.intersects(a, b),
    }
}

fn make_stream(ifs: &Ifs, spec: &StreamSpec) -> Result<SigmaStream, LabError> {
    Ok(SigmaStream::new(spec.clone(), ifs.shift.clone())?)
}

/// Evaluate the along-orbit definition of `property` on the materialized
/// prefix of the driving sequence.
pub fn check_along(
    ifs: &Ifs,
    stream_spec: &StreamSpec,
    property: AlongProperty,
    cfg: &CheckConfig,
) -> Result<Verdict, LabError> {
    cfg.validate()?;
    match property {
        AlongProperty::PointTransitive => s_membership(ifs, stream_spec, cfg),
        AlongProperty::TopTransitive => along_pairwise(ifs, stream_spec, cfg, false),
        AlongProperty::Mixing => along_pairwise(ifs, stream_spec, cfg, true),
        AlongProperty::Exact => along_exact(ifs, stream_spec, cfg),
    }
}

/// Image trajectory of one cover cell along the stream prefix, stopping
/// early once the value is fixed by every symbol map: from that point the
/// trajectory is constant forever, which the pair analyses exploit.
struct AlongRun {
    trajectory: Vec<SetValue>,
    boundary: bool,
    /// The final value is fixed by every map: the trajectory continues
    /// with it unchanged beyond the computed prefix.
    stabilized: bool,
}

fn image_trajectory(
    ifs: &Ifs,
    stream_spec: &StreamSpec,
    from: &SetValue,
    steps: usize,
) -> Result<AlongRun, LabError> {
    let mut stream = make_stream(ifs, stream_spec)?;
    let symbols = stream.prefix(steps)?.to_vec();
    let mut trajectory = vec![from.clone()];
    let mut boundary = false;
    let mut stabilized = false;
    for &sym in &symbols {
        let out = match ifs.space.apply_symbol(sym, trajectory.last().unwrap()) {
            Ok(out) => out,
            Err(crate::space::SpaceError::DepthOverflow { .. }) => {
                boundary = true;
                break;
            }
            Err(e) => return Err(e.into()),
        };
        boundary |= out.boundary;
        if ifs.space.is_empty_value(&out.value) {
            boundary = true;
            break;
        }
        let same = &out.value == trajectory.last().unwrap();
        trajectory.push(out.value);
        if same && stable_under_all_maps(ifs, trajectory.last().unwrap()) {
            stabilized = true;
            break;
        }
    }
    Ok(AlongRun {
        trajectory,
        boundary,
        stabilized,
    })
}

/// Is `v` fixed by every symbol map (so the trajectory has stabilized)?
fn stable_under_all_maps(ifs: &Ifs, v: &SetValue) -> bool {
    (0..ifs.space.map_count() as u8).all(|sym| match ifs.space.apply_symbol(sym, v) {
        Ok(out) => !out.boundary && out.value == *v,
        Err(_) => false,
    })
}

/// For a periodic driver, find subset-nesting: a step n with
/// I_{n+p} inside I_n. The same period word then maps each phase set into
/// itself, so every later image stays inside its phase set.
fn periodic_nesting(ifs: &Ifs, run: &AlongRun, period: usize) -> Option<usize> {
    if period == 0 || run.trajectory.len() <= period {
        return None;
    }
    (0..run.trajectory.len() - period).find(|&n| {
        ifs.space
            .contains(&run.trajectory[n], &run.trajectory[n + period])
    })
}

/// TT-along (ever connects) and mixing-along (eventually always connects)
/// over all ordered cover pairs.
fn along_pairwise(
    ifs: &Ifs,
    stream_spec: &StreamSpec,
    cfg: &CheckConfig,
    mixing: bool,
) -> Result<Verdict, LabError> {
    let cells = build_cover(&ifs.space, cfg)?;
    let period = make_stream(ifs, stream_spec)?.period;
    let mut boundary = false;
    let mut worst_n = 0u64;
    let mut unknown = None;
    let mut n_table: Vec<(usize, usize, usize)> = Vec::new();
    for (i, cu) in cells.iter().enumerate() {
        let run = image_trajectory(ifs, stream_spec, &cu.value, cfg.run_horizon)?;
        boundary |= run.boundary;
        for (j, cv) in cells.iter().enumerate() {
            let hits: Vec<usize> = run
                .trajectory
                .iter()
                .enumerate()
                .skip(1)
                .filter(|(_, v)| ifs.space.intersects(v, &cv.value))
                .map(|(n, _)| n)
                .collect();
            if mixing {
                match mixing_pair_outcome(ifs, &run, &hits, &cv.value, period, cfg) {
                    PairAlong::Verified(n) => {
                        worst_n = worst_n.max(n as u64);
                        n_table.push((i, j, n));
                    }
                    PairAlong::Refuted(detail) => {
                        return Ok(Verdict::refuted(Witness::pair(i, j))
                            .with_evidence(format!("pair ({}, {}): {detail}", cu.label, cv.label))
                            .with_boundary(boundary));
                    }
                    PairAlong::Unknown => {
                        unknown.get_or_insert((i, j));
                    }
                }
            } else {
                match tt_pair_outcome(ifs, &run, &hits, &cv.value, period) {
                    PairAlong::Verified(n) => {
                        worst_n = worst_n.max(n as u64);
                        n_table.push((i, j, n));
                    }
                    PairAlong::Refuted(detail) => {
                        return Ok(Verdict::refuted(Witness::pair(i, j))
                            .with_evidence(format!("pair ({}, {}): {detail}", cu.label, cv.label))
                            .with_boundary(boundary));
                    }
                    PairAlong::Unknown => {
                        unknown.get_or_insert((i, j));
                    }
                }
            }
        }
    }
    if let Some((i, j)) = unknown {
        return Ok(Verdict::unknown()
            .with_evidence(format!("pair ({i}, {j}) unresolved at the run horizon"))
            .with_boundary(boundary));
    }
    let mut v = Verdict::verified(cfg.run_horizon as u64)
        .with_evidence(format!(
            "all pairs connect along the prefix; worst step {worst_n}"
        ))
        .with_boundary(boundary);
    for (i, j, n) in n_table.iter().take(12) {
        v = v.with_evidence(format!(
            "{}({i}, {j}) = {n}",
            if mixing { "N" } else { "n" }
        ));
    }
    Ok(v)
}

enum PairAlong {
    Verified(usize),
    Refuted(String),
    Unknown,
}

fn tt_pair_outcome(
    ifs: &Ifs,
    run: &AlongRun,
    hits: &[usize],
    v: &SetValue,
    period: Option<usize>,
) -> PairAlong {
    if let Some(&n) = hits.first() {
        return PairAlong::Verified(n);
    }
    // Stabilized image disjoint from V misses forever.
    if run.stabilized && !run.boundary {
        return PairAlong::Refuted(
            "image stabilized to a set fixed by every map, disjoint from the target".into(),
        );
    }
    if let Some(p) = period {
        if !run.boundary {
            if let Some(n0) = periodic_nesting(ifs, run, p) {
                let phases_miss =
                    (n0..n0 + p).all(|n| !ifs.space.intersects(&run.trajectory[n], v));
                if phases_miss {
                    return PairAlong::Refuted(format!(
                        "periodic driver nests images from step {n0} (period {p}); all phase sets miss the target"
                    ));
                }
            }
        }
    }
    PairAlong::Unknown
}

fn mixing_pair_outcome(
    ifs: &Ifs,
    run: &AlongRun,
    hits: &[usize],
    v: &SetValue,
    period: Option<usize>,
    cfg: &CheckConfig,
) -> PairAlong {
    // Alignment obstruction for prepend maps: the image of a cylinder
    // after n steps is the cylinder of the reversed driving prefix, so two
    // consecutive steps can both meet a fixed target prefix only if that
    // prefix overlaps its own shift by one. Without that overlap, misses
    // occur beyond every horizon, refuting "eventually always".
    if let (
        StateSpace::Cylinder {
            family: CylinderFamily::Prepend,
            ..
        },
        SetValue::Cylinders(cv),
    ) = (&ifs.space, v)
    {
        let obstructed = cv
            .prefixes()
            .iter()
            .all(|p| p.len() >= 2 && p.symbols()[1..] != p.symbols()[..p.len() - 1]);
        if obstructed && !cv.prefixes().is_empty() {
            return PairAlong::Refuted(
                "no two consecutive steps can both reach the target (the target word does not overlap its own shift), so misses occur beyond every step".into(),
            );
        }
    }
    let h = run.trajectory.len() - 1;
    let hit_set: BTreeSet<usize> = hits.iter().copied().collect();
    if run.stabilized && !run.boundary {
        // The final value repeats forever: decide exactly.
        if hit_set.contains(&h) {
            let mut n = h;
            while n > 1 && hit_set.contains(&(n - 1)) {
                n -= 1;
            }
            return PairAlong::Verified(n);
        }
        return PairAlong::Refuted("image stabilized disjoint from the target".into());
    }
    if let Some(p) = period {
        if !run.boundary {
            if let Some(n0) = periodic_nesting(ifs, run, p) {
                // Phases that miss keep missing: later images at that
                // phase are subsets of the missing phase set.
                if let Some(n_miss) =
                    (n0..n0 + p).find(|&n| !ifs.space.intersects(&run.trajectory[n], v))
                {
                    return PairAlong::Refuted(format!(
                        "periodic driver nests images from step {n0}; phase {} misses the target at every later period",
                        n_miss % p.max(1)
                    ));
                }
            }
        }
    }
    // Bounded positive statement: a tail [N, H] of uninterrupted hits.
    if h == 0 || !hit_set.contains(&h) {
        return PairAlong::Unknown;
    }
    let mut n = h;
    while n > 1 && hit_set.contains(&(n - 1)) {
        n -= 1;
    }
    // Require a reasonable stretch of hits before trusting the tail.
    if h - n >= cfg.mixing_hi {
        PairAlong::Verified(n)
    } else {
        PairAlong::Unknown
    }
}

/// Exact-along: for each cover cell, the image along the prefix becomes
/// the whole space and stays so.
fn along_exact(
    ifs: &Ifs,
    stream_spec: &StreamSpec,
    cfg: &CheckConfig,
) -> Result<Verdict, LabError> {
    let cells = build_cover(&ifs.space, cfg)?;
    let stay_full = ifs.space.all_maps_surjective();
    let period = make_stream(ifs, stream_spec)?.period;
    // Prepend maps halve measure every step: never full again.
    if let StateSpace::Cylinder {
        family: CylinderFamily::Prepend,
        ..
    } = &ifs.space
    {
        return Ok(Verdict::refuted(Witness::detail(
            "every symbol map halves the measure of any set".to_string(),
        )));
    }
    let mut boundary = false;
    let mut worst = 0u64;
    let mut unknown = None;
    let mut table = Vec::new();
    for (i, cu) in cells.iter().enumerate() {
        let run = image_trajectory(ifs, stream_spec, &cu.value, cfg.run_horizon)?;
        boundary |= run.boundary;
        let first_full = run.trajectory.iter().position(|v| ifs.space.is_full(v));
        match first_full {
            Some(n) if stay_full || run.stabilized => {
                worst = worst.max(n as u64);
                table.push((i, n));
            }
            Some(n) => {
                // No surjectivity certificate: demand the whole observed
                // tail stays full.
                if run.trajectory[n..].iter().all(|v| ifs.space.is_full(v)) {
                    worst = worst.max(n as u64);
                    table.push((i, n));
                } else {
                    unknown.get_or_insert(i);
                }
            }
            None => {
                if run.stabilized && !run.boundary {
                    return Ok(Verdict::refuted(Witness {
                        cell_from: Some(i),
                        detail: Some("image stabilized on a proper subset".to_string()),
                        ..Default::default()
                    })
                    .with_boundary(boundary));
                }
                if let Some(p) = period {
                    if !run.boundary {
                        if let Some(n0) = periodic_nesting(ifs, &run, p) {
                            let none_full =
                                (n0..n0 + p).all(|n| !ifs.space.is_full(&run.trajectory[n]));
                            if none_full {
                                return Ok(Verdict::refuted(Witness {
                                    cell_from: Some(i),
                                    detail: Some(format!(
                                        "images nest from step {n0} with period {p} inside proper subsets; cell {} never covers",
                                        cells[i].label
                                    )),
                                    ..Default::default()
                                })
                                .with_evidence(shrink_evidence(ifs, &run, n0, p))
                                .with_boundary(boundary));
                            }
                        }
                    }
                }
                unknown.get_or_insert(i);
            }
        }
    }
    if let Some(i) = unknown {
        return Ok(Verdict::unknown()
            .with_evidence(format!("cell {i} never covers within the horizon"))
            .with_boundary(boundary));
    }
    let mut v = Verdict::verified(cfg.run_horizon as u64)
        .with_evidence(if stay_full {
            format!(
                "all cells cover and stay covering (surjectivity certificate); worst step {worst}"
            )
        } else {
            format!("all cells cover with full observed tails; worst step {worst}")
        })
        .with_boundary(boundary);
    for (i, n) in table.iter().take(10) {
        v = v.with_evidence(format!("cell {i} covers at step {n}"));
    }
    Ok(v)
}

fn shrink_evidence(ifs: &Ifs, run: &AlongRun, n0: usize, p: usize) -> String {
    let m = |v: &SetValue| ifs.space.measure(v).map(|q| crate::rational::q_display(&q));
    match (
        m(&run.trajectory[n0]),
        run.trajectory.get(n0 + p).and_then(m),
    ) {
        (Some(a), Some(b)) => format!("measure shrinks per period: {a} -> {b}"),
        _ => "images nest strictly".to_string(),
    }
}

/// Membership of the driving sequence in S: does some starting point have
/// an epsilon-dense trajectory along it?
pub fn s_membership(
    ifs: &Ifs,
    stream_spec: &StreamSpec,
    cfg: &CheckConfig,
) -> Result<Verdict, LabError> {
    cfg.validate()?;
    let cells = build_cover(&ifs.space, cfg)?;
    match &ifs.space {
        StateSpace::Line(_) => line_s_membership(ifs, stream_spec, cfg, &cells),
        StateSpace::Harmonic(_) | StateSpace::FiniteTable(_) => {
            discrete_s_membership(ifs, stream_spec, cfg, &cells)
        }
        StateSpace::Interval(_) => interval_s_membership(ifs, stream_spec, cfg, &cells),
        StateSpace::Cylinder { .. } => cylinder_s_membership(ifs, stream_spec, cfg, &cells),
        StateSpace::TwoSidedShift => Ok(Verdict::unknown()
            .with_evidence("two-sided points are not materialized; no density check".to_string())),
    }
}

/// Line spaces: the trajectory of x_i is i plus the prefix-sum path of the
/// driving symbols, until it leaves the truncation.
///
/// The truncation stands in for an infinite index line, so a dense orbit
/// needs excursions unbounded in both directions. VERIFIED therefore
/// requires a start covering every cell AND both running extrema of the
/// path still setting records near the horizon. An extremum that
/// stabilized (with a margin of several blocks) bounds the closure on
/// that side for every start: the displacement certificate behind
/// REFUTED. A stabilized-but-recent extremum downgrades to UNKNOWN.
fn line_s_membership(
    ifs: &Ifs,
    stream_spec: &StreamSpec,
    cfg: &CheckConfig,
    cells: &[Cell],
) -> Result<Verdict, LabError> {
    let StateSpace::Line(sp) = &ifs.space else {
        unreachable!()
    };
    let mut stream = make_stream(ifs, stream_spec)?;
    let symbols = stream.prefix(cfg.run_horizon)?.to_vec();
    // Prefix-sum path (start-independent).
    let mut sums = Vec::with_capacity(symbols.len() + 1);
    sums.push(0i64);
    let mut acc = 0i64;
    let mut min_sum = 0i64;
    let mut max_sum = 0i64;
    let mut last_min_step = 0usize;
    let mut last_max_step = 0usize;
    for (t, &s) in symbols.iter().enumerate() {
        acc += sp.displacements[s as usize];
        sums.push(acc);
        if acc < min_sum {
            min_sum = acc;
            last_min_step = t + 1;
        }
        if acc > max_sum {
            max_sum = acc;
            last_max_step = t + 1;
        }
    }
    let margin = drift_margin(&ifs.shift.spec, cfg);
    let horizon = symbols.len();
    let min_alive = last_min_step + margin > horizon;
    let max_alive = last_max_step + margin > horizon;
    let path_evidence = format!(
        "prefix sums range [{min_sum}, {max_sum}]; last new min at step {last_min_step}, last new max at step {last_max_step}, horizon {horizon}, margin {margin}"
    );
    if min_alive && max_alive {
        // Oscillation unbounded as far as the horizon shows: look for a
        // start whose trajectory meets every cell inside the truncation.
        let cell_ranges: Vec<(i64, i64)> = cells
            .iter()
            .map(|c| match &c.value {
                SetValue::LinePoints(pts) => {
                    let idx: Vec<i64> = pts
                        .iter()
                        .filter_map(|p| match p {
                            LinePoint::Idx(n) => Some(*n),
                            _ => None,
                        })
                        .collect();
                    (*idx.iter().min().unwrap(), *idx.iter().max().unwrap())
                }
                _ => (0, 0),
            })
            .collect();
        for start in -sp.n_max..=sp.n_max {
            let mut met = vec![false; cells.len()];
            for &s in &sums {
                let idx = start + s;
                if idx.abs() > sp.n_max {
                    break; // trajectory leaves the truncation here
                }
                for (ci, &(lo, hi)) in cell_ranges.iter().enumerate() {
                    if !met[ci] && idx >= lo && idx <= hi {
                        met[ci] = true;
                    }
                }
                if met.iter().all(|&m| m) {
                    return Ok(Verdict::verified(cfg.run_horizon as u64)
                        .with_witness(Witness::point(format!("x_{start}")))
                        .with_evidence(
                            "both excursion records still growing at the horizon".to_string(),
                        )
                        .with_evidence(path_evidence));
                }
            }
        }
        return Ok(Verdict::unknown()
            .with_evidence("oscillation alive but no start covers all cells yet".to_string())
            .with_evidence(path_evidence));
    }
    // At least one side stabilized for longer than the margin: every
    // start's closure is bounded on that side, which refutes density of
    // the (conceptually infinite) index line.
    let side = match (min_alive, max_alive) {
        (false, false) => "both excursion records stabilized",
        (false, true) => "the downward excursion record stabilized",
        _ => "the upward excursion record stabilized",
    };
    Ok(Verdict::refuted(Witness::detail(format!(
        "displacement certificate: {side} (min {min_sum} since step {last_min_step}, max {max_sum} since step {last_max_step})"
    )))
    .with_evidence(path_evidence))
}

/// Stabilization margin in steps: three blocks of the largest generator
/// (or forbidden block), with a floor for unstructured shifts.
fn drift_margin(spec: &ShiftSpec, cfg: &CheckConfig) -> usize {
    let block = match spec {
        ShiftSpec::CodedByWords { generators, .. } => {
            generators.iter().map(|g| g.len()).max().unwrap_or(1)
        }
        ShiftSpec::ForbiddenSft { forbidden, .. } => {
            forbidden.iter().map(|f| f.len()).max().unwrap_or(1)
        }
        _ => 1,
    };
    (3 * block).max(cfg.run_horizon / 10)
}

/// Harmonic and finite-table spaces: per-start simulation with absorption
/// certificates (a state fixed by every map traps the trajectory).
fn discrete_s_membership(
    ifs: &Ifs,
    stream_spec: &StreamSpec,
    cfg: &CheckConfig,
    cells: &[Cell],
) -> Result<Verdict, LabError> {
    let starts: Vec<SetValue> = match &ifs.space {
        StateSpace::Harmonic(sp) => sp
            .points()
            .into_iter()
            .map(|p| SetValue::HarmonicPoints([p].into()))
            .collect(),
        StateSpace::FiniteTable(sp) => (0..sp.size)
            .map(|p| SetValue::FinitePoints([p].into()))
            .collect(),
        _ => unreachable!(),
    };
    let mut all_absorbed_without_cover = true;
    for start in cfg.candidates.iter().chain(starts.iter()) {
        let mut stream = make_stream(ifs, stream_spec)?;
        let run = run_along(ifs, &mut stream, start, cfg.run_horizon)?;
        let mut met = vec![false; cells.len()];
        for v in &run.trajectory {
            for (ci, c) in cells.iter().enumerate() {
                if !met[ci] && visits(&ifs.space, v, &c.value) {
                    met[ci] = true;
                }
            }
        }
        if met.iter().all(|&m| m) {
            return Ok(Verdict::verified(cfg.run_horizon as u64)
                .with_witness(Witness::point(ifs.space.display_value(start)))
                .with_boundary(run.boundary));
        }
        let absorbed = run
            .trajectory
            .last()
            .map(|v| stable_under_all_maps(ifs, v))
            .unwrap_or(false);
        if !absorbed || run.boundary {
            all_absorbed_without_cover = false;
        }
    }
    if all_absorbed_without_cover {
        return Ok(Verdict::refuted(Witness::detail(
            "every start is absorbed at a fixed point before covering the cells".to_string(),
        ))
        .with_evidence(
            "absorption certificate: trajectories end in all-map fixed states".to_string(),
        ));
    }
    Ok(Verdict::unknown().with_evidence("no dense start found at the horizon".to_string()))
}

/// Interval spaces: candidate starts first, then a constructive steering
/// search that follows the driving sequence, restricting the start
/// interval so the forward window lands in each still-unvisited cell.
/// The resulting rational witness is replayed before being reported.
fn interval_s_membership(
    ifs: &Ifs,
    stream_spec: &StreamSpec,
    cfg: &CheckConfig,
    cells: &[Cell],
) -> Result<Verdict, LabError> {
    for cand in &cfg.candidates {
        let mut stream = make_stream(ifs, stream_spec)?;
        let symbols = stream.prefix(cfg.run_horizon)?.to_vec();
        let mut met = vec![false; cells.len()];
        let mut unmet = cells.len();
        let mut cur = cand.clone();
        let mark = |value: &SetValue, met: &mut Vec<bool>, unmet: &mut usize| {
            for (ci, c) in cells.iter().enumerate() {
                if !met[ci] && visits(&ifs.space, value, &c.value) {
                    met[ci] = true;
                    *unmet -= 1;
                }
            }
        };
        mark(&cur, &mut met, &mut unmet);
        for &sym in &symbols {
            if unmet == 0 {
                break;
            }
            let out = ifs.space.apply_symbol(sym, &cur)?;
            if ifs.space.is_empty_value(&out.value) {
                break;
            }
            cur = out.value;
            mark(&cur, &mut met, &mut unmet);
        }
        if unmet == 0 {
            return Ok(Verdict::verified(cfg.run_horizon as u64)
                .with_witness(Witness::point(ifs.space.display_value(cand)))
                .with_evidence("designated start has a dense trajectory".to_string()));
        }
    }
    if let Some(x) = steer_witness(ifs, stream_spec, cfg, cells)? {
        // Replay: the produced start must genuinely visit every cell.
        let start = SetValue::Intervals(crate::space::IntervalSet::singleton(x.clone()));
        let mut stream = make_stream(ifs, stream_spec)?;
        let run = run_along(ifs, &mut stream, &start, cfg.run_horizon)?;
        let mut met = vec![false; cells.len()];
        for v in &run.trajectory {
            for (ci, c) in cells.iter().enumerate() {
                if !met[ci] && visits(&ifs.space, v, &c.value) {
                    met[ci] = true;
                }
            }
        }
        if met.iter().all(|&m| m) {
            return Ok(Verdict::verified(cfg.run_horizon as u64)
                .with_witness(Witness::point(crate::rational::q_display(&x)))
                .with_evidence(
                    "witness constructed by steering; replay confirms density".to_string(),
                ));
        }
    }
    Ok(Verdict::unknown()
        .with_evidence("no witness found; interval refutations need certificates".to_string()))
}

/// Steering: maintain the start-constraint interval A and the affine
/// composition g of the chosen pieces, so the forward window is g(A)
/// exactly. Whenever the window contains an unvisited cell, shrink A so
/// the window IS that cell. Deterministic and exact.
fn steer_witness(
    ifs: &Ifs,
    stream_spec: &StreamSpec,
    cfg: &CheckConfig,
    cells: &[Cell],
) -> Result<Option<crate::rational::Q>, LabError> {
    use crate::rational::{q, Q};
    let StateSpace::Interval(isp) = &ifs.space else {
        return Ok(None);
    };
    let cell_ivs: Vec<(Q, Q)> = cells
        .iter()
        .filter_map(|c| match &c.value {
            SetValue::Intervals(s) => s.intervals().first().cloned(),
            _ => None,
        })
        .collect();
    if cell_ivs.len() != cells.len() {
        return Ok(None);
    }
    let mut stream = make_stream(ifs, stream_spec)?;
    let symbols = stream.prefix(cfg.run_horizon)?.to_vec();
    let mut visited = vec![false; cell_ivs.len()];
    // g(x) = alpha x + beta restricted to A.
    let mut alpha: Q = q(1, 1);
    let mut beta: Q = q(0, 1);
    let mut a_lo: Q = q(0, 1);
    let mut a_hi: Q = q(1, 1);
    let window = |alpha: &Q, beta: &Q, lo: &Q, hi: &Q| -> (Q, Q) {
        let x = alpha.clone() * lo.clone() + beta.clone();
        let y = alpha.clone() * hi.clone() + beta.clone();
        if x <= y {
            (x, y)
        } else {
            (y, x)
        }
    };
    let pull_back = |alpha: &Q, beta: &Q, lo: &Q, hi: &Q| -> (Q, Q) {
        // x with g(x) in [lo, hi]
        let x = (lo.clone() - beta.clone()) / alpha.clone();
        let y = (hi.clone() - beta.clone()) / alpha.clone();
        if x <= y {
            (x, y)
        } else {
            (y, x)
        }
    };
    // Mark cells already containing the initial window.
    for (t, &sym) in symbols.iter().enumerate() {
        if visited.iter().all(|&v| v) {
            break;
        }
        let _ = t;
        let map = &isp.maps[sym as usize];
        let (w_lo, w_hi) = window(&alpha, &beta, &a_lo, &a_hi);
        // Choose the piece segment with the widest image.
        let mut best: Option<(Q, Q, &crate::space::Piece, Q)> = None;
        for p in map.pieces() {
            let lo = w_lo.clone().max(p.lo.clone());
            let hi = w_hi.clone().min(p.hi.clone());
            if lo > hi {
                continue;
            }
            let width = crate::rational::q_abs(&p.a) * (hi.clone() - lo.clone());
            if best.as_ref().is_none_or(|(_, _, _, bw)| width > *bw) {
                best = Some((lo, hi, p, width));
            }
        }
        let Some((seg_lo, seg_hi, piece, width)) = best else {
            return Ok(None);
        };
        if width == q(0, 1) {
            // Window collapsing to a point; steering cannot recover.
            return Ok(None);
        }
        // Restrict A to the chosen segment, then apply the piece.
        if alpha != q(0, 1) {
            let (p_lo, p_hi) = pull_back(&alpha, &beta, &seg_lo, &seg_hi);
            a_lo = a_lo.max(p_lo);
            a_hi = a_hi.min(p_hi);
        }
        alpha = piece.a.clone() * alpha;
        beta = piece.a.clone() * beta.clone() + piece.b.clone();
        if alpha == q(0, 1) {
            return Ok(None); // flat piece: start no longer steers the window
        }
        // Shrink onto the first unvisited cell fully inside the window.
        let (w_lo, w_hi) = window(&alpha, &beta, &a_lo, &a_hi);
        for (ci, (c_lo, c_hi)) in cell_ivs.iter().enumerate() {
            if visited[ci] {
                continue;
            }
            if &w_lo <= c_lo && c_hi <= &w_hi {
                visited[ci] = true;
                let (p_lo, p_hi) = pull_back(&alpha, &beta, c_lo, c_hi);
                a_lo = a_lo.max(p_lo);
                a_hi = a_hi.min(p_hi);
                break;
            }
        }
    }
    if visited.iter().all(|&v| v) {
        let two = q(2, 1);
        Ok(Some((a_lo + a_hi) / two))
    } else {
        Ok(None)
    }
}

/// Cylinder spaces: containment-based visits. If the image of a whole
/// starting cylinder lands inside each cell at some step, every point of
/// that cylinder has a dense trajectory.
fn cylinder_s_membership(
    ifs: &Ifs,
    stream_spec: &StreamSpec,
    cfg: &CheckConfig,
    cells: &[Cell],
) -> Result<Verdict, LabError> {
    let starts: Vec<SetValue> = cfg
        .candidates
        .iter()
        .cloned()
        .chain(cells.iter().map(|c| c.value.clone()))
        .collect();
    for start in starts {
        let mut stream = make_stream(ifs, stream_spec)?;
        let run = run_along(ifs, &mut stream, &start, cfg.run_horizon)?;
        let mut met = vec![false; cells.len()];
        for v in &run.trajectory {
            for (ci, c) in cells.iter().enumerate() {
                if !met[ci] && ifs.space.contains(&c.value, v) {
                    met[ci] = true;
                }
            }
        }
        if met.iter().all(|&m| m) {
            return Ok(Verdict::verified(cfg.run_horizon as u64)
                .with_witness(Witness::point(ifs.space.display_value(&start)))
                .with_evidence("whole starting cylinder visits every cell".to_string()));
        }
    }
    Ok(Verdict::unknown().with_evidence("no containment witness at the horizon".to_string()))
}

/// Density of S under a seeded sampler: per-sample verdicts plus fractions.
#[derive(Clone, Debug)]
pub struct DensityEstimate {
    pub verified: usize,
    pub refuted: usize,
    pub unknown: usize,
    pub samples: Vec<(StreamSpec, Verdict)>,
}

impl DensityEstimate {
    pub fn verified_fraction(&self) -> f64 {
        self.verified as f64 / self.samples.len().max(1) as f64
    }
}

/// Reseed a sampler spec for the i-th sample; deterministic streams are
/// re-run as-is.
fn reseed(spec: &StreamSpec, i: u64) -> StreamSpec {
    match spec {
        StreamSpec::Walk { seed } => StreamSpec::Walk { seed: seed + i },
        StreamSpec::Markov { seed } => StreamSpec::Markov { seed: seed + i },
        other => other.clone(),
    }
}

pub fn estimate_s_density(
    ifs: &Ifs,
    sampler: &StreamSpec,
    n_samples: usize,
    cfg: &CheckConfig,
) -> Result<DensityEstimate, LabError> {
    let mut est = DensityEstimate {
        verified: 0,
        refuted: 0,
        unknown: 0,
        samples: Vec::new(),
    };
    for i in 0..n_samples {
        let spec = reseed(sampler, i as u64);
        let v = s_membership(ifs, &spec, cfg)?;
        match v.status {
            crate::verdict::Status::VerifiedUpTo { .. } => est.verified += 1,
            crate::verdict::Status::Refuted => est.refuted += 1,
            crate::verdict::Status::Unknown => est.unknown += 1,
        }
        est.samples.push((spec, v));
    }
    Ok(est)
}

/// Cells visited in the trailing fraction of a run: the desk-scale
/// approximation of the omega-limit set along the driver.
pub fn omega_limit_estimate(
    ifs: &Ifs,
    run: &OrbitRun,
    tail_fraction: f64,
    cells: &[Cell],
) -> Vec<usize> {
    let n = run.trajectory.len();
    let from = ((n as f64) * (1.0 - tail_fraction.clamp(0.0, 1.0))) as usize;
    let mut out = Vec::new();
    for (ci, c) in cells.iter().enumerate() {
        if run.trajectory[from..]
            .iter()
            .any(|v| visits(&ifs.space, v, &c.value))
        {
            out.push(ci);
        }
    }
    out
}
