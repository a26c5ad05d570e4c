//! The worked example systems, each shipped as a named fixture with an
//! expected-verdict manifest. Reproducing a fixture runs every manifest
//! line and compares observed against expected status; the acceptance
//! suite drives these end to end.

use std::sync::Arc;

use thiserror::Error;

use crate::engine::Ifs;
use crate::lab::{
    build_cover, check_along, check_exact, check_mixing, check_point_transitive,
    check_topological_transitive, estimate_s_density, s_membership, AlongProperty, CheckConfig,
};
use crate::rational::{q, q_display, Q};
use crate::report::{Report, ReportEntry};
use crate::shift::analysis::{check_svgl, find_synchronizing_word, is_irreducible};
use crate::shift::stream::{SigmaStream, StreamSpec};
use crate::shift::{compile_oracle, golden_shift, CompiledShift, ShiftSpec, Word};
use crate::space::{
    pl_pair, CylinderFamily, CylinderSet, HarmonicPoint, IndexedSet, IntervalSet, IntervalSpace,
    LineSpace, SetValue, StateSpace, TwoSidedCylinder,
};
use crate::verdict::{Verdict, Witness};

#[derive(Debug, Error)]
pub enum FixtureError {
    #[error("unknown fixture id {0:?}")]
    UnknownId(String),
    #[error(transparent)]
    Lab(#[from] crate::lab::LabError),
    #[error(transparent)]
    Engine(#[from] crate::engine::EngineError),
    #[error(transparent)]
    Shift(#[from] crate::shift::ShiftError),
}

/// All shipped fixture ids, in catalog order.
pub const FIXTURE_IDS: [&str; 13] = [
    "golden-robot",
    "ptt-not-tt",
    "doubling-sigma",
    "shift-inverse",
    "line-basic",
    "coded-0n1n",
    "two-expanding",
    "nonsvgl",
    "leftdrift-full",
    "markov-100-011-000",
    "prepend",
    "firstbit",
    "pl-exact-pair",
];

/// An assembled fixture: the system under test, its default config, and
/// any companion systems its manifest compares against.
pub struct Fixture {
    pub id: &'static str,
    pub notes: &'static str,
    pub ifs: Ifs,
    pub config: CheckConfig,
    pub variants: Vec<(&'static str, Ifs)>,
}

fn compiled(spec: &ShiftSpec) -> Arc<CompiledShift> {
    Arc::new(compile_oracle(spec).expect("fixture shift compiles"))
}

fn word(s: &str) -> Word {
    Word::parse(s).unwrap()
}

/// The truncated block list of the 0^n 1^n system.
fn zeros_ones_generators(max_n: usize) -> ShiftSpec {
    let generators = (1..=max_n)
        .map(|n| Word::new([vec![0u8; n], vec![1u8; n]].concat()))
        .collect();
    ShiftSpec::CodedByWords { k: 2, generators }
}

/// The synchronized shift with growing return gaps: generators
/// `u0 w0^l s_1..s_l w0^l u0` with u0 = 000, w0 = 010 and s the
/// alternating-block stream, truncated at `l_max`.
fn gapped_generators(l_max: usize) -> ShiftSpec {
    let w0 = word("010");
    let w1 = word("101");
    let u0 = word("000");
    let mut sigma0 = Vec::new();
    let mut block = 1usize;
    while sigma0.len() < l_max {
        let w = if block % 2 == 1 { &w0 } else { &w1 };
        for _ in 0..block {
            sigma0.extend_from_slice(w.symbols());
        }
        block += 1;
    }
    let mut generators = Vec::new();
    for l in 1..=l_max {
        let mut g = Vec::new();
        g.extend_from_slice(u0.symbols());
        for _ in 0..l {
            g.extend_from_slice(w0.symbols());
        }
        g.extend_from_slice(&sigma0[..l]);
        for _ in 0..l {
            g.extend_from_slice(w0.symbols());
        }
        g.extend_from_slice(u0.symbols());
        generators.push(Word::new(g));
    }
    ShiftSpec::CodedByWords { k: 2, generators }
}

pub fn build_example(id: &str) -> Result<Fixture, FixtureError> {
    let fixture = match id {
        "golden-robot" => {
            let shift = compiled(&golden_shift());
            let ifs = Ifs::new(StateSpace::Line(LineSpace::step_pair(64)), shift)?;
            Fixture {
                id: "golden-robot",
                notes: "two arms stepping a mixture index up or down; the down arm never fires twice in a row",
                ifs,
                config: CheckConfig { word_horizon: 14, run_horizon: 2000, ..Default::default() },
                variants: Vec::new(),
            }
        }
        "ptt-not-tt" => {
            let shift = compiled(&ShiftSpec::full(3));
            let ifs = Ifs::new(
                StateSpace::Harmonic(crate::space::HarmonicSpace::new(24)),
                shift,
            )?;
            Fixture {
                id: "ptt-not-tt",
                notes: "harmonic ladder with three maps: transitive points exist but the pair ({1}, {1/2}) never connects",
                ifs,
                config: CheckConfig {
                    epsilon: q(1, 16),
                    word_horizon: 18,
                    run_horizon: 400,
                    candidates: vec![SetValue::HarmonicPoints([HarmonicPoint::Inv(2)].into())],
                    ..Default::default()
                },
                variants: Vec::new(),
            }
        }
        "doubling-sigma" => {
            let shift = compiled(&ShiftSpec::full(2));
            let (f0, f1) = crate::space::interval::shoulder_pair();
            let ifs = Ifs::new(
                StateSpace::Interval(IntervalSpace { maps: vec![f0, f1] }),
                shift.clone(),
            )?;
            // The designated start: the point whose binary digits are the
            // driving sequence itself, truncated past the horizon.
            let horizon = 5000usize;
            let digits = {
                let mut s = SigmaStream::new(StreamSpec::TransitiveEnum, shift)?;
                s.prefix(horizon + 64)?.to_vec()
            };
            let x0 = dyadic_from_digits(&digits);
            Fixture {
                id: "doubling-sigma",
                notes: "flat-shoulder halves of the doubling map driven by the itinerary of a transitive point",
                ifs,
                config: CheckConfig {
                    epsilon: q(1, 64),
                    word_horizon: 12,
                    run_horizon: horizon,
                    candidates: vec![SetValue::Intervals(IntervalSet::singleton(x0))],
                    ..Default::default()
                },
                variants: Vec::new(),
            }
        }
        "shift-inverse" => {
            let base = compiled(&ShiftSpec::coded(2, &["01", "10"]));
            let enlarged = compiled(&ShiftSpec::coded(2, &["01", "10", "0"]));
            let ifs = Ifs::new(StateSpace::TwoSidedShift, base)?;
            let variant = Ifs::new(StateSpace::TwoSidedShift, enlarged)?;
            let w_cyl = SetValue::Indexed(IndexedSet::one(TwoSidedCylinder::new(-1, word("000"))));
            let v_cyl = SetValue::Indexed(IndexedSet::one(TwoSidedCylinder::new(-1, word("111"))));
            Fixture {
                id: "shift-inverse",
                notes: "shift and inverse shift on two-sided sequences; balanced driving blocks pin the window near the origin",
                ifs,
                config: CheckConfig {
                    word_horizon: 14,
                    explicit_cover: Some(vec![w_cyl, v_cyl]),
                    ..Default::default()
                },
                variants: vec![("enlarged", variant)],
            }
        }
        "line-basic" => {
            let shift = compiled(&ShiftSpec::full(2));
            let ifs = Ifs::new(StateSpace::Line(LineSpace::step_pair(64)), shift)?;
            Fixture {
                id: "line-basic",
                notes: "full shift stepping an index line; the alternating power blocks drive a dense trajectory",
                ifs,
                config: CheckConfig { word_horizon: 14, run_horizon: 2000, ..Default::default() },
                variants: Vec::new(),
            }
        }
        "coded-0n1n" => {
            let shift = compiled(&zeros_ones_generators(12));
            let ifs = Ifs::new(StateSpace::Line(LineSpace::step_pair(64)), shift)?;
            Fixture {
                id: "coded-0n1n",
                notes: "balanced power blocks act as the identity, so the system is word-transitive yet no driving sequence has a dense trajectory",
                ifs,
                config: CheckConfig {
                    epsilon: q(1, 32),
                    word_horizon: 12,
                    run_horizon: 2000,
                    seed: 5,
                    ..Default::default()
                },
                variants: Vec::new(),
            }
        }
        "two-expanding" => {
            let shift = compiled(&ShiftSpec::full(2));
            let maps = vec![
                crate::space::interval::doubling_map(),
                crate::space::interval::tripling_map(),
            ];
            let ifs = Ifs::new(StateSpace::Interval(IntervalSpace { maps }), shift)?;
            Fixture {
                id: "two-expanding",
                notes:
                    "two expanding circle maps: every driving sequence admits a dense trajectory",
                ifs,
                config: CheckConfig {
                    epsilon: q(1, 16),
                    word_horizon: 12,
                    run_horizon: 800,
                    mixing_hi: 8,
                    seed: 3,
                    ..Default::default()
                },
                variants: Vec::new(),
            }
        }
        "nonsvgl" => {
            let shift = compiled(&gapped_generators(6));
            let ifs = Ifs::new(StateSpace::Line(LineSpace::step_pair(64)), shift)?;
            Fixture {
                id: "nonsvgl",
                notes: "marker blocks force ever longer detours between returns, so no uniform connecting gap exists",
                ifs,
                config: CheckConfig { word_horizon: 12, run_horizon: 1500, ..Default::default() },
                variants: Vec::new(),
            }
        }
        "leftdrift-full" => {
            let shift = compiled(&ShiftSpec::full(2));
            let ifs = Ifs::new(StateSpace::Line(LineSpace::step_pair(64)), shift)?;
            Fixture {
                id: "leftdrift-full",
                notes: "a transitive driving sequence padded with down-moves: the trajectory never climbs above its start",
                ifs,
                config: CheckConfig { run_horizon: 100_000, ..Default::default() },
                variants: Vec::new(),
            }
        }
        "markov-100-011-000" => {
            let shift = compiled(&ShiftSpec::coded(2, &["100", "011", "000"]));
            let ifs = Ifs::new(StateSpace::Line(LineSpace::step_pair(64)), shift)?;
            Fixture {
                id: "markov-100-011-000",
                notes: "block shift whose typical driving sequences drift right, leaving the dense drivers measure-null",
                ifs,
                config: CheckConfig { run_horizon: 2000, seed: 13, ..Default::default() },
                variants: Vec::new(),
            }
        }
        "prepend" => {
            let shift = compiled(&ShiftSpec::full(2));
            let ifs = Ifs::new(
                StateSpace::Cylinder {
                    family: CylinderFamily::Prepend,
                    max_depth: 24,
                },
                shift,
            )?;
            Fixture {
                id: "prepend",
                notes: "prepend maps: mixing as a word system, never mixing along any single driving sequence",
                ifs,
                config: CheckConfig { depth: 6, mixing_hi: 8, run_horizon: 60, seed: 17, ..Default::default() },
                variants: Vec::new(),
            }
        }
        "firstbit" => {
            let shift = compiled(&ShiftSpec::full(2));
            let ifs = Ifs::new(
                StateSpace::Cylinder {
                    family: CylinderFamily::FirstBit,
                    max_depth: 24,
                },
                shift,
            )?;
            Fixture {
                id: "firstbit",
                notes: "first-bit maps: each map has trivial dynamics alone, yet the system is exact along the permutation stream",
                ifs,
                config: CheckConfig { depth: 3, word_horizon: 10, run_horizon: 196, ..Default::default() },
                variants: Vec::new(),
            }
        }
        "pl-exact-pair" => {
            let shift = compiled(&ShiftSpec::sft(2, &["00", "11"]));
            let maps = vec![pl_pair::reference_f0(), pl_pair::reference_f1()];
            let ifs = Ifs::new(StateSpace::Interval(IntervalSpace { maps }), shift)?;
            Fixture {
                id: "pl-exact-pair",
                notes: "each map alone is exact, but the alternating driver shuttles a small window between two contracting traps",
                ifs,
                config: CheckConfig {
                    epsilon: q(1, 64),
                    word_horizon: 12,
                    run_horizon: 64,
                    mixing_hi: 8,
                    ..Default::default()
                },
                variants: Vec::new(),
            }
        }
        other => return Err(FixtureError::UnknownId(other.to_string())),
    };
    Ok(fixture)
}

fn dyadic_from_digits(digits: &[u8]) -> Q {
    use num_bigint::BigInt;
    use num_rational::BigRational;
    let mut num = BigInt::from(0);
    for &d in digits {
        num = (num << 1) + d;
    }
    BigRational::new(num, BigInt::from(1) << digits.len())
}

fn entry(property: &str, claim: &str, expected: &str, verdict: Verdict) -> ReportEntry {
    ReportEntry {
        property: property.to_string(),
        verdict,
        claim: Some(claim.to_string()),
        expected: Some(expected.to_string()),
        runtime_ms: None,
    }
}

fn bool_verdict(ok: bool, bound: u64, detail: String) -> Verdict {
    if ok {
        Verdict::verified(bound).with_evidence(detail)
    } else {
        Verdict::refuted(Witness::detail(detail))
    }
}

/// Run a fixture's manifest and return the comparison report. Exit status
/// 0 means every observed verdict matches its expected status.
pub fn run_example(id: &str) -> Result<Report, FixtureError> {
    let f = build_example(id)?;
    let mut report = Report::new(f.id, "reproduce", &f.config);
    match f.id {
        "golden-robot" => run_golden(&f, &mut report)?,
        "ptt-not-tt" => run_ptt(&f, &mut report)?,
        "doubling-sigma" => run_doubling_sigma(&f, &mut report)?,
        "shift-inverse" => run_shift_inverse(&f, &mut report)?,
        "line-basic" => run_line_basic(&f, &mut report)?,
        "coded-0n1n" => run_coded_0n1n(&f, &mut report)?,
        "two-expanding" => run_two_expanding(&f, &mut report)?,
        "nonsvgl" => run_nonsvgl(&f, &mut report)?,
        "leftdrift-full" => run_leftdrift(&f, &mut report)?,
        "markov-100-011-000" => run_markov(&f, &mut report)?,
        "prepend" => run_prepend(&f, &mut report)?,
        "firstbit" => run_firstbit(&f, &mut report)?,
        "pl-exact-pair" => run_pl_pair(&f, &mut report)?,
        _ => unreachable!(),
    }
    report.finish();
    Ok(report)
}

fn run_golden(f: &Fixture, report: &mut Report) -> Result<(), FixtureError> {
    report.push(entry(
        "irreducible",
        "any two admissible blocks are joinable by some connector",
        "verified",
        is_irreducible(&f.ifs.shift, f.config.word_horizon),
    ));
    report.push(entry(
        "svgl",
        "a uniform connecting gap of one symbol suffices",
        "verified",
        check_svgl(&f.ifs.shift, 4, 8),
    ));
    report.push(entry(
        "point_transitive",
        "a deep start climbs through every resolution cell",
        "verified",
        check_point_transitive(&f.ifs, &f.config)?,
    ));
    report.push(entry(
        "top_transitive",
        "no admissible word lowers the index by more than one, so downward pairs never connect",
        "refuted",
        check_topological_transitive(&f.ifs, &f.config)?,
    ));
    Ok(())
}

fn run_ptt(f: &Fixture, report: &mut Report) -> Result<(), FixtureError> {
    report.push(entry(
        "point_transitive",
        "the point 1/2 reaches every resolution cell",
        "verified",
        check_point_transitive(&f.ifs, &f.config)?,
    ));
    report.push(entry(
        "top_transitive",
        "the image of {1} is {1} under every map, so ({1}, {1/2}) never connects",
        "refuted",
        check_topological_transitive(&f.ifs, &f.config)?,
    ));
    report.push(entry(
        "top_transitive_along",
        "along any driving sequence the pair ({1}, {1/2}) stays disconnected",
        "refuted",
        check_along(
            &f.ifs,
            &StreamSpec::Walk {
                seed: f.config.seed,
            },
            AlongProperty::TopTransitive,
            &f.config,
        )?,
    ));
    Ok(())
}

fn run_doubling_sigma(f: &Fixture, report: &mut Report) -> Result<(), FixtureError> {
    let sigma = StreamSpec::TransitiveEnum;
    report.push(entry(
        "point_transitive_along",
        "the start whose binary digits are the driving sequence has a dense trajectory",
        "verified",
        s_membership(&f.ifs, &sigma, &f.config)?,
    ));
    report.push(entry(
        "top_transitive_along",
        "a cell caught on the flat shoulder collapses to a fixed endpoint and never crosses the middle",
        "refuted",
        check_along(&f.ifs, &sigma, AlongProperty::TopTransitive, &f.config)?,
    ));
    Ok(())
}

fn run_shift_inverse(f: &Fixture, report: &mut Report) -> Result<(), FixtureError> {
    report.push(entry(
        "top_transitive",
        "balanced driving blocks keep the window within two shifts of the origin, never clearing the opposite block",
        "refuted",
        check_topological_transitive(&f.ifs, &f.config)?,
    ));
    let enlarged = &f.variants[0].1;
    let mut cfg = f.config.clone();
    cfg.explicit_cover = f.config.explicit_cover.clone();
    report.push(entry(
        "top_transitive_enlarged",
        "adding the single-symbol generator unlocks unbounded shifts and connects the blocks",
        "verified",
        check_topological_transitive(enlarged, &cfg)?,
    ));
    report.push(entry(
        "irreducible",
        "the balanced block language is irreducible",
        "verified",
        is_irreducible(&f.ifs.shift, 8),
    ));
    Ok(())
}

fn run_line_basic(f: &Fixture, report: &mut Report) -> Result<(), FixtureError> {
    let sigma0 = StreamSpec::Sigma0 {
        w0: word("0"),
        w1: word("1"),
    };
    report.push(entry(
        "point_transitive",
        "full-shift words reach every resolution cell from a mid start",
        "verified",
        check_point_transitive(&f.ifs, &f.config)?,
    ));
    report.push(entry(
        "top_transitive",
        "any index displacement is realizable",
        "verified",
        check_topological_transitive(&f.ifs, &f.config)?,
    ));
    report.push(entry(
        "mixing",
        "index parity matches word length, so single-index pairs miss every other length",
        "refuted",
        check_mixing(&f.ifs, &f.config)?,
    ));
    report.push(entry(
        "point_transitive_along_sigma0",
        "the alternating power blocks oscillate with growing amplitude and visit every cell",
        "verified",
        s_membership(&f.ifs, &sigma0, &f.config)?,
    ));
    Ok(())
}

fn run_coded_0n1n(f: &Fixture, report: &mut Report) -> Result<(), FixtureError> {
    // Generator words act as the identity on interior points.
    let x0 = SetValue::LinePoints([crate::space::LinePoint::Idx(0)].into());
    let mut identity_ok = true;
    for n in 1..=6usize {
        let u = Word::new([vec![0u8; n], vec![1u8; n]].concat());
        let (img, boundary) = f.ifs.apply_word(&u, &x0)?;
        identity_ok &= !boundary && img == x0;
    }
    report.push(entry(
        "generator_identity",
        "each balanced block returns every interior point to itself, exactly",
        "verified",
        bool_verdict(
            identity_ok,
            6,
            "checked block sizes 1..=6 at the origin".into(),
        ),
    ));
    report.push(entry(
        "top_transitive",
        "pure power prefixes connect any two resolution cells",
        "verified",
        check_topological_transitive(&f.ifs, &f.config)?,
    ));
    report.push(entry(
        "point_transitive",
        "the word orbit of a mid start spans the cover",
        "verified",
        check_point_transitive(&f.ifs, &f.config)?,
    ));
    // Density along sampled driving sequences, at a finer resolution than
    // the largest block can span.
    let mut dense_cfg = f.config.clone();
    dense_cfg.epsilon = q(1, 128);
    let est = estimate_s_density(
        &f.ifs,
        &StreamSpec::Walk {
            seed: f.config.seed,
        },
        50,
        &dense_cfg,
    )?;
    report.push(entry(
        "s_density_zero",
        "no driving sequence has a dense trajectory: every excursion is bounded by the largest block",
        "verified",
        bool_verdict(
            est.verified == 0 && est.refuted == 50,
            50,
            format!(
                "50 samples: {} refuted, {} unknown, {} verified",
                est.refuted, est.unknown, est.verified
            ),
        ),
    ));
    Ok(())
}

fn run_two_expanding(f: &Fixture, report: &mut Report) -> Result<(), FixtureError> {
    report.push(entry(
        "top_transitive",
        "expansion spreads any cell across any other",
        "verified",
        check_topological_transitive(&f.ifs, &f.config)?,
    ));
    report.push(entry(
        "mixing",
        "once a cell covers the space it stays covering at every later length",
        "verified",
        check_mixing(&f.ifs, &f.config)?,
    ));
    report.push(entry(
        "exact",
        "pure doubling powers blow any cell up to the whole interval",
        "verified",
        check_exact(&f.ifs, &f.config)?,
    ));
    report.push(entry(
        "point_transitive",
        "a steered start visits every cell along the enumeration stream",
        "verified",
        check_point_transitive(&f.ifs, &f.config)?,
    ));
    let est = estimate_s_density(
        &f.ifs,
        &StreamSpec::Walk {
            seed: f.config.seed,
        },
        50,
        &f.config,
    )?;
    report.push(entry(
        "s_density_full",
        "every sampled driving sequence admits a dense trajectory",
        "verified",
        bool_verdict(
            est.verified == 50,
            50,
            format!("50 samples: {} verified", est.verified),
        ),
    ));
    Ok(())
}

fn run_nonsvgl(f: &Fixture, report: &mut Report) -> Result<(), FixtureError> {
    report.push(entry(
        "svgl_probe",
        "connector gaps grow with the block size, so small uniform bounds fail",
        "unknown",
        check_svgl(&f.ifs.shift, 4, 12),
    ));
    report.push(entry(
        "irreducible",
        "all blocks are joinable through the marker",
        "verified",
        is_irreducible(&f.ifs.shift, 10),
    ));
    // Gap growth: the worst shortest-connector gap over all word pairs
    // grows as longer blocks are admitted, so no uniform bound exists.
    let mut gaps = Vec::new();
    let mut growing = true;
    let mut prev = 0usize;
    for l_max in [2usize, 4, 6] {
        let truncated = compile_oracle(&gapped_generators(l_max))?;
        let worst = crate::shift::analysis::worst_connector_gap(&truncated, 10);
        let g = worst.unwrap_or(usize::MAX);
        growing &= g > prev;
        prev = g;
        gaps.push(format!("worst gap at block cutoff {l_max}: {g}"));
    }
    report.push(entry(
        "connector_gap_growth",
        "the worst shortest-connector gap grows with the admitted block size",
        "verified",
        bool_verdict(growing, 10, gaps.join("; ")),
    ));
    let sync = find_synchronizing_word(&f.ifs.shift, 8);
    report.push(entry(
        "synchronizing_word",
        "a short window after the marker pins the follower set",
        "verified",
        match sync {
            Some(w) => Verdict::verified(8).with_witness(Witness::word(w)),
            None => Verdict::unknown(),
        },
    ));
    Ok(())
}

fn run_leftdrift(f: &Fixture, report: &mut Report) -> Result<(), FixtureError> {
    let spec = StreamSpec::LeftDrift;
    report.push(entry(
        "s_membership",
        "the padded drops cancel every climb: the trajectory never exceeds its start",
        "refuted",
        s_membership(&f.ifs, &spec, &f.config)?,
    ));
    // Transitivity of the driving sequence itself: all short words occur.
    let mut stream = SigmaStream::new(spec, f.ifs.shift.clone())?;
    let prefix = stream.prefix(4000)?.to_vec();
    let mut all = true;
    for n in 1..=4usize {
        for w in f.ifs.shift.oracle.enumerate_words(n) {
            all &= crate::shift::stream::occurs_in(&prefix, &w);
        }
    }
    report.push(entry(
        "stream_transitive",
        "every short word occurs in the driving sequence",
        "verified",
        bool_verdict(
            all,
            4,
            "scanned words up to length 4 in the first 4000 symbols".into(),
        ),
    ));
    Ok(())
}

fn run_markov(f: &Fixture, report: &mut Report) -> Result<(), FixtureError> {
    // Parry samples: symbol-0 frequency near 2/3 across a seed batch.
    let len = 10_000usize;
    let tol_num = 45; // 3 * 1.5 / sqrt(10^4) = 0.045
    let mut ok = true;
    let mut worst = 0.0f64;
    for seed in 0..20u64 {
        let mut s = SigmaStream::new(StreamSpec::Markov { seed }, f.ifs.shift.clone())?;
        let p = s.prefix(len)?;
        let zeros = p.iter().filter(|&&x| x == 0).count();
        let freq = zeros as f64 / len as f64;
        let dev = (freq - 2.0 / 3.0).abs();
        worst = worst.max(dev);
        ok &= dev <= tol_num as f64 / 1000.0;
    }
    report.push(entry(
        "parry_zero_frequency",
        "max-entropy samples use each block a third of the time, so two thirds of the symbols are 0",
        "verified",
        bool_verdict(ok, 20, format!("20 seeds of length 10000; worst deviation {worst:.4}")),
    ));
    report.push(entry(
        "generator_identity",
        "opposite block powers cancel exactly on interior points",
        "verified",
        {
            let x0 = SetValue::LinePoints([crate::space::LinePoint::Idx(0)].into());
            let mut id_ok = true;
            for k in 1..=4usize {
                let u = word("100").repeat(k).concat(&word("011").repeat(k));
                let (img, boundary) = f.ifs.apply_word(&u, &x0)?;
                id_ok &= !boundary && img == x0;
            }
            bool_verdict(id_ok, 4, "checked k = 1..=4 at the origin".into())
        },
    ));
    report.push(entry(
        "sigma0_dense",
        "the alternating power blocks oscillate without bound and visit every cell",
        "verified",
        s_membership(
            &f.ifs,
            &StreamSpec::Sigma0 {
                w0: word("100"),
                w1: word("011"),
            },
            &f.config,
        )?,
    ));
    report.push(entry(
        "block_cycle_dense",
        "escalating balanced block pairs drive a dense trajectory",
        "verified",
        s_membership(
            &f.ifs,
            &StreamSpec::BlockCycle {
                w0: word("100"),
                w1: word("011"),
                k_max: 40,
            },
            &f.config,
        )?,
    ));
    let est = estimate_s_density(
        &f.ifs,
        &StreamSpec::Markov {
            seed: f.config.seed,
        },
        200,
        &f.config,
    )?;
    report.push(entry(
        "s_density_small",
        "typical samples drift right and their dense drivers make up at most five percent",
        "verified",
        bool_verdict(
            est.verified_fraction() <= 0.05,
            200,
            format!(
                "200 samples: {} verified, {} refuted, {} unknown",
                est.verified, est.refuted, est.unknown
            ),
        ),
    ));
    Ok(())
}

fn run_prepend(f: &Fixture, report: &mut Report) -> Result<(), FixtureError> {
    report.push(entry(
        "mixing",
        "any target block is reachable at every length past its own depth",
        "verified",
        check_mixing(&f.ifs, &f.config)?,
    ));
    report.push(entry(
        "point_transitive",
        "prepending the target block itself lands any start inside it",
        "verified",
        check_point_transitive(&f.ifs, &f.config)?,
    ));
    report.push(entry(
        "exact",
        "every map halves measure, so no image is ever the whole space",
        "refuted",
        check_exact(&f.ifs, &f.config)?,
    ));
    // Mixing along sampled driving sequences, against the block 100: a hit
    // at step n forces misses right after, for every sequence.
    let mut along_cfg = f.config.clone();
    along_cfg.explicit_cover = Some(vec![SetValue::Cylinders(CylinderSet::cylinder(word(
        "100",
    )))]);
    let mut all_refuted = true;
    for i in 0..20u64 {
        let v = check_along(
            &f.ifs,
            &StreamSpec::Walk {
                seed: f.config.seed + i,
            },
            AlongProperty::Mixing,
            &along_cfg,
        )?;
        all_refuted &= v.is_refuted();
    }
    report.push(entry(
        "mixing_along_sampled",
        "after reaching the block 100 the next step always misses, along every driving sequence",
        "verified",
        bool_verdict(all_refuted, 20, "20 sampled sequences, all refuted".into()),
    ));
    Ok(())
}

fn run_firstbit(f: &Fixture, report: &mut Report) -> Result<(), FixtureError> {
    let t = StreamSpec::Permutation { m_max: 2 };
    report.push(entry(
        "exact_along_permutation",
        "every starting block is stretched to the whole space along the permutation stream and stays there",
        "verified",
        check_along(&f.ifs, &t, AlongProperty::Exact, &f.config)?,
    ));
    report.push(entry(
        "exact",
        "the complementary word shifts any block away symbol by symbol, reaching the whole space",
        "verified",
        check_exact(&f.ifs, &f.config)?,
    ));
    report.push(entry(
        "mixing",
        "unions of images cover the space at every length",
        "verified",
        check_mixing(&f.ifs, &f.config)?,
    ));
    Ok(())
}

fn run_pl_pair(f: &Fixture, report: &mut Report) -> Result<(), FixtureError> {
    let rep = pl_pair::verify_pl_constraints(
        &pl_pair::reference_f0(),
        &pl_pair::reference_f1(),
        &pl_pair::reference_params(),
    );
    report.push(entry(
        "pl_constraints",
        "the reference pair satisfies the contraction-window constraint system",
        "verified",
        bool_verdict(
            rep.all_pass(),
            rep.constraints.len() as u64,
            rep.lines().join("; "),
        ),
    ));
    // Each map alone is exact at desk scale: every mesh cell covers within
    // a bounded number of iterates.
    let StateSpace::Interval(isp) = &f.ifs.space else {
        unreachable!()
    };
    let cells = build_cover(&f.ifs.space, &f.config)?;
    let mut single_ok = true;
    let mut worst_iter = 0usize;
    for (mi, map) in isp.maps.iter().enumerate() {
        for c in &cells {
            let SetValue::Intervals(start) = &c.value else {
                continue;
            };
            let mut cur = start.clone();
            let mut covered = false;
            for it in 1..=12usize {
                cur = map.image(&cur);
                if cur.is_unit() {
                    covered = true;
                    worst_iter = worst_iter.max(it);
                    break;
                }
            }
            single_ok &= covered;
            let _ = mi;
        }
    }
    report.push(entry(
        "single_maps_exact",
        "each map alone blows every mesh cell up to the whole interval within twelve iterates",
        "verified",
        bool_verdict(
            single_ok,
            12,
            format!("worst case {worst_iter} iterates at mesh 1/64"),
        ),
    ));
    // Shrinkage along the alternating drivers, with the exact per-period
    // ratio bound.
    let i0 = IntervalSet::interval(q(7, 64), q(9, 64));
    let mut widths = vec![i0.measure()];
    let mut cur = i0.clone();
    let mut ratio_ok = true;
    for period in 0..6usize {
        let (a, _) = f
            .ifs
            .apply_word(&word("01"), &SetValue::Intervals(cur.clone()))?;
        let SetValue::Intervals(next) = a else {
            unreachable!()
        };
        let w_prev = widths.last().unwrap().clone();
        let w_next = next.measure();
        ratio_ok &= w_next.clone() * q(16, 9) <= w_prev;
        widths.push(w_next);
        cur = next;
        let _ = period;
    }
    report.push(entry(
        "window_shrinks",
        "along the alternating driver the window contracts by at least the squared rate each period",
        "verified",
        bool_verdict(
            ratio_ok,
            6,
            format!(
                "widths: {}",
                widths.iter().map(q_display).collect::<Vec<_>>().join(" -> ")
            ),
        ),
    ));
    report.push(entry(
        "exact_along_0101",
        "a mesh cell inside the first window shrinks forever along the alternating driver",
        "refuted",
        check_along(
            &f.ifs,
            &StreamSpec::Periodic { word: word("01") },
            AlongProperty::Exact,
            &f.config,
        )?,
    ));
    report.push(entry(
        "exact_along_1010",
        "a mesh cell inside the second window shrinks forever along the opposite driver",
        "refuted",
        check_along(
            &f.ifs,
            &StreamSpec::Periodic { word: word("10") },
            AlongProperty::Exact,
            &f.config,
        )?,
    ));
    report.push(entry(
        "exact",
        "phase-breaking words escape the windows and expansion then covers the interval",
        "verified",
        check_exact(&f.ifs, &f.config)?,
    ));
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_id_is_an_error() {
        assert!(matches!(
            build_example("nope"),
            Err(FixtureError::UnknownId(_))
        ));
    }

    #[test]
    fn catalog_builds() {
        for id in FIXTURE_IDS {
            let f = build_example(id).unwrap();
            assert_eq!(f.id, id);
            f.config.validate().unwrap();
        }
    }

    #[test]
    fn golden_fixture_rejects_the_forbidden_block() {
        let f = build_example("golden-robot").unwrap();
        assert!(!f.ifs.shift.is_admissible(&word("11")).unwrap());
        assert!(f.ifs.shift.is_admissible(&word("0101")).unwrap());
    }

    #[test]
    fn fixture_builds_are_deterministic() {
        let a = build_example("markov-100-011-000").unwrap();
        let b = build_example("markov-100-011-000").unwrap();
        assert_eq!(
            a.ifs.shift.oracle.count_words(6),
            b.ifs.shift.oracle.count_words(6)
        );
        assert_eq!(a.config.seed, b.config.seed);
    }
}
