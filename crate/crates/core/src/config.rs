//! External configuration files (TOML): shift-space definitions, state
//! space / map-family configs, IFS assemblies and checker settings.

use std::path::{Path, PathBuf};

use serde::Deserialize;
use thiserror::Error;

use crate::lab::CheckConfig;
use crate::rational::{q, Q};
use crate::shift::{compile_oracle, LabeledGraph, ShiftSpec, Word};
use crate::space::{
    CylinderFamily, CylinderSet, FiniteTableSpace, HarmonicSpace, IndexedSet, IntervalSet,
    IntervalSpace, LinePoint, LineSpace, Piece, RationalPiecewiseMap, SetValue, StateSpace,
    TwoSidedCylinder,
};

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("io error on {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("parse error in {path}: {message}")]
    Parse { path: PathBuf, message: String },
    #[error("invalid config: {0}")]
    Invalid(String),
}

fn read(path: &Path) -> Result<String, ConfigError> {
    std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn parse_toml<T: serde::de::DeserializeOwned>(text: &str, path: &Path) -> Result<T, ConfigError> {
    toml::from_str(text).map_err(|e| ConfigError::Parse {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}

// ---------------------------------------------------------------- shift

/// On-disk shift description. Symbol strings use the characters '0'-'9'.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ShiftFile {
    pub kind: String,
    pub alphabet_size: u8,
    #[serde(default)]
    pub forbidden: Vec<String>,
    #[serde(default)]
    pub generators: Vec<String>,
    #[serde(default)]
    pub vertices: usize,
    /// (source, target, label-string)
    #[serde(default)]
    pub edges: Vec<(usize, usize, String)>,
}

pub fn shift_spec_from_str(text: &str, origin: &Path) -> Result<ShiftSpec, ConfigError> {
    let file: ShiftFile = parse_toml(text, origin)?;
    let words = |items: &[String]| -> Result<Vec<Word>, ConfigError> {
        items
            .iter()
            .map(|s| Word::parse(s).map_err(|e| ConfigError::Invalid(e.to_string())))
            .collect()
    };
    let spec = match file.kind.as_str() {
        "full" => ShiftSpec::Full {
            k: file.alphabet_size,
        },
        "sft" => ShiftSpec::ForbiddenSft {
            k: file.alphabet_size,
            forbidden: words(&file.forbidden)?,
        },
        "coded" => ShiftSpec::CodedByWords {
            k: file.alphabet_size,
            generators: words(&file.generators)?,
        },
        "graph" => {
            let mut edges = Vec::with_capacity(file.edges.len());
            for (s, t, label) in &file.edges {
                let w = Word::parse(label).map_err(|e| ConfigError::Invalid(e.to_string()))?;
                if w.len() != 1 {
                    return Err(ConfigError::Invalid(format!(
                        "edge label must be a single symbol, got {label:?}"
                    )));
                }
                edges.push((*s, *t, w.symbols()[0]));
            }
            ShiftSpec::SoficGraph {
                k: file.alphabet_size,
                graph: LabeledGraph {
                    vertices: file.vertices,
                    edges,
                },
            }
        }
        other => {
            return Err(ConfigError::Invalid(format!(
                "unknown shift kind {other:?}"
            )))
        }
    };
    spec.validate()
        .map_err(|e| ConfigError::Invalid(e.to_string()))?;
    Ok(spec)
}

pub fn load_shift_spec(path: &Path) -> Result<ShiftSpec, ConfigError> {
    shift_spec_from_str(&read(path)?, path)
}

// ---------------------------------------------------------------- space

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceFile {
    pub kind: String,
    #[serde(default)]
    pub n: i64,
    /// Named map family, per kind:
    /// line: "step" (or give `displacements`); interval: "doubling",
    /// "two_expanding", "shoulder_pair", "contracting_pair";
    /// cylinder: "prepend" | "firstbit".
    #[serde(default)]
    pub family: String,
    #[serde(default)]
    pub displacements: Vec<i64>,
    #[serde(default)]
    pub max_depth: usize,
    /// Interval maps given inline: one map per entry, each a list of
    /// pieces [l_num, l_den, r_num, r_den, a_num, a_den, b_num, b_den].
    #[serde(default)]
    pub pieces: Vec<Vec<[i64; 8]>>,
    #[serde(default)]
    pub continuous: bool,
    /// Interval maps loaded from piecewise-map files.
    #[serde(default)]
    pub map_files: Vec<String>,
    /// Finite table space.
    #[serde(default)]
    pub size: usize,
    #[serde(default)]
    pub tables: Vec<Vec<usize>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PiecewiseMapFile {
    #[serde(default)]
    pub continuous: bool,
    /// [l_num, l_den, r_num, r_den, a_num, a_den, b_num, b_den]
    pub pieces: Vec<[i64; 8]>,
}

fn pieces_from_rows(
    rows: &[[i64; 8]],
    continuous: bool,
) -> Result<RationalPiecewiseMap, ConfigError> {
    let pieces = rows
        .iter()
        .map(|r| Piece {
            lo: q(r[0], r[1]),
            hi: q(r[2], r[3]),
            a: q(r[4], r[5]),
            b: q(r[6], r[7]),
        })
        .collect();
    RationalPiecewiseMap::new(pieces, continuous).map_err(|e| ConfigError::Invalid(e.to_string()))
}

pub fn load_piecewise_map(path: &Path) -> Result<RationalPiecewiseMap, ConfigError> {
    let file: PiecewiseMapFile = parse_toml(&read(path)?, path)?;
    pieces_from_rows(&file.pieces, file.continuous)
}

pub fn space_from_str(text: &str, origin: &Path) -> Result<StateSpace, ConfigError> {
    let file: SpaceFile = parse_toml(text, origin)?;
    let base = origin.parent().map(Path::to_path_buf).unwrap_or_default();
    match file.kind.as_str() {
        "line" => {
            let disp = if !file.displacements.is_empty() {
                file.displacements.clone()
            } else {
                match file.family.as_str() {
                    "" | "step" => vec![1, -1],
                    other => {
                        return Err(ConfigError::Invalid(format!(
                            "unknown line family {other:?}"
                        )))
                    }
                }
            };
            if file.n < 1 {
                return Err(ConfigError::Invalid("line space needs n >= 1".into()));
            }
            Ok(StateSpace::Line(LineSpace::new(file.n, disp)))
        }
        "harmonic" => {
            if file.n < 4 || file.n % 2 != 0 {
                return Err(ConfigError::Invalid(
                    "harmonic space needs even n >= 4".into(),
                ));
            }
            Ok(StateSpace::Harmonic(HarmonicSpace::new(file.n as u32)))
        }
        "interval" => {
            let mut maps: Vec<RationalPiecewiseMap> = Vec::new();
            match file.family.as_str() {
                "" => {}
                "doubling" => maps.push(crate::space::interval::doubling_map()),
                "two_expanding" => {
                    maps.push(crate::space::interval::doubling_map());
                    maps.push(crate::space::interval::tripling_map());
                }
                "shoulder_pair" => {
                    let (f0, f1) = crate::space::interval::shoulder_pair();
                    maps.push(f0);
                    maps.push(f1);
                }
                "contracting_pair" => {
                    maps.push(crate::space::pl_pair::reference_f0());
                    maps.push(crate::space::pl_pair::reference_f1());
                }
                other => {
                    return Err(ConfigError::Invalid(format!(
                        "unknown interval family {other:?}"
                    )))
                }
            }
            for rows in &file.pieces {
                maps.push(pieces_from_rows(rows, file.continuous)?);
            }
            for mf in &file.map_files {
                maps.push(load_piecewise_map(&base.join(mf))?);
            }
            if maps.is_empty() {
                return Err(ConfigError::Invalid("interval space has no maps".into()));
            }
            Ok(StateSpace::Interval(IntervalSpace { maps }))
        }
        "cylinder" => {
            let family = match file.family.as_str() {
                "prepend" => CylinderFamily::Prepend,
                "firstbit" => CylinderFamily::FirstBit,
                other => {
                    return Err(ConfigError::Invalid(format!(
                        "unknown cylinder family {other:?}"
                    )))
                }
            };
            let max_depth = if file.max_depth == 0 {
                12
            } else {
                file.max_depth
            };
            Ok(StateSpace::Cylinder { family, max_depth })
        }
        "two_sided" => Ok(StateSpace::TwoSidedShift),
        "finite" => {
            let sp = FiniteTableSpace::new(file.size, file.tables.clone())
                .map_err(|e| ConfigError::Invalid(e.to_string()))?;
            Ok(StateSpace::FiniteTable(sp))
        }
        other => Err(ConfigError::Invalid(format!(
            "unknown space kind {other:?}"
        ))),
    }
}

pub fn load_space(path: &Path) -> Result<StateSpace, ConfigError> {
    space_from_str(&read(path)?, path)
}

// ------------------------------------------------------------- assembly

/// IFS assembly: paths to a shift file and a space file (relative to the
/// assembly file), with an optional stack of extra piecewise map files.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AssemblyFile {
    pub shift: String,
    pub space: String,
    #[serde(default)]
    pub maps: Vec<String>,
}

pub fn load_ifs(path: &Path) -> Result<crate::engine::Ifs, ConfigError> {
    let file: AssemblyFile = parse_toml(&read(path)?, path)?;
    let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
    let spec = load_shift_spec(&base.join(&file.shift))?;
    let mut space = load_space(&base.join(&file.space))?;
    if !file.maps.is_empty() {
        let StateSpace::Interval(isp) = &mut space else {
            return Err(ConfigError::Invalid(
                "map overrides need an interval space".into(),
            ));
        };
        isp.maps.clear();
        for mf in &file.maps {
            isp.maps.push(load_piecewise_map(&base.join(mf))?);
        }
    }
    let shift = compile_oracle(&spec).map_err(|e| ConfigError::Invalid(e.to_string()))?;
    crate::engine::Ifs::new(space, std::sync::Arc::new(shift))
        .map_err(|e| ConfigError::Invalid(e.to_string()))
}

// ------------------------------------------------------------- checker

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckFile {
    /// epsilon as [numerator, denominator]
    #[serde(default)]
    pub epsilon: Option<[i64; 2]>,
    #[serde(default)]
    pub word_horizon: Option<usize>,
    #[serde(default)]
    pub run_horizon: Option<usize>,
    #[serde(default)]
    pub depth: Option<usize>,
    #[serde(default)]
    pub mixing_window: Option<[usize; 2]>,
    #[serde(default)]
    pub seed: Option<u64>,
    /// Explicit cover cells overriding the default mesh (required for
    /// two-sided spaces).
    #[serde(default)]
    pub cover: Vec<CoverCellFile>,
}

/// One explicit cover cell, by space kind.
#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum CoverCellFile {
    /// Closed interval with rational endpoints.
    Interval { lo: [i64; 2], hi: [i64; 2] },
    /// One-sided cylinder by its prefix word.
    Cylinder { prefix: String },
    /// Indexed two-sided cylinder.
    Indexed { start: i64, word: String },
    /// Contiguous band of line indices.
    LineRange { lo: i64, hi: i64 },
}

fn cover_cell(file: &CoverCellFile) -> Result<SetValue, ConfigError> {
    Ok(match file {
        CoverCellFile::Interval { lo, hi } => {
            if lo[1] == 0 || hi[1] == 0 {
                return Err(ConfigError::Invalid(
                    "interval cell with zero denominator".into(),
                ));
            }
            SetValue::Intervals(IntervalSet::interval(q(lo[0], lo[1]), q(hi[0], hi[1])))
        }
        CoverCellFile::Cylinder { prefix } => {
            let w = Word::parse(prefix).map_err(|e| ConfigError::Invalid(e.to_string()))?;
            SetValue::Cylinders(CylinderSet::cylinder(w))
        }
        CoverCellFile::Indexed { start, word } => {
            let w = Word::parse(word).map_err(|e| ConfigError::Invalid(e.to_string()))?;
            if w.is_empty() {
                return Err(ConfigError::Invalid(
                    "indexed cell needs a non-empty word".into(),
                ));
            }
            SetValue::Indexed(IndexedSet::one(TwoSidedCylinder::new(*start, w)))
        }
        CoverCellFile::LineRange { lo, hi } => {
            if lo > hi {
                return Err(ConfigError::Invalid("line range is inverted".into()));
            }
            SetValue::LinePoints((*lo..=*hi).map(LinePoint::Idx).collect())
        }
    })
}

pub fn check_config_from_str(text: &str, origin: &Path) -> Result<CheckConfig, ConfigError> {
    let file: CheckFile = parse_toml(text, origin)?;
    let mut cfg = CheckConfig::default();
    apply_check_file(&mut cfg, &file)?;
    Ok(cfg)
}

pub fn apply_check_file(cfg: &mut CheckConfig, file: &CheckFile) -> Result<(), ConfigError> {
    if let Some([n, d]) = file.epsilon {
        if d == 0 {
            return Err(ConfigError::Invalid("epsilon denominator is zero".into()));
        }
        cfg.epsilon = q(n, d);
    }
    if let Some(l) = file.word_horizon {
        cfg.word_horizon = l;
    }
    if let Some(h) = file.run_horizon {
        cfg.run_horizon = h;
    }
    if let Some(d) = file.depth {
        cfg.depth = d;
    }
    if let Some([lo, hi]) = file.mixing_window {
        cfg.mixing_lo = lo;
        cfg.mixing_hi = hi;
    }
    if let Some(s) = file.seed {
        cfg.seed = s;
    }
    if !file.cover.is_empty() {
        let cells: Result<Vec<SetValue>, ConfigError> = file.cover.iter().map(cover_cell).collect();
        cfg.explicit_cover = Some(cells?);
    }
    cfg.validate()
        .map_err(|e| ConfigError::Invalid(e.to_string()))?;
    Ok(())
}

pub fn load_check_config(path: &Path) -> Result<CheckConfig, ConfigError> {
    check_config_from_str(&read(path)?, path)
}

/// Parse `NUM/DEN` as used by command-line flags.
pub fn parse_epsilon(s: &str) -> Result<Q, ConfigError> {
    crate::rational::q_parse(s)
        .filter(|x| *x > q(0, 1))
        .ok_or_else(|| ConfigError::Invalid(format!("bad epsilon {s:?}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> PathBuf {
        PathBuf::from("inline.toml")
    }

    #[test]
    fn golden_shift_file_parses() {
        let spec = shift_spec_from_str(
            "kind = \"sft\"\nalphabet_size = 2\nforbidden = [\"11\"]\n",
            &p(),
        )
        .unwrap();
        assert_eq!(spec, crate::shift::golden_shift());
    }

    #[test]
    fn empty_forbidden_word_fails() {
        let r = shift_spec_from_str(
            "kind = \"sft\"\nalphabet_size = 2\nforbidden = [\"\"]\n",
            &p(),
        );
        assert!(r.is_err());
    }

    #[test]
    fn graph_shift_file_parses() {
        let spec = shift_spec_from_str(
            "kind = \"graph\"\nalphabet_size = 2\nvertices = 2\nedges = [[0, 0, \"0\"], [0, 1, \"1\"], [1, 0, \"0\"]]\n",
            &p(),
        )
        .unwrap();
        let shift = compile_oracle(&spec).unwrap();
        assert_eq!(shift.oracle.count_words(4), vec![1, 2, 3, 5, 8]);
    }

    #[test]
    fn line_space_file_parses() {
        let sp = space_from_str("kind = \"line\"\nn = 16\nfamily = \"step\"\n", &p()).unwrap();
        assert!(matches!(sp, StateSpace::Line(_)));
    }

    #[test]
    fn interval_pieces_parse() {
        let sp = space_from_str(
            "kind = \"interval\"\npieces = [[[0,1, 1,2, 2,1, 0,1], [1,2, 1,1, 2,1, -1,1]]]\n",
            &p(),
        )
        .unwrap();
        let StateSpace::Interval(isp) = sp else {
            panic!()
        };
        assert_eq!(isp.maps.len(), 1);
        assert!(isp.maps[0].is_surjective());
    }

    #[test]
    fn assembly_files_load_whole_systems() {
        let dir = std::env::temp_dir().join("ifs-lab-assembly-test");
        std::fs::create_dir_all(&dir).unwrap();
        std::fs::write(
            dir.join("shift.toml"),
            "kind = \"sft\"\nalphabet_size = 2\nforbidden = [\"11\"]\n",
        )
        .unwrap();
        std::fs::write(dir.join("space.toml"), "kind = \"line\"\nn = 8\n").unwrap();
        std::fs::write(
            dir.join("system.toml"),
            "shift = \"shift.toml\"\nspace = \"space.toml\"\n",
        )
        .unwrap();
        let ifs = load_ifs(&dir.join("system.toml")).unwrap();
        assert_eq!(ifs.shift.alphabet().size(), 2);
        assert!(matches!(ifs.space, StateSpace::Line(_)));
    }

    #[test]
    fn explicit_cover_cells_parse() {
        let cfg = check_config_from_str(
            "word_horizon = 14\n\n[[cover]]\nkind = \"indexed\"\nstart = -1\nword = \"000\"\n\n[[cover]]\nkind = \"indexed\"\nstart = -1\nword = \"111\"\n",
            &p(),
        )
        .unwrap();
        let cells = cfg.explicit_cover.unwrap();
        assert_eq!(cells.len(), 2);
        assert!(matches!(cells[0], SetValue::Indexed(_)));
    }

    #[test]
    fn check_file_overrides_defaults() {
        let cfg = check_config_from_str("epsilon = [1, 32]\nword_horizon = 10\nseed = 42\n", &p())
            .unwrap();
        assert_eq!(cfg.epsilon, q(1, 32));
        assert_eq!(cfg.word_horizon, 10);
        assert_eq!(cfg.seed, 42);
        assert_eq!(cfg.run_horizon, CheckConfig::default().run_horizon);
    }
}
