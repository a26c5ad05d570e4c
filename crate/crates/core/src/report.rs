//! The machine-readable report schema shared by the library, the fixture
//! manifests and the command-line tool.
//!
//! Reports round-trip losslessly through JSON and are byte-stable across
//! reruns with the same seed: nothing time- or environment-dependent goes
//! in unless explicitly requested.

use serde::{Deserialize, Serialize};

use crate::verdict::Verdict;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportEntry {
    pub property: String,
    pub verdict: Verdict,
    /// Self-contained statement of the claim this entry checks.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub claim: Option<String>,
    /// Expected status for reproduction runs ("verified" / "refuted" /
    /// "unknown").
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<String>,
    /// Wall-clock duration; only populated when timings are requested,
    /// so default reports stay byte-identical across runs.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<u64>,
}

impl ReportEntry {
    pub fn matches_expected(&self) -> bool {
        match &self.expected {
            Some(e) => e == self.verdict.status_name(),
            None => true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub tool_version: String,
    pub id: String,
    pub command: String,
    /// Echo of the effective configuration, including the seed.
    pub config: ConfigEcho,
    pub entries: Vec<ReportEntry>,
    pub exit_status: i32,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub epsilon: String,
    pub word_horizon: usize,
    pub run_horizon: usize,
    pub depth: usize,
    pub mixing_window: (usize, usize),
    pub seed: u64,
}

impl From<&crate::lab::CheckConfig> for ConfigEcho {
    fn from(cfg: &crate::lab::CheckConfig) -> Self {
        ConfigEcho {
            epsilon: crate::rational::q_display(&cfg.epsilon),
            word_horizon: cfg.word_horizon,
            run_horizon: cfg.run_horizon,
            depth: cfg.depth,
            mixing_window: (cfg.mixing_lo, cfg.mixing_hi),
            seed: cfg.seed,
        }
    }
}

impl Report {
    pub fn new(id: &str, command: &str, cfg: &crate::lab::CheckConfig) -> Self {
        Report {
            tool_version: TOOL_VERSION.to_string(),
            id: id.to_string(),
            command: command.to_string(),
            config: cfg.into(),
            entries: Vec::new(),
            exit_status: 0,
        }
    }

    pub fn push(&mut self, entry: ReportEntry) {
        self.entries.push(entry);
    }

    /// Exit-code contract: 0 all verified (or matching expectations),
    /// 2 any refuted (unexpected), 3 any unknown (unexpected), 1 errors.
    pub fn finish(&mut self) -> i32 {
        let all_expected = self.entries.iter().all(|e| e.matches_expected());
        let has_expectations = self.entries.iter().any(|e| e.expected.is_some());
        let status = if has_expectations {
            if all_expected {
                0
            } else if self
                .entries
                .iter()
                .any(|e| !e.matches_expected() && e.verdict.is_refuted())
            {
                2
            } else {
                3
            }
        } else if self.entries.iter().any(|e| e.verdict.is_refuted()) {
            2
        } else if self.entries.iter().any(|e| e.verdict.is_unknown()) {
            3
        } else {
            0
        };
        self.exit_status = status;
        status
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "{} v{} — {}\n",
            self.id, self.tool_version, self.command
        ));
        out.push_str(&format!(
            "config: eps={} L={} H={} depth={} window={:?} seed={}\n",
            self.config.epsilon,
            self.config.word_horizon,
            self.config.run_horizon,
            self.config.depth,
            self.config.mixing_window,
            self.config.seed
        ));
        for e in &self.entries {
            let mark = match &e.expected {
                Some(exp) if !e.matches_expected() => format!(" (expected {exp}!)"),
                Some(_) => " (as expected)".to_string(),
                None => String::new(),
            };
            out.push_str(&format!("  {:<28} {}{}\n", e.property, e.verdict, mark));
            if let Some(w) = &e.verdict.witness {
                if let Some(word) = &w.word {
                    out.push_str(&format!("      witness word: {word}\n"));
                }
                if let Some(p) = &w.point {
                    out.push_str(&format!("      witness: {p}\n"));
                }
                if let (Some(i), Some(j)) = (w.cell_from, w.cell_to) {
                    out.push_str(&format!("      witness pair: cells ({i}, {j})\n"));
                }
                if let Some(d) = &w.detail {
                    out.push_str(&format!("      {d}\n"));
                }
            }
            for line in &e.verdict.evidence {
                out.push_str(&format!("      | {line}\n"));
            }
        }
        out.push_str(&format!("exit: {}\n", self.exit_status));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verdict::{Verdict, Witness};

    #[test]
    fn json_round_trip_is_lossless() {
        let cfg = crate::lab::CheckConfig::default();
        let mut r = Report::new("demo", "check", &cfg);
        r.push(ReportEntry {
            property: "top_transitive".into(),
            verdict: Verdict::verified(12).with_evidence("all pairs"),
            claim: Some("pairs connect".into()),
            expected: Some("verified".into()),
            runtime_ms: None,
        });
        r.push(ReportEntry {
            property: "mixing".into(),
            verdict: Verdict::refuted(Witness::pair(0, 1)),
            claim: None,
            expected: None,
            runtime_ms: None,
        });
        r.finish();
        let json = r.to_json();
        let back = Report::from_json(&json).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.to_json(), json);
    }

    #[test]
    fn exit_codes_follow_the_contract() {
        let cfg = crate::lab::CheckConfig::default();
        let mut r = Report::new("demo", "check", &cfg);
        r.push(ReportEntry {
            property: "pt".into(),
            verdict: Verdict::verified(4),
            claim: None,
            expected: None,
            runtime_ms: None,
        });
        assert_eq!(r.finish(), 0);
        r.push(ReportEntry {
            property: "tt".into(),
            verdict: Verdict::unknown(),
            claim: None,
            expected: None,
            runtime_ms: None,
        });
        assert_eq!(r.finish(), 3);
        r.push(ReportEntry {
            property: "mix".into(),
            verdict: Verdict::refuted(Witness::detail("w")),
            claim: None,
            expected: None,
            runtime_ms: None,
        });
        assert_eq!(r.finish(), 2);
        // Expected refutations count as matches.
        let mut r2 = Report::new("demo", "reproduce", &cfg);
        r2.push(ReportEntry {
            property: "tt".into(),
            verdict: Verdict::refuted(Witness::detail("w")),
            claim: None,
            expected: Some("refuted".into()),
            runtime_ms: None,
        });
        assert_eq!(r2.finish(), 0);
    }
}
