//! The hierarchy audit: exactness implies mixing implies topological
//! transitivity implies point transitivity. A stronger property VERIFIED
//! next to a weaker one REFUTED on the same evidence base is a soundness
//! bug and gets flagged; UNKNOWN never flags.

use crate::verdict::Verdict;

/// Property names ordered strongest first.
const CHAIN: [&str; 4] = ["exact", "mixing", "top_transitive", "point_transitive"];

#[derive(Clone, Debug)]
pub struct AuditInput {
    /// Canonical property name: one of the chain above, optionally with
    /// an `_along` suffix for along-orbit variants (audited as their own
    /// chain).
    pub property: String,
    pub verdict: Verdict,
}

fn chain_rank(property: &str) -> Option<(usize, bool)> {
    let (base, along) = match property.strip_suffix("_along") {
        Some(b) => (b, true),
        None => (property, false),
    };
    CHAIN.iter().position(|&p| p == base).map(|r| (r, along))
}

/// Returns the flag lines; empty means the verdict set is consistent with
/// the implication chain.
pub fn hierarchy_audit(inputs: &[AuditInput]) -> Vec<String> {
    let mut flags = Vec::new();
    for a in inputs {
        let Some((ra, along_a)) = chain_rank(&a.property) else {
            continue;
        };
        if !a.verdict.is_verified() {
            continue;
        }
        for b in inputs {
            let Some((rb, along_b)) = chain_rank(&b.property) else {
                continue;
            };
            if along_a != along_b {
                continue;
            }
            // b is weaker (larger rank) yet refuted while a (stronger) is
            // verified: the chain only runs downward, so this is a flag.
            if rb > ra && b.verdict.is_refuted() {
                flags.push(format!(
                    "hierarchy violation: {} verified but weaker {} refuted",
                    a.property, b.property
                ));
            }
        }
    }
    flags
}
