//! Ground truth by recomputation: an attack is invariant when the extension set
//! of the expanded framework equals the original one. Nothing here looks at
//! labellings, so it checks the labelling predicates independently.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::af::{ArgumentId, ArgumentationFramework, Attack};
use crate::error::{Error, Result};
use crate::invariance::{BulletId, Classifier, Verdict};
use crate::par::{self, Execution};
use crate::semantics::{self, ExtensionSet, SemanticsId};

/// Largest `n` whose 2^(n²) attack relations are audited exhaustively.
pub const EXHAUSTIVE_AUDIT_LIMIT: usize = 3;
/// Sample count used when auditing larger `n` without an explicit count.
pub const DEFAULT_SAMPLES: usize = 1000;

/// Extensions lost and gained by adding `attack`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionDiff {
    pub lost: ExtensionSet,
    pub gained: ExtensionSet,
}

impl ExtensionDiff {
    pub fn is_empty(&self) -> bool {
        self.lost.is_empty() && self.gained.is_empty()
    }
}

pub fn extension_diff(
    af: &ArgumentationFramework,
    attack: &Attack,
    semantics: SemanticsId,
) -> Result<ExtensionDiff> {
    let expanded = af.add_attack(attack)?;
    diff_between(af, &expanded, semantics)
}

pub fn diff_between(
    before: &ArgumentationFramework,
    after: &ArgumentationFramework,
    semantics: SemanticsId,
) -> Result<ExtensionDiff> {
    if before.arguments() != after.arguments() {
        return Err(Error::ArgumentSetMismatch);
    }
    let old = semantics::extensions(before, semantics)?;
    let new = semantics::extensions(after, semantics)?;
    Ok(ExtensionDiff {
        lost: old.difference(&new),
        gained: new.difference(&old),
    })
}

pub fn oracle_invariant(
    af: &ArgumentationFramework,
    attack: &Attack,
    semantics: SemanticsId,
) -> Result<bool> {
    Ok(extension_diff(af, attack, semantics)?.is_empty())
}

/// Index-level variant used by searches that already hold `S_σ(G)`.
pub(crate) fn invariant_pair(
    af: &ArgumentationFramework,
    before: &ExtensionSet,
    source: usize,
    target: usize,
    semantics: SemanticsId,
) -> Result<bool> {
    let expanded = af.with_attack_indices(source, target);
    Ok(semantics::extensions(&expanded, semantics)? == *before)
}

/// A candidate attack on which the labelling predicate and the oracle disagree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscrepancyReport {
    pub framework: ArgumentationFramework,
    pub attack: Attack,
    pub semantics: SemanticsId,
    pub predicate_verdict: Verdict,
    pub predicate_bullets: Vec<BulletId>,
    pub oracle_verdict: bool,
    pub diff: ExtensionDiff,
}

#[derive(Debug, Clone, Serialize)]
pub struct NamedDiscrepancy<'a> {
    pub framework: &'a ArgumentationFramework,
    pub attack: &'a Attack,
    pub semantics: SemanticsId,
    pub predicate_verdict: Verdict,
    pub predicate_bullets: &'a [BulletId],
    pub oracle_verdict: bool,
    pub lost: Vec<Vec<ArgumentId>>,
    pub gained: Vec<Vec<ArgumentId>>,
}

impl DiscrepancyReport {
    pub fn to_named(&self) -> NamedDiscrepancy<'_> {
        NamedDiscrepancy {
            framework: &self.framework,
            attack: &self.attack,
            semantics: self.semantics,
            predicate_verdict: self.predicate_verdict,
            predicate_bullets: &self.predicate_bullets,
            oracle_verdict: self.oracle_verdict,
            lost: self.diff.lost.to_names(&self.framework),
            gained: self.diff.gained.to_names(&self.framework),
        }
    }
}

/// Compare the predicate with the oracle on every candidate attack of `af`.
pub fn cross_validate(
    af: &ArgumentationFramework,
    semantics: SemanticsId,
) -> Result<Vec<DiscrepancyReport>> {
    cross_validate_with(af, semantics, false)
}

pub fn cross_validate_with(
    af: &ArgumentationFramework,
    semantics: SemanticsId,
    use_preferred_only: bool,
) -> Result<Vec<DiscrepancyReport>> {
    let classifier = Classifier::new(af, semantics, use_preferred_only)?;
    let before = semantics::extensions(af, semantics)?;
    let mut reports = Vec::new();
    for (s, t) in af.candidate_pairs() {
        let predicted = classifier.classify_pair(s, t);
        let after = semantics::extensions(&af.with_attack_indices(s, t), semantics)?;
        let oracle = after == before;
        if predicted.verdict.is_invariant() != oracle {
            reports.push(DiscrepancyReport {
                framework: af.clone(),
                attack: predicted.attack.clone(),
                semantics,
                predicate_verdict: predicted.verdict,
                predicate_bullets: predicted.bullets(),
                oracle_verdict: oracle,
                diff: ExtensionDiff {
                    lost: before.difference(&after),
                    gained: after.difference(&before),
                },
            });
        }
    }
    Ok(reports)
}

/// Argument names `1..=n`.
pub fn canonical_names(n: usize) -> Vec<ArgumentId> {
    (1..=n)
        .map(|i| ArgumentId::new(i.to_string()).expect("digits are valid names"))
        .collect()
}

/// Framework on `canonical_names(n)` whose attack `(i, j)` is present iff bit
/// `i * n + j` of `code` is set.
pub fn framework_from_code(n: usize, code: u64) -> ArgumentationFramework {
    let pairs = (0..n * n)
        .filter(|bit| code >> bit & 1 == 1)
        .map(|bit| (bit / n, bit % n));
    ArgumentationFramework::from_index_attacks(canonical_names(n), pairs)
        .expect("indices are in range")
}

/// All 2^(n²) frameworks on `n` canonical arguments.
pub fn all_frameworks(n: usize) -> impl Iterator<Item = ArgumentationFramework> {
    assert!(n * n < 64, "too many attack relations to enumerate");
    (0u64..1u64 << (n * n)).map(move |code| framework_from_code(n, code))
}

/// Uniform sample over attack relations on `n` canonical arguments.
pub fn random_framework<R: Rng>(n: usize, rng: &mut R) -> ArgumentationFramework {
    let bits = n * n;
    let code = if bits == 0 {
        0
    } else if bits >= 64 {
        rng.gen::<u64>()
    } else {
        rng.gen::<u64>() & ((1u64 << bits) - 1)
    };
    framework_from_code(n, code)
}

/// `count` seeded uniform samples.
pub fn sample_frameworks(n: usize, count: usize, seed: u64) -> Vec<ArgumentationFramework> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_framework(n, &mut rng)).collect()
}

#[derive(Debug, Clone, Copy, Default)]
pub struct AuditOptions {
    pub seed: u64,
    /// Force random sampling with this many frameworks.
    pub samples: Option<usize>,
    pub use_preferred_only: bool,
    pub execution: Execution,
}

#[derive(Debug, Clone, Default)]
pub struct AuditReport {
    pub arguments: usize,
    pub semantics: Option<SemanticsId>,
    pub exhaustive: bool,
    pub seed: Option<u64>,
    pub frameworks: usize,
    pub candidates: usize,
    pub disagreements: usize,
    /// Predicate said non-invariant, oracle says invariant.
    pub false_alarms: usize,
    /// Predicate said invariant, oracle says not.
    pub misses: usize,
    /// Disagreement counts per matched condition; misses are counted under `none`.
    pub by_bullet: BTreeMap<String, usize>,
    pub reports: Vec<DiscrepancyReport>,
}

impl AuditReport {
    fn from_framework(af: &ArgumentationFramework, reports: Vec<DiscrepancyReport>) -> Self {
        let mut out = AuditReport {
            frameworks: 1,
            candidates: af.candidate_pairs().len(),
            disagreements: reports.len(),
            ..Default::default()
        };
        for r in &reports {
            if r.oracle_verdict {
                out.false_alarms += 1;
                for b in &r.predicate_bullets {
                    *out.by_bullet.entry(b.as_str().to_string()).or_default() += 1;
                }
            } else {
                out.misses += 1;
                *out.by_bullet.entry("none".to_string()).or_default() += 1;
            }
        }
        out.reports = reports;
        out
    }

    /// Associative merge of two partial reports.
    pub fn merge(mut self, other: AuditReport) -> AuditReport {
        self.frameworks += other.frameworks;
        self.candidates += other.candidates;
        self.disagreements += other.disagreements;
        self.false_alarms += other.false_alarms;
        self.misses += other.misses;
        for (k, v) in other.by_bullet {
            *self.by_bullet.entry(k).or_default() += v;
        }
        self.reports.extend(other.reports);
        self
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "arguments": self.arguments,
            "semantics": self.semantics,
            "mode": if self.exhaustive { "exhaustive" } else { "sampled" },
            "seed": self.seed,
            "frameworks": self.frameworks,
            "candidates": self.candidates,
            "disagreements": self.disagreements,
            "false_alarms": self.false_alarms,
            "misses": self.misses,
            "by_bullet": self.by_bullet,
            "reports": self.reports.iter().map(DiscrepancyReport::to_named).collect::<Vec<_>>(),
        })
    }
}

/// Cross-validate every framework on `n` arguments (or a seeded sample of them).
pub fn exhaustive_audit(
    n: usize,
    semantics: SemanticsId,
    options: &AuditOptions,
) -> Result<AuditReport> {
    let exhaustive = options.samples.is_none() && n <= EXHAUSTIVE_AUDIT_LIMIT;
    let frameworks: Vec<ArgumentationFramework> = if exhaustive {
        all_frameworks(n).collect()
    } else {
        sample_frameworks(n, options.samples.unwrap_or(DEFAULT_SAMPLES), options.seed)
    };
    let mut report = audit_frameworks(
        &frameworks,
        semantics,
        options.use_preferred_only,
        options.execution,
    )?;
    report.arguments = n;
    report.exhaustive = exhaustive;
    report.seed = (!exhaustive).then_some(options.seed);
    Ok(report)
}

pub fn audit_frameworks(
    frameworks: &[ArgumentationFramework],
    semantics: SemanticsId,
    use_preferred_only: bool,
    exec: Execution,
) -> Result<AuditReport> {
    let partial = par::map(exec, frameworks, |af| {
        cross_validate_with(af, semantics, use_preferred_only)
            .map(|r| AuditReport::from_framework(af, r))
    });
    let mut report = partial
        .into_iter()
        .try_fold(AuditReport::default(), |acc, r| r.map(|r| acc.merge(r)))?;
    report.semantics = Some(semantics);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g3() -> ArgumentationFramework {
        ArgumentationFramework::new(["1", "2", "3", "4"], [("1", "2"), ("2", "3")]).unwrap()
    }

    fn att(s: &str, t: &str) -> Attack {
        Attack::new(s, t).unwrap()
    }

    #[test]
    fn oracle_examples() {
        let g = g3();
        assert!(oracle_invariant(&g, &att("2", "2"), SemanticsId::Adm).unwrap());
        let d = extension_diff(&g, &att("4", "2"), SemanticsId::Adm).unwrap();
        assert!(d.gained.contains(g.set_of(["3", "4"]).unwrap()));
        for sem in SemanticsId::ALL {
            assert!(oracle_invariant(&g, &att("1", "2"), sem).unwrap());
        }
    }

    #[test]
    fn cross_validate_examples() {
        let g = g3();
        assert_eq!(g.candidate_pairs().len(), 14);
        assert!(cross_validate(&g, SemanticsId::Cf).unwrap().is_empty());
        assert!(
            cross_validate(&ArgumentationFramework::empty(), SemanticsId::Adm)
                .unwrap()
                .is_empty()
        );
    }

    #[test]
    fn frameworks_from_codes() {
        assert_eq!(all_frameworks(2).count(), 16);
        let af = framework_from_code(2, 0b0110);
        assert_eq!(af.attacks(), vec![att("1", "2"), att("2", "1")]);
        assert_eq!(framework_from_code(0, 0), ArgumentationFramework::empty());
    }

    #[test]
    fn audit_is_deterministic() {
        let opts = AuditOptions {
            seed: 42,
            samples: Some(30),
            ..Default::default()
        };
        let a = exhaustive_audit(4, SemanticsId::Cf, &opts).unwrap();
        let b = exhaustive_audit(4, SemanticsId::Cf, &opts).unwrap();
        assert_eq!(a.to_json(), b.to_json());
        assert_eq!(a.frameworks, 30);
    }

    #[test]
    fn tiny_cf_audit() {
        let r = exhaustive_audit(1, SemanticsId::Cf, &AuditOptions::default()).unwrap();
        assert_eq!(r.frameworks, 2);
        assert_eq!(r.candidates, 1);
        assert_eq!(r.disagreements, 0);
    }
}
