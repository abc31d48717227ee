//! Labelling-based predicates deciding whether adding one attack leaves the
//! conflict-free or admissible extension sets unchanged.
//!
//! Each predicate reports every (labelling, condition) pair that rules the
//! addition out, so a verdict can be explained the same way it was derived.
//! An attack with no witnesses is invariant.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::af::{ArgSet, ArgumentId, ArgumentationFramework, Attack};
use crate::error::{Error, Result};
use crate::labelling::{self, Labelling};
use crate::par::{self, Execution};
use crate::semantics::{self, ExtensionSet, SemanticsId};

/// Conditions that make an attack addition change the extension set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum BulletId {
    /// The endpoints are not already in conflict.
    #[serde(rename = "CF-existing-conflict")]
    CfExistingConflict,
    /// Both endpoints are credulously accepted under cf.
    #[serde(rename = "CF-never-in")]
    CfNeverIn,
    #[serde(rename = "ND-in-in")]
    NdInIn,
    #[serde(rename = "ND-out-in-undefended")]
    NdOutInUndefended,
    #[serde(rename = "ND-undec-in")]
    NdUndecIn,
    #[serde(rename = "NI-in-in-defends")]
    NiInInDefends,
    #[serde(rename = "NI-in-out-reinstates")]
    NiInOutReinstates,
    #[serde(rename = "NI-in-undec-defends-undec")]
    NiInUndecDefendsUndec,
    #[serde(rename = "NI-out-self-defense")]
    NiOutSelfDefense,
}

impl BulletId {
    pub const ALL: [BulletId; 9] = [
        BulletId::CfExistingConflict,
        BulletId::CfNeverIn,
        BulletId::NdInIn,
        BulletId::NdOutInUndefended,
        BulletId::NdUndecIn,
        BulletId::NiInInDefends,
        BulletId::NiInOutReinstates,
        BulletId::NiInUndecDefendsUndec,
        BulletId::NiOutSelfDefense,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            BulletId::CfExistingConflict => "CF-existing-conflict",
            BulletId::CfNeverIn => "CF-never-in",
            BulletId::NdInIn => "ND-in-in",
            BulletId::NdOutInUndefended => "ND-out-in-undefended",
            BulletId::NdUndecIn => "ND-undec-in",
            BulletId::NiInInDefends => "NI-in-in-defends",
            BulletId::NiInOutReinstates => "NI-in-out-reinstates",
            BulletId::NiInUndecDefendsUndec => "NI-in-undec-defends-undec",
            BulletId::NiOutSelfDefense => "NI-out-self-defense",
        }
    }

    /// Conditions whose match means an existing extension is lost.
    pub fn breaks_non_decreasing(self) -> bool {
        matches!(
            self,
            BulletId::CfExistingConflict
                | BulletId::CfNeverIn
                | BulletId::NdInIn
                | BulletId::NdOutInUndefended
                | BulletId::NdUndecIn
        )
    }
}

impl fmt::Display for BulletId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Invariant,
    BreaksNonDecreasing,
    BreaksNonIncreasing,
    BreaksBoth,
}

impl Verdict {
    pub fn is_invariant(self) -> bool {
        self == Verdict::Invariant
    }

    fn from_flags(non_decreasing_broken: bool, non_increasing_broken: bool) -> Self {
        match (non_decreasing_broken, non_increasing_broken) {
            (false, false) => Verdict::Invariant,
            (true, false) => Verdict::BreaksNonDecreasing,
            (false, true) => Verdict::BreaksNonIncreasing,
            (true, true) => Verdict::BreaksBoth,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Invariant => "invariant",
            Verdict::BreaksNonDecreasing => "breaks_non_decreasing",
            Verdict::BreaksNonIncreasing => "breaks_non_increasing",
            Verdict::BreaksBoth => "breaks_both",
        })
    }
}

/// One matched condition: the in-set of the labelling it was found on, and the
/// auxiliary argument `c` when the condition quantifies over one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Witness {
    pub in_set: ArgSet,
    pub bullet: BulletId,
    pub pivot: Option<usize>,
}

impl Witness {
    pub fn to_named(&self, af: &ArgumentationFramework) -> NamedWitness {
        NamedWitness {
            in_set: af.names_of(self.in_set),
            bullet: self.bullet,
            pivot: self.pivot.map(|c| af.name(c).clone()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedWitness {
    pub in_set: Vec<ArgumentId>,
    pub bullet: BulletId,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub pivot: Option<ArgumentId>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AttackClassification {
    pub attack: Attack,
    pub semantics: SemanticsId,
    pub verdict: Verdict,
    pub witnesses: Vec<Witness>,
}

impl AttackClassification {
    pub fn bullets(&self) -> Vec<BulletId> {
        let mut bullets: Vec<BulletId> = self.witnesses.iter().map(|w| w.bullet).collect();
        bullets.sort();
        bullets.dedup();
        bullets
    }

    pub fn has_bullet(&self, bullet: BulletId) -> bool {
        self.witnesses.iter().any(|w| w.bullet == bullet)
    }
}

/// `S ⊑ S2`: every member of `S` is contained in some member of `S2`.
pub fn extension_set_included(s: &ExtensionSet, s2: &ExtensionSet) -> bool {
    s.iter().all(|e| s2.iter().any(|e2| e.is_subset(e2)))
}

/// Standard equivalence: equal extension sets.
pub fn sigma_equivalent(
    af: &ArgumentationFramework,
    other: &ArgumentationFramework,
    semantics: SemanticsId,
) -> Result<bool> {
    if af.arguments() != other.arguments() {
        return Err(Error::ArgumentSetMismatch);
    }
    Ok(semantics::extensions(af, semantics)? == semantics::extensions(other, semantics)?)
}

fn require_cf_or_adm(semantics: SemanticsId, operation: &'static str) -> Result<()> {
    match semantics {
        SemanticsId::Cf | SemanticsId::Adm => Ok(()),
        _ => Err(Error::UnsupportedSemantics {
            semantics,
            operation,
        }),
    }
}

/// Precomputed per-framework data shared by every candidate classification.
#[derive(Debug, Clone)]
pub struct Classifier<'a> {
    af: &'a ArgumentationFramework,
    semantics: SemanticsId,
    /// Credulously accepted arguments under cf.
    cf_in: ArgSet,
    labellings: Vec<Labelling>,
    /// `odd[v]`: arguments reachable from `v` by an odd-length walk.
    odd: Vec<ArgSet>,
}

impl<'a> Classifier<'a> {
    /// `use_preferred_only` restricts the admissible scans to labellings with a
    /// maximal in-set. Ignored for cf.
    pub fn new(
        af: &'a ArgumentationFramework,
        semantics: SemanticsId,
        use_preferred_only: bool,
    ) -> Result<Self> {
        require_cf_or_adm(semantics, "attack classification")?;
        let mut classifier = Classifier {
            af,
            semantics,
            cf_in: ArgSet::EMPTY,
            labellings: Vec::new(),
            odd: Vec::new(),
        };
        match semantics {
            SemanticsId::Cf => {
                classifier.cf_in = labelling::credulous_sets(af, SemanticsId::Cf)?.in_args;
            }
            _ => {
                classifier.labellings = admissible_labellings(af, use_preferred_only)?;
                classifier.odd = (0..af.len()).map(|v| af.odd_reach(v)).collect();
            }
        }
        Ok(classifier)
    }

    pub fn labellings(&self) -> &[Labelling] {
        &self.labellings
    }

    pub fn classify_pair(&self, source: usize, target: usize) -> AttackClassification {
        let (verdict, witnesses) = if self.af.has_attack(source, target) {
            (Verdict::Invariant, Vec::new())
        } else {
            match self.semantics {
                SemanticsId::Cf => self.cf_scan(source, target),
                _ => {
                    let nd = non_decreasing_scan(self.af, source, target, &self.labellings);
                    let ni =
                        non_increasing_scan(self.af, &self.odd, source, target, &self.labellings);
                    let verdict = Verdict::from_flags(!nd.is_empty(), !ni.is_empty());
                    (verdict, nd.into_iter().chain(ni).collect())
                }
            }
        };
        AttackClassification {
            attack: self.af.attack_at(source, target),
            semantics: self.semantics,
            verdict,
            witnesses,
        }
    }

    fn cf_scan(&self, a: usize, b: usize) -> (Verdict, Vec<Witness>) {
        let conflict = self.af.has_attack(a, b) || self.af.has_attack(b, a);
        let never_in = !self.cf_in.contains(a) || !self.cf_in.contains(b);
        if conflict || never_in {
            return (Verdict::Invariant, Vec::new());
        }
        // {a, b} (or {a} when a = b) is conflict-free now and stops being so.
        let lost = ArgSet::singleton(a).with(b);
        let witnesses = [BulletId::CfExistingConflict, BulletId::CfNeverIn]
            .into_iter()
            .map(|bullet| Witness {
                in_set: lost,
                bullet,
                pivot: None,
            })
            .collect();
        (Verdict::BreaksNonDecreasing, witnesses)
    }
}

/// Labellings of the admissible sets, optionally only those with maximal in-set.
pub fn admissible_labellings(
    af: &ArgumentationFramework,
    preferred_only: bool,
) -> Result<Vec<Labelling>> {
    let admissible = semantics::admissible_sets(af)?;
    let sets = if preferred_only {
        semantics::preferred_sets(af)?
    } else {
        admissible
    };
    Ok(sets
        .iter()
        .map(|e| labelling::extension_labelling(af, e))
        .collect())
}

fn non_decreasing_scan(
    af: &ArgumentationFramework,
    a: usize,
    b: usize,
    labellings: &[Labelling],
) -> Vec<Witness> {
    let mut out = Vec::new();
    for l in labellings {
        let (ins, outs, undecs) = (l.in_set(), l.out_set(), l.undec_set());
        if !ins.contains(b) {
            continue;
        }
        let mut push = |bullet| {
            out.push(Witness {
                in_set: ins,
                bullet,
                pivot: None,
            })
        };
        if ins.contains(a) {
            push(BulletId::NdInIn);
        }
        if outs.contains(a) && !af.has_attack(b, a) && !af.attackers_of(b).intersects(outs) {
            push(BulletId::NdOutInUndefended);
        }
        if undecs.contains(a) {
            push(BulletId::NdUndecIn);
        }
    }
    out
}

fn non_increasing_scan(
    af: &ArgumentationFramework,
    odd: &[ArgSet],
    a: usize,
    b: usize,
    labellings: &[Labelling],
) -> Vec<Witness> {
    // Whether `a` has an odd-walk attacker c ≠ b that `a` cannot reach back oddly.
    // Depends only on the framework, not on the labelling.
    let self_defense = odd[b].contains(a)
        && !(0..af.len()).any(|c| c != b && odd[c].contains(a) && !odd[a].contains(c));

    let mut out = Vec::new();
    for l in labellings {
        let (ins, outs, undecs) = (l.in_set(), l.out_set(), l.undec_set());
        let mut push = |bullet, pivot| {
            out.push(Witness {
                in_set: ins,
                bullet,
                pivot,
            })
        };
        if ins.contains(a) && ins.contains(b) {
            let pivot = outs
                .iter()
                .find(|&c| !af.has_attack(a, c) && af.has_attack(b, c));
            if pivot.is_some() {
                push(BulletId::NiInInDefends, pivot);
            }
        }
        if ins.contains(a) && outs.contains(b) {
            let pivot = ins.iter().find(|&c| af.has_attack(b, c));
            if pivot.is_some() {
                push(BulletId::NiInOutReinstates, pivot);
            }
        }
        if ins.contains(a) && undecs.contains(b) {
            let pivot = undecs
                .iter()
                .find(|&c| !af.has_attack(c, c) && af.has_attack(b, c));
            if pivot.is_some() {
                push(BulletId::NiInUndecDefendsUndec, pivot);
            }
        }
        if outs.contains(a) && self_defense {
            push(BulletId::NiOutSelfDefense, None);
        }
    }
    out
}

fn endpoints(af: &ArgumentationFramework, attack: &Attack) -> Result<(usize, usize)> {
    af.attack_indices(attack)
}

/// Every (labelling, condition) pair showing that adding `attack` loses an
/// admissible set. Empty means the addition is non-decreasing.
pub fn adm_non_decreasing_ok(
    af: &ArgumentationFramework,
    attack: &Attack,
    labellings: &[Labelling],
) -> Result<Vec<Witness>> {
    let (a, b) = endpoints(af, attack)?;
    Ok(non_decreasing_scan(af, a, b, labellings))
}

/// Every (labelling, condition) pair showing that adding `attack` creates a new
/// admissible set. Empty means the addition is non-increasing.
pub fn adm_non_increasing_ok(
    af: &ArgumentationFramework,
    attack: &Attack,
    labellings: &[Labelling],
) -> Result<Vec<Witness>> {
    let (a, b) = endpoints(af, attack)?;
    let odd: Vec<ArgSet> = (0..af.len()).map(|v| af.odd_reach(v)).collect();
    Ok(non_increasing_scan(af, &odd, a, b, labellings))
}

pub fn classify_cf_attack(
    af: &ArgumentationFramework,
    attack: &Attack,
) -> Result<AttackClassification> {
    let (a, b) = endpoints(af, attack)?;
    Ok(Classifier::new(af, SemanticsId::Cf, false)?.classify_pair(a, b))
}

pub fn classify_adm_attack(
    af: &ArgumentationFramework,
    attack: &Attack,
    use_preferred_only: bool,
) -> Result<AttackClassification> {
    let (a, b) = endpoints(af, attack)?;
    Ok(Classifier::new(af, SemanticsId::Adm, use_preferred_only)?.classify_pair(a, b))
}

pub fn classify_attack(
    af: &ArgumentationFramework,
    attack: &Attack,
    semantics: SemanticsId,
    use_preferred_only: bool,
) -> Result<AttackClassification> {
    let (a, b) = endpoints(af, attack)?;
    Ok(Classifier::new(af, semantics, use_preferred_only)?.classify_pair(a, b))
}

/// New attacks whose addition keeps the extension set unchanged, in canonical order.
pub fn enumerate_invariant_attacks(
    af: &ArgumentationFramework,
    semantics: SemanticsId,
) -> Result<Vec<Attack>> {
    enumerate_invariant_attacks_with(af, semantics, Execution::default())
}

pub fn enumerate_invariant_attacks_with(
    af: &ArgumentationFramework,
    semantics: SemanticsId,
    exec: Execution,
) -> Result<Vec<Attack>> {
    require_cf_or_adm(semantics, "enumerate_invariant_attacks")?;
    let classifier = Classifier::new(af, semantics, false)?;
    let candidates = af.candidate_pairs();
    let verdicts = par::map(exec, &candidates, |&(s, t)| {
        classifier.classify_pair(s, t).verdict.is_invariant()
    });
    Ok(candidates
        .into_iter()
        .zip(verdicts)
        .filter(|&(_, ok)| ok)
        .map(|((s, t), _)| af.attack_at(s, t))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g3() -> ArgumentationFramework {
        ArgumentationFramework::new(["1", "2", "3", "4"], [("1", "2"), ("2", "3")]).unwrap()
    }

    fn mutual() -> ArgumentationFramework {
        ArgumentationFramework::new(["a", "b"], [("a", "b"), ("b", "a")]).unwrap()
    }

    fn att(s: &str, t: &str) -> Attack {
        Attack::new(s, t).unwrap()
    }

    fn adm_labellings(af: &ArgumentationFramework) -> Vec<Labelling> {
        admissible_labellings(af, false).unwrap()
    }

    #[test]
    fn inclusion_examples() {
        let af = ArgumentationFramework::new(["a", "b"], []).unwrap();
        let s = |sets: &[&[&str]]| ExtensionSet::from_names(&af, sets).unwrap();
        let any = s(&[&[], &["a"], &["a", "b"]]);
        assert!(extension_set_included(&any, &any));
        assert!(extension_set_included(&s(&[&["a"]]), &s(&[&["a", "b"]])));
        assert!(!extension_set_included(
            &s(&[&["a"], &["b"]]),
            &s(&[&["a"]])
        ));
    }

    #[test]
    fn mutual_inclusion_is_weaker_than_equality() {
        let af = ArgumentationFramework::new(["a"], []).unwrap();
        let s = ExtensionSet::from_names(&af, &[&["a"]]).unwrap();
        let s2 = ExtensionSet::from_names(&af, &[&["a"], &[]]).unwrap();
        assert!(extension_set_included(&s, &s2));
        assert!(extension_set_included(&s2, &s));
        assert_ne!(s, s2);
    }

    #[test]
    fn sigma_equivalent_examples() {
        let g = g3();
        for sem in SemanticsId::ALL {
            assert!(sigma_equivalent(&g, &g, sem).unwrap());
        }
        let reversed = g.add_attack(&att("2", "1")).unwrap();
        assert!(sigma_equivalent(&g, &reversed, SemanticsId::Cf).unwrap());
        let with_14 = g.add_attack(&att("1", "4")).unwrap();
        assert!(!sigma_equivalent(&g, &with_14, SemanticsId::Adm).unwrap());

        assert_eq!(
            sigma_equivalent(&g, &mutual(), SemanticsId::Cf),
            Err(Error::ArgumentSetMismatch)
        );
    }

    #[test]
    fn cf_classification_examples() {
        let g = g3();
        assert_eq!(
            classify_cf_attack(&g, &att("2", "1")).unwrap().verdict,
            Verdict::Invariant
        );
        let c = classify_cf_attack(&g, &att("1", "4")).unwrap();
        assert_eq!(c.verdict, Verdict::BreaksNonDecreasing);
        assert_eq!(c.witnesses[0].in_set, g.set_of(["1", "4"]).unwrap());

        let m = mutual();
        let c = classify_cf_attack(&m, &att("a", "b")).unwrap();
        assert!(c.verdict.is_invariant() && c.witnesses.is_empty());

        assert!(classify_cf_attack(&g, &att("1", "z")).is_err());
    }

    #[test]
    fn non_decreasing_examples() {
        let g = g3();
        let labs = adm_labellings(&g);
        let w = adm_non_decreasing_ok(&g, &att("1", "4"), &labs).unwrap();
        assert!(w.contains(&Witness {
            in_set: g.set_of(["1", "4"]).unwrap(),
            bullet: BulletId::NdInIn,
            pivot: None
        }));
        let w = adm_non_decreasing_ok(&g, &att("2", "4"), &labs).unwrap();
        assert!(w.contains(&Witness {
            in_set: g.set_of(["1", "4"]).unwrap(),
            bullet: BulletId::NdOutInUndefended,
            pivot: None
        }));
        assert!(adm_non_decreasing_ok(&g, &att("2", "2"), &labs)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn non_increasing_examples() {
        let g = g3();
        let labs = adm_labellings(&g);
        let w = adm_non_increasing_ok(&g, &att("4", "2"), &labs).unwrap();
        assert!(w.contains(&Witness {
            in_set: g.set_of(["1", "3", "4"]).unwrap(),
            bullet: BulletId::NiInOutReinstates,
            pivot: Some(g.index_of("3").unwrap())
        }));
        let w = adm_non_increasing_ok(&g, &att("2", "1"), &labs).unwrap();
        assert!(w.iter().any(|w| w.bullet == BulletId::NiOutSelfDefense
            && w.in_set.contains(g.index_of("1").unwrap())));
        assert!(adm_non_increasing_ok(&g, &att("2", "2"), &labs)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn adm_classification_examples() {
        let g = g3();
        let c = |s, t| classify_adm_attack(&g, &att(s, t), false).unwrap();
        assert_eq!(c("1", "4").verdict, Verdict::BreaksNonDecreasing);
        assert_eq!(c("2", "1").verdict, Verdict::BreaksNonIncreasing);
        assert_eq!(c("2", "2").verdict, Verdict::Invariant);
        // existing attacks are trivially invariant
        assert_eq!(c("1", "2").verdict, Verdict::Invariant);
    }

    #[test]
    fn enumerate_examples() {
        let g = g3();
        assert_eq!(
            enumerate_invariant_attacks(&g, SemanticsId::Cf).unwrap(),
            vec![att("2", "1"), att("3", "2")]
        );
        assert!(enumerate_invariant_attacks(&mutual(), SemanticsId::Cf)
            .unwrap()
            .is_empty());
        assert!(
            enumerate_invariant_attacks(&ArgumentationFramework::empty(), SemanticsId::Adm)
                .unwrap()
                .is_empty()
        );
        assert!(matches!(
            enumerate_invariant_attacks(&g, SemanticsId::Prf),
            Err(Error::UnsupportedSemantics { .. })
        ));
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let g = g3();
        for sem in [SemanticsId::Cf, SemanticsId::Adm] {
            assert_eq!(
                enumerate_invariant_attacks_with(&g, sem, Execution::Sequential).unwrap(),
                enumerate_invariant_attacks_with(&g, sem, Execution::Parallel).unwrap()
            );
        }
    }
}
