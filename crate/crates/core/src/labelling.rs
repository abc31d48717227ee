//! Three-valued reinstatement labellings and their link to extensions.
//!
//! Two families are kept apart. [`reinstatement_labellings`] checks only the
//! one-directional conditions (in-arguments have every attacker out, out-arguments
//! have an in attacker); their in-sets are exactly the admissible sets.
//! [`complete_labellings`] adds the converse directions and matches complete
//! extensions one to one.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::af::{ArgSet, ArgumentId, ArgumentationFramework};
use crate::error::{Error, Result};
use crate::semantics::{self, check_limit, SemanticsId};

/// Largest framework for which all 3^n label assignments are enumerated.
pub const LABELLING_LIMIT: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Label {
    In,
    Out,
    Undec,
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Label::In => "in",
            Label::Out => "out",
            Label::Undec => "undec",
        })
    }
}

/// A total labelling of one framework. The three sets partition its arguments.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Labelling {
    in_set: ArgSet,
    out_set: ArgSet,
    undec_set: ArgSet,
}

impl Labelling {
    /// Build from in/out sets; everything else in `all` is undec.
    pub fn from_in_out(all: ArgSet, in_set: ArgSet, out_set: ArgSet) -> Self {
        debug_assert!(!in_set.intersects(out_set));
        Self {
            in_set,
            out_set,
            undec_set: all.difference(in_set.union(out_set)),
        }
    }

    pub fn all_undec(af: &ArgumentationFramework) -> Self {
        Self::from_in_out(af.all(), ArgSet::EMPTY, ArgSet::EMPTY)
    }

    pub fn in_set(&self) -> ArgSet {
        self.in_set
    }

    pub fn out_set(&self) -> ArgSet {
        self.out_set
    }

    pub fn undec_set(&self) -> ArgSet {
        self.undec_set
    }

    pub fn label(&self, i: usize) -> Label {
        if self.in_set.contains(i) {
            Label::In
        } else if self.out_set.contains(i) {
            Label::Out
        } else {
            Label::Undec
        }
    }

    /// True when the labelling assigns exactly the framework's arguments.
    pub fn covers(&self, af: &ArgumentationFramework) -> bool {
        let all = af.all();
        !self.in_set.intersects(self.out_set)
            && !self.in_set.intersects(self.undec_set)
            && !self.out_set.intersects(self.undec_set)
            && self.in_set.union(self.out_set).union(self.undec_set) == all
    }

    pub fn to_named(&self, af: &ArgumentationFramework) -> NamedLabelling {
        NamedLabelling {
            in_args: af.names_of(self.in_set),
            out_args: af.names_of(self.out_set),
            undec_args: af.names_of(self.undec_set),
        }
    }
}

/// Serializable view `{"in": [...], "out": [...], "undec": [...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedLabelling {
    #[serde(rename = "in")]
    pub in_args: Vec<ArgumentId>,
    #[serde(rename = "out")]
    pub out_args: Vec<ArgumentId>,
    #[serde(rename = "undec")]
    pub undec_args: Vec<ArgumentId>,
}

/// in = `set`, out = arguments attacked by `set` (minus `set`), undec = rest.
/// No validity check; see [`labelling_of_extension`].
pub fn extension_labelling(af: &ArgumentationFramework, set: ArgSet) -> Labelling {
    Labelling::from_in_out(af.all(), set, af.attacked_by(set).difference(set))
}

pub fn labelling_of_extension(af: &ArgumentationFramework, set: ArgSet) -> Result<Labelling> {
    if !set.is_subset(af.all()) || !semantics::is_admissible(af, set) {
        let names: Vec<String> = af.names_of(set).into_iter().map(String::from).collect();
        return Err(Error::NotAdmissible(names.join(",")));
    }
    Ok(extension_labelling(af, set))
}

/// The two one-directional labelling conditions.
pub fn is_reinstatement(af: &ArgumentationFramework, l: &Labelling) -> bool {
    l.in_set
        .iter()
        .all(|a| af.attackers_of(a).is_subset(l.out_set))
        && l.out_set
            .iter()
            .all(|a| af.attackers_of(a).intersects(l.in_set))
}

/// Reinstatement plus the converse directions.
pub fn is_complete_labelling(af: &ArgumentationFramework, l: &Labelling) -> bool {
    (0..af.len()).all(|a| {
        let attackers = af.attackers_of(a);
        let all_out = attackers.is_subset(l.out_set);
        let some_in = attackers.intersects(l.in_set);
        l.in_set.contains(a) == all_out && l.out_set.contains(a) == some_in
    })
}

fn all_assignments(af: &ArgumentationFramework) -> Result<impl Iterator<Item = Labelling> + '_> {
    check_limit(af, LABELLING_LIMIT, "labelling enumeration")?;
    let all = af.all();
    Ok((0u64..1u64 << af.len()).flat_map(move |in_bits| {
        let in_set = ArgSet(in_bits);
        let rest = all.difference(in_set).0;
        // submasks of `rest`, including the empty one
        let mut sub = Some(rest);
        std::iter::from_fn(move || {
            let current = sub?;
            sub = if current == 0 {
                None
            } else {
                Some((current - 1) & rest)
            };
            Some(Labelling::from_in_out(all, in_set, ArgSet(current)))
        })
    }))
}

fn sorted(mut labellings: Vec<Labelling>) -> Vec<Labelling> {
    labellings.sort();
    labellings.dedup();
    labellings
}

pub fn reinstatement_labellings(af: &ArgumentationFramework) -> Result<Vec<Labelling>> {
    Ok(sorted(
        all_assignments(af)?
            .filter(|l| is_reinstatement(af, l))
            .collect(),
    ))
}

pub fn complete_labellings(af: &ArgumentationFramework) -> Result<Vec<Labelling>> {
    Ok(sorted(
        all_assignments(af)?
            .filter(|l| is_complete_labelling(af, l))
            .collect(),
    ))
}

/// Members whose `key` set is not strictly contained in another member's.
pub(crate) fn maximal_by(
    labellings: &[Labelling],
    key: fn(&Labelling) -> ArgSet,
) -> Vec<Labelling> {
    labellings
        .iter()
        .filter(|l| !labellings.iter().any(|m| key(l).is_proper_subset(key(m))))
        .copied()
        .collect()
}

pub(crate) fn minimal_by(
    labellings: &[Labelling],
    key: fn(&Labelling) -> ArgSet,
) -> Vec<Labelling> {
    labellings
        .iter()
        .filter(|l| !labellings.iter().any(|m| key(m).is_proper_subset(key(l))))
        .copied()
        .collect()
}

/// Complete labellings restricted per semantics:
/// stable = no undec, preferred = maximal in, grounded = minimal in,
/// semi-stable = minimal undec.
pub fn labellings_for(
    af: &ArgumentationFramework,
    semantics: SemanticsId,
) -> Result<Vec<Labelling>> {
    let complete = complete_labellings(af)?;
    Ok(match semantics {
        SemanticsId::Com => complete,
        SemanticsId::Stb => complete
            .into_iter()
            .filter(|l| l.undec_set.is_empty())
            .collect(),
        SemanticsId::Prf => maximal_by(&complete, Labelling::in_set),
        SemanticsId::Gde => minimal_by(&complete, Labelling::in_set),
        SemanticsId::Sst => minimal_by(&complete, Labelling::undec_set),
        SemanticsId::Cf | SemanticsId::Adm => {
            return Err(Error::UnsupportedSemantics {
                semantics,
                operation: "labellings_for",
            })
        }
    })
}

/// Arguments labelled in, out and undec in at least one labelling of the semantics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CredulousSets {
    pub in_args: ArgSet,
    pub out_args: ArgSet,
    pub undec_args: ArgSet,
}

/// The labellings associated with a semantics: extension labellings for cf and
/// adm, the restricted complete labellings for the rest.
pub fn semantics_labellings(
    af: &ArgumentationFramework,
    semantics: SemanticsId,
) -> Result<Vec<Labelling>> {
    match semantics {
        SemanticsId::Cf | SemanticsId::Adm => Ok(semantics::extensions(af, semantics)?
            .iter()
            .map(|e| extension_labelling(af, e))
            .collect()),
        _ => labellings_for(af, semantics),
    }
}

pub fn credulous_sets(
    af: &ArgumentationFramework,
    semantics: SemanticsId,
) -> Result<CredulousSets> {
    Ok(semantics_labellings(af, semantics)?
        .iter()
        .fold(CredulousSets::default(), |acc, l| CredulousSets {
            in_args: acc.in_args.union(l.in_set),
            out_args: acc.out_args.union(l.out_set),
            undec_args: acc.undec_args.union(l.undec_set),
        }))
}
