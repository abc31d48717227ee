//! Extension-based semantics by explicit subset enumeration.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::af::{ArgSet, ArgumentId, ArgumentationFramework};
use crate::error::{Error, Result};
use crate::labelling::{self, Labelling};

/// Largest framework the subset enumerators accept (2^24 candidate sets).
pub const ENUMERATION_LIMIT: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SemanticsId {
    Cf,
    Adm,
    Com,
    Stb,
    Prf,
    Gde,
    Sst,
}

impl SemanticsId {
    pub const ALL: [SemanticsId; 7] = [
        SemanticsId::Cf,
        SemanticsId::Adm,
        SemanticsId::Com,
        SemanticsId::Stb,
        SemanticsId::Prf,
        SemanticsId::Gde,
        SemanticsId::Sst,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SemanticsId::Cf => "cf",
            SemanticsId::Adm => "adm",
            SemanticsId::Com => "com",
            SemanticsId::Stb => "stb",
            SemanticsId::Prf => "prf",
            SemanticsId::Gde => "gde",
            SemanticsId::Sst => "sst",
        }
    }
}

impl fmt::Display for SemanticsId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SemanticsId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SemanticsId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| format!("unknown semantics `{s}` (expected cf|adm|com|stb|prf|gde|sst)"))
    }
}

/// The value of a semantics on a framework: a set of argument sets.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct ExtensionSet {
    sets: BTreeSet<ArgSet>,
}

impl ExtensionSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, set: ArgSet) -> bool {
        self.sets.insert(set)
    }

    pub fn contains(&self, set: ArgSet) -> bool {
        self.sets.contains(&set)
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// Members in canonical order (size, then lexicographic).
    pub fn iter(&self) -> impl Iterator<Item = ArgSet> + '_ {
        self.sets.iter().copied()
    }

    pub fn is_subset(&self, other: &ExtensionSet) -> bool {
        self.sets.is_subset(&other.sets)
    }

    pub fn difference(&self, other: &ExtensionSet) -> ExtensionSet {
        self.sets.difference(&other.sets).copied().collect()
    }

    /// Named view for reporting.
    pub fn to_names(&self, af: &ArgumentationFramework) -> Vec<Vec<ArgumentId>> {
        self.iter().map(|s| af.names_of(s)).collect()
    }

    /// Convenience constructor from named sets, mostly for tests.
    pub fn from_names(af: &ArgumentationFramework, sets: &[&[&str]]) -> Result<Self> {
        sets.iter().map(|s| af.set_of(s.iter().copied())).collect()
    }
}

impl FromIterator<ArgSet> for ExtensionSet {
    fn from_iter<I: IntoIterator<Item = ArgSet>>(iter: I) -> Self {
        Self {
            sets: iter.into_iter().collect(),
        }
    }
}

pub(crate) fn check_limit(
    af: &ArgumentationFramework,
    limit: usize,
    what: &'static str,
) -> Result<()> {
    if af.len() > limit {
        Err(Error::SizeLimit {
            what,
            limit,
            actual: af.len(),
        })
    } else {
        Ok(())
    }
}

fn subsets(af: &ArgumentationFramework) -> Result<impl Iterator<Item = ArgSet>> {
    check_limit(af, ENUMERATION_LIMIT, "subset enumeration")?;
    Ok((0u64..1u64 << af.len()).map(ArgSet))
}

pub fn is_conflict_free(af: &ArgumentationFramework, set: ArgSet) -> bool {
    set.iter().all(|i| !af.attackers_of(i).intersects(set))
}

/// Arguments defended by `set` (the characteristic function).
pub fn defended_by(af: &ArgumentationFramework, set: ArgSet) -> ArgSet {
    let attacked = af.attacked_by(set);
    (0..af.len())
        .filter(|&i| af.attackers_of(i).is_subset(attacked))
        .collect()
}

pub fn is_admissible(af: &ArgumentationFramework, set: ArgSet) -> bool {
    is_conflict_free(af, set) && set.is_subset(defended_by(af, set))
}

pub fn is_complete(af: &ArgumentationFramework, set: ArgSet) -> bool {
    is_conflict_free(af, set) && defended_by(af, set) == set
}

pub fn is_stable(af: &ArgumentationFramework, set: ArgSet) -> bool {
    is_conflict_free(af, set) && set.union(af.attacked_by(set)) == af.all()
}

pub fn conflict_free_sets(af: &ArgumentationFramework) -> Result<ExtensionSet> {
    Ok(subsets(af)?.filter(|&s| is_conflict_free(af, s)).collect())
}

pub fn admissible_sets(af: &ArgumentationFramework) -> Result<ExtensionSet> {
    Ok(subsets(af)?.filter(|&s| is_admissible(af, s)).collect())
}

pub fn complete_sets(af: &ArgumentationFramework) -> Result<ExtensionSet> {
    Ok(subsets(af)?.filter(|&s| is_complete(af, s)).collect())
}

pub fn stable_sets(af: &ArgumentationFramework) -> Result<ExtensionSet> {
    Ok(subsets(af)?.filter(|&s| is_stable(af, s)).collect())
}

pub(crate) fn maximal(sets: &ExtensionSet) -> ExtensionSet {
    sets.iter()
        .filter(|&s| !sets.iter().any(|t| s.is_proper_subset(t)))
        .collect()
}

pub(crate) fn minimal(sets: &ExtensionSet) -> ExtensionSet {
    sets.iter()
        .filter(|&s| !sets.iter().any(|t| t.is_proper_subset(s)))
        .collect()
}

pub fn preferred_sets(af: &ArgumentationFramework) -> Result<ExtensionSet> {
    Ok(maximal(&admissible_sets(af)?))
}

/// The grounded extension, as a one-element set.
pub fn grounded_set(af: &ArgumentationFramework) -> Result<ExtensionSet> {
    let minimal = minimal(&complete_sets(af)?);
    if minimal.len() != 1 {
        return Err(Error::InternalInvariantViolation(format!(
            "expected a unique minimal complete set, found {}",
            minimal.len()
        )));
    }
    Ok(minimal)
}

pub fn semi_stable_sets(af: &ArgumentationFramework) -> Result<ExtensionSet> {
    Ok(labelling::labellings_for(af, SemanticsId::Sst)?
        .iter()
        .map(Labelling::in_set)
        .collect())
}

pub fn extensions(af: &ArgumentationFramework, semantics: SemanticsId) -> Result<ExtensionSet> {
    match semantics {
        SemanticsId::Cf => conflict_free_sets(af),
        SemanticsId::Adm => admissible_sets(af),
        SemanticsId::Com => complete_sets(af),
        SemanticsId::Stb => stable_sets(af),
        SemanticsId::Prf => preferred_sets(af),
        SemanticsId::Gde => grounded_set(af),
        SemanticsId::Sst => semi_stable_sets(af),
    }
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

    fn single() -> ArgumentationFramework {
        ArgumentationFramework::new(["a"], []).unwrap()
    }

    fn self_loop() -> ArgumentationFramework {
        ArgumentationFramework::new(["a"], [("a", "a")]).unwrap()
    }

    fn sets(af: &ArgumentationFramework, s: &[&[&str]]) -> ExtensionSet {
        ExtensionSet::from_names(af, s).unwrap()
    }

    #[test]
    fn conflict_free_examples() {
        let m = mutual();
        assert_eq!(
            conflict_free_sets(&m).unwrap(),
            sets(&m, &[&[], &["a"], &["b"]])
        );
        let e = ArgumentationFramework::empty();
        assert_eq!(conflict_free_sets(&e).unwrap(), sets(&e, &[&[]]));

        // Inclusion-exclusion over the two attacked pairs {1,2} and {2,3}:
        // 16 - 4 - 4 + 2 = 10.
        let g = g3();
        let cf = conflict_free_sets(&g).unwrap();
        assert_eq!(cf.len(), 16 - 4 - 4 + 2);
        for s in cf.iter() {
            let names: Vec<_> = g.names_of(s).iter().map(|n| n.to_string()).collect();
            let has = |x: &str| names.iter().any(|n| n == x);
            assert!(!(has("1") && has("2")) && !(has("2") && has("3")));
        }
    }

    #[test]
    fn admissible_examples() {
        let g = g3();
        assert_eq!(
            admissible_sets(&g).unwrap(),
            sets(
                &g,
                &[
                    &[],
                    &["4"],
                    &["1"],
                    &["1", "4"],
                    &["1", "3"],
                    &["1", "3", "4"]
                ]
            )
        );
        let s = single();
        assert_eq!(admissible_sets(&s).unwrap(), sets(&s, &[&[], &["a"]]));
        let m = mutual();
        assert_eq!(
            admissible_sets(&m).unwrap(),
            sets(&m, &[&[], &["a"], &["b"]])
        );
    }

    #[test]
    fn complete_examples() {
        let g = g3();
        // 1 and 4 are unattacked, so every complete set holds both, and then 3.
        assert_eq!(complete_sets(&g).unwrap(), sets(&g, &[&["1", "3", "4"]]));
        let s = single();
        assert_eq!(complete_sets(&s).unwrap(), sets(&s, &[&["a"]]));
        let m = mutual();
        assert_eq!(complete_sets(&m).unwrap(), sets(&m, &[&[], &["a"], &["b"]]));
    }

    #[test]
    fn stable_examples() {
        let g = g3();
        assert_eq!(stable_sets(&g).unwrap(), sets(&g, &[&["1", "3", "4"]]));
        assert!(stable_sets(&self_loop()).unwrap().is_empty());
        let m = mutual();
        assert_eq!(stable_sets(&m).unwrap(), sets(&m, &[&["a"], &["b"]]));
    }

    #[test]
    fn preferred_examples() {
        let g = g3();
        assert_eq!(preferred_sets(&g).unwrap(), sets(&g, &[&["1", "3", "4"]]));
        let e = ArgumentationFramework::empty();
        assert_eq!(preferred_sets(&e).unwrap(), sets(&e, &[&[]]));
        let m = mutual();
        assert_eq!(preferred_sets(&m).unwrap(), sets(&m, &[&["a"], &["b"]]));
    }

    #[test]
    fn grounded_examples() {
        let g = g3();
        assert_eq!(grounded_set(&g).unwrap(), sets(&g, &[&["1", "3", "4"]]));
        let m = mutual();
        assert_eq!(grounded_set(&m).unwrap(), sets(&m, &[&[]]));
        let s = single();
        assert_eq!(grounded_set(&s).unwrap(), sets(&s, &[&["a"]]));
    }

    #[test]
    fn semi_stable_examples() {
        let g = g3();
        assert_eq!(semi_stable_sets(&g).unwrap(), sets(&g, &[&["1", "3", "4"]]));
        let l = self_loop();
        assert_eq!(semi_stable_sets(&l).unwrap(), sets(&l, &[&[]]));
        let e = ArgumentationFramework::empty();
        assert_eq!(semi_stable_sets(&e).unwrap(), sets(&e, &[&[]]));
    }

    #[test]
    fn dispatch_examples() {
        let g = g3();
        assert_eq!(
            extensions(&g, SemanticsId::Adm).unwrap(),
            admissible_sets(&g).unwrap()
        );
        let e = ArgumentationFramework::empty();
        assert_eq!(extensions(&e, SemanticsId::Cf).unwrap(), sets(&e, &[&[]]));
        assert_eq!(
            extensions(&g, SemanticsId::Stb).unwrap(),
            sets(&g, &[&["1", "3", "4"]])
        );
    }

    #[test]
    fn size_limit_is_reported() {
        let names: Vec<String> = (0..25).map(|i| format!("a{i}")).collect();
        let af = ArgumentationFramework::new(names.iter().map(String::as_str), []).unwrap();
        assert!(matches!(
            conflict_free_sets(&af),
            Err(Error::SizeLimit {
                limit: 24,
                actual: 25,
                ..
            })
        ));
    }

    #[test]
    fn semantics_names_round_trip() {
        for id in SemanticsId::ALL {
            assert_eq!(id.as_str().parse::<SemanticsId>().unwrap(), id);
        }
        assert!("ideal".parse::<SemanticsId>().is_err());
    }

    #[test]
    fn canonical_iteration_order() {
        let g = g3();
        let names: Vec<Vec<String>> = admissible_sets(&g)
            .unwrap()
            .to_names(&g)
            .into_iter()
            .map(|s| s.into_iter().map(String::from).collect())
            .collect();
        let expected: Vec<Vec<String>> = [
            vec![],
            vec!["1"],
            vec!["4"],
            vec!["1", "3"],
            vec!["1", "4"],
            vec!["1", "3", "4"],
        ]
        .iter()
        .map(|s| s.iter().map(|x| x.to_string()).collect())
        .collect();
        assert_eq!(names, expected);
    }
}
