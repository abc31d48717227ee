//! Argumentation frameworks: arguments, attacks and the basic queries over them.
//!
//! Arguments are kept in canonical (lexicographic) order and addressed internally
//! by their position in that order, so sets of arguments are plain bitmasks.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Hard cap on framework size imposed by the 64-bit argument-set encoding.
pub const MAX_ARGUMENTS: usize = 64;

/// Name of an argument; a non-empty token over `[A-Za-z0-9_]`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct ArgumentId(String);

impl ArgumentId {
    pub fn new(name: impl Into<String>) -> Result<Self> {
        let name = name.into();
        if is_valid_name(&name) {
            Ok(Self(name))
        } else {
            Err(Error::InvalidArgumentName(name))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

pub(crate) fn is_valid_name(name: &str) -> bool {
    !name.is_empty() && name.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_')
}

impl TryFrom<String> for ArgumentId {
    type Error = Error;

    fn try_from(value: String) -> Result<Self> {
        Self::new(value)
    }
}

impl From<ArgumentId> for String {
    fn from(value: ArgumentId) -> Self {
        value.0
    }
}

impl fmt::Display for ArgumentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// An ordered attack `source -> target`. Self-attacks are allowed.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Attack {
    pub source: ArgumentId,
    pub target: ArgumentId,
}

impl Attack {
    pub fn new(source: &str, target: &str) -> Result<Self> {
        Ok(Self {
            source: ArgumentId::new(source)?,
            target: ArgumentId::new(target)?,
        })
    }
}

impl fmt::Display for Attack {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.source, self.target)
    }
}

/// A set of arguments of one framework, as a bitmask over canonical indices.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct ArgSet(pub u64);

impl ArgSet {
    pub const EMPTY: ArgSet = ArgSet(0);

    /// The set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        if n >= 64 {
            ArgSet(u64::MAX)
        } else {
            ArgSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        ArgSet(1u64 << i)
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1u64 << i;
    }

    pub fn with(self, i: usize) -> Self {
        ArgSet(self.0 | 1u64 << i)
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn union(self, other: Self) -> Self {
        ArgSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        ArgSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        ArgSet(self.0 & !other.0)
    }

    pub fn intersects(self, other: Self) -> bool {
        self.0 & other.0 != 0
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_proper_subset(self, other: Self) -> bool {
        self.is_subset(other) && self != other
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let i = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(i)
            }
        })
    }

    /// Ascending index list; sets compare lexicographically on it.
    pub fn indices(self) -> Vec<usize> {
        self.iter().collect()
    }
}

// Canonical order: by cardinality, then lexicographically on members.
// For equal cardinality the set holding the lowest differing index sorts first.
impl Ord for ArgSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| {
            let diff = self.0 ^ other.0;
            if diff == 0 {
                Ordering::Equal
            } else if self.0 & diff & diff.wrapping_neg() != 0 {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        })
    }
}

impl PartialOrd for ArgSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl FromIterator<usize> for ArgSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut set = ArgSet::EMPTY;
        for i in iter {
            set.insert(i);
        }
        set
    }
}

/// An abstract argumentation framework `<A, R>`.
///
/// Immutable once built. Equality is value equality on arguments and attacks.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ArgumentationFramework {
    names: Vec<ArgumentId>,
    /// `attackers[i]` holds every `j` with `(j, i) ∈ R`.
    attackers: Vec<ArgSet>,
    /// `targets[i]` holds every `j` with `(i, j) ∈ R`.
    targets: Vec<ArgSet>,
}

impl ArgumentationFramework {
    pub fn new<'a, A, R>(arguments: A, attacks: R) -> Result<Self>
    where
        A: IntoIterator<Item = &'a str>,
        R: IntoIterator<Item = (&'a str, &'a str)>,
    {
        let names = arguments
            .into_iter()
            .map(ArgumentId::new)
            .collect::<Result<BTreeSet<_>>>()?;
        let mut af = Self::with_arguments(names.into_iter().collect())?;
        for (source, target) in attacks {
            let (s, t) = (af.index_of(source)?, af.index_of(target)?);
            af.insert(s, t);
        }
        Ok(af)
    }

    /// The empty framework `<∅, ∅>`.
    pub fn empty() -> Self {
        Self {
            names: Vec::new(),
            attackers: Vec::new(),
            targets: Vec::new(),
        }
    }

    /// Framework over `names` (any order, duplicates removed) with attacks given
    /// as pairs of positions in the canonical order.
    pub fn from_index_attacks(
        names: impl IntoIterator<Item = ArgumentId>,
        attacks: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let names: BTreeSet<ArgumentId> = names.into_iter().collect();
        let mut af = Self::with_arguments(names.into_iter().collect())?;
        let n = af.len();
        for (s, t) in attacks {
            if s >= n || t >= n {
                return Err(Error::UnknownArgument(format!("#{}", s.max(t))));
            }
            af.insert(s, t);
        }
        Ok(af)
    }

    fn with_arguments(names: Vec<ArgumentId>) -> Result<Self> {
        if names.len() > MAX_ARGUMENTS {
            return Err(Error::SizeLimit {
                what: "framework",
                limit: MAX_ARGUMENTS,
                actual: names.len(),
            });
        }
        let n = names.len();
        Ok(Self {
            names,
            attackers: vec![ArgSet::EMPTY; n],
            targets: vec![ArgSet::EMPTY; n],
        })
    }

    fn insert(&mut self, source: usize, target: usize) {
        self.attackers[target].insert(source);
        self.targets[source].insert(target);
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// Arguments in canonical order.
    pub fn arguments(&self) -> &[ArgumentId] {
        &self.names
    }

    pub fn all(&self) -> ArgSet {
        ArgSet::full(self.len())
    }

    pub fn name(&self, i: usize) -> &ArgumentId {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.names
            .binary_search_by(|n| n.as_str().cmp(name))
            .map_err(|_| Error::UnknownArgument(name.to_string()))
    }

    pub fn set_of<'a>(&self, names: impl IntoIterator<Item = &'a str>) -> Result<ArgSet> {
        names
            .into_iter()
            .map(|n| self.index_of(n))
            .collect::<Result<ArgSet>>()
    }

    pub fn names_of(&self, set: ArgSet) -> Vec<ArgumentId> {
        set.iter().map(|i| self.names[i].clone()).collect()
    }

    pub fn attack_indices(&self, attack: &Attack) -> Result<(usize, usize)> {
        Ok((
            self.index_of(attack.source.as_str())?,
            self.index_of(attack.target.as_str())?,
        ))
    }

    pub fn attack_at(&self, source: usize, target: usize) -> Attack {
        Attack {
            source: self.names[source].clone(),
            target: self.names[target].clone(),
        }
    }

    pub fn attackers_of(&self, i: usize) -> ArgSet {
        self.attackers[i]
    }

    pub fn targets_of(&self, i: usize) -> ArgSet {
        self.targets[i]
    }

    pub fn has_attack(&self, source: usize, target: usize) -> bool {
        self.targets[source].contains(target)
    }

    pub fn attack_count(&self) -> usize {
        self.targets.iter().map(|t| t.len()).sum()
    }

    /// Attacks as index pairs, sorted by (source, target).
    pub fn attack_pairs(&self) -> Vec<(usize, usize)> {
        self.targets
            .iter()
            .enumerate()
            .flat_map(|(s, t)| t.iter().map(move |t| (s, t)))
            .collect()
    }

    pub fn attacks(&self) -> Vec<Attack> {
        self.attack_pairs()
            .into_iter()
            .map(|(s, t)| self.attack_at(s, t))
            .collect()
    }

    /// Every pair in `A × A` not yet in `R`, in canonical order.
    pub fn candidate_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        (0..n)
            .flat_map(|s| (0..n).map(move |t| (s, t)))
            .filter(|&(s, t)| !self.has_attack(s, t))
            .collect()
    }

    /// Raw attack relation, one attacker mask per argument. Identifies the
    /// relation among frameworks over the same arguments.
    pub fn attacker_masks(&self) -> &[ArgSet] {
        &self.attackers
    }

    pub fn with_attack_indices(&self, source: usize, target: usize) -> Self {
        let mut next = self.clone();
        next.insert(source, target);
        next
    }

    /// Local expansion by a single attack. Idempotent on existing attacks.
    pub fn add_attack(&self, attack: &Attack) -> Result<Self> {
        let (s, t) = self.attack_indices(attack)?;
        Ok(self.with_attack_indices(s, t))
    }

    pub fn attackers(&self, argument: &str) -> Result<BTreeSet<ArgumentId>> {
        let i = self.index_of(argument)?;
        Ok(self.names_of(self.attackers[i]).into_iter().collect())
    }

    /// Arguments attacked by some member of `set`.
    pub fn attacked_by(&self, set: ArgSet) -> ArgSet {
        set.iter()
            .fold(ArgSet::EMPTY, |acc, i| acc.union(self.targets[i]))
    }

    pub fn set_attacks_index(&self, set: ArgSet, target: usize) -> bool {
        self.attackers[target].intersects(set)
    }

    pub fn set_attacks(&self, set: &BTreeSet<ArgumentId>, argument: &str) -> Result<bool> {
        let set = self.set_of(set.iter().map(ArgumentId::as_str))?;
        Ok(self.set_attacks_index(set, self.index_of(argument)?))
    }

    /// `set` defends `target` when every attacker of `target` is attacked by `set`.
    pub fn defends_index(&self, set: ArgSet, target: usize) -> bool {
        self.attackers[target].is_subset(self.attacked_by(set))
    }

    pub fn defends(&self, set: &BTreeSet<ArgumentId>, argument: &str) -> Result<bool> {
        let set = self.set_of(set.iter().map(ArgumentId::as_str))?;
        Ok(self.defends_index(set, self.index_of(argument)?))
    }

    /// All arguments reachable from `from` by a directed walk of odd length.
    ///
    /// Breadth-first search over `(argument, parity)` states.
    pub fn odd_reach(&self, from: usize) -> ArgSet {
        let mut seen = [ArgSet::EMPTY, ArgSet::EMPTY];
        let mut queue = VecDeque::from([(from, 0usize)]);
        seen[0].insert(from);
        while let Some((v, parity)) = queue.pop_front() {
            let next = parity ^ 1;
            for w in self.targets[v].iter() {
                if !seen[next].contains(w) {
                    seen[next].insert(w);
                    queue.push_back((w, next));
                }
            }
        }
        seen[1]
    }

    pub fn odd_walk_exists_index(&self, from: usize, to: usize) -> bool {
        self.odd_reach(from).contains(to)
    }

    pub fn odd_walk_exists(&self, from: &str, to: &str) -> Result<bool> {
        Ok(self.odd_walk_exists_index(self.index_of(from)?, self.index_of(to)?))
    }

    /// Name-keyed view of the attack relation, used by the serializers.
    pub fn adjacency(&self) -> BTreeMap<&ArgumentId, Vec<&ArgumentId>> {
        self.names
            .iter()
            .enumerate()
            .map(|(i, n)| (n, self.targets[i].iter().map(|j| &self.names[j]).collect()))
            .collect()
    }
}

impl Serialize for ArgumentationFramework {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let pairs: Vec<(&ArgumentId, &ArgumentId)> = self
            .attack_pairs()
            .into_iter()
            .map(|(s, t)| (&self.names[s], &self.names[t]))
            .collect();
        let mut st = serializer.serialize_struct("ArgumentationFramework", 2)?;
        st.serialize_field("arguments", &self.names)?;
        st.serialize_field("attacks", &pairs)?;
        st.end()
    }
}

impl fmt::Display for ArgumentationFramework {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let args: Vec<&str> = self.names.iter().map(ArgumentId::as_str).collect();
        let atts: Vec<String> = self.attacks().iter().map(ToString::to_string).collect();
        write!(f, "<{{{}}}, {{{}}}>", args.join(","), atts.join(","))
    }
}
