//! Local-expansion robustness: how many single-attack invariant additions can be
//! applied one after another.
//!
//! Each step adds exactly one new attack, judged against the framework reached
//! so far. The exhaustive search memoizes on the attack relation: every path to
//! a given relation has the same length, since it adds the same attacks.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::af::{ArgSet, ArgumentationFramework, Attack};
use crate::error::{Error, Result};
use crate::invariance::{self, Classifier};
use crate::oracle;
use crate::par::{self, Execution};
use crate::semantics::{self, ExtensionSet, SemanticsId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    Exhaustive,
    Greedy,
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::Exhaustive => "exhaustive",
            Strategy::Greedy => "greedy",
        })
    }
}

impl FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exhaustive" => Ok(Strategy::Exhaustive),
            "greedy" => Ok(Strategy::Greedy),
            other => Err(format!(
                "unknown strategy `{other}` (expected exhaustive|greedy)"
            )),
        }
    }
}

/// What decides whether a single step is invariant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Judge {
    /// The labelling-based predicates.
    #[default]
    Predicate,
    /// Recompute the extension set and compare.
    Oracle,
}

#[derive(Debug, Clone, Copy)]
pub struct SearchOptions {
    pub strategy: Strategy,
    pub max_steps: Option<usize>,
    /// Re-check every predicate-accepted step with the oracle.
    pub paranoid: bool,
    pub judge: Judge,
    pub execution: Execution,
}

impl SearchOptions {
    pub fn new(strategy: Strategy) -> Self {
        Self {
            strategy,
            max_steps: None,
            paranoid: false,
            judge: Judge::Predicate,
            execution: Execution::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RobustnessResult {
    pub degree: usize,
    pub witness: Vec<Attack>,
    pub explored_states: usize,
    pub strategy: Strategy,
    /// The step cap cut the search short; `degree` is a lower bound.
    pub capped: bool,
}

pub fn robustness_degree(
    af: &ArgumentationFramework,
    semantics: SemanticsId,
    strategy: Strategy,
    max_steps: Option<usize>,
) -> Result<RobustnessResult> {
    let mut options = SearchOptions::new(strategy);
    options.max_steps = max_steps;
    robustness_with(af, semantics, &options)
}

pub fn robustness_with(
    af: &ArgumentationFramework,
    semantics: SemanticsId,
    options: &SearchOptions,
) -> Result<RobustnessResult> {
    if !matches!(semantics, SemanticsId::Cf | SemanticsId::Adm) {
        return Err(Error::UnsupportedSemantics {
            semantics,
            operation: "robustness",
        });
    }
    let search = Search {
        semantics,
        options,
        baseline: semantics::extensions(af, semantics)?,
        memo: HashMap::new(),
        capped: false,
    };
    match options.strategy {
        Strategy::Exhaustive => search.exhaustive(af),
        Strategy::Greedy => search.greedy(af),
    }
}

/// Best number of further steps and the first step of a best path.
type MemoEntry = (usize, Option<(usize, usize)>);

struct Search<'o> {
    semantics: SemanticsId,
    options: &'o SearchOptions,
    /// `S_σ(G)`; every reached framework must keep it.
    baseline: ExtensionSet,
    /// Keyed by attack relation.
    memo: HashMap<Vec<ArgSet>, MemoEntry>,
    capped: bool,
}

impl Search<'_> {
    /// New attacks judged invariant for `af`, in canonical order.
    fn invariant_steps(&self, af: &ArgumentationFramework) -> Result<Vec<(usize, usize)>> {
        let candidates = af.candidate_pairs();
        let verdicts: Vec<Result<bool>> = match self.options.judge {
            Judge::Predicate => {
                let classifier = Classifier::new(af, self.semantics, false)?;
                par::map(self.options.execution, &candidates, |&(s, t)| {
                    let ok = classifier.classify_pair(s, t).verdict.is_invariant();
                    if ok && self.options.paranoid {
                        self.paranoid_check(af, s, t)?;
                    }
                    Ok(ok)
                })
            }
            Judge::Oracle => par::map(self.options.execution, &candidates, |&(s, t)| {
                oracle::invariant_pair(af, &self.baseline, s, t, self.semantics)
            }),
        };
        let mut steps = Vec::new();
        for (pair, ok) in candidates.into_iter().zip(verdicts) {
            if ok? {
                steps.push(pair);
            }
        }
        Ok(steps)
    }

    fn paranoid_check(&self, af: &ArgumentationFramework, s: usize, t: usize) -> Result<()> {
        if oracle::invariant_pair(af, &self.baseline, s, t, self.semantics)? {
            Ok(())
        } else {
            Err(Error::InternalInvariantViolation(format!(
                "predicate accepted {} on {} but the {} extensions change",
                af.attack_at(s, t),
                af,
                self.semantics
            )))
        }
    }

    fn at_cap(&self, depth: usize) -> bool {
        self.options.max_steps.is_some_and(|max| depth >= max)
    }

    fn best_from(&mut self, af: &ArgumentationFramework, depth: usize) -> Result<usize> {
        let key = af.attacker_masks().to_vec();
        if let Some(&(best, _)) = self.memo.get(&key) {
            return Ok(best);
        }
        let steps = self.invariant_steps(af)?;
        let mut best = (0, None);
        if self.at_cap(depth) {
            self.capped |= !steps.is_empty();
        } else {
            for (s, t) in steps {
                let value = 1 + self.best_from(&af.with_attack_indices(s, t), depth + 1)?;
                if value > best.0 {
                    best = (value, Some((s, t)));
                }
            }
        }
        self.memo.insert(key, best);
        Ok(best.0)
    }

    fn exhaustive(mut self, af: &ArgumentationFramework) -> Result<RobustnessResult> {
        let degree = self.best_from(af, 0)?;
        let mut witness = Vec::with_capacity(degree);
        let mut current = af.clone();
        while let Some(&(_, Some((s, t)))) = self.memo.get(current.attacker_masks()) {
            witness.push(current.attack_at(s, t));
            current = current.with_attack_indices(s, t);
        }
        debug_assert_eq!(witness.len(), degree);
        Ok(RobustnessResult {
            degree,
            witness,
            explored_states: self.memo.len(),
            strategy: Strategy::Exhaustive,
            capped: self.capped,
        })
    }

    fn greedy(mut self, af: &ArgumentationFramework) -> Result<RobustnessResult> {
        let mut current = af.clone();
        let mut witness = Vec::new();
        let mut explored = 1;
        loop {
            let steps = self.invariant_steps(&current)?;
            let Some(&(s, t)) = steps.first() else { break };
            if self.at_cap(witness.len()) {
                self.capped = true;
                break;
            }
            witness.push(current.attack_at(s, t));
            current = current.with_attack_indices(s, t);
            explored += 1;
        }
        Ok(RobustnessResult {
            degree: witness.len(),
            witness,
            explored_states: explored,
            strategy: Strategy::Greedy,
            capped: self.capped,
        })
    }
}

/// Replay `witness`: every step must add a new attack that the predicates
/// classify invariant for the framework reached so far, and the final framework
/// must have the same extensions as `af`.
pub fn verify_witness(
    af: &ArgumentationFramework,
    semantics: SemanticsId,
    witness: &[Attack],
) -> Result<bool> {
    let mut current = af.clone();
    for attack in witness {
        let (s, t) = current.attack_indices(attack)?;
        if current.has_attack(s, t) {
            return Ok(false);
        }
        let verdict = invariance::classify_attack(&current, attack, semantics, false)?.verdict;
        if !verdict.is_invariant() {
            return Ok(false);
        }
        current = current.with_attack_indices(s, t);
    }
    invariance::sigma_equivalent(af, &current, semantics)
}

/// Number of new cf-invariant attacks; equals the exhaustive cf degree, since
/// such additions never change which pairs are in conflict-free sets together.
pub fn cf_closed_form(af: &ArgumentationFramework) -> Result<usize> {
    Ok(invariance::enumerate_invariant_attacks(af, SemanticsId::Cf)?.len())
}
