//! Models over families of topological spaces with distinguished opens.
//!
//! A model is a finite family of spaces `⟨T, τ, D⟩` — universe, topology,
//! and a nonempty distinguished open `D ∈ τ` — whose universes jointly cover
//! the world set `W`. Atoms denote unions of open sets (of any space).
//! Connectives evaluate set-wise:
//!
//! - implication unions, over every space, the `τ`-interior of
//!   `T ∩ ((W ∖ A) ∪ B)` where `A` and `B` are the component truth sets;
//! - the box unions the distinguished sets `D` of exactly those spaces whose
//!   whole universe satisfies the body. The quantifier ranges over *spaces*:
//!   two spaces sharing a universe but not a distinguished set both
//!   contribute.

use crate::formula::Formula;
use crate::nimodel::Valuation;
use crate::topology::{FiniteTopology, TopologyViolation};
use crate::worldset::WorldSet;
use std::collections::HashMap;
use std::fmt;

/// One component space: universe and topology, plus the distinguished open
/// the box clause collects.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Space {
    pub topology: FiniteTopology,
    pub distinguished: WorldSet,
}

/// A distinguished-open model over `worlds` worlds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mt1Model {
    pub worlds: usize,
    pub spaces: Vec<Space>,
    pub valuation: Valuation,
}

/// A broken model invariant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Mt1Violation {
    Topology {
        space: usize,
        violation: TopologyViolation,
    },
    DistinguishedEmpty { space: usize },
    DistinguishedNotOpen { space: usize },
    /// A space's universe mentions worlds outside `W`.
    UniverseOutOfRange { space: usize },
    /// The space universes do not jointly cover `W`.
    WorldsNotCovered { missing: WorldSet },
    /// The atom's truth set is not a union of open sets.
    AtomNotUnionOfOpens { variable: String },
    AtomOutOfRange { variable: String, member: usize },
}

impl fmt::Display for Mt1Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mt1Violation::Topology { space, violation } => {
                write!(f, "space {space}: {violation}")
            }
            Mt1Violation::DistinguishedEmpty { space } => {
                write!(f, "space {space}: distinguished set is empty")
            }
            Mt1Violation::DistinguishedNotOpen { space } => {
                write!(f, "space {space}: distinguished set is not open")
            }
            Mt1Violation::UniverseOutOfRange { space } => {
                write!(f, "space {space}: universe reaches outside the world set")
            }
            Mt1Violation::WorldsNotCovered { missing } => {
                write!(f, "worlds {missing} lie in no space")
            }
            Mt1Violation::AtomNotUnionOfOpens { variable } => {
                write!(f, "valuation of '{variable}' is not a union of open sets")
            }
            Mt1Violation::AtomOutOfRange { variable, member } => {
                write!(f, "valuation of '{variable}' mentions world {member}, which is outside the world set")
            }
        }
    }
}

impl Mt1Model {
    pub fn full_set(&self) -> WorldSet {
        WorldSet::full(self.worlds)
    }

    /// Checks every model invariant, returning all violations found.
    pub fn validate(&self) -> Vec<Mt1Violation> {
        let mut violations = Vec::new();
        let full = self.full_set();
        let mut covered = WorldSet::EMPTY;
        for (i, space) in self.spaces.iter().enumerate() {
            for violation in space.topology.validate() {
                violations.push(Mt1Violation::Topology {
                    space: i,
                    violation,
                });
            }
            if space.distinguished.is_empty() {
                violations.push(Mt1Violation::DistinguishedEmpty { space: i });
            }
            if !space.topology.is_open(space.distinguished) {
                violations.push(Mt1Violation::DistinguishedNotOpen { space: i });
            }
            if !space.topology.universe().is_subset_of(full) {
                violations.push(Mt1Violation::UniverseOutOfRange { space: i });
            }
            covered = covered.union(space.topology.universe());
        }
        if covered.intersection(full) != full {
            violations.push(Mt1Violation::WorldsNotCovered {
                missing: full.difference(covered),
            });
        }
        for (variable, &truth) in &self.valuation {
            if let Some(member) = truth.difference(full).iter().next() {
                violations.push(Mt1Violation::AtomOutOfRange {
                    variable: variable.clone(),
                    member,
                });
                continue;
            }
            let union_of_opens = self
                .spaces
                .iter()
                .flat_map(|s| s.topology.opens())
                .filter(|o| o.is_subset_of(truth))
                .fold(WorldSet::EMPTY, |acc, &o| acc.union(o));
            if union_of_opens != truth {
                violations.push(Mt1Violation::AtomNotUnionOfOpens {
                    variable: variable.clone(),
                });
            }
        }
        violations
    }

    /// Truth set of `formula`, bottom-up over subformulas. Results are only
    /// meaningful on models that pass [`Mt1Model::validate`].
    pub fn eval(&self, formula: &Formula) -> WorldSet {
        let full = self.full_set();
        let mut memo: HashMap<&Formula, WorldSet> = HashMap::new();
        for sub in formula.subformulas() {
            let truth = match sub {
                Formula::Bottom => WorldSet::EMPTY,
                Formula::Var(name) => self
                    .valuation
                    .get(name)
                    .copied()
                    .unwrap_or(WorldSet::EMPTY)
                    .intersection(full),
                Formula::And(a, b) => memo[a.as_ref()].intersection(memo[b.as_ref()]),
                Formula::Or(a, b) => memo[a.as_ref()].union(memo[b.as_ref()]),
                Formula::Implies(a, b) => {
                    let good = memo[a.as_ref()]
                        .complement_in(self.worlds)
                        .union(memo[b.as_ref()]);
                    self.spaces
                        .iter()
                        .fold(WorldSet::EMPTY, |acc, s| acc.union(s.topology.interior(good)))
                }
                Formula::Box(a) => {
                    let body = memo[a.as_ref()];
                    self.spaces
                        .iter()
                        .filter(|s| s.topology.universe().is_subset_of(body))
                        .fold(WorldSet::EMPTY, |acc, s| acc.union(s.distinguished))
                }
            };
            memo.insert(sub, truth);
        }
        memo[formula]
    }

    /// Whether `formula` is true at every world.
    pub fn is_true(&self, formula: &Formula) -> bool {
        self.eval(formula) == self.full_set()
    }
}
