//! Models over families of Alexandroff spaces where *minimal open
//! neighborhoods* are the currency of truth.
//!
//! The same space-family data as [`crate::mt2`], but every clause builds
//! its answer as a union of entries from the model's neighborhood
//! inventory — the smallest open neighborhood of each world in each space
//! containing it:
//!
//! - atoms must denote unions of inventory entries;
//! - implication unions every entry contained in `(W ∖ A) ∪ B`, wherever
//!   it comes from;
//! - the box unions, for each space whose universe is contained in the
//!   body's truth set, that space's *least* nonempty open set.
//!
//! The box clause is deliberately narrower than "every inventory entry of
//! a qualifying space". An inventory entry for a point outside the least
//! open can reach points whose own modal horizon extends past the
//! qualifying universe, and admitting such entries lets the box leak to
//! worlds the frame reading refutes (see the tests here and in
//! [`crate::transform`]). The least open is the one set every point of the
//! space agrees on, and on spaces derived from a frame it is exactly the
//! generating world's minimal neighborhood.

use crate::formula::Formula;
use crate::nimodel::Valuation;
use crate::topology::{FiniteTopology, TopologyViolation};
use crate::worldset::WorldSet;
use std::collections::HashMap;
use std::fmt;

/// An Alexandroff-family model evaluated through minimal neighborhoods.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mt3Model {
    pub worlds: usize,
    pub spaces: Vec<FiniteTopology>,
    pub valuation: Valuation,
}

/// One inventory entry: the smallest open neighborhood of `world` in
/// `space`, recorded with that provenance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MinNeighborhood {
    pub space: usize,
    pub world: usize,
    pub set: WorldSet,
}

/// A broken model invariant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Mt3Violation {
    Topology {
        space: usize,
        violation: TopologyViolation,
    },
    UniverseOutOfRange { space: usize },
    WorldsNotCovered { missing: WorldSet },
    AtomOutOfRange { variable: String, member: usize },
    /// The atom's truth set is not a union of minimal open neighborhoods.
    AtomNotUnionOfNeighborhoods { variable: String },
}

impl fmt::Display for Mt3Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mt3Violation::Topology { space, violation } => write!(f, "space {space}: {violation}"),
            Mt3Violation::UniverseOutOfRange { space } => {
                write!(f, "space {space}: universe reaches outside the world set")
            }
            Mt3Violation::WorldsNotCovered { missing } => write!(f, "worlds {missing} lie in no space"),
            Mt3Violation::AtomOutOfRange { variable, member } => {
                write!(f, "valuation of '{variable}' mentions world {member}, which is outside the world set")
            }
            Mt3Violation::AtomNotUnionOfNeighborhoods { variable } => write!(
                f,
                "valuation of '{variable}' is not a union of minimal open neighborhoods"
            ),
        }
    }
}

impl Mt3Model {
    pub fn full_set(&self) -> WorldSet {
        WorldSet::full(self.worlds)
    }

    /// The full neighborhood inventory, space-major then world-ascending.
    pub fn min_neighborhood_inventory(&self) -> Vec<MinNeighborhood> {
        let mut inventory = Vec::new();
        for (i, space) in self.spaces.iter().enumerate() {
            for world in space.universe().iter() {
                let set = space
                    .min_open_nbhd(world)
                    .expect("world ranges over the universe");
                inventory.push(MinNeighborhood {
                    space: i,
                    world,
                    set,
                });
            }
        }
        inventory
    }

    /// Checks every model invariant, returning all violations found.
    pub fn validate(&self) -> Vec<Mt3Violation> {
        let mut violations = Vec::new();
        let full = self.full_set();
        let mut covered = WorldSet::EMPTY;
        for (i, space) in self.spaces.iter().enumerate() {
            for violation in space.validate() {
                violations.push(Mt3Violation::Topology {
                    space: i,
                    violation,
                });
            }
            if !space.universe().is_subset_of(full) {
                violations.push(Mt3Violation::UniverseOutOfRange { space: i });
            }
            covered = covered.union(space.universe());
        }
        if covered.intersection(full) != full {
            violations.push(Mt3Violation::WorldsNotCovered {
                missing: full.difference(covered),
            });
        }
        let inventory = self.min_neighborhood_inventory();
        for (variable, &truth) in &self.valuation {
            if let Some(member) = truth.difference(full).iter().next() {
                violations.push(Mt3Violation::AtomOutOfRange {
                    variable: variable.clone(),
                    member,
                });
                continue;
            }
            let union: WorldSet = inventory
                .iter()
                .filter(|e| e.set.is_subset_of(truth))
                .fold(WorldSet::EMPTY, |acc, e| acc.union(e.set));
            if union != truth {
                violations.push(Mt3Violation::AtomNotUnionOfNeighborhoods {
                    variable: variable.clone(),
                });
            }
        }
        violations
    }

    /// Truth set of `formula`, bottom-up over subformulas. Results are only
    /// meaningful on models that pass [`Mt3Model::validate`].
    pub fn eval(&self, formula: &Formula) -> WorldSet {
        let inventory = self.min_neighborhood_inventory();
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
                    inventory
                        .iter()
                        .filter(|e| e.set.is_subset_of(good))
                        .fold(WorldSet::EMPTY, |acc, e| acc.union(e.set))
                }
                Formula::Box(a) => {
                    let body = memo[a.as_ref()];
                    self.spaces
                        .iter()
                        .filter(|s| s.universe().is_subset_of(body))
                        .filter_map(FiniteTopology::least_nonempty_open)
                        .fold(WorldSet::EMPTY, |acc, least| acc.union(least))
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
