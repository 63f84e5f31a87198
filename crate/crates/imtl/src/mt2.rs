//! Models over families of Alexandroff spaces, evaluated through the
//! neighborhoods the family induces.
//!
//! Each world `w` picks up, from the spaces whose universe contains it,
//!
//! - `min[w]`: the intersection of its smallest open neighborhoods there,
//! - `max[w]`: the intersection of those universes,
//!
//! and the induced `(min, max)` pair always satisfies all five frame
//! conditions of [`crate::nimodel`], T-condition included — that is the
//! content of [`Mt2Model::derive_neighborhoods`] and what makes
//! [`crate::transform::mt2_to_nim`] total on valid models. Note `min[w]`
//! itself need not be open in any single space; only the pieces it is cut
//! from are.
//!
//! Truth sets: implication unions every `min[w]` contained in
//! `(W ∖ A) ∪ B`; the box unions every `min[w]` with `max[w] ⊆ A`.
//! Valuations are constrained exactly like neighborhood models: monotone
//! over the derived `min`.

use crate::formula::Formula;
use crate::nimodel::{FrameShapeError, NimFrame, Valuation};
use crate::topology::{FiniteTopology, TopologyViolation};
use crate::worldset::WorldSet;
use std::collections::HashMap;
use std::fmt;

/// An Alexandroff-family model over `worlds` worlds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mt2Model {
    pub worlds: usize,
    pub spaces: Vec<FiniteTopology>,
    pub valuation: Valuation,
}

/// Per-world neighborhoods induced by a space family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivedNeighborhoods {
    pub min: Vec<WorldSet>,
    pub max: Vec<WorldSet>,
}

impl DerivedNeighborhoods {
    /// Packages the neighborhoods as a frame carrying the T-condition.
    pub fn into_frame(self) -> Result<NimFrame, FrameShapeError> {
        NimFrame::new(self.min, self.max, true)
    }
}

/// A world belonging to no space, so its neighborhoods are undefined.
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("world {world} lies in no space")]
pub struct UncoveredWorld {
    pub world: usize,
}

/// A broken model invariant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Mt2Violation {
    Topology {
        space: usize,
        violation: TopologyViolation,
    },
    UniverseOutOfRange { space: usize },
    WorldsNotCovered { missing: WorldSet },
    AtomOutOfRange { variable: String, member: usize },
    /// `world` satisfies the atom but its derived `min[world]` does not.
    NonMonotoneAtom { variable: String, world: usize },
}

impl fmt::Display for Mt2Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mt2Violation::Topology { space, violation } => write!(f, "space {space}: {violation}"),
            Mt2Violation::UniverseOutOfRange { space } => {
                write!(f, "space {space}: universe reaches outside the world set")
            }
            Mt2Violation::WorldsNotCovered { missing } => write!(f, "worlds {missing} lie in no space"),
            Mt2Violation::AtomOutOfRange { variable, member } => {
                write!(f, "valuation of '{variable}' mentions world {member}, which is outside the world set")
            }
            Mt2Violation::NonMonotoneAtom { variable, world } => write!(
                f,
                "valuation of '{variable}' is not monotone over derived neighborhoods at world {world}"
            ),
        }
    }
}

impl Mt2Model {
    pub fn full_set(&self) -> WorldSet {
        WorldSet::full(self.worlds)
    }

    /// Every space containing `w`, by index.
    fn spaces_of(&self, w: usize) -> impl Iterator<Item = &FiniteTopology> {
        self.spaces.iter().filter(move |s| s.universe().contains(w))
    }

    /// Intersects smallest neighborhoods and universes across the spaces of
    /// each world. Fails on the first world no space contains.
    pub fn derive_neighborhoods(&self) -> Result<DerivedNeighborhoods, UncoveredWorld> {
        let mut min = Vec::with_capacity(self.worlds);
        let mut max = Vec::with_capacity(self.worlds);
        for w in 0..self.worlds {
            let mut min_w: Option<WorldSet> = None;
            let mut max_w: Option<WorldSet> = None;
            for space in self.spaces_of(w) {
                let nbhd = space
                    .min_open_nbhd(w)
                    .expect("space was selected because it contains w");
                min_w = Some(min_w.map_or(nbhd, |acc| acc.intersection(nbhd)));
                max_w = Some(max_w.map_or(space.universe(), |acc| {
                    acc.intersection(space.universe())
                }));
            }
            match (min_w, max_w) {
                (Some(a), Some(b)) => {
                    min.push(a);
                    max.push(b);
                }
                _ => return Err(UncoveredWorld { world: w }),
            }
        }
        Ok(DerivedNeighborhoods { min, max })
    }

    /// Checks every model invariant, returning all violations found.
    pub fn validate(&self) -> Vec<Mt2Violation> {
        let mut violations = Vec::new();
        let full = self.full_set();
        let mut covered = WorldSet::EMPTY;
        for (i, space) in self.spaces.iter().enumerate() {
            for violation in space.validate() {
                violations.push(Mt2Violation::Topology {
                    space: i,
                    violation,
                });
            }
            if !space.universe().is_subset_of(full) {
                violations.push(Mt2Violation::UniverseOutOfRange { space: i });
            }
            covered = covered.union(space.universe());
        }
        if covered.intersection(full) != full {
            violations.push(Mt2Violation::WorldsNotCovered {
                missing: full.difference(covered),
            });
        }
        let derived = self.derive_neighborhoods().ok();
        for (variable, &truth) in &self.valuation {
            if let Some(member) = truth.difference(full).iter().next() {
                violations.push(Mt2Violation::AtomOutOfRange {
                    variable: variable.clone(),
                    member,
                });
                continue;
            }
            if let Some(derived) = &derived {
                for world in truth.iter() {
                    if !derived.min[world].is_subset_of(truth) {
                        violations.push(Mt2Violation::NonMonotoneAtom {
                            variable: variable.clone(),
                            world,
                        });
                    }
                }
            }
        }
        violations
    }

    /// Truth set of `formula`, bottom-up over subformulas.
    ///
    /// # Panics
    ///
    /// Panics if some world lies in no space; run [`Mt2Model::validate`]
    /// first. Results are only meaningful on valid models.
    pub fn eval(&self, formula: &Formula) -> WorldSet {
        let derived = self
            .derive_neighborhoods()
            .expect("evaluation requires every world to lie in some space");
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
                    derived
                        .min
                        .iter()
                        .filter(|m| m.is_subset_of(good))
                        .fold(WorldSet::EMPTY, |acc, &m| acc.union(m))
                }
                Formula::Box(a) => {
                    let body = memo[a.as_ref()];
                    derived
                        .min
                        .iter()
                        .zip(&derived.max)
                        .filter(|(_, mx)| mx.is_subset_of(body))
                        .fold(WorldSet::EMPTY, |acc, (&mn, _)| acc.union(mn))
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

#[cfg(test)]
mod tests {
    use super::*;

    fn ws(worlds: &[usize]) -> WorldSet {
        worlds.iter().copied().collect()
    }

    fn topo(universe: &[usize], opens: &[&[usize]]) -> FiniteTopology {
        FiniteTopology::new(ws(universe), opens.iter().map(|o| ws(o)))
    }

    fn fml(s: &str) -> Formula {
        s.parse().unwrap()
    }

    /// Sierpinski space on {0,1} plus a discrete point {1}; induces the
    /// frame min = [{0},{1}], max = [{0,1},{1}].
    fn two_space_model(p: &[usize]) -> Mt2Model {
        Mt2Model {
            worlds: 2,
            spaces: vec![
                topo(&[0, 1], &[&[], &[0], &[0, 1]]),
                topo(&[1], &[&[], &[1]]),
            ],
            valuation: Valuation::from([("p".to_owned(), ws(p))]),
        }
    }

    #[test]
    fn derive_on_a_single_discrete_space() {
        let m = Mt2Model {
            worlds: 2,
            spaces: vec![topo(&[0, 1], &[&[], &[0], &[1], &[0, 1]])],
            valuation: Valuation::new(),
        };
        let d = m.derive_neighborhoods().unwrap();
        assert_eq!(d.min, vec![ws(&[0]), ws(&[1])]);
        assert_eq!(d.max, vec![ws(&[0, 1]), ws(&[0, 1])]);
    }

    #[test]
    fn derive_intersects_across_spaces() {
        let d = two_space_model(&[1]).derive_neighborhoods().unwrap();
        assert_eq!(d.min, vec![ws(&[0]), ws(&[1])]);
        assert_eq!(d.max, vec![ws(&[0, 1]), ws(&[1])]);
    }

    #[test]
    fn derive_on_a_single_indiscrete_space() {
        let m = Mt2Model {
            worlds: 2,
            spaces: vec![topo(&[0, 1], &[&[], &[0, 1]])],
            valuation: Valuation::new(),
        };
        let d = m.derive_neighborhoods().unwrap();
        assert_eq!(d.min, vec![ws(&[0, 1]), ws(&[0, 1])]);
        assert_eq!(d.max, vec![ws(&[0, 1]), ws(&[0, 1])]);
    }

    #[test]
    fn derived_neighborhoods_satisfy_all_five_frame_conditions() {
        let m = two_space_model(&[1]);
        let frame = m.derive_neighborhoods().unwrap().into_frame().unwrap();
        assert_eq!(frame.validate(), vec![]);
        assert!(frame.t_condition());
    }

    #[test]
    fn derived_min_need_not_be_open_in_any_space() {
        let m = Mt2Model {
            worlds: 3,
            spaces: vec![
                topo(&[0, 1], &[&[], &[0, 1]]),
                topo(&[0, 2], &[&[], &[0, 2]]),
            ],
            valuation: Valuation::new(),
        };
        assert_eq!(m.validate(), vec![]);
        let d = m.derive_neighborhoods().unwrap();
        assert_eq!(d.min[0], ws(&[0]));
        assert!(m.spaces.iter().all(|s| !s.is_open(ws(&[0]))));
        assert_eq!(d.into_frame().unwrap().validate(), vec![]);
    }

    #[test]
    fn uncovered_worlds_are_an_error_and_a_violation() {
        let m = Mt2Model {
            worlds: 2,
            spaces: vec![topo(&[0], &[&[], &[0]])],
            valuation: Valuation::new(),
        };
        assert_eq!(
            m.derive_neighborhoods().unwrap_err(),
            UncoveredWorld { world: 1 }
        );
        assert!(m
            .validate()
            .contains(&Mt2Violation::WorldsNotCovered { missing: ws(&[1]) }));
    }

    #[test]
    fn non_monotone_atoms_are_reported() {
        let m = Mt2Model {
            worlds: 2,
            spaces: vec![topo(&[0, 1], &[&[], &[0, 1]])],
            valuation: Valuation::from([("p".to_owned(), ws(&[0]))]),
        };
        assert_eq!(
            m.validate(),
            vec![Mt2Violation::NonMonotoneAtom {
                variable: "p".to_owned(),
                world: 0
            }]
        );
    }

    #[test]
    fn eval_box_on_a_discrete_point() {
        let m = Mt2Model {
            worlds: 1,
            spaces: vec![topo(&[0], &[&[], &[0]])],
            valuation: Valuation::from([("p".to_owned(), ws(&[0]))]),
        };
        assert_eq!(m.eval(&fml("[]p")), ws(&[0]));
        assert!(m.is_true(&fml("[]p")));
    }

    #[test]
    fn eval_on_the_two_space_model() {
        let m = two_space_model(&[1]);
        assert_eq!(m.validate(), vec![]);
        assert_eq!(m.eval(&fml("[]p")), ws(&[1]));
        assert_eq!(m.eval(&fml("p -> p")), ws(&[0, 1]));
        assert_eq!(m.eval(&fml("~p")), ws(&[0]));
        assert_eq!(m.eval(&fml("p | ~p")), ws(&[0, 1]));
    }
}
