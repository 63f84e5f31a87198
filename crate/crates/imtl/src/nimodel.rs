//! Neighborhood frames and models, and the forcing relation over them.
//!
//! A frame assigns every world `w` a minimal neighborhood `min[w]` and a
//! maximal neighborhood `max[w]`; the full neighborhood family is implicit
//! (every set between the two). Implication quantifies over `min[w]`, the
//! box over `max[w]`, so the pair is all the semantics ever needs. Frame
//! conditions, each named by a letter the validator reports:
//!
//! - (a) `w ∈ min[w]`
//! - (b) `min[w] ⊆ max[w]`
//! - (c) `u ∈ min[w]` implies `min[u] ⊆ min[w]`
//! - (e) `u ∈ min[w]` implies `max[u] ⊆ max[w]`
//! - (f) `v ∈ max[w]` implies `min[v] ⊆ max[w]` (the T-condition; checked
//!   only on frames built with it enabled)
//!
//! Valuations must be monotone: a world forcing an atom drags its whole
//! minimal neighborhood along. Validators return violations as data rather
//! than failing fast, so callers can show all of them at once.

use crate::formula::Formula;
use crate::worldset::{WorldSet, MAX_WORLDS};
use std::collections::{BTreeMap, HashMap};
use std::fmt;

/// Atom truth sets, keyed by variable name.
pub type Valuation = BTreeMap<String, WorldSet>;

/// A structurally ill-formed frame: wrong shapes, not wrong mathematics.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FrameShapeError {
    #[error("a frame needs at least one world")]
    Empty,
    #[error("a frame supports at most {MAX_WORLDS} worlds, got {0}")]
    TooLarge(usize),
    #[error("min and max assign {min} and {max} worlds respectively; they must agree")]
    MismatchedLengths { min: usize, max: usize },
    #[error("world {member} in a neighborhood of world {world} is outside the universe of {n} worlds")]
    MemberOutOfRange { world: usize, member: usize, n: usize },
}

/// A neighborhood frame in minimal/maximal representation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NimFrame {
    min: Vec<WorldSet>,
    max: Vec<WorldSet>,
    t_condition: bool,
}

impl NimFrame {
    /// Builds a frame from per-world minimal and maximal neighborhoods.
    /// Shapes are checked here; the mathematical frame conditions are the
    /// business of [`NimFrame::validate`].
    pub fn new(
        min: Vec<WorldSet>,
        max: Vec<WorldSet>,
        t_condition: bool,
    ) -> Result<NimFrame, FrameShapeError> {
        let n = min.len();
        if n == 0 {
            return Err(FrameShapeError::Empty);
        }
        if n > MAX_WORLDS {
            return Err(FrameShapeError::TooLarge(n));
        }
        if max.len() != n {
            return Err(FrameShapeError::MismatchedLengths {
                min: n,
                max: max.len(),
            });
        }
        let universe = WorldSet::full(n);
        for (world, sets) in min.iter().zip(&max).enumerate() {
            for set in [sets.0, sets.1] {
                if let Some(member) = set.difference(universe).iter().next() {
                    return Err(FrameShapeError::MemberOutOfRange { world, member, n });
                }
            }
        }
        Ok(NimFrame {
            min,
            max,
            t_condition,
        })
    }

    pub fn world_count(&self) -> usize {
        self.min.len()
    }

    /// The universe `{0, .., n-1}`.
    pub fn universe(&self) -> WorldSet {
        WorldSet::full(self.world_count())
    }

    /// Minimal neighborhood of `w`.
    pub fn min(&self, w: usize) -> WorldSet {
        self.min[w]
    }

    /// Maximal neighborhood of `w`.
    pub fn max(&self, w: usize) -> WorldSet {
        self.max[w]
    }

    /// Whether the T-condition (f) is part of this frame's contract.
    pub fn t_condition(&self) -> bool {
        self.t_condition
    }

    pub fn min_sets(&self) -> &[WorldSet] {
        &self.min
    }

    pub fn max_sets(&self) -> &[WorldSet] {
        &self.max
    }

    /// Checks the frame conditions, returning every violation found. The
    /// result is empty exactly when the frame is valid. Condition (f) is
    /// checked only when the frame carries the T-condition.
    pub fn validate(&self) -> Vec<FrameViolation> {
        let mut violations = Vec::new();
        let n = self.world_count();
        for w in 0..n {
            if !self.min[w].contains(w) {
                violations.push(FrameViolation::Reflexivity { world: w });
            }
            if !self.min[w].is_subset_of(self.max[w]) {
                violations.push(FrameViolation::MinOutsideMax { world: w });
            }
            for u in self.min[w].iter() {
                if !self.min[u].is_subset_of(self.min[w]) {
                    violations.push(FrameViolation::MinNotClosed { world: w, via: u });
                }
            }
            for u in self.min[w].iter() {
                if !self.max[u].is_subset_of(self.max[w]) {
                    violations.push(FrameViolation::MaxNotClosed { world: w, via: u });
                }
            }
            if self.t_condition {
                for v in self.max[w].iter() {
                    if !self.min[v].is_subset_of(self.max[w]) {
                        violations.push(FrameViolation::TCondition { world: w, via: v });
                    }
                }
            }
        }
        violations
    }
}

/// A broken frame condition, with the worlds that witness the break.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum FrameViolation {
    /// (a): `world ∉ min[world]`.
    Reflexivity { world: usize },
    /// (b): `min[world] ⊄ max[world]`.
    MinOutsideMax { world: usize },
    /// (c): `via ∈ min[world]` but `min[via] ⊄ min[world]`.
    MinNotClosed { world: usize, via: usize },
    /// (e): `via ∈ min[world]` but `max[via] ⊄ max[world]`.
    MaxNotClosed { world: usize, via: usize },
    /// (f): `via ∈ max[world]` but `min[via] ⊄ max[world]`.
    TCondition { world: usize, via: usize },
}

impl FrameViolation {
    /// The letter of the broken condition: one of `a b c e f`.
    pub fn letter(&self) -> char {
        match self {
            FrameViolation::Reflexivity { .. } => 'a',
            FrameViolation::MinOutsideMax { .. } => 'b',
            FrameViolation::MinNotClosed { .. } => 'c',
            FrameViolation::MaxNotClosed { .. } => 'e',
            FrameViolation::TCondition { .. } => 'f',
        }
    }
}

impl fmt::Display for FrameViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FrameViolation::Reflexivity { world } => {
                write!(f, "condition (a): world {world} is not in its own minimal neighborhood")
            }
            FrameViolation::MinOutsideMax { world } => {
                write!(f, "condition (b): min[{world}] is not contained in max[{world}]")
            }
            FrameViolation::MinNotClosed { world, via } => write!(
                f,
                "condition (c): {via} is in min[{world}] but min[{via}] is not contained in min[{world}]"
            ),
            FrameViolation::MaxNotClosed { world, via } => write!(
                f,
                "condition (e): {via} is in min[{world}] but max[{via}] is not contained in max[{world}]"
            ),
            FrameViolation::TCondition { world, via } => write!(
                f,
                "condition (f): {via} is in max[{world}] but min[{via}] is not contained in max[{world}]"
            ),
        }
    }
}

/// A model: a frame plus a valuation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NimModel {
    pub frame: NimFrame,
    pub valuation: Valuation,
}

/// A broken model invariant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModelViolation {
    Frame(FrameViolation),
    /// The atom's truth set mentions a world outside the universe.
    AtomOutOfRange { variable: String, member: usize },
    /// `world` forces the atom but `min[world]` does not.
    NonMonotoneAtom { variable: String, world: usize },
}

impl fmt::Display for ModelViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelViolation::Frame(v) => v.fmt(f),
            ModelViolation::AtomOutOfRange { variable, member } => {
                write!(f, "valuation of '{variable}' mentions world {member}, which is outside the universe")
            }
            ModelViolation::NonMonotoneAtom { variable, world } => write!(
                f,
                "valuation of '{variable}' is not monotone: world {world} forces it but min[{world}] does not"
            ),
        }
    }
}

impl NimModel {
    pub fn new(frame: NimFrame, valuation: Valuation) -> NimModel {
        NimModel { frame, valuation }
    }

    /// Frame conditions plus valuation monotonicity, as data.
    pub fn validate(&self) -> Vec<ModelViolation> {
        let mut violations: Vec<ModelViolation> = self
            .frame
            .validate()
            .into_iter()
            .map(ModelViolation::Frame)
            .collect();
        let universe = self.frame.universe();
        for (variable, truth) in &self.valuation {
            if let Some(member) = truth.difference(universe).iter().next() {
                violations.push(ModelViolation::AtomOutOfRange {
                    variable: variable.clone(),
                    member,
                });
                continue;
            }
            for world in truth.iter() {
                if !self.frame.min(world).is_subset_of(*truth) {
                    violations.push(ModelViolation::NonMonotoneAtom {
                        variable: variable.clone(),
                        world,
                    });
                }
            }
        }
        violations
    }

    /// The forcing relation at a single world, by direct recursion on the
    /// formula. Kept deliberately independent of [`NimModel::truth_set`] so
    /// each can check the other.
    ///
    /// # Panics
    ///
    /// Panics if `world` is outside the universe. Results are only
    /// meaningful on models that pass [`NimModel::validate`].
    pub fn forces(&self, world: usize, formula: &Formula) -> bool {
        assert!(
            world < self.frame.world_count(),
            "world {world} outside a universe of {} worlds",
            self.frame.world_count()
        );
        match formula {
            Formula::Bottom => false,
            Formula::Var(name) => self
                .valuation
                .get(name)
                .is_some_and(|truth| truth.contains(world)),
            Formula::And(a, b) => self.forces(world, a) && self.forces(world, b),
            Formula::Or(a, b) => self.forces(world, a) || self.forces(world, b),
            Formula::Implies(a, b) => self
                .frame
                .min(world)
                .iter()
                .all(|v| !self.forces(v, a) || self.forces(v, b)),
            Formula::Box(a) => self.frame.max(world).iter().all(|v| self.forces(v, a)),
        }
    }

    /// The set of worlds forcing `formula`, computed bottom-up over
    /// subformulas with set operations.
    pub fn truth_set(&self, formula: &Formula) -> WorldSet {
        truth_set_in(&self.frame, &self.valuation, formula)
    }

    /// Whether every world forces `formula`.
    pub fn is_satisfied(&self, formula: &Formula) -> bool {
        self.truth_set(formula) == self.frame.universe()
    }
}

/// Bottom-up truth-set evaluation against an explicit valuation. This is the
/// second, set-algebraic route to the forcing relation: for implication it
/// computes `{w : min[w] ⊆ (W ∖ A) ∪ B}` from the component truth sets `A`
/// and `B`, and for the box `{w : max[w] ⊆ A}`.
pub fn truth_set_in(frame: &NimFrame, valuation: &Valuation, formula: &Formula) -> WorldSet {
    let n = frame.world_count();
    let universe = frame.universe();
    let mut memo: HashMap<&Formula, WorldSet> = HashMap::new();
    for sub in formula.subformulas() {
        let truth = match sub {
            Formula::Bottom => WorldSet::EMPTY,
            Formula::Var(name) => valuation
                .get(name)
                .copied()
                .unwrap_or(WorldSet::EMPTY)
                .intersection(universe),
            Formula::And(a, b) => memo[a.as_ref()].intersection(memo[b.as_ref()]),
            Formula::Or(a, b) => memo[a.as_ref()].union(memo[b.as_ref()]),
            Formula::Implies(a, b) => {
                let good = memo[a.as_ref()].complement_in(n).union(memo[b.as_ref()]);
                (0..n)
                    .filter(|&w| frame.min(w).is_subset_of(good))
                    .collect()
            }
            Formula::Box(a) => {
                let body = memo[a.as_ref()];
                (0..n)
                    .filter(|&w| frame.max(w).is_subset_of(body))
                    .collect()
            }
        };
        memo.insert(sub, truth);
    }
    memo[formula]
}
