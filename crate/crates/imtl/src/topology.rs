//! Finite topological spaces over world sets, and the per-world spaces a
//! neighborhood frame induces.
//!
//! Every space here is finite, so being a topology means: contains the empty
//! set and the universe, and is closed under union and intersection. Closure
//! under arbitrary intersections then comes for free, but the validator
//! still checks its useful consequence directly: every point has a smallest
//! open neighborhood.
//!
//! From a frame and a world `w`, two spaces arise over the universe
//! `max[w]`:
//!
//! - [`w_topology`]: all `X ⊆ max[w]` such that `min[v] ⊆ X` for every
//!   `v ∈ X`;
//! - [`w_min_topology`]: the same, further restricted to `X ⊇ min[w]`, plus
//!   the empty set (included by fiat so the family is a topology).
//!
//! Both constructions enumerate every subset of `max[w]` and refuse
//! universes past a size bound.

use crate::nimodel::NimFrame;
use crate::worldset::WorldSet;
use std::fmt;

/// A finite topological space: a universe and its family of open sets,
/// kept deduplicated and sorted by cardinality then lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteTopology {
    universe: WorldSet,
    opens: Vec<WorldSet>,
}

/// A way a family of sets fails to be a topology on its universe.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TopologyViolation {
    EmptySetMissing,
    UniverseMissing,
    /// An open mentions points outside the universe.
    OpenOutsideUniverse { open: WorldSet },
    /// Two opens whose union is not open.
    UnionNotOpen { a: WorldSet, b: WorldSet },
    /// Two opens whose intersection is not open.
    IntersectionNotOpen { a: WorldSet, b: WorldSet },
    /// The intersection of all opens containing the point is not itself
    /// open, i.e. the point has no smallest open neighborhood.
    MinimalNeighborhoodNotOpen { world: usize },
}

impl fmt::Display for TopologyViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TopologyViolation::EmptySetMissing => write!(f, "the empty set is not open"),
            TopologyViolation::UniverseMissing => write!(f, "the universe is not open"),
            TopologyViolation::OpenOutsideUniverse { open } => {
                write!(f, "open {open} is not contained in the universe")
            }
            TopologyViolation::UnionNotOpen { a, b } => {
                write!(f, "union of opens {a} and {b} is not open")
            }
            TopologyViolation::IntersectionNotOpen { a, b } => {
                write!(f, "intersection of opens {a} and {b} is not open")
            }
            TopologyViolation::MinimalNeighborhoodNotOpen { world } => {
                write!(f, "point {world} has no smallest open neighborhood")
            }
        }
    }
}

/// Asking about a point outside the universe.
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("point {world} is outside the universe {universe}")]
pub struct PointOutsideUniverse {
    pub world: usize,
    pub universe: WorldSet,
}

impl FiniteTopology {
    /// Builds a space from any family of sets, canonicalizing the family
    /// (deduplicate, sort). Whether it actually is a topology is the
    /// business of [`FiniteTopology::validate`].
    pub fn new(universe: WorldSet, opens: impl IntoIterator<Item = WorldSet>) -> FiniteTopology {
        let mut opens: Vec<WorldSet> = opens.into_iter().collect();
        opens.sort_by_key(|o| (o.len(), *o));
        opens.dedup();
        FiniteTopology { universe, opens }
    }

    pub fn universe(&self) -> WorldSet {
        self.universe
    }

    /// The open sets, in canonical order.
    pub fn opens(&self) -> &[WorldSet] {
        &self.opens
    }

    pub fn is_open(&self, x: WorldSet) -> bool {
        self.opens.binary_search_by_key(&(x.len(), x), |o| (o.len(), *o)).is_ok()
    }

    /// Checks the topology laws, returning every violation found; empty
    /// exactly when this is a topology on its universe.
    pub fn validate(&self) -> Vec<TopologyViolation> {
        let mut violations = Vec::new();
        if !self.is_open(WorldSet::EMPTY) {
            violations.push(TopologyViolation::EmptySetMissing);
        }
        if !self.is_open(self.universe) {
            violations.push(TopologyViolation::UniverseMissing);
        }
        for &open in &self.opens {
            if !open.is_subset_of(self.universe) {
                violations.push(TopologyViolation::OpenOutsideUniverse { open });
            }
        }
        for (i, &a) in self.opens.iter().enumerate() {
            for &b in &self.opens[i + 1..] {
                if !self.is_open(a.union(b)) {
                    violations.push(TopologyViolation::UnionNotOpen { a, b });
                }
                if !self.is_open(a.intersection(b)) {
                    violations.push(TopologyViolation::IntersectionNotOpen { a, b });
                }
            }
        }
        for world in self.universe.iter() {
            let nbhd = self.smallest_nbhd(world);
            if !self.is_open(nbhd) {
                violations.push(TopologyViolation::MinimalNeighborhoodNotOpen { world });
            }
        }
        violations
    }

    fn smallest_nbhd(&self, world: usize) -> WorldSet {
        self.opens
            .iter()
            .filter(|o| o.contains(world))
            .fold(self.universe, |acc, &o| acc.intersection(o))
    }

    /// The largest open contained in `x` (intersected with the universe).
    pub fn interior(&self, x: WorldSet) -> WorldSet {
        let target = x.intersection(self.universe);
        self.opens
            .iter()
            .filter(|o| o.is_subset_of(target))
            .fold(WorldSet::EMPTY, |acc, &o| acc.union(o))
    }

    /// The smallest open neighborhood of a point: the intersection of every
    /// open containing it.
    pub fn min_open_nbhd(&self, world: usize) -> Result<WorldSet, PointOutsideUniverse> {
        if !self.universe.contains(world) {
            return Err(PointOutsideUniverse {
                world,
                universe: self.universe,
            });
        }
        Ok(self.smallest_nbhd(world))
    }

    /// The open set contained in every other nonempty open, when the space
    /// has one. Spaces built around a frame's minimal neighborhoods always
    /// do; a discrete space on two or more points does not.
    pub fn least_nonempty_open(&self) -> Option<WorldSet> {
        let bottom = self
            .opens
            .iter()
            .filter(|o| !o.is_empty())
            .copied()
            .reduce(|acc, o| acc.intersection(o))?;
        (!bottom.is_empty() && self.is_open(bottom)).then_some(bottom)
    }
}

/// Largest `max[w]` the per-world space builders will enumerate subsets of.
pub const ENUMERATION_LIMIT: usize = 12;

/// Why a per-world space cannot be built.
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum WTopologyError {
    #[error("world {world} is outside a universe of {n} worlds")]
    WorldOutOfRange { world: usize, n: usize },
    #[error("frame was built without the T-condition, which the construction relies on")]
    TConditionRequired,
    #[error("max[{world}] has {size} worlds; enumerating its subsets is refused past {limit}")]
    EnumerationTooLarge {
        world: usize,
        size: usize,
        limit: usize,
    },
}

fn check_buildable(
    frame: &NimFrame,
    world: usize,
    limit: usize,
) -> Result<(), WTopologyError> {
    if world >= frame.world_count() {
        return Err(WTopologyError::WorldOutOfRange {
            world,
            n: frame.world_count(),
        });
    }
    if !frame.t_condition() {
        return Err(WTopologyError::TConditionRequired);
    }
    let size = frame.max(world).len();
    if size > limit {
        return Err(WTopologyError::EnumerationTooLarge { world, size, limit });
    }
    Ok(())
}

fn downward_witness(frame: &NimFrame, x: WorldSet) -> Option<usize> {
    x.iter().find(|&v| !frame.min(v).is_subset_of(x))
}

/// The space of all `X ⊆ max[w]` closed under taking minimal neighborhoods
/// of members. Requires a valid frame carrying the T-condition — without it
/// `max[w]` itself can fail the closure test and the family is not a
/// topology.
pub fn w_topology(frame: &NimFrame, world: usize) -> Result<FiniteTopology, WTopologyError> {
    w_topology_bounded(frame, world, ENUMERATION_LIMIT)
}

/// [`w_topology`] with an explicit subset-enumeration bound.
pub fn w_topology_bounded(
    frame: &NimFrame,
    world: usize,
    limit: usize,
) -> Result<FiniteTopology, WTopologyError> {
    check_buildable(frame, world, limit)?;
    let universe = frame.max(world);
    let opens = universe
        .subsets()
        .filter(|&x| downward_witness(frame, x).is_none());
    Ok(FiniteTopology::new(universe, opens))
}

/// The space of all `X ⊆ max[w]` that contain `min[w]` and are closed under
/// taking minimal neighborhoods of members, plus the empty set (included by
/// fiat). Same preconditions as [`w_topology`].
pub fn w_min_topology(frame: &NimFrame, world: usize) -> Result<FiniteTopology, WTopologyError> {
    w_min_topology_bounded(frame, world, ENUMERATION_LIMIT)
}

/// [`w_min_topology`] with an explicit subset-enumeration bound.
pub fn w_min_topology_bounded(
    frame: &NimFrame,
    world: usize,
    limit: usize,
) -> Result<FiniteTopology, WTopologyError> {
    check_buildable(frame, world, limit)?;
    let universe = frame.max(world);
    let opens = std::iter::once(WorldSet::EMPTY).chain(
        universe
            .subsets_including(frame.min(world))
            .filter(|&x| downward_witness(frame, x).is_none()),
    );
    Ok(FiniteTopology::new(universe, opens))
}
