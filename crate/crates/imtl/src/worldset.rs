//! Small sets of worlds, represented as 64-bit masks.
//!
//! Every structure in this crate lives over a universe `{0, .., n-1}` with
//! `n <= 64`, so a set of worlds fits in one machine word and the set algebra
//! the semantics leans on (union, intersection, relative complement, subset
//! tests) compiles down to single instructions.

use std::fmt;
use std::ops::{BitAnd, BitOr, Sub};

/// Hard cap on the number of worlds a model may have.
pub const MAX_WORLDS: usize = 64;

/// A set of worlds drawn from `{0, .., 63}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct WorldSet {
    bits: u64,
}

impl fmt::Debug for WorldSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl WorldSet {
    /// The empty set.
    pub const EMPTY: WorldSet = WorldSet { bits: 0 };

    /// The full universe `{0, .., n-1}`.
    ///
    /// # Panics
    ///
    /// Panics if `n > 64`.
    pub fn full(n: usize) -> WorldSet {
        assert!(n <= MAX_WORLDS, "universe too large: {n} worlds");
        if n == 0 {
            WorldSet::EMPTY
        } else {
            WorldSet {
                bits: u64::MAX >> (MAX_WORLDS - n),
            }
        }
    }

    /// The set `{w}`.
    ///
    /// # Panics
    ///
    /// Panics if `w >= 64`.
    pub fn singleton(w: usize) -> WorldSet {
        assert!(w < MAX_WORLDS, "world index out of range: {w}");
        WorldSet { bits: 1 << w }
    }

    pub fn is_empty(self) -> bool {
        self.bits == 0
    }

    pub fn len(self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn contains(self, w: usize) -> bool {
        w < MAX_WORLDS && self.bits >> w & 1 == 1
    }

    pub fn insert(&mut self, w: usize) {
        assert!(w < MAX_WORLDS, "world index out of range: {w}");
        self.bits |= 1 << w;
    }

    pub fn remove(&mut self, w: usize) {
        if w < MAX_WORLDS {
            self.bits &= !(1 << w);
        }
    }

    /// Flips membership of `w`, returning the modified set.
    pub fn toggled(self, w: usize) -> WorldSet {
        assert!(w < MAX_WORLDS, "world index out of range: {w}");
        WorldSet {
            bits: self.bits ^ (1 << w),
        }
    }

    pub fn union(self, other: WorldSet) -> WorldSet {
        WorldSet {
            bits: self.bits | other.bits,
        }
    }

    pub fn intersection(self, other: WorldSet) -> WorldSet {
        WorldSet {
            bits: self.bits & other.bits,
        }
    }

    /// Set difference `self \ other`.
    pub fn difference(self, other: WorldSet) -> WorldSet {
        WorldSet {
            bits: self.bits & !other.bits,
        }
    }

    /// Complement relative to the universe `{0, .., n-1}`.
    pub fn complement_in(self, n: usize) -> WorldSet {
        WorldSet::full(n).difference(self)
    }

    pub fn is_subset_of(self, other: WorldSet) -> bool {
        self.bits & !other.bits == 0
    }

    /// Iterates members in ascending order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.bits;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let w = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(w)
            }
        })
    }

    /// All subsets of `self`, in mask order (the empty set first, `self` last).
    pub fn subsets(self) -> impl Iterator<Item = WorldSet> {
        let mask = self.bits;
        let mut next = Some(0u64);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == mask {
                None
            } else {
                Some(cur.wrapping_sub(mask) & mask)
            };
            Some(WorldSet { bits: cur })
        })
    }

    /// All subsets of `self` that include `base`, in the same order as
    /// [`WorldSet::subsets`].
    pub fn subsets_including(self, base: WorldSet) -> impl Iterator<Item = WorldSet> {
        self.difference(base)
            .subsets()
            .map(move |s| s.union(base))
    }
}

impl FromIterator<usize> for WorldSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> WorldSet {
        let mut set = WorldSet::EMPTY;
        for w in iter {
            set.insert(w);
        }
        set
    }
}

impl BitOr for WorldSet {
    type Output = WorldSet;
    fn bitor(self, rhs: WorldSet) -> WorldSet {
        self.union(rhs)
    }
}

impl BitAnd for WorldSet {
    type Output = WorldSet;
    fn bitand(self, rhs: WorldSet) -> WorldSet {
        self.intersection(rhs)
    }
}

impl Sub for WorldSet {
    type Output = WorldSet;
    fn sub(self, rhs: WorldSet) -> WorldSet {
        self.difference(rhs)
    }
}

/// Orders sets lexicographically by their ascending member lists, so
/// `{0, 3} < {1, 2}` and `{0} < {0, 1}`. This is the order canonical
/// serializations and enumeration use.
impl Ord for WorldSet {
    fn cmp(&self, other: &WorldSet) -> std::cmp::Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for WorldSet {
    fn partial_cmp(&self, other: &WorldSet) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for WorldSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, w) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{w}")?;
        }
        write!(f, "}}")
    }
}
