//! Seeded random generation of valid structures of every kind.
//!
//! Each generator builds validity in rather than rejection-sampling: frames
//! close their neighborhoods under the frame conditions, topologies close
//! their seed sets under union and intersection, and valuations are
//! assembled from the pieces the relevant admissibility notion demands.
//! Everything is driven by a caller-supplied [`Rng`], so a fixed seed
//! reproduces the exact structure.

use crate::mt2::Mt2Model;
use crate::mt3::Mt3Model;
use crate::nimodel::{NimFrame, NimModel, Valuation};
use crate::topology::FiniteTopology;
use crate::worldset::{WorldSet, MAX_WORLDS};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// A reproducible generator from a bare seed.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_subset(rng: &mut impl Rng, of: WorldSet, density: f64) -> WorldSet {
    let mut s = WorldSet::EMPTY;
    for w in of.iter() {
        if rng.gen_bool(density) {
            s.insert(w);
        }
    }
    s
}

/// A uniformly seeded valid frame on `worlds` worlds, carrying the
/// T-condition. Minimal neighborhoods are random reflexive seeds closed
/// transitively; maximal neighborhoods are random supersets closed under
/// the remaining conditions to a fixpoint.
///
/// Panics if `worlds` is zero or exceeds [`MAX_WORLDS`].
pub fn random_frame(rng: &mut impl Rng, worlds: usize) -> NimFrame {
    assert!(
        (1..=MAX_WORLDS).contains(&worlds),
        "worlds must be between 1 and {MAX_WORLDS}, got {worlds}"
    );
    let full = WorldSet::full(worlds);
    let min_density = (rng.gen_range(0.0..=2.0) / worlds as f64).min(1.0);
    let mut min: Vec<WorldSet> = (0..worlds)
        .map(|w| random_subset(rng, full, min_density).union(WorldSet::singleton(w)))
        .collect();
    loop {
        let mut changed = false;
        for w in 0..worlds {
            let grown = min[w].iter().fold(min[w], |acc, u| acc.union(min[u]));
            if grown != min[w] {
                min[w] = grown;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let max_density = (rng.gen_range(0.0..=1.5) / worlds as f64).min(1.0);
    let mut max: Vec<WorldSet> = (0..worlds)
        .map(|w| min[w].union(random_subset(rng, full, max_density)))
        .collect();
    loop {
        let mut changed = false;
        for w in 0..worlds {
            let mut grown = max[w];
            for v in max[w].iter() {
                grown = grown.union(min[v]);
            }
            for u in min[w].iter() {
                grown = grown.union(max[u]);
            }
            if grown != max[w] {
                max[w] = grown;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    NimFrame::new(min, max, true).expect("construction stays within shape bounds")
}

/// A random monotone valuation on `frame`: each atom's truth set is a union
/// of minimal neighborhoods of randomly chosen worlds.
pub fn random_valuation(
    rng: &mut impl Rng,
    frame: &NimFrame,
    variables: &[&str],
) -> Valuation {
    let mut valuation = Valuation::new();
    for &variable in variables {
        let density = rng.gen_range(0.0..=0.7);
        let seeds = random_subset(rng, frame.universe(), density);
        let truth = seeds
            .iter()
            .fold(WorldSet::EMPTY, |acc, w| acc.union(frame.min(w)));
        valuation.insert(variable.to_owned(), truth);
    }
    valuation
}

/// A random valid model: [`random_frame`] plus [`random_valuation`].
pub fn random_model(rng: &mut impl Rng, worlds: usize, variables: &[&str]) -> NimModel {
    let frame = random_frame(rng, worlds);
    let valuation = random_valuation(rng, &frame, variables);
    NimModel { frame, valuation }
}

/// A random topology on `universe`: a few random seed sets closed under
/// union and intersection, together with the empty set and the universe.
pub fn random_topology(rng: &mut impl Rng, universe: WorldSet) -> FiniteTopology {
    let mut opens = vec![WorldSet::EMPTY, universe];
    for _ in 0..rng.gen_range(0..=3usize) {
        let seed = random_subset(rng, universe, 0.5);
        if !opens.contains(&seed) {
            opens.push(seed);
        }
    }
    loop {
        let mut added = false;
        for i in 0..opens.len() {
            for j in i + 1..opens.len() {
                for candidate in [opens[i].union(opens[j]), opens[i].intersection(opens[j])] {
                    if !opens.contains(&candidate) {
                        opens.push(candidate);
                        added = true;
                    }
                }
            }
        }
        if !added {
            break;
        }
    }
    FiniteTopology::new(universe, opens)
}

/// A random family of topologies whose universes cover `{0, .., worlds-1}`.
pub fn random_space_family(rng: &mut impl Rng, worlds: usize) -> Vec<FiniteTopology> {
    assert!(
        (1..=MAX_WORLDS).contains(&worlds),
        "worlds must be between 1 and {MAX_WORLDS}, got {worlds}"
    );
    let full = WorldSet::full(worlds);
    let mut spaces = Vec::new();
    let mut covered = WorldSet::EMPTY;
    for _ in 0..rng.gen_range(1..=3usize) {
        let mut universe = random_subset(rng, full, 0.6);
        if universe.is_empty() {
            universe = WorldSet::singleton(rng.gen_range(0..worlds));
        }
        covered = covered.union(universe);
        spaces.push(random_topology(rng, universe));
    }
    if covered != full {
        let patch = full.difference(covered).union(random_subset(rng, covered, 0.3));
        spaces.push(random_topology(rng, patch));
    }
    spaces
}

/// A random valid Alexandroff-family model with a valuation monotone over
/// the derived neighborhoods.
pub fn random_mt2(rng: &mut impl Rng, worlds: usize, variables: &[&str]) -> Mt2Model {
    let spaces = random_space_family(rng, worlds);
    let mut model = Mt2Model {
        worlds,
        spaces,
        valuation: Valuation::new(),
    };
    let derived = model
        .derive_neighborhoods()
        .expect("family construction covers every world");
    for &variable in variables {
        let density = rng.gen_range(0.0..=0.7);
        let seeds = random_subset(rng, WorldSet::full(worlds), density);
        let truth = seeds
            .iter()
            .fold(WorldSet::EMPTY, |acc, w| acc.union(derived.min[w]));
        model.valuation.insert(variable.to_owned(), truth);
    }
    model
}

/// A random valid minimal-neighborhood model: atoms are unions of randomly
/// chosen inventory entries.
pub fn random_mt3(rng: &mut impl Rng, worlds: usize, variables: &[&str]) -> Mt3Model {
    let spaces = random_space_family(rng, worlds);
    let mut model = Mt3Model {
        worlds,
        spaces,
        valuation: Valuation::new(),
    };
    let inventory = model.min_neighborhood_inventory();
    for &variable in variables {
        let density = rng.gen_range(0.0..=0.5);
        let truth = inventory
            .iter()
            .filter(|_| rng.gen_bool(density))
            .fold(WorldSet::EMPTY, |acc, e| acc.union(e.set));
        model.valuation.insert(variable.to_owned(), truth);
    }
    model
}
