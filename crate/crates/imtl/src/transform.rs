//! Structure translations between neighborhood models and the three
//! space-family model kinds, plus the pointwise-equivalence checker that
//! certifies a translation did not change any truth value.
//!
//! - [`nim_to_mt1`]: one distinguished-open space `⟨max[w], 𝒪_w, min[w]⟩`
//!   per world;
//! - [`nim_to_mt3`]: one space `⟨max[w], 𝒬_w⟩` per world;
//! - [`mt2_to_nim`]: package the derived neighborhoods as a frame.
//!
//! The first two merge duplicate spaces (a family is a set, not a
//! multiset) and inherit the per-world builders' refusals — most notably
//! of frames built without the T-condition. Valuations are copied
//! verbatim in all three directions.

use crate::formula::Formula;
use crate::mt1::{Mt1Model, Space};
use crate::mt2::{Mt2Model, UncoveredWorld};
use crate::mt3::Mt3Model;
use crate::nimodel::{FrameShapeError, NimModel};
use crate::topology::{
    w_min_topology_bounded, w_topology_bounded, WTopologyError, ENUMERATION_LIMIT,
};
use crate::worldset::WorldSet;

/// Translates a neighborhood model into a distinguished-open family model:
/// for each world `w`, the space over `max[w]` whose opens are the sets
/// closed under minimal neighborhoods of members, distinguishing `min[w]`.
/// Identical spaces arising from different worlds are merged, keeping
/// first-occurrence order.
pub fn nim_to_mt1(model: &NimModel) -> Result<Mt1Model, WTopologyError> {
    nim_to_mt1_bounded(model, ENUMERATION_LIMIT)
}

/// [`nim_to_mt1`] with an explicit subset-enumeration bound.
pub fn nim_to_mt1_bounded(model: &NimModel, limit: usize) -> Result<Mt1Model, WTopologyError> {
    let frame = &model.frame;
    let mut spaces: Vec<Space> = Vec::new();
    for w in 0..frame.world_count() {
        let space = Space {
            topology: w_topology_bounded(frame, w, limit)?,
            distinguished: frame.min(w),
        };
        if !spaces.contains(&space) {
            spaces.push(space);
        }
    }
    Ok(Mt1Model {
        worlds: frame.world_count(),
        spaces,
        valuation: model.valuation.clone(),
    })
}

/// Translates a neighborhood model into a minimal-neighborhood family
/// model: for each world `w`, the space over `max[w]` whose opens contain
/// `min[w]` and are closed under minimal neighborhoods of members (plus the
/// empty set). Identical spaces are merged, keeping first-occurrence order.
pub fn nim_to_mt3(model: &NimModel) -> Result<Mt3Model, WTopologyError> {
    nim_to_mt3_bounded(model, ENUMERATION_LIMIT)
}

/// [`nim_to_mt3`] with an explicit subset-enumeration bound.
pub fn nim_to_mt3_bounded(model: &NimModel, limit: usize) -> Result<Mt3Model, WTopologyError> {
    let frame = &model.frame;
    let mut spaces = Vec::new();
    for w in 0..frame.world_count() {
        let space = w_min_topology_bounded(frame, w, limit)?;
        if !spaces.contains(&space) {
            spaces.push(space);
        }
    }
    Ok(Mt3Model {
        worlds: frame.world_count(),
        spaces,
        valuation: model.valuation.clone(),
    })
}

/// Why an Alexandroff-family model could not be repackaged as a
/// neighborhood model. Valid models never trip either case.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Mt2ToNimError {
    #[error(transparent)]
    Uncovered(#[from] UncoveredWorld),
    #[error(transparent)]
    Shape(#[from] FrameShapeError),
}

/// Translates an Alexandroff-family model into the neighborhood model whose
/// frame is the family's derived neighborhoods; the valuation is copied.
pub fn mt2_to_nim(model: &Mt2Model) -> Result<NimModel, Mt2ToNimError> {
    let frame = model.derive_neighborhoods()?.into_frame()?;
    Ok(NimModel {
        frame,
        valuation: model.valuation.clone(),
    })
}

/// A space-family model of any of the three kinds, borrowed for evaluation.
#[derive(Debug, Clone, Copy)]
pub enum MtRef<'a> {
    Mt1(&'a Mt1Model),
    Mt2(&'a Mt2Model),
    Mt3(&'a Mt3Model),
}

impl<'a> From<&'a Mt1Model> for MtRef<'a> {
    fn from(m: &'a Mt1Model) -> MtRef<'a> {
        MtRef::Mt1(m)
    }
}

impl<'a> From<&'a Mt2Model> for MtRef<'a> {
    fn from(m: &'a Mt2Model) -> MtRef<'a> {
        MtRef::Mt2(m)
    }
}

impl<'a> From<&'a Mt3Model> for MtRef<'a> {
    fn from(m: &'a Mt3Model) -> MtRef<'a> {
        MtRef::Mt3(m)
    }
}

impl MtRef<'_> {
    pub fn world_count(&self) -> usize {
        match self {
            MtRef::Mt1(m) => m.worlds,
            MtRef::Mt2(m) => m.worlds,
            MtRef::Mt3(m) => m.worlds,
        }
    }

    pub fn eval(&self, formula: &Formula) -> WorldSet {
        match self {
            MtRef::Mt1(m) => m.eval(formula),
            MtRef::Mt2(m) => m.eval(formula),
            MtRef::Mt3(m) => m.eval(formula),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            MtRef::Mt1(_) => "mt1",
            MtRef::Mt2(_) => "mt2",
            MtRef::Mt3(_) => "mt3",
        }
    }
}

/// The two models cannot be compared pointwise: their world sets differ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("models disagree on world count: {left} vs {right}")]
pub struct WorldCountMismatch {
    pub left: usize,
    pub right: usize,
}

/// One (formula, world) pair on which the two sides disagree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub formula: Formula,
    pub world: usize,
    pub nim_verdict: bool,
    pub mt_verdict: bool,
}

/// Outcome of checking every (formula, world) pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub formula_count: usize,
    pub world_count: usize,
    pub mismatches: Vec<Mismatch>,
}

impl EquivalenceReport {
    /// Whether pointwise equivalence held on the checked set.
    pub fn holds(&self) -> bool {
        self.mismatches.is_empty()
    }

    /// Number of (formula, world) pairs checked.
    pub fn pairs_checked(&self) -> usize {
        self.formula_count * self.world_count
    }
}

/// Compares forcing in the neighborhood model against evaluation in the
/// space-family model at every world, for every given formula. The two
/// sides are computed by entirely separate code paths, so an empty mismatch
/// list is evidence, not tautology.
pub fn check_pointwise_equivalence<'a>(
    nim: &NimModel,
    mt: impl Into<MtRef<'a>>,
    formulas: &[Formula],
) -> Result<EquivalenceReport, WorldCountMismatch> {
    let mt = mt.into();
    let world_count = nim.frame.world_count();
    if world_count != mt.world_count() {
        return Err(WorldCountMismatch {
            left: world_count,
            right: mt.world_count(),
        });
    }
    let mut mismatches = Vec::new();
    for formula in formulas {
        let mt_truth = mt.eval(formula);
        for world in 0..world_count {
            let nim_verdict = nim.forces(world, formula);
            let mt_verdict = mt_truth.contains(world);
            if nim_verdict != mt_verdict {
                mismatches.push(Mismatch {
                    formula: formula.clone(),
                    world,
                    nim_verdict,
                    mt_verdict,
                });
            }
        }
    }
    Ok(EquivalenceReport {
        formula_count: formulas.len(),
        world_count,
        mismatches,
    })
}

/// A formula's truth set under both Alexandroff-family readings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruthSetPair {
    pub formula: Formula,
    pub mt2_truth: WorldSet,
    pub mt3_truth: WorldSet,
}

impl TruthSetPair {
    pub fn agrees(&self) -> bool {
        self.mt2_truth == self.mt3_truth
    }
}

/// Evaluates each formula under both family readings and reports the truth
/// sets side by side. The two semantics are not claimed to agree — this
/// exists precisely to inspect where they do and where they part ways.
pub fn compare_mt2_mt3(
    mt2: &Mt2Model,
    mt3: &Mt3Model,
    formulas: &[Formula],
) -> Result<Vec<TruthSetPair>, WorldCountMismatch> {
    if mt2.worlds != mt3.worlds {
        return Err(WorldCountMismatch {
            left: mt2.worlds,
            right: mt3.worlds,
        });
    }
    Ok(formulas
        .iter()
        .map(|formula| TruthSetPair {
            formula: formula.clone(),
            mt2_truth: mt2.eval(formula),
            mt3_truth: mt3.eval(formula),
        })
        .collect())
}
